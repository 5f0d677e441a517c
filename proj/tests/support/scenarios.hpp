#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "edgesync/config.hpp"
#include "edgesync/harness.hpp"

namespace edgesync::testing {

/// Scenario assembled directly in SI units with a constant rho.
Scenario make_scenario(ZoneGrid grid, const DensitySpec& g, std::vector<EdgeServer> servers,
                       std::vector<DigitalTwin> dts = {}, double rho = 50.0);

/// A DT with the desk type-2 parameters at `position`.
DigitalTwin make_dt(std::size_t id, Vec3 position);

/// Path of a file under configs/ in the source tree.
std::string config_path(const std::string& name);

/// The desk scenario: B = 4, K = 60, 200 x 200 grid.
ScenarioConfig desk_config();

/// Two servers mirrored across x = extent/2, a centered truncated Gaussian
/// and no DTs.
ScenarioConfig mirrored_pair_config(std::size_t resolution);

/// Random B = 4 scenario with K drawn from [50, 200], on a coarser grid.
ScenarioConfig random_dominance_config(std::uint64_t seed);

/// Random 3 x 3 grid, B = 2 instance small enough for exhaustive search.
ScenarioConfig random_oracle_config(std::uint64_t seed);

/// Sum of alpha minus one, and the worst psi_b + sum phi - Psi_b over servers.
struct Conservation {
  double alpha_sum_error = 0.0;
  double budget_excess_hz = 0.0;
  bool ok() const { return alpha_sum_error <= 1e-9 && budget_excess_hz <= 0.0; }
};
Conservation check_conservation(const Scenario& scenario, const PartitionState& state);

}  // namespace edgesync::testing
