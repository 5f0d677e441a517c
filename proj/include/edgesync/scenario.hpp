#pragma once

#include <cstddef>
#include <vector>

#include "edgesync/channel.hpp"
#include "edgesync/entities.hpp"
#include "edgesync/geometry.hpp"

namespace edgesync {

/// What to do with a DT whose deadline cannot be met, or with a server whose
/// DTs consume its whole compute budget.
enum class InfeasiblePolicy { Report, Strict };

struct SolverOptions {
  double tolerance = 1e-6;
  std::size_t max_iterations = 500;
  /// Step of the mass update, in (0, 1]; 1 is plain replacement.
  double damping = 1.0;
  /// Step at iteration v is damping / (1 + damping_decay * (v - 1)).
  double damping_decay = 0.0;
  double alpha_floor = 1e-6;
  InfeasiblePolicy infeasible_policy = InfeasiblePolicy::Report;
  InfeasiblePolicy exhausted_policy = InfeasiblePolicy::Report;

  void validate() const;

  friend bool operator==(const SolverOptions&, const SolverOptions&) = default;
};

/// Fully resolved problem instance in SI units.
struct Scenario {
  ZoneGrid grid;
  DensityField sensors;     // g, integrates to one
  std::vector<double> rho;  // sensing density per cell, bps/m^3
  std::vector<EdgeServer> servers;
  std::vector<DigitalTwin> dts;
  RadioParams radio;
  ChannelModel channel;
  MetaverseParams params;
  SolverOptions options;

  std::size_t server_count() const noexcept { return servers.size(); }
  void validate() const;
};

/// Region partition plus compute split. Cell ownership is a single label per
/// cell, so the regions always cover the zone and never overlap.
struct PartitionState {
  std::vector<ServerIndex> assignment;  // per cell
  std::vector<double> masses;           // g-mass of each region, sums to one
  /// Transport marginal the partition was generated from. Equal to `masses`
  /// for a partition that was not produced by the weighted map.
  std::vector<double> alpha;
  std::vector<double> psi;              // metaverse compute per server, cycles/s
  std::vector<ServerIndex> dt_server;   // per DT, kNoServer when unserved
  std::vector<double> dt_phi;           // per DT compute, 0 when unserved
  std::size_t iteration = 0;
  double objective = 0.0;

  /// Sum of DT compute placed on server `b`.
  double dt_compute(ServerIndex b) const;
};

}  // namespace edgesync
