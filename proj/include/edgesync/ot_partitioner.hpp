#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "edgesync/scenario.hpp"
#include "edgesync/sync_model.hpp"

namespace edgesync {

/// DT placement and the resulting compute split for one partition.
struct DtBudget {
  std::vector<ServerIndex> dt_server;  // per DT, kNoServer when unserved
  std::vector<double> dt_phi;          // per DT, cycles/s
  std::vector<double> psi;             // per server, what is left for rendering
  std::vector<std::size_t> infeasible; // DT ids whose upload alone misses the deadline
  std::vector<std::size_t> dropped;    // DT ids shed so that psi_b stays > 0
};

struct SolveReport {
  bool converged = false;
  std::size_t iterations = 0;
  /// Transport objective (mean of T_b with load alpha_b), the quantity
  /// tested for convergence.
  std::vector<double> objective_history;  // iterations + 1 entries, initial partition first
  /// Certificate against the marginal alpha that generated the partition.
  double violation_mass = 0.0;
  /// Same check with alpha replaced by the region masses. Nonzero when a
  /// cell ties on a region boundary and neither label is self-consistent.
  double self_violation_mass = 0.0;
  /// max_b |alpha_b - masses_b|, at most the mass of the boundary-tied cells.
  double mass_residual = 0.0;
  std::vector<std::size_t> infeasible_dts;
  std::vector<std::size_t> dropped_dts;
  /// Mean of 1/mu_k - tau_sync over served DTs; zero when every deadline is tight.
  double mean_dt_slack_s = 0.0;
};

struct SolveResult {
  PartitionState state;
  SolveReport report;
};

/// Nearest-server partition, used as the starting point of the iteration.
std::vector<ServerIndex> voronoi_assign(const ZoneGrid& grid, std::span<const EdgeServer> servers);

/// Weighted partition: each cell goes to argmin_b alpha_b * F(cell, b), ties
/// to the lowest index.
std::vector<ServerIndex> assign_cells(const CostTable& table, std::span<const double> weights,
                                      std::span<const double> psi);
std::vector<ServerIndex> assign_cells(const Scenario& scenario, std::span<const double> weights,
                                      std::span<const double> psi);

/// Raw g-mass of each region.
std::vector<double> region_masses(const ZoneGrid& grid, std::span<const ServerIndex> assignment,
                                  const DensityField& g, std::size_t server_count);

/// Region masses clamped to `floor` and renormalized to sum to one.
std::vector<double> update_masses(const ZoneGrid& grid, std::span<const ServerIndex> assignment,
                                  const DensityField& g, std::size_t server_count, double floor);

/// Compute phi that makes the DT sync time equal its deadline 1/mu_k exactly.
/// Throws InfeasibleDeadline when the upload alone takes 1/mu_k or longer.
double allocate_dt_compute(const DigitalTwin& dt, const EdgeServer& server, const RadioParams& radio,
                           const ChannelModel& model);

/// Places each DT on the server owning its cell, sizes phi for each, and
/// returns the remaining render compute psi_b = Psi_b - sum phi.
DtBudget associate_and_budget(const Scenario& scenario, std::span<const ServerIndex> assignment);

/// Per-server sub-synchronization times T_b. The load factor uses the region
/// masses, or `load` when given.
std::vector<double> region_times(const Scenario& scenario, const CostTable& table, const PartitionState& state,
                                 std::span<const double> load = {});

/// Mean of T_b over all B servers, empty regions included as zero.
double evaluate_objective(const Scenario& scenario, const CostTable& table, const PartitionState& state);
double evaluate_objective(const Scenario& scenario, const PartitionState& state);

/// Builds the full state (masses, DT budget, objective) of a fixed partition.
/// `alpha` defaults to the masses.
PartitionState settle(const Scenario& scenario, const CostTable& table, std::vector<ServerIndex> assignment,
                      DtBudget* budget_out = nullptr, std::span<const double> alpha = {});

/// Fraction of g-mass sitting in cells whose owner does not minimize
/// alpha_b * F(cell, b) under the state's alpha and psi.
double verify_fixed_point(const Scenario& scenario, const CostTable& table, const PartitionState& state);
/// Same with an explicit marginal in place of state.alpha.
double verify_fixed_point(const Scenario& scenario, const CostTable& table, const PartitionState& state,
                          std::span<const double> marginal);
double verify_fixed_point(const Scenario& scenario, const PartitionState& state);

double mean_dt_slack(const Scenario& scenario, const PartitionState& state);

/// Alternates weighted partitioning, mass update and DT budgeting until
/// the objective settles and the partition was drawn with its own exact
/// render budget psi.
///
/// On a cell grid the region masses jump by whole cells, so the plain
/// update can cycle between neighboring partitions. A damped step with a
/// decaying schedule drives alpha to the limit point, which is the mass
/// split of the partition with its boundary-tied cells shared. If the
/// iteration does not converge, the iterate with the lowest objective is
/// returned with `converged` false.
SolveResult solve(const Scenario& scenario);

}  // namespace edgesync
