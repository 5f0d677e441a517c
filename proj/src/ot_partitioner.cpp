#include "edgesync/ot_partitioner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "edgesync/error.hpp"

namespace edgesync {

namespace {

constexpr double kTieTolerance = 1e-12;

double relative_change(double current, double previous) {
  const double diff = std::abs(current - previous);
  if (previous == 0.0) return diff;
  return diff / std::abs(previous);
}

double mean_of(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

void check_state_shape(const Scenario& scenario, const PartitionState& state) {
  if (state.assignment.size() != scenario.grid.size() || state.masses.size() != scenario.server_count() ||
      state.psi.size() != scenario.server_count()) {
    throw Error(ErrorCode::InvalidArgument, "partition state does not match the scenario");
  }
}

}  // namespace

std::vector<ServerIndex> voronoi_assign(const ZoneGrid& grid, std::span<const EdgeServer> servers) {
  if (servers.empty()) throw Error(ErrorCode::InvalidArgument, "at least one server is required");
  std::vector<ServerIndex> assignment(grid.size(), 0);
  for (std::size_t c = 0; c < grid.size(); ++c) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < servers.size(); ++b) {
      const double d = distance(grid.center(c), servers[b].position);
      if (d < best) {
        best = d;
        assignment[c] = static_cast<ServerIndex>(b);
      }
    }
  }
  return assignment;
}

std::vector<ServerIndex> assign_cells(const CostTable& table, std::span<const double> weights,
                                      std::span<const double> psi) {
  const std::size_t B = table.servers();
  if (weights.size() != B || psi.size() != B) {
    throw Error(ErrorCode::InvalidArgument, "one weight and one psi per server required");
  }
  for (std::size_t b = 0; b < B; ++b) {
    if (!(psi[b] > 0.0)) {
      throw Error(ErrorCode::NoRenderBudget, "server " + std::to_string(b) + " has no render compute");
    }
  }

  std::vector<ServerIndex> assignment(table.cells(), 0);
  for (std::size_t c = 0; c < table.cells(); ++c) {
    double best = std::numeric_limits<double>::infinity();
    ServerIndex owner = 0;
    for (std::size_t b = 0; b < B; ++b) {
      const double cost = weights[b] * table.unit_cost(c, static_cast<ServerIndex>(b), psi[b]);
      if (cost < best) {
        best = cost;
        owner = static_cast<ServerIndex>(b);
      }
    }
    assignment[c] = owner;
  }
  return assignment;
}

std::vector<ServerIndex> assign_cells(const Scenario& scenario, std::span<const double> weights,
                                      std::span<const double> psi) {
  return assign_cells(CostTable(scenario), weights, psi);
}

std::vector<double> region_masses(const ZoneGrid& grid, std::span<const ServerIndex> assignment,
                                  const DensityField& g, std::size_t server_count) {
  if (assignment.size() != grid.size()) throw Error(ErrorCode::InvalidArgument, "assignment does not match grid");
  std::vector<double> masses(server_count, 0.0);
  for (std::size_t c = 0; c < grid.size(); ++c) {
    const ServerIndex b = assignment[c];
    if (b >= server_count) throw Error(ErrorCode::InvalidArgument, "cell assigned to an unknown server");
    masses[b] += g.values[c];
  }
  for (double& m : masses) m *= grid.cell_volume();
  return masses;
}

std::vector<double> update_masses(const ZoneGrid& grid, std::span<const ServerIndex> assignment,
                                  const DensityField& g, std::size_t server_count, double floor) {
  std::vector<double> masses = region_masses(grid, assignment, g, server_count);
  for (double& m : masses) m = std::max(m, floor);
  const double total = std::accumulate(masses.begin(), masses.end(), 0.0);
  for (double& m : masses) m /= total;
  return masses;
}

double allocate_dt_compute(const DigitalTwin& dt, const EdgeServer& server, const RadioParams& radio,
                           const ChannelModel& model) {
  const double r = dt_rate(dt.position, server, dt, radio, model);
  const double budget = 1.0 / (dt.sync_intensity_hz * dt.data_bits);  // seconds per bit
  const double upload = 1.0 / r;
  if (!(budget > upload)) {
    throw Error(ErrorCode::InfeasibleDeadline,
                "DT " + std::to_string(dt.id) + " violates the deadline 1/mu_k on upload alone (deadline constraint)");
  }
  return dt.complexity_cycles_per_bit / (budget - upload);
}

DtBudget associate_and_budget(const Scenario& scenario, std::span<const ServerIndex> assignment) {
  const std::size_t B = scenario.server_count();
  const std::size_t K = scenario.dts.size();
  DtBudget out;
  out.dt_server.assign(K, kNoServer);
  out.dt_phi.assign(K, 0.0);
  out.psi.resize(B);
  for (std::size_t b = 0; b < B; ++b) out.psi[b] = scenario.servers[b].compute_budget_hz;

  std::vector<std::vector<std::size_t>> hosted(B);
  for (std::size_t k = 0; k < K; ++k) {
    const DigitalTwin& dt = scenario.dts[k];
    const ServerIndex b = assignment[scenario.grid.locate(dt.position)];
    try {
      out.dt_phi[k] = allocate_dt_compute(dt, scenario.servers[b], scenario.radio, scenario.channel);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::InfeasibleDeadline) throw;
      if (scenario.options.infeasible_policy == InfeasiblePolicy::Strict) throw;
      out.infeasible.push_back(dt.id);
      continue;
    }
    out.dt_server[k] = b;
    hosted[b].push_back(k);
  }

  // psi_b = Psi_b - used, rounded down far enough that psi_b + used <= Psi_b
  // also holds in floating point.
  auto remaining = [](double budget, double used) {
    double psi = budget - used;
    while (psi + used > budget) psi = std::nextafter(psi, 0.0);
    return psi;
  };

  for (std::size_t b = 0; b < B; ++b) {
    double used = 0.0;
    for (std::size_t k : hosted[b]) used += out.dt_phi[k];
    const double budget = scenario.servers[b].compute_budget_hz;
    if (used < budget) {
      out.psi[b] = remaining(budget, used);
      continue;
    }
    if (scenario.options.exhausted_policy == InfeasiblePolicy::Strict) {
      throw Error(ErrorCode::ComputeExhausted,
                  "DTs on server " + std::to_string(b) + " need the whole compute budget (compute budget constraint)");
    }
    // Shed the most expensive DTs first; stable order keeps ties deterministic.
    std::vector<std::size_t> order = hosted[b];
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t c) { return out.dt_phi[a] > out.dt_phi[c]; });
    for (std::size_t k : order) {
      if (used < budget) break;
      used -= out.dt_phi[k];
      out.dt_phi[k] = 0.0;
      out.dt_server[k] = kNoServer;
      out.dropped.push_back(scenario.dts[k].id);
    }
    // Re-sum the survivors so psi does not inherit subtraction round-off.
    used = 0.0;
    for (std::size_t k : hosted[b]) used += out.dt_phi[k];
    out.psi[b] = remaining(budget, used);
  }
  return out;
}

std::vector<double> region_times(const Scenario& scenario, const CostTable& table, const PartitionState& state,
                                 std::span<const double> load) {
  check_state_shape(scenario, state);
  const std::size_t B = scenario.server_count();
  if (load.empty()) load = state.masses;
  if (load.size() != B) throw Error(ErrorCode::InvalidArgument, "one load weight per server");
  std::vector<double> sums(B, 0.0);
  std::vector<bool> occupied(B, false);
  for (std::size_t c = 0; c < table.cells(); ++c) {
    const ServerIndex b = state.assignment[c];
    occupied[b] = true;
    if (!(state.psi[b] > 0.0)) {
      throw Error(ErrorCode::NoRenderBudget, "server " + std::to_string(b) + " owns cells but has no render compute");
    }
    sums[b] += table.unit_cost(c, b, state.psi[b]) * scenario.sensors.values[c];
  }
  std::vector<double> times(B, 0.0);
  for (std::size_t b = 0; b < B; ++b) {
    if (!occupied[b]) continue;
    times[b] = load_factor(load[b], scenario.params) * sums[b] * scenario.grid.cell_volume();
  }
  return times;
}

double evaluate_objective(const Scenario& scenario, const CostTable& table, const PartitionState& state) {
  return mean_of(region_times(scenario, table, state));
}

double evaluate_objective(const Scenario& scenario, const PartitionState& state) {
  return evaluate_objective(scenario, CostTable(scenario), state);
}

PartitionState settle(const Scenario& scenario, const CostTable& table, std::vector<ServerIndex> assignment,
                      DtBudget* budget_out, std::span<const double> alpha) {
  PartitionState state;
  state.masses = update_masses(scenario.grid, assignment, scenario.sensors, scenario.server_count(),
                               scenario.options.alpha_floor);
  if (alpha.empty()) {
    state.alpha = state.masses;
  } else {
    if (alpha.size() != scenario.server_count()) throw Error(ErrorCode::InvalidArgument, "one alpha per server");
    state.alpha.assign(alpha.begin(), alpha.end());
  }
  DtBudget budget = associate_and_budget(scenario, assignment);
  state.assignment = std::move(assignment);
  state.psi = budget.psi;
  state.dt_server = budget.dt_server;
  state.dt_phi = budget.dt_phi;
  state.objective = evaluate_objective(scenario, table, state);
  if (budget_out) *budget_out = std::move(budget);
  return state;
}

double verify_fixed_point(const Scenario& scenario, const CostTable& table, const PartitionState& state) {
  return verify_fixed_point(scenario, table, state, state.alpha.empty() ? state.masses : state.alpha);
}

double verify_fixed_point(const Scenario& scenario, const CostTable& table, const PartitionState& state,
                          std::span<const double> marginal) {
  check_state_shape(scenario, state);
  const std::size_t B = scenario.server_count();
  if (marginal.size() != B) throw Error(ErrorCode::InvalidArgument, "one marginal weight per server");
  double violating = 0.0;
  double total = 0.0;
  for (std::size_t c = 0; c < table.cells(); ++c) {
    const double mass = scenario.sensors.values[c];
    total += mass;
    const ServerIndex owner = state.assignment[c];
    const double own = marginal[owner] * table.unit_cost(c, owner, state.psi[owner]);
    double best = own;
    for (std::size_t b = 0; b < B; ++b) {
      best = std::min(best, marginal[b] * table.unit_cost(c, static_cast<ServerIndex>(b), state.psi[b]));
    }
    if (own > best * (1.0 + kTieTolerance)) violating += mass;
  }
  return total > 0.0 ? violating / total : 0.0;
}

double verify_fixed_point(const Scenario& scenario, const PartitionState& state) {
  return verify_fixed_point(scenario, CostTable(scenario), state);
}

double mean_dt_slack(const Scenario& scenario, const PartitionState& state) {
  double slack = 0.0;
  std::size_t served = 0;
  for (std::size_t k = 0; k < scenario.dts.size(); ++k) {
    const ServerIndex b = state.dt_server[k];
    if (b == kNoServer) continue;
    const DigitalTwin& dt = scenario.dts[k];
    slack += 1.0 / dt.sync_intensity_hz -
             dt_sync_time(dt, scenario.servers[b], state.dt_phi[k], scenario.radio, scenario.channel);
    ++served;
  }
  return served ? slack / static_cast<double>(served) : 0.0;
}

SolveResult solve(const Scenario& scenario) {
  scenario.validate();
  const CostTable table(scenario);
  const std::size_t B = scenario.server_count();
  const SolverOptions& opt = scenario.options;
  auto transport_objective = [&](const PartitionState& s) { return mean_of(region_times(scenario, table, s, s.alpha)); };

  DtBudget budget;
  PartitionState state = settle(scenario, table, voronoi_assign(scenario.grid, scenario.servers), &budget);
  SolveReport report;
  report.objective_history.push_back(transport_objective(state));
  // Without convergence the last iterate is an arbitrary point of a cycle;
  // the best partition seen is returned instead.
  PartitionState best = state;
  DtBudget best_budget = budget;

  // The first weighted partition uses the full budgets as render compute.
  std::vector<double> alpha = state.masses;
  std::vector<double> psi(B);
  for (std::size_t b = 0; b < B; ++b) psi[b] = scenario.servers[b].compute_budget_hz;

  for (std::size_t it = 1; it <= opt.max_iterations; ++it) {
    DtBudget next_budget;
    PartitionState next = settle(scenario, table, assign_cells(table, alpha, psi), &next_budget, alpha);
    next.iteration = it;
    const bool same_dts = next.dt_server == state.dt_server;
    // The certificate needs the partition to come from its own exact budget.
    const bool exact_psi = psi == next.psi;
    const double objective = transport_objective(next);
    const double change = relative_change(objective, report.objective_history.back());

    const double step = opt.damping / (1.0 + opt.damping_decay * static_cast<double>(it - 1));
    double total = 0.0;
    for (std::size_t b = 0; b < B; ++b) {
      alpha[b] = (1.0 - step) * alpha[b] + step * next.masses[b];
      total += alpha[b];
    }
    for (double& a : alpha) a /= total;
    // A changed DT placement moves whole blocks of compute; blend it in like
    // alpha. A settled placement gives its exact budget.
    for (std::size_t b = 0; b < B; ++b) psi[b] = same_dts ? next.psi[b] : (1.0 - step) * psi[b] + step * next.psi[b];

    state = std::move(next);
    budget = std::move(next_budget);
    report.objective_history.push_back(objective);
    report.iterations = it;
    if (change < opt.tolerance && exact_psi) {
      report.converged = true;
      break;
    }
    if (state.objective < best.objective) {
      best = state;
      best_budget = budget;
    }
  }
  if (!report.converged) {
    state = std::move(best);
    budget = std::move(best_budget);
  }

  report.violation_mass = verify_fixed_point(scenario, table, state);
  report.self_violation_mass = verify_fixed_point(scenario, table, state, state.masses);
  for (std::size_t b = 0; b < B; ++b) {
    report.mass_residual = std::max(report.mass_residual, std::abs(state.alpha[b] - state.masses[b]));
  }
  report.infeasible_dts = budget.infeasible;
  report.dropped_dts = budget.dropped;
  report.mean_dt_slack_s = mean_dt_slack(scenario, state);
  return {std::move(state), std::move(report)};
}

}  // namespace edgesync
