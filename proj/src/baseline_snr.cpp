#include "edgesync/baseline_snr.hpp"

#include <limits>

#include "edgesync/error.hpp"

namespace edgesync {

std::vector<ServerIndex> snr_assign(const ZoneGrid& grid, std::span<const EdgeServer> servers,
                                    const RadioParams& radio, const ChannelModel& model) {
  if (servers.empty()) throw Error(ErrorCode::InvalidArgument, "at least one server is required");
  std::vector<ServerIndex> assignment(grid.size(), 0);
  for (std::size_t c = 0; c < grid.size(); ++c) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < servers.size(); ++b) {
      const double snr = path_gain(grid.center(c), servers[b].position, model_for(servers[b], model)) *
                         radio.sensor_tx_power_w / radio.noise_psd_w_per_hz;
      if (snr > best) {
        best = snr;
        assignment[c] = static_cast<ServerIndex>(b);
      }
    }
  }
  return assignment;
}

SolveResult snr_solve(const Scenario& scenario) {
  scenario.validate();
  const CostTable table(scenario);
  DtBudget budget;
  PartitionState state =
      settle(scenario, table, snr_assign(scenario.grid, scenario.servers, scenario.radio, scenario.channel), &budget);

  SolveReport report;
  report.converged = true;
  report.iterations = 0;
  report.objective_history.push_back(state.objective);
  report.violation_mass = verify_fixed_point(scenario, table, state);
  report.self_violation_mass = report.violation_mass;
  report.infeasible_dts = budget.infeasible;
  report.dropped_dts = budget.dropped;
  report.mean_dt_slack_s = mean_dt_slack(scenario, state);
  return {std::move(state), std::move(report)};
}

}  // namespace edgesync
