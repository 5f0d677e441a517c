#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "edgesync/config.hpp"
#include "edgesync/ot_partitioner.hpp"
#include "edgesync/scenario.hpp"

namespace edgesync {

/// Converts a config to SI units, evaluates the density fields on the grid
/// and places the DT fleet. Deterministic for a fixed `dts.seed`.
Scenario build_scenario(const ScenarioConfig& config);

/// DT fleet alone: positions drawn from the placement density, types by
/// smooth weighted round-robin over `mix` (plain round-robin when empty).
std::vector<DigitalTwin> place_dts(const ScenarioConfig& config, const ZoneGrid& grid);

struct MetricsRecord {
  std::string method;
  std::size_t K = 0;
  double sigma_m = 0.0;
  double avg_sub_sync_s = 0.0;
  std::size_t iterations = 0;
  double violation_mass = 0.0;
  bool converged = false;
  std::vector<double> alpha;
  std::vector<double> sub_sync_s;  // T_b
  std::vector<double> psi_hz;
  std::vector<std::size_t> dt_count;
  /// Served DTs per region, averaged over the B regions.
  double regional_dt_density = 0.0;
  std::size_t infeasible_dts = 0;
  std::size_t dropped_dts = 0;
};

struct RunOutput {
  Scenario scenario;
  SolveResult result;
  MetricsRecord record;
};

SolveResult solve_with(const Scenario& scenario, Method method);
MetricsRecord make_record(const ScenarioConfig& config, const Scenario& scenario, const SolveResult& result);

RunOutput execute(const ScenarioConfig& config);
MetricsRecord run_scenario(const ScenarioConfig& config);

/// One record per K and per method, in the order (K0, ot), (K0, snr), ...
/// The DT seed is shared, so smaller fleets are prefixes of larger ones.
std::vector<MetricsRecord> sweep_dts(const ScenarioConfig& config, std::span<const std::size_t> counts);

/// Same pairing over the standard deviation of the sensing density; every
/// component of g gets the new sigma.
std::vector<MetricsRecord> sweep_sigma(const ScenarioConfig& config, std::span<const double> sigmas);

struct OracleResult {
  std::vector<ServerIndex> assignment;
  double objective = 0.0;
  std::size_t evaluated = 0;
};

inline constexpr std::size_t kOracleMaxAssignments = 390625;  // 5^8

/// Exhaustive search over every cell-to-server labeling, each scored with the
/// same DT budgeting and objective as the solver.
OracleResult brute_force_oracle(const Scenario& scenario);

// CSV export. Columns: method,K,sigma_m,avg_sub_sync_s,iterations,violation_mass,
// then alpha_b,T_b_s,psi_b_hz,dt_count_b for b = 0..B-1, then
// regional_dt_density,converged.
std::string csv_header(std::size_t server_count);
std::string csv_row(const MetricsRecord& record);
void write_csv(std::ostream& out, std::span<const MetricsRecord> records);

struct PartitionRow {
  double x = 0.0;
  double y = 0.0;
  ServerIndex server = 0;
  double g = 0.0;
};

/// Partition dump: header `cell_x,cell_y,server_id,g_value`, one row per cell.
void write_partition(std::ostream& out, const Scenario& scenario, const PartitionState& state);
std::vector<PartitionRow> read_partition(std::istream& in);
/// Region masses recomputed from a dump.
std::vector<double> masses_from_dump(std::span<const PartitionRow> rows, double cell_volume, std::size_t server_count);

}  // namespace edgesync
