#include "edgesync/harness.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "edgesync/baseline_snr.hpp"
#include "edgesync/error.hpp"

namespace edgesync {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

std::vector<DigitalTwin> place_dts(const ScenarioConfig& config, const ZoneGrid& grid) {
  const FleetConfig& fleet = config.dts;
  std::vector<DigitalTwin> dts;
  if (fleet.count == 0) return dts;
  if (fleet.types.empty()) throw Error(ErrorCode::ConfigError, "DT fleet has no types");

  const DensityField f = make_density(grid, fleet.placement, true);
  const std::vector<Vec3> positions = sample_points(grid, f, fleet.count, fleet.seed);

  std::vector<double> shares = fleet.mix;
  if (shares.empty()) shares.assign(fleet.types.size(), 1.0);
  double total = 0.0;
  for (double s : shares) {
    if (!(s >= 0.0)) throw Error(ErrorCode::ConfigError, "dts.mix shares must be >= 0");
    total += s;
  }
  if (!(total > 0.0)) throw Error(ErrorCode::ConfigError, "dts.mix shares are all zero");

  // Smooth weighted round-robin: with equal shares this is 0, 1, 2, 0, 1, ...
  std::vector<double> current(shares.size(), 0.0);
  dts.reserve(fleet.count);
  for (std::size_t k = 0; k < fleet.count; ++k) {
    std::size_t pick = 0;
    for (std::size_t t = 0; t < shares.size(); ++t) {
      current[t] += shares[t];
      if (current[t] > current[pick]) pick = t;
    }
    current[pick] -= total;

    const DtTypeConfig& type = fleet.types[pick];
    DigitalTwin dt;
    dt.id = k;
    dt.position = positions[k];
    dt.type_index = pick;
    dt.sync_intensity_hz = type.sync_intensity_hz;
    dt.data_bits = type.data_bits;
    dt.complexity_cycles_per_bit = type.complexity_cycles_per_bit;
    dt.tx_power_w = dbm_to_watt(type.tx_power_dbm);
    dt.bandwidth_hz = type.bandwidth_hz;
    dts.push_back(dt);
  }
  return dts;
}

Scenario build_scenario(const ScenarioConfig& config) {
  ZoneGrid grid = build_grid(config.extent_m, config.resolution);
  DensityField g = make_density(grid, config.sensing.density, true);

  std::vector<double> rho(grid.size(), config.sensing.rho_bps_per_m3);
  if (config.sensing.rho_field) rho = make_density(grid, *config.sensing.rho_field, false).values;

  std::vector<EdgeServer> servers;
  for (const auto& sc : config.servers) {
    EdgeServer s;
    s.position = sc.position;
    s.compute_budget_hz = sc.compute_hz;
    s.metaverse_bandwidth_hz = sc.bandwidth_hz;
    if (sc.reference_gain_db) s.reference_gain = db_to_linear(*sc.reference_gain_db);
    servers.push_back(s);
  }

  RadioParams radio;
  radio.sensor_tx_power_w = dbm_to_watt(config.sensing.tx_power_dbm);
  radio.noise_psd_w_per_hz = dbm_to_watt(config.channel.noise_dbm_per_hz);

  ChannelModel channel;
  channel.reference_gain = db_to_linear(config.channel.reference_gain_db);
  channel.reference_distance_m = config.channel.reference_distance_m;
  channel.pathloss_exponent = config.channel.pathloss_exponent;
  channel.min_distance_m = config.channel.min_distance_m;

  std::vector<DigitalTwin> dts = place_dts(config, grid);

  Scenario scenario{std::move(grid),    std::move(g), std::move(rho),           std::move(servers),
                    std::move(dts),     radio,        channel,                  config.sensing.metaverse,
                    config.solver};
  scenario.validate();
  return scenario;
}

SolveResult solve_with(const Scenario& scenario, Method method) {
  return method == Method::Ot ? solve(scenario) : snr_solve(scenario);
}

MetricsRecord make_record(const ScenarioConfig& config, const Scenario& scenario, const SolveResult& result) {
  const std::size_t B = scenario.server_count();
  const PartitionState& state = result.state;
  MetricsRecord r;
  r.method = std::string(to_string(config.method));
  r.K = scenario.dts.size();
  r.sigma_m = sensing_sigma(config);
  r.sub_sync_s = region_times(scenario, CostTable(scenario), state);
  double sum = 0.0;
  for (double t : r.sub_sync_s) sum += t;
  r.avg_sub_sync_s = sum / static_cast<double>(B);
  r.iterations = result.report.iterations;
  r.violation_mass = result.report.violation_mass;
  r.converged = result.report.converged;
  r.alpha = state.masses;
  r.psi_hz = state.psi;
  r.dt_count.assign(B, 0);
  std::size_t served = 0;
  for (ServerIndex b : state.dt_server) {
    if (b == kNoServer) continue;
    ++r.dt_count[b];
    ++served;
  }
  r.regional_dt_density = static_cast<double>(served) / static_cast<double>(B);
  r.infeasible_dts = result.report.infeasible_dts.size();
  r.dropped_dts = result.report.dropped_dts.size();
  return r;
}

RunOutput execute(const ScenarioConfig& config) {
  Scenario scenario = build_scenario(config);
  SolveResult result = solve_with(scenario, config.method);
  MetricsRecord record = make_record(config, scenario, result);
  return {std::move(scenario), std::move(result), std::move(record)};
}

MetricsRecord run_scenario(const ScenarioConfig& config) { return execute(config).record; }

std::vector<MetricsRecord> sweep_dts(const ScenarioConfig& config, std::span<const std::size_t> counts) {
  if (counts.empty()) throw Error(ErrorCode::ConfigError, "sweep needs at least one DT count");
  std::vector<MetricsRecord> records;
  for (std::size_t K : counts) {
    ScenarioConfig c = config;
    c.dts.count = K;
    const Scenario scenario = build_scenario(c);
    for (Method m : {Method::Ot, Method::Snr}) {
      c.method = m;
      records.push_back(make_record(c, scenario, solve_with(scenario, m)));
    }
  }
  return records;
}

std::vector<MetricsRecord> sweep_sigma(const ScenarioConfig& config, std::span<const double> sigmas) {
  if (sigmas.empty()) throw Error(ErrorCode::ConfigError, "sweep needs at least one sigma");
  if (config.sensing.density.kind == DensityKind::Uniform) {
    throw Error(ErrorCode::ConfigError, "sigma sweep needs a gaussian sensing density");
  }
  std::vector<MetricsRecord> records;
  for (double sigma : sigmas) {
    ScenarioConfig c = config;
    for (double& s : c.sensing.density.stds) s = sigma;
    const Scenario scenario = build_scenario(c);
    for (Method m : {Method::Ot, Method::Snr}) {
      c.method = m;
      records.push_back(make_record(c, scenario, solve_with(scenario, m)));
    }
  }
  return records;
}

OracleResult brute_force_oracle(const Scenario& scenario) {
  const std::size_t cells = scenario.grid.size();
  const std::size_t B = scenario.server_count();
  std::size_t space = 1;
  for (std::size_t c = 0; c < cells; ++c) {
    if (space > kOracleMaxAssignments / B) {
      throw Error(ErrorCode::SearchSpaceTooLarge, "more than " + std::to_string(kOracleMaxAssignments) + " assignments");
    }
    space *= B;
  }

  const CostTable table(scenario);
  OracleResult best;
  best.objective = std::numeric_limits<double>::infinity();
  std::vector<ServerIndex> labels(cells, 0);
  for (std::size_t n = 0; n < space; ++n) {
    std::size_t code = n;
    for (std::size_t c = 0; c < cells; ++c) {
      labels[c] = static_cast<ServerIndex>(code % B);
      code /= B;
    }
    const PartitionState state = settle(scenario, table, labels);
    ++best.evaluated;
    if (state.objective < best.objective) {
      best.objective = state.objective;
      best.assignment = labels;
    }
  }
  return best;
}

std::string csv_header(std::size_t server_count) {
  std::string h = "method,K,sigma_m,avg_sub_sync_s,iterations,violation_mass";
  for (std::size_t b = 0; b < server_count; ++b) {
    const std::string i = std::to_string(b);
    h += ",alpha_" + i + ",T_" + i + "_s,psi_" + i + "_hz,dt_count_" + i;
  }
  h += ",regional_dt_density,converged";
  return h;
}

std::string csv_row(const MetricsRecord& r) {
  std::string row = r.method + "," + std::to_string(r.K) + "," + fmt(r.sigma_m) + "," + fmt(r.avg_sub_sync_s) +
                    "," + std::to_string(r.iterations) + "," + fmt(r.violation_mass);
  for (std::size_t b = 0; b < r.alpha.size(); ++b) {
    row += "," + fmt(r.alpha[b]) + "," + fmt(r.sub_sync_s[b]) + "," + fmt(r.psi_hz[b]) + "," +
           std::to_string(r.dt_count[b]);
  }
  row += "," + fmt(r.regional_dt_density) + "," + (r.converged ? "1" : "0");
  return row;
}

void write_csv(std::ostream& out, std::span<const MetricsRecord> records) {
  if (records.empty()) return;
  out << csv_header(records.front().alpha.size()) << '\n';
  for (const auto& r : records) out << csv_row(r) << '\n';
}

void write_partition(std::ostream& out, const Scenario& scenario, const PartitionState& state) {
  out << "cell_x,cell_y,server_id,g_value\n";
  for (std::size_t c = 0; c < scenario.grid.size(); ++c) {
    const Vec3& p = scenario.grid.center(c);
    out << fmt(p.x) << ',' << fmt(p.y) << ',' << state.assignment[c] << ',' << fmt(scenario.sensors.values[c])
        << '\n';
  }
}

std::vector<PartitionRow> read_partition(std::istream& in) {
  std::vector<PartitionRow> rows;
  std::string line;
  if (!std::getline(in, line) || line != "cell_x,cell_y,server_id,g_value") {
    throw Error(ErrorCode::ConfigError, "partition dump has an unexpected header");
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    PartitionRow row;
    char c1 = 0, c2 = 0, c3 = 0;
    if (!(ls >> row.x >> c1 >> row.y >> c2 >> row.server >> c3 >> row.g) || c1 != ',' || c2 != ',' || c3 != ',') {
      throw Error(ErrorCode::ConfigError, "malformed partition row '" + line + "'");
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<double> masses_from_dump(std::span<const PartitionRow> rows, double cell_volume, std::size_t server_count) {
  std::vector<double> masses(server_count, 0.0);
  for (const auto& r : rows) {
    if (r.server >= server_count) throw Error(ErrorCode::ConfigError, "dump names an unknown server");
    masses[r.server] += r.g;
  }
  for (double& m : masses) m *= cell_volume;
  return masses;
}

}  // namespace edgesync
