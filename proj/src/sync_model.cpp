#include "edgesync/sync_model.hpp"

#include <cmath>
#include <limits>

#include "edgesync/error.hpp"

namespace edgesync {

namespace {

double comm_cost(const SensorSite& site, const EdgeServer& server, const RadioParams& radio,
                 const ChannelModel& model) {
  if (site.rho == 0.0) return 0.0;
  const double spectral = server.metaverse_bandwidth_hz * std::log2(1.0 + sensor_snr(site.position, server, radio, model));
  if (!(spectral > 0.0)) return std::numeric_limits<double>::infinity();
  return site.rho / spectral;
}

}  // namespace

double sensor_upload_time(const SensorSite& site, const EdgeServer& server, double load,
                          const MetaverseParams& params, const RadioParams& radio, const ChannelModel& model) {
  const double rate = sensor_rate(site.position, server, load, radio, model);
  if (!(rate > 0.0)) throw Error(ErrorCode::ZeroRate, "sensor link has zero rate");
  return params.slot_s * params.sensor_volume_m3 * site.rho / rate;
}

double sensor_render_time(const SensorSite& site, double load, double render_compute_hz,
                          const MetaverseParams& params) {
  if (!(render_compute_hz > 0.0)) throw Error(ErrorCode::NoRenderBudget, "render compute psi_b must be > 0");
  return params.topo_complexity_cycles_per_bit * params.slot_s * params.sensor_volume_m3 * load * site.rho /
         render_compute_hz;
}

double sensor_sync_time(const SensorSite& site, const EdgeServer& server, double load, double render_compute_hz,
                        const MetaverseParams& params, const RadioParams& radio, const ChannelModel& model) {
  return sensor_upload_time(site, server, load, params, radio, model) +
         sensor_render_time(site, load, render_compute_hz, params);
}

double unit_cost(const SensorSite& site, const EdgeServer& server, double render_compute_hz,
                 const MetaverseParams& params, const RadioParams& radio, const ChannelModel& model) {
  if (!(render_compute_hz > 0.0)) throw Error(ErrorCode::NoRenderBudget, "render compute psi_b must be > 0");
  return comm_cost(site, server, radio, model) +
         params.topo_complexity_cycles_per_bit * site.rho / render_compute_hz;
}

double load_factor(double mass, const MetaverseParams& params) noexcept {
  return params.total_sensors * params.slot_s * params.sensor_volume_m3 * mass;
}

double region_sub_sync_time(const Scenario& scenario, const PartitionState& state, ServerIndex b) {
  const auto& grid = scenario.grid;
  const double load = scenario.params.total_sensors * state.masses.at(b);
  const EdgeServer& server = scenario.servers.at(b);
  double total = 0.0;
  bool empty = true;
  for (std::size_t c = 0; c < grid.size(); ++c) {
    if (state.assignment[c] != b) continue;
    empty = false;
    const SensorSite site{grid.center(c), scenario.rho[c]};
    const double t = sensor_sync_time(site, server, load, state.psi.at(b), scenario.params, scenario.radio,
                                      scenario.channel);
    total += t * scenario.sensors.values[c] * grid.cell_volume();
  }
  return empty ? 0.0 : total;
}

double dt_upload_time(const DigitalTwin& dt, const EdgeServer& server, const RadioParams& radio,
                      const ChannelModel& model) {
  const double r = dt_rate(dt.position, server, dt, radio, model);
  if (!(r > 0.0)) throw Error(ErrorCode::ZeroRate, "DT uplink has zero rate");
  return dt.data_bits / r;
}

double dt_execute_time(const DigitalTwin& dt, double compute_hz) {
  if (!(compute_hz > 0.0)) throw Error(ErrorCode::NoComputeBudget, "DT compute phi must be > 0");
  return dt.complexity_cycles_per_bit * dt.data_bits / compute_hz;
}

double dt_sync_time(const DigitalTwin& dt, const EdgeServer& server, double compute_hz, const RadioParams& radio,
                    const ChannelModel& model) {
  return dt_upload_time(dt, server, radio, model) + dt_execute_time(dt, compute_hz);
}

CostTable::CostTable(const Scenario& scenario)
    : cells_(scenario.grid.size()),
      servers_(scenario.servers.size()),
      comm_(cells_ * servers_),
      render_coeff_(cells_) {
  for (std::size_t c = 0; c < cells_; ++c) {
    const SensorSite site{scenario.grid.center(c), scenario.rho[c]};
    render_coeff_[c] = scenario.params.topo_complexity_cycles_per_bit * site.rho;
    for (std::size_t b = 0; b < servers_; ++b) {
      comm_[c * servers_ + b] = comm_cost(site, scenario.servers[b], scenario.radio, scenario.channel);
    }
  }
}

}  // namespace edgesync
