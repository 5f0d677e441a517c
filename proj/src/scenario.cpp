#include "edgesync/scenario.hpp"

#include <cmath>
#include <string>

#include "edgesync/error.hpp"

namespace edgesync {

void SolverOptions::validate() const {
  if (!(tolerance > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be > 0");
  if (max_iterations == 0) throw Error(ErrorCode::InvalidArgument, "max_iterations must be >= 1");
  if (!(damping > 0.0 && damping <= 1.0)) throw Error(ErrorCode::InvalidArgument, "damping must lie in (0, 1]");
  if (!(damping_decay >= 0.0)) throw Error(ErrorCode::InvalidArgument, "damping_decay must be >= 0");
  if (!(alpha_floor > 0.0 && alpha_floor < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "alpha_floor must lie in (0, 1)");
  }
}

void Scenario::validate() const {
  if (servers.empty()) throw Error(ErrorCode::InvalidArgument, "at least one server is required");
  if (sensors.values.size() != grid.size() || rho.size() != grid.size()) {
    throw Error(ErrorCode::InvalidArgument, "density fields do not match the grid");
  }
  for (double r : rho) {
    if (!(r >= 0.0) || !std::isfinite(r)) throw Error(ErrorCode::InvalidArgument, "rho must be finite and >= 0");
  }
  for (std::size_t b = 0; b < servers.size(); ++b) {
    const auto& s = servers[b];
    if (!(s.compute_budget_hz > 0.0) || !(s.metaverse_bandwidth_hz > 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "server " + std::to_string(b) + " needs compute and bandwidth > 0");
    }
    if (s.reference_gain && !(*s.reference_gain > 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "server " + std::to_string(b) + " reference gain must be > 0");
    }
  }
  for (const auto& dt : dts) {
    if (!(dt.sync_intensity_hz > 0.0) || !(dt.data_bits > 0.0) || !(dt.complexity_cycles_per_bit > 0.0) ||
        !(dt.tx_power_w > 0.0) || !(dt.bandwidth_hz > 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "DT " + std::to_string(dt.id) + " has a non-positive parameter");
    }
  }
  const auto& p = params;
  if (!(p.slot_s > 0.0) || !(p.sensor_volume_m3 > 0.0) || !(p.total_sensors > 0.0) ||
      !(p.topo_complexity_cycles_per_bit > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "metaverse parameters must be > 0");
  }
  radio.validate();
  channel.validate();
  options.validate();
}

double PartitionState::dt_compute(ServerIndex b) const {
  double sum = 0.0;
  for (std::size_t k = 0; k < dt_server.size(); ++k) {
    if (dt_server[k] == b) sum += dt_phi[k];
  }
  return sum;
}

}  // namespace edgesync
