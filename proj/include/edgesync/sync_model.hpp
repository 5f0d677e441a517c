#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "edgesync/channel.hpp"
#include "edgesync/entities.hpp"
#include "edgesync/scenario.hpp"

namespace edgesync {

/// A sensed location: cell center and its sensing density rho (bps/m^3).
struct SensorSite {
  Vec3 position;
  double rho = 0.0;
};

// Sensor side. `load` is the effective sensor count q_b = Q * alpha_b of the
// region that owns the site.

double sensor_upload_time(const SensorSite& site, const EdgeServer& server, double load,
                          const MetaverseParams& params, const RadioParams& radio, const ChannelModel& model);

double sensor_render_time(const SensorSite& site, double load, double render_compute_hz,
                          const MetaverseParams& params);

/// Upload plus render time of one sensor volume.
double sensor_sync_time(const SensorSite& site, const EdgeServer& server, double load, double render_compute_hz,
                        const MetaverseParams& params, const RadioParams& radio, const ChannelModel& model);

/// Load-free unit cost F(omega, kappa_b) = rho / (W_b^s log2(1 + beta / sigma^2)) + Lambda rho / psi_b.
/// Multiplying by Q * Delta * epsilon * alpha_b gives the sync time of the site.
double unit_cost(const SensorSite& site, const EdgeServer& server, double render_compute_hz,
                 const MetaverseParams& params, const RadioParams& radio, const ChannelModel& model);

/// Q * Delta * epsilon * alpha_b.
double load_factor(double mass, const MetaverseParams& params) noexcept;

/// Sub-synchronization time T_b of server `b`, summed cell by cell from the
/// upload and render times.
double region_sub_sync_time(const Scenario& scenario, const PartitionState& state, ServerIndex b);

// DT side.

double dt_upload_time(const DigitalTwin& dt, const EdgeServer& server, const RadioParams& radio,
                      const ChannelModel& model);
double dt_execute_time(const DigitalTwin& dt, double compute_hz);
double dt_sync_time(const DigitalTwin& dt, const EdgeServer& server, double compute_hz, const RadioParams& radio,
                    const ChannelModel& model);

/// Communication part of the unit cost, cached per (cell, server). The
/// render part depends on psi and is added on the fly.
class CostTable {
 public:
  explicit CostTable(const Scenario& scenario);

  std::size_t cells() const noexcept { return cells_; }
  std::size_t servers() const noexcept { return servers_; }

  double comm(std::size_t cell, ServerIndex b) const { return comm_[cell * servers_ + b]; }
  double render(std::size_t cell, double render_compute_hz) const {
    return render_coeff_[cell] / render_compute_hz;
  }
  double unit_cost(std::size_t cell, ServerIndex b, double render_compute_hz) const {
    return comm(cell, b) + render(cell, render_compute_hz);
  }

 private:
  std::size_t cells_;
  std::size_t servers_;
  std::vector<double> comm_;
  std::vector<double> render_coeff_;  // Lambda * rho
};

}  // namespace edgesync
