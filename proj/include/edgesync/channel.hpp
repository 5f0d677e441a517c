#pragma once

#include "edgesync/entities.hpp"
#include "edgesync/geometry.hpp"

namespace edgesync {

/// Log-distance path loss: g(d) = g0 * (max(d, d_min) / d0)^(-n).
struct ChannelModel {
  double reference_gain = 1e-3;  // linear, -30 dB at the reference distance
  double reference_distance_m = 1.0;
  double pathloss_exponent = 3.0;
  double min_distance_m = 1.0;

  void validate() const;
};

struct RadioParams {
  double sensor_tx_power_w = 1e-3;      // xi_q
  double noise_psd_w_per_hz = 1e-20;    // sigma_o^2, -170 dBm/Hz

  void validate() const;
};

double dbm_to_watt(double dbm) noexcept;
double watt_to_dbm(double watt) noexcept;
double db_to_linear(double db) noexcept;

double path_gain(const Vec3& tx, const Vec3& rx, const ChannelModel& model);

/// Channel model as seen from `server`, honoring its gain override.
ChannelModel model_for(const EdgeServer& server, const ChannelModel& model);

/// Signal-to-noise ratio of a sensor link. The sensors of a region share the
/// server band in time, so each transmission occupies the full W_b^s and the
/// noise power is sigma_o^2 * W_b^s regardless of the load.
double sensor_snr(const Vec3& cell, const EdgeServer& server, const RadioParams& radio,
                  const ChannelModel& model);

/// Per-sensor upload rate R = (W_b^s / q_b) log2(1 + SNR), bps.
double sensor_rate(const Vec3& cell, const EdgeServer& server, double load, const RadioParams& radio,
                   const ChannelModel& model);

/// DT uplink rate r = W_k log2(1 + h zeta_k / (sigma_o^2 W_k)), bps.
double dt_rate(const Vec3& pt, const EdgeServer& server, const DigitalTwin& dt, const RadioParams& radio,
               const ChannelModel& model);

}  // namespace edgesync
