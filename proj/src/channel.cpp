#include "edgesync/channel.hpp"

#include <algorithm>
#include <cmath>

#include "edgesync/error.hpp"

namespace edgesync {

void ChannelModel::validate() const {
  if (!(reference_gain > 0.0) || !(reference_distance_m > 0.0) || !(pathloss_exponent >= 0.0) ||
      !(min_distance_m > 0.0)) {
    throw Error(ErrorCode::InvalidArgument,
                "channel needs reference_gain > 0, reference_distance > 0, exponent >= 0, min_distance > 0");
  }
}

void RadioParams::validate() const {
  if (!(sensor_tx_power_w > 0.0) || !(noise_psd_w_per_hz > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "radio powers must be > 0");
  }
}

double dbm_to_watt(double dbm) noexcept { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double watt_to_dbm(double watt) noexcept { return 10.0 * std::log10(watt) + 30.0; }
double db_to_linear(double db) noexcept { return std::pow(10.0, db / 10.0); }

double path_gain(const Vec3& tx, const Vec3& rx, const ChannelModel& model) {
  const double d = std::max(distance(tx, rx), model.min_distance_m);
  return model.reference_gain * std::pow(d / model.reference_distance_m, -model.pathloss_exponent);
}

ChannelModel model_for(const EdgeServer& server, const ChannelModel& model) {
  ChannelModel m = model;
  if (server.reference_gain) m.reference_gain = *server.reference_gain;
  return m;
}

double sensor_snr(const Vec3& cell, const EdgeServer& server, const RadioParams& radio,
                  const ChannelModel& model) {
  const double h = path_gain(cell, server.position, model_for(server, model));
  return h * radio.sensor_tx_power_w / (radio.noise_psd_w_per_hz * server.metaverse_bandwidth_hz);
}

double sensor_rate(const Vec3& cell, const EdgeServer& server, double load, const RadioParams& radio,
                   const ChannelModel& model) {
  if (!(load > 0.0)) throw Error(ErrorCode::NonPositiveLoad, "sensor load q_b must be > 0");
  return server.metaverse_bandwidth_hz / load * std::log2(1.0 + sensor_snr(cell, server, radio, model));
}

double dt_rate(const Vec3& pt, const EdgeServer& server, const DigitalTwin& dt, const RadioParams& radio,
               const ChannelModel& model) {
  const double h = path_gain(pt, server.position, model_for(server, model));
  const double snr = h * dt.tx_power_w / (radio.noise_psd_w_per_hz * dt.bandwidth_hz);
  return dt.bandwidth_hz * std::log2(1.0 + snr);
}

}  // namespace edgesync
