#include <gtest/gtest.h>

#include <cmath>

#include "edgesync/channel.hpp"
#include "edgesync/error.hpp"

using namespace edgesync;

namespace {

EdgeServer server_at(Vec3 p, double bandwidth = 1e7) { return {p, 8e9, bandwidth, std::nullopt}; }

DigitalTwin dt_at(Vec3 p, double power_w, double bandwidth) {
  DigitalTwin dt;
  dt.position = p;
  dt.sync_intensity_hz = 10;
  dt.data_bits = 1e4;
  dt.complexity_cycles_per_bit = 10;
  dt.tx_power_w = power_w;
  dt.bandwidth_hz = bandwidth;
  return dt;
}

}  // namespace

TEST(Units, Conversions) {
  EXPECT_NEAR(dbm_to_watt(30), 1.0, 1e-15);
  EXPECT_NEAR(dbm_to_watt(0), 1e-3, 1e-18);
  EXPECT_NEAR(dbm_to_watt(-170), 1e-20, 1e-33);
  EXPECT_NEAR(watt_to_dbm(0.3), 24.771212547196626, 1e-12);
  EXPECT_NEAR(db_to_linear(-30), 1e-3, 1e-18);
}

TEST(PathGain, ReferenceDistance) {
  const ChannelModel m;
  EXPECT_DOUBLE_EQ(path_gain({0, 0, 0}, {1, 0, 0}, m), 1e-3);
}

TEST(PathGain, PowerLaw) {
  const ChannelModel m;
  EXPECT_NEAR(path_gain({0, 0, 0}, {10, 0, 0}, m), 1e-6, 1e-18);
}

TEST(PathGain, ClampedAtMinimumDistance) {
  ChannelModel m;
  m.min_distance_m = 2.0;
  const double g0 = path_gain({3, 3, 0}, {3, 3, 0}, m);
  EXPECT_TRUE(std::isfinite(g0));
  EXPECT_DOUBLE_EQ(g0, 1e-3 / 8.0);
}

TEST(PathGain, ServerOverride) {
  EdgeServer s = server_at({0, 0, 0});
  s.reference_gain = 2e-3;
  EXPECT_DOUBLE_EQ(path_gain({1, 0, 0}, s.position, model_for(s, ChannelModel{})), 2e-3);
}

TEST(ChannelModel, Validation) {
  ChannelModel m;
  m.reference_gain = 0;
  EXPECT_THROW(m.validate(), Error);
  m = {};
  m.pathloss_exponent = -1;
  EXPECT_THROW(m.validate(), Error);
  m = {};
  m.min_distance_m = 0;
  EXPECT_THROW(m.validate(), Error);
  RadioParams r;
  r.noise_psd_w_per_hz = 0;
  EXPECT_THROW(r.validate(), Error);
}

TEST(SensorRate, UnitSnrGivesBandwidthOverLoad) {
  // Pick the distance at which h * xi / (sigma^2 W) = 1.
  const RadioParams radio;
  const ChannelModel m;
  const double W = 1e7;
  const double d = std::cbrt(1e-3 * radio.sensor_tx_power_w / (radio.noise_psd_w_per_hz * W));
  const EdgeServer s = server_at({0, 0, 0}, W);
  EXPECT_NEAR(sensor_snr({d, 0, 0}, s, radio, m), 1.0, 1e-12);
  EXPECT_NEAR(sensor_rate({d, 0, 0}, s, 10, radio, m), 1e6, 1e-6);
}

TEST(SensorRate, SnrThreeDoublesBandwidth) {
  const RadioParams radio;
  const ChannelModel m;
  const double W = 1e7;
  const double d = std::cbrt(1e-3 * radio.sensor_tx_power_w / (3 * radio.noise_psd_w_per_hz * W));
  EXPECT_NEAR(sensor_rate({d, 0, 0}, server_at({0, 0, 0}, W), 1, radio, m), 2 * W, 1e-4);
}

TEST(SensorRate, DeskGeometryOracle) {
  // Server (500, 500), cell (750, 750): d = 250 sqrt(2), h = 1e-3 d^-3.
  const RadioParams radio;
  const ChannelModel m;
  const double d = 250.0 * std::sqrt(2.0);
  const double h = 1e-3 / (d * d * d);
  const double snr = h * 1e-3 / (1e-20 * 1e7);
  const double expected = 1e7 / 250.0 * std::log2(1.0 + snr);
  EXPECT_NEAR(sensor_rate({750, 750, 0}, server_at({500, 500, 0}), 250.0, radio, m), expected, 1e-9 * expected);
}

TEST(SensorRate, ScalesInverselyWithLoad) {
  const RadioParams radio;
  const ChannelModel m;
  const EdgeServer s = server_at({100, 200, 0});
  for (double c : {0.5, 3.0, 1234.5}) {
    const double r1 = sensor_rate({900, 40, 0}, s, c, radio, m);
    const double r2 = sensor_rate({900, 40, 0}, s, 2 * c, radio, m);
    EXPECT_DOUBLE_EQ(r2, r1 / 2);
  }
  EXPECT_THROW(sensor_rate({0, 0, 0}, s, 0.0, radio, m), Error);
}

TEST(DtRate, UnitSnr) {
  const RadioParams radio;
  const ChannelModel m;
  const double W = 1e6;
  const double d = std::cbrt(1e-3 * 0.1 / (radio.noise_psd_w_per_hz * W));
  EXPECT_NEAR(dt_rate({d, 0, 0}, server_at({0, 0, 0}), dt_at({}, 0.1, W), radio, m), 1e6, 1e-6);
}

TEST(DtRate, ZeroGainGivesZeroRate) {
  const RadioParams radio;
  ChannelModel m;
  m.pathloss_exponent = 400;  // gain underflows to exactly zero
  EXPECT_EQ(dt_rate({1e5, 0, 0}, server_at({0, 0, 0}), dt_at({}, 0.1, 1e6), radio, m), 0.0);
}

TEST(DtRate, TypeThreeOracle) {
  const RadioParams radio;
  const ChannelModel m;
  const Vec3 pt{1200, 300, 0};
  const EdgeServer s = server_at({1500, 500, 0});
  const double d = std::hypot(300.0, 200.0);
  const double expected = 1e6 * std::log2(1.0 + 1e-3 * std::pow(d, -3) * 0.3 / (1e-20 * 1e6));
  EXPECT_NEAR(dt_rate(pt, s, dt_at(pt, 0.3, 1e6), radio, m), expected, 1e-9 * expected);
}

TEST(Rates, MonotoneInDistanceAndPower) {
  const RadioParams radio;
  const ChannelModel m;
  const EdgeServer s = server_at({0, 0, 0});
  double last_sensor = INFINITY, last_dt = INFINITY;
  for (double d = 1.5; d < 3000; d *= 1.7) {
    const double rs = sensor_rate({d, 0, 0}, s, 100, radio, m);
    const double rd = dt_rate({d, 0, 0}, s, dt_at({}, 0.2, 1e6), radio, m);
    EXPECT_LT(rs, last_sensor);
    EXPECT_LT(rd, last_dt);
    EXPECT_GE(rs, 0.0);
    last_sensor = rs;
    last_dt = rd;
    EXPECT_GT(dt_rate({d, 0, 0}, s, dt_at({}, 0.3, 1e6), radio, m), rd);
    RadioParams louder = radio;
    louder.sensor_tx_power_w *= 2;
    EXPECT_GT(sensor_rate({d, 0, 0}, s, 100, louder, m), rs);
  }
}
