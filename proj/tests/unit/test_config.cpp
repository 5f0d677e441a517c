#include <gtest/gtest.h>

#include <fstream>

#include "edgesync/config.hpp"
#include "edgesync/error.hpp"
#include "scenarios.hpp"

using namespace edgesync;
using nlohmann::json;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::InvalidArgument;
}

json desk_json() {
  std::ifstream in(edgesync::testing::config_path("desk.json"));
  return json::parse(in);
}

}  // namespace

TEST(Config, DeskLoads) {
  const ScenarioConfig c = edgesync::testing::desk_config();
  EXPECT_EQ(c.servers.size(), 4u);
  EXPECT_EQ(c.dts.count, 60u);
  EXPECT_EQ(c.dts.types.size(), 3u);
  EXPECT_EQ(c.resolution, (std::vector<std::size_t>{200, 200}));
  EXPECT_EQ(c.sensing.density.kind, DensityKind::TruncatedGaussian);
  EXPECT_DOUBLE_EQ(sensing_sigma(c), 300.0);
  EXPECT_DOUBLE_EQ(c.solver.damping, 0.5);
  EXPECT_EQ(c.method, Method::Ot);
}

TEST(Config, PaperLoads) {
  const ScenarioConfig c = load_config(edgesync::testing::config_path("paper.json"));
  EXPECT_EQ(c.servers.size(), 4u);
  EXPECT_DOUBLE_EQ(c.dts.types[0].data_bits, 1e7);
}

TEST(Config, RoundTrip) {
  const ScenarioConfig c = edgesync::testing::desk_config();
  EXPECT_EQ(config_from_json(config_to_json(c)), c);

  ScenarioConfig d = c;
  d.sensing.rho_field = DensitySpec{DensityKind::GaussianMixture, {{1, 2, 3}}, {4}, {1}, 50};
  d.servers[2].reference_gain_db = -27;
  d.dts.mix = {1, 2, 3};
  d.solver.infeasible_policy = InfeasiblePolicy::Strict;
  d.method = Method::Snr;
  EXPECT_EQ(config_from_json(config_to_json(d)), d);
}

TEST(Config, Overrides) {
  json j = desk_json();
  apply_override(j, "dts.count=5");
  apply_override(j, "servers.1.compute_hz=1.2e10");
  apply_override(j, "method=snr");
  apply_override(j, "sensing.density.stds_m=[450]");
  const ScenarioConfig c = config_from_json(j);
  EXPECT_EQ(c.dts.count, 5u);
  EXPECT_DOUBLE_EQ(c.servers[1].compute_hz, 1.2e10);
  EXPECT_EQ(c.method, Method::Snr);
  EXPECT_DOUBLE_EQ(sensing_sigma(c), 450.0);

  const ScenarioConfig viaload =
      load_config(edgesync::testing::config_path("desk.json"), {"dts.count=5", "servers.1.compute_hz=1.2e10",
                                                                 "method=snr", "sensing.density.stds_m=[450]"});
  EXPECT_EQ(viaload, c);
}

TEST(Config, BadOverrides) {
  json j = desk_json();
  EXPECT_EQ(code_of([&] { apply_override(j, "novalue"); }), ErrorCode::ConfigError);
  EXPECT_EQ(code_of([&] { apply_override(j, "servers.9.compute_hz=1"); }), ErrorCode::ConfigError);
  EXPECT_EQ(code_of([&] { apply_override(j, "servers.x=1"); }), ErrorCode::ConfigError);
  EXPECT_EQ(code_of([&] { apply_override(j, "dts.count.deeper=1"); }), ErrorCode::ConfigError);
}

TEST(Config, RejectsUnknownKeys) {
  for (const char* path : {"extra", "zone.depth", "sensing.foo", "channel.fading", "servers.0.power",
                           "dts.kind", "dts.types.0.color", "solver.speed"}) {
    json j = desk_json();
    apply_override(j, std::string(path) + "=1");
    EXPECT_EQ(code_of([&] { config_from_json(j); }), ErrorCode::ConfigError) << path;
  }
}

TEST(Config, RejectsInvalidValues) {
  const std::vector<std::string> bad{"method=\"lp\"",          "solver.damping=0",
                                     "solver.damping=1.5",     "solver.damping_decay=-1",
                                     "solver.tolerance=0",     "solver.infeasible_policy=\"ignore\"",
                                     "dts.mix=[1]",            "servers=[]",
                                     "zone.resolution=\"x\"",  "dts.types=[]"};
  for (const auto& o : bad) {
    json j = desk_json();
    apply_override(j, o);
    EXPECT_EQ(code_of([&] { config_from_json(j); }), ErrorCode::ConfigError) << o;
  }
}

TEST(Config, MissingRequired) {
  json j = desk_json();
  j.erase("zone");
  EXPECT_EQ(code_of([&] { config_from_json(j); }), ErrorCode::ConfigError);
  j = desk_json();
  j["servers"][0].erase("compute_hz");
  EXPECT_EQ(code_of([&] { config_from_json(j); }), ErrorCode::ConfigError);
  EXPECT_EQ(code_of([&] { load_config("/nonexistent/file.json"); }), ErrorCode::ConfigError);
}

TEST(Config, MethodNames) {
  EXPECT_EQ(parse_method("ot"), Method::Ot);
  EXPECT_EQ(parse_method("snr"), Method::Snr);
  EXPECT_EQ(to_string(Method::Snr), "snr");
  EXPECT_THROW(parse_method("OT"), Error);
}
