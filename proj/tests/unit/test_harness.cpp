#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "edgesync/error.hpp"
#include "edgesync/harness.hpp"
#include "scenarios.hpp"

using namespace edgesync;

namespace {

ScenarioConfig small_desk(std::size_t res = 50) {
  ScenarioConfig c = edgesync::testing::desk_config();
  c.resolution = {res, res};
  return c;
}

}  // namespace

TEST(PlaceDts, CountTypesAndDeterminism) {
  const ScenarioConfig c = small_desk();
  const ZoneGrid grid = build_grid(c.extent_m, c.resolution);
  const auto a = place_dts(c, grid);
  const auto b = place_dts(c, grid);
  ASSERT_EQ(a.size(), 60u);
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].id, k);
    EXPECT_EQ(a[k].type_index, k % 3);
    EXPECT_EQ(a[k].position, b[k].position);
    EXPECT_DOUBLE_EQ(a[k].sync_intensity_hz, c.dts.types[k % 3].sync_intensity_hz);
  }
}

TEST(PlaceDts, SmallerFleetIsPrefix) {
  ScenarioConfig c = small_desk();
  const ZoneGrid grid = build_grid(c.extent_m, c.resolution);
  const auto big = place_dts(c, grid);
  c.dts.count = 17;
  const auto small = place_dts(c, grid);
  for (std::size_t k = 0; k < small.size(); ++k) EXPECT_EQ(small[k].position, big[k].position);
}

TEST(PlaceDts, WeightedMix) {
  ScenarioConfig c = small_desk();
  c.dts.mix = {2, 1, 1};
  c.dts.count = 400;
  const auto dts = place_dts(c, build_grid(c.extent_m, c.resolution));
  std::vector<std::size_t> counts(3, 0);
  for (const auto& dt : dts) ++counts[dt.type_index];
  EXPECT_EQ(counts, (std::vector<std::size_t>{200, 100, 100}));
}

TEST(Record, SubSyncTimesRecompute) {
  const RunOutput out = execute(small_desk());
  const auto& r = out.record;
  double sum = 0.0;
  for (std::size_t b = 0; b < r.sub_sync_s.size(); ++b) {
    const double direct = region_sub_sync_time(out.scenario, out.result.state, static_cast<ServerIndex>(b));
    EXPECT_NEAR(r.sub_sync_s[b], direct, 1e-9 * direct);
    sum += r.sub_sync_s[b];
  }
  EXPECT_NEAR(r.avg_sub_sync_s, sum / 4, 1e-15 * sum);
  EXPECT_DOUBLE_EQ(r.avg_sub_sync_s, out.result.state.objective);
  EXPECT_EQ(r.alpha, out.result.state.masses);
  EXPECT_NEAR(std::accumulate(r.alpha.begin(), r.alpha.end(), 0.0), 1.0, 1e-12);
  std::size_t served = 0;
  for (auto n : r.dt_count) served += n;
  EXPECT_EQ(served + r.infeasible_dts + r.dropped_dts, r.K);
  EXPECT_DOUBLE_EQ(r.regional_dt_density, static_cast<double>(served) / 4);
}

TEST(Record, SingleServer) {
  ScenarioConfig c = small_desk(20);
  c.servers.resize(1);
  const MetricsRecord r = run_scenario(c);
  EXPECT_TRUE(r.converged);
  ASSERT_EQ(r.alpha.size(), 1u);
  EXPECT_NEAR(r.alpha[0], 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(r.avg_sub_sync_s, r.sub_sync_s[0]);
}

TEST(Record, NoDtsLeavesFullBudget) {
  ScenarioConfig c = small_desk();
  c.dts.count = 0;
  for (Method m : {Method::Ot, Method::Snr}) {
    c.method = m;
    const MetricsRecord r = run_scenario(c);
    for (std::size_t b = 0; b < 4; ++b) EXPECT_EQ(r.psi_hz[b], c.servers[b].compute_hz);
    EXPECT_EQ(r.regional_dt_density, 0.0);
  }
}

TEST(Record, BitForBitReproducible) {
  const ScenarioConfig c = small_desk();
  const MetricsRecord a = run_scenario(c);
  const MetricsRecord b = run_scenario(c);
  EXPECT_EQ(csv_row(a), csv_row(b));
  EXPECT_EQ(a.alpha, b.alpha);
  EXPECT_EQ(a.sub_sync_s, b.sub_sync_s);
}

TEST(Dump, RoundTripsMasses) {
  const RunOutput out = execute(small_desk());
  std::stringstream ss;
  write_partition(ss, out.scenario, out.result.state);
  const auto rows = read_partition(ss);
  ASSERT_EQ(rows.size(), out.scenario.grid.size());
  const auto masses = masses_from_dump(rows, out.scenario.grid.cell_volume(), 4);
  const auto raw = region_masses(out.scenario.grid, out.result.state.assignment, out.scenario.sensors, 4);
  for (std::size_t b = 0; b < 4; ++b) EXPECT_NEAR(masses[b], raw[b], 1e-12);
  for (std::size_t c = 0; c < rows.size(); ++c) EXPECT_EQ(rows[c].server, out.result.state.assignment[c]);
}

TEST(Dump, RejectsBadInput) {
  std::stringstream bad_header("x,y,z\n");
  EXPECT_THROW(read_partition(bad_header), Error);
  std::stringstream bad_row("cell_x,cell_y,server_id,g_value\n1,2;3,4\n");
  EXPECT_THROW(read_partition(bad_row), Error);
  const std::vector<PartitionRow> rows{{0, 0, 5, 1.0}};
  EXPECT_THROW(masses_from_dump(rows, 1.0, 2), Error);
}

TEST(Sweep, PairsPerPoint) {
  const ScenarioConfig c = small_desk(40);
  const std::vector<std::size_t> counts{0, 20, 40};
  const auto recs = sweep_dts(c, counts);
  ASSERT_EQ(recs.size(), 6u);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    EXPECT_EQ(recs[2 * i].method, "ot");
    EXPECT_EQ(recs[2 * i + 1].method, "snr");
    EXPECT_EQ(recs[2 * i].K, counts[i]);
    EXPECT_EQ(recs[2 * i + 1].K, counts[i]);
  }
  ScenarioConfig single = c;
  single.dts.count = 20;
  EXPECT_EQ(csv_row(run_scenario(single)), csv_row(recs[2]));

  const std::vector<double> sigmas{200, 500};
  const auto srecs = sweep_sigma(c, sigmas);
  ASSERT_EQ(srecs.size(), 4u);
  EXPECT_DOUBLE_EQ(srecs[0].sigma_m, 200);
  EXPECT_DOUBLE_EQ(srecs[3].sigma_m, 500);

  EXPECT_THROW(sweep_dts(c, std::vector<std::size_t>{}), Error);
  EXPECT_THROW(sweep_sigma(c, std::vector<double>{}), Error);
  ScenarioConfig uniform = c;
  uniform.sensing.density = {};
  EXPECT_THROW(sweep_sigma(uniform, sigmas), Error);
}

TEST(Oracle, SingleCell) {
  ScenarioConfig c = edgesync::testing::random_oracle_config(1);
  c.resolution = {1, 1};
  const Scenario s = build_scenario(c);
  const OracleResult o = brute_force_oracle(s);
  EXPECT_EQ(o.evaluated, 2u);
  // The lone cell goes to whichever server is cheaper on its own.
  const CostTable t(s);
  double best = INFINITY;
  for (ServerIndex b = 0; b < 2; ++b) {
    best = std::min(best, settle(s, t, {b}).objective);
  }
  EXPECT_DOUBLE_EQ(o.objective, best);
}

TEST(Oracle, TwoByTwoEnumeratesAll) {
  ScenarioConfig c = edgesync::testing::random_oracle_config(4);
  c.resolution = {2, 2};
  const Scenario s = build_scenario(c);
  const OracleResult o = brute_force_oracle(s);
  EXPECT_EQ(o.evaluated, 16u);
  const CostTable t(s);
  for (std::size_t code = 0; code < 16; ++code) {
    std::vector<ServerIndex> labels(4);
    for (std::size_t i = 0; i < 4; ++i) labels[i] = (code >> i) & 1u;
    EXPECT_LE(o.objective, settle(s, t, labels).objective);
  }
  EXPECT_LE(o.objective, solve(s).state.objective);
}

TEST(Oracle, RefusesLargeSpaces) {
  ScenarioConfig c = edgesync::testing::random_oracle_config(2);
  c.resolution = {5, 4};
  try {
    brute_force_oracle(build_scenario(c));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SearchSpaceTooLarge);
  }
}

TEST(Csv, HeaderAndRow) {
  EXPECT_EQ(csv_header(2),
            "method,K,sigma_m,avg_sub_sync_s,iterations,violation_mass,alpha_0,T_0_s,psi_0_hz,dt_count_0,"
            "alpha_1,T_1_s,psi_1_hz,dt_count_1,regional_dt_density,converged");
  const MetricsRecord r = run_scenario(small_desk(20));
  const std::string row = csv_row(r);
  const std::string header = csv_header(4);
  EXPECT_EQ(std::count(row.begin(), row.end(), ','), std::count(header.begin(), header.end(), ','));
  std::stringstream ss;
  write_csv(ss, std::vector<MetricsRecord>{r});
  EXPECT_EQ(ss.str(), csv_header(4) + "\n" + row + "\n");
}
