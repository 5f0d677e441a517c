// edgesync: run, sweep and partition-dump commands over a JSON scenario.
//
// Exit status: 0 on success, 1 for config or usage errors, 2 when a strict
// policy rejects an infeasible DT deadline or an exhausted server.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "edgesync/error.hpp"
#include "edgesync/harness.hpp"

namespace es = edgesync;

namespace {

struct Common {
  std::string config;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  std::string method;
  std::string out;
};

es::ScenarioConfig load(const Common& c) {
  es::ScenarioConfig config = es::load_config(c.config, c.overrides);
  if (c.seed) config.dts.seed = *c.seed;
  if (!c.method.empty()) config.method = es::parse_method(c.method);
  return config;
}

// Writes to --out when given, stdout otherwise.
template <typename F>
void emit(const std::string& path, F&& write) {
  if (path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream file(path);
  if (!file) throw es::Error(es::ErrorCode::ConfigError, "cannot write '" + path + "'");
  write(file);
}

std::vector<std::string> split_values(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) items.push_back(item);
  }
  if (items.empty()) throw es::Error(es::ErrorCode::ConfigError, "--values needs at least one value");
  return items;
}

template <typename T>
std::vector<T> parse_values(const std::string& text) {
  std::vector<T> values;
  for (const auto& item : split_values(text)) {
    std::istringstream in(item);
    T v{};
    if (!(in >> v) || !in.eof()) throw es::Error(es::ErrorCode::ConfigError, "bad sweep value '" + item + "'");
    values.push_back(v);
  }
  return values;
}

void print_summary(const es::RunOutput& run) {
  const auto& r = run.record;
  const auto& rep = run.result.report;
  std::fprintf(stderr, "%s: K=%zu avg sub-sync %.6g s, %zu iterations, %s, violation mass %.3g\n", r.method.c_str(),
               r.K, r.avg_sub_sync_s, r.iterations, r.converged ? "converged" : "not converged", r.violation_mass);
  for (std::size_t b = 0; b < r.alpha.size(); ++b) {
    std::fprintf(stderr, "  server %zu: alpha %.4f  T %.4g s  psi %.4g Hz  DTs %zu\n", b, r.alpha[b], r.sub_sync_s[b],
                 r.psi_hz[b], r.dt_count[b]);
  }
  if (!rep.infeasible_dts.empty()) {
    std::fprintf(stderr, "  %zu DTs miss their deadline on upload alone (deadline constraint)\n", rep.infeasible_dts.size());
  }
  if (!rep.dropped_dts.empty()) {
    std::fprintf(stderr, "  %zu DTs shed to keep render compute positive (compute budget constraint)\n", rep.dropped_dts.size());
  }
}

void add_common(CLI::App* cmd, Common& c, bool with_method) {
  cmd->add_option("--config", c.config, "scenario JSON file")->required();
  cmd->add_option("--set", c.overrides, "dotted.path=value override, repeatable");
  cmd->add_option("--seed", c.seed, "DT placement seed");
  cmd->add_option("--out", c.out, "output file (default stdout)");
  if (with_method) cmd->add_option("--method", c.method, "ot or snr")->check(CLI::IsMember({"ot", "snr"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sensor-region partitioning and DT placement for edge metaverse synchronization"};
  app.require_subcommand(1);

  Common run_opts, sweep_opts, dump_opts;
  bool summary = false;
  CLI::App* run = app.add_subcommand("run", "solve one scenario and print its metrics row");
  add_common(run, run_opts, true);
  run->add_flag("--summary", summary, "also print a readable summary to stderr");

  std::string axis, values;
  CLI::App* sweep = app.add_subcommand("sweep", "paired OT/SNR runs over DT counts or sensing spreads");
  add_common(sweep, sweep_opts, false);
  sweep->add_option("--axis", axis, "dts or sigma")->required()->check(CLI::IsMember({"dts", "sigma"}));
  sweep->add_option("--values", values, "comma-separated values")->required();

  CLI::App* dump = app.add_subcommand("dump-partition", "write the cell-to-server assignment as CSV");
  add_common(dump, dump_opts, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*run) {
      const es::RunOutput out = es::execute(load(run_opts));
      emit(run_opts.out, [&](std::ostream& os) { es::write_csv(os, std::span(&out.record, 1)); });
      if (summary) print_summary(out);
    } else if (*sweep) {
      const es::ScenarioConfig config = load(sweep_opts);
      std::vector<es::MetricsRecord> records;
      if (axis == "dts") {
        records = es::sweep_dts(config, parse_values<std::size_t>(values));
      } else {
        records = es::sweep_sigma(config, parse_values<double>(values));
      }
      emit(sweep_opts.out, [&](std::ostream& os) { es::write_csv(os, records); });
    } else if (*dump) {
      const es::RunOutput out = es::execute(load(dump_opts));
      emit(dump_opts.out, [&](std::ostream& os) { es::write_partition(os, out.scenario, out.result.state); });
    }
  } catch (const es::Error& e) {
    std::cerr << "edgesync: " << e.what() << '\n';
    const bool infeasible =
        e.code() == es::ErrorCode::InfeasibleDeadline || e.code() == es::ErrorCode::ComputeExhausted;
    return infeasible ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "edgesync: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
