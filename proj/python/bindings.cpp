#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "edgesync/config.hpp"
#include "edgesync/error.hpp"
#include "edgesync/harness.hpp"

namespace py = pybind11;
using namespace edgesync;

namespace {

ScenarioConfig parse(const std::string& text, const std::vector<std::string>& overrides) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ConfigError, std::string("malformed JSON: ") + e.what());
  }
  for (const auto& o : overrides) apply_override(j, o);
  return config_from_json(j);
}

py::dict record_dict(const MetricsRecord& r) {
  py::dict d;
  d["method"] = r.method;
  d["K"] = r.K;
  d["sigma_m"] = r.sigma_m;
  d["avg_sub_sync_s"] = r.avg_sub_sync_s;
  d["iterations"] = r.iterations;
  d["violation_mass"] = r.violation_mass;
  d["converged"] = r.converged;
  d["alpha"] = r.alpha;
  d["sub_sync_s"] = r.sub_sync_s;
  d["psi_hz"] = r.psi_hz;
  d["dt_count"] = r.dt_count;
  d["regional_dt_density"] = r.regional_dt_density;
  d["infeasible_dts"] = r.infeasible_dts;
  d["dropped_dts"] = r.dropped_dts;
  return d;
}

py::list records_list(const std::vector<MetricsRecord>& records) {
  py::list out;
  for (const auto& r : records) out.append(record_dict(r));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Edge partitioning of metaverse sensing regions with digital-twin compute budgets";
  py::register_exception<Error>(m, "EdgesyncError", PyExc_RuntimeError);

  m.def(
      "normalize_config",
      [](const std::string& text, const std::vector<std::string>& overrides) {
        return config_to_json(parse(text, overrides)).dump();
      },
      py::arg("config_json"), py::arg("overrides") = std::vector<std::string>{},
      "Validates a config and returns it with every default filled in.");

  m.def(
      "run",
      [](const std::string& text, const std::vector<std::string>& overrides) {
        const ScenarioConfig c = parse(text, overrides);
        py::gil_scoped_release release;
        MetricsRecord r = run_scenario(c);
        py::gil_scoped_acquire acquire;
        return record_dict(r);
      },
      py::arg("config_json"), py::arg("overrides") = std::vector<std::string>{});

  m.def(
      "solve",
      [](const std::string& text, const std::vector<std::string>& overrides) {
        const ScenarioConfig c = parse(text, overrides);
        RunOutput out = [&] {
          py::gil_scoped_release release;
          return execute(c);
        }();
        const auto& st = out.result.state;
        const auto& rep = out.result.report;
        py::dict d = record_dict(out.record);
        d["assignment"] = st.assignment;
        d["masses"] = st.masses;
        d["marginal"] = st.alpha;
        d["dt_server"] = st.dt_server;
        d["dt_phi_hz"] = st.dt_phi;
        d["objective_history"] = rep.objective_history;
        d["self_violation_mass"] = rep.self_violation_mass;
        d["mass_residual"] = rep.mass_residual;
        d["infeasible_dt_ids"] = rep.infeasible_dts;
        d["dropped_dt_ids"] = rep.dropped_dts;
        d["mean_dt_slack_s"] = rep.mean_dt_slack_s;
        std::vector<double> xs, ys;
        for (const Vec3& p : out.scenario.grid.centers()) {
          xs.push_back(p.x);
          ys.push_back(p.y);
        }
        d["cell_x"] = xs;
        d["cell_y"] = ys;
        d["g_value"] = out.scenario.sensors.values;
        d["cell_volume"] = out.scenario.grid.cell_volume();
        return d;
      },
      py::arg("config_json"), py::arg("overrides") = std::vector<std::string>{},
      "Solves one scenario and returns the metrics plus the full partition.");

  m.def(
      "sweep_dts",
      [](const std::string& text, const std::vector<std::size_t>& counts, const std::vector<std::string>& overrides) {
        const ScenarioConfig c = parse(text, overrides);
        std::vector<MetricsRecord> r;
        {
          py::gil_scoped_release release;
          r = sweep_dts(c, counts);
        }
        return records_list(r);
      },
      py::arg("config_json"), py::arg("counts"), py::arg("overrides") = std::vector<std::string>{});

  m.def(
      "sweep_sigma",
      [](const std::string& text, const std::vector<double>& sigmas, const std::vector<std::string>& overrides) {
        const ScenarioConfig c = parse(text, overrides);
        std::vector<MetricsRecord> r;
        {
          py::gil_scoped_release release;
          r = sweep_sigma(c, sigmas);
        }
        return records_list(r);
      },
      py::arg("config_json"), py::arg("sigmas"), py::arg("overrides") = std::vector<std::string>{});

  m.def(
      "dump_partition",
      [](const std::string& text, const std::vector<std::string>& overrides) {
        const RunOutput out = execute(parse(text, overrides));
        std::ostringstream os;
        write_partition(os, out.scenario, out.result.state);
        return os.str();
      },
      py::arg("config_json"), py::arg("overrides") = std::vector<std::string>{},
      "Partition dump as CSV text with header cell_x,cell_y,server_id,g_value.");

  m.def("csv_header", &csv_header, py::arg("server_count"));
}
