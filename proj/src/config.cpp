#include "edgesync/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "edgesync/error.hpp"

namespace edgesync {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::ConfigError, what); }

void reject_unknown(const json& j, const std::string& where, std::initializer_list<std::string_view> known) {
  if (!j.is_object()) fail(where + " must be an object");
  std::set<std::string_view> allowed(known);
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) fail("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
T get_or(const json& j, const char* key, T fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(where + "." + key + ": " + e.what());
  }
}

template <typename T>
T require(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) fail("missing key '" + std::string(key) + "' in " + where);
  return get_or<T>(j, key, T{}, where);
}

Vec3 vec_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty() || j.size() > 3) fail(where + " must be an array of 1-3 numbers");
  Vec3 v;
  try {
    v.x = j[0].get<double>();
    if (j.size() > 1) v.y = j[1].get<double>();
    if (j.size() > 2) v.z = j[2].get<double>();
  } catch (const json::exception& e) {
    fail(where + ": " + e.what());
  }
  return v;
}

json vec_to_json(const Vec3& v) {
  if (v.z != 0.0) return json::array({v.x, v.y, v.z});
  return json::array({v.x, v.y});
}

DensityKind kind_from_string(const std::string& s, const std::string& where) {
  if (s == "uniform") return DensityKind::Uniform;
  if (s == "truncated_gaussian") return DensityKind::TruncatedGaussian;
  if (s == "gaussian_mixture") return DensityKind::GaussianMixture;
  fail(where + ".kind must be uniform, truncated_gaussian or gaussian_mixture");
}

std::string kind_to_string(DensityKind k) {
  switch (k) {
    case DensityKind::Uniform: return "uniform";
    case DensityKind::TruncatedGaussian: return "truncated_gaussian";
    case DensityKind::GaussianMixture: return "gaussian_mixture";
  }
  return "uniform";
}

DensitySpec density_from_json(const json& j, const std::string& where) {
  reject_unknown(j, where, {"kind", "means_m", "stds_m", "weights", "scale"});
  DensitySpec d;
  d.kind = kind_from_string(require<std::string>(j, "kind", where), where);
  if (j.contains("means_m")) {
    const json& means = j.at("means_m");
    if (!means.is_array()) fail(where + ".means_m must be an array");
    for (std::size_t i = 0; i < means.size(); ++i) {
      d.means.push_back(vec_from_json(means[i], where + ".means_m[" + std::to_string(i) + "]"));
    }
  }
  d.stds = get_or<std::vector<double>>(j, "stds_m", {}, where);
  d.weights = get_or<std::vector<double>>(j, "weights", {}, where);
  d.scale = get_or<double>(j, "scale", 1.0, where);
  if (d.kind != DensityKind::Uniform && (d.means.empty() || d.means.size() != d.stds.size())) {
    fail(where + " needs matching means_m and stds_m");
  }
  return d;
}

json density_to_json(const DensitySpec& d) {
  json j;
  j["kind"] = kind_to_string(d.kind);
  if (!d.means.empty()) {
    json means = json::array();
    for (const auto& m : d.means) means.push_back(vec_to_json(m));
    j["means_m"] = means;
  }
  if (!d.stds.empty()) j["stds_m"] = d.stds;
  if (!d.weights.empty()) j["weights"] = d.weights;
  if (d.scale != 1.0) j["scale"] = d.scale;
  return j;
}

InfeasiblePolicy policy_from_string(const std::string& s, const std::string& where) {
  if (s == "report") return InfeasiblePolicy::Report;
  if (s == "strict") return InfeasiblePolicy::Strict;
  fail(where + " must be 'report' or 'strict'");
}

std::string policy_to_string(InfeasiblePolicy p) { return p == InfeasiblePolicy::Strict ? "strict" : "report"; }

}  // namespace

std::string_view to_string(Method m) noexcept { return m == Method::Ot ? "ot" : "snr"; }

Method parse_method(std::string_view name) {
  if (name == "ot") return Method::Ot;
  if (name == "snr") return Method::Snr;
  fail("method must be 'ot' or 'snr', got '" + std::string(name) + "'");
}

ScenarioConfig config_from_json(const json& j) {
  reject_unknown(j, "config", {"zone", "sensing", "channel", "servers", "dts", "solver", "method"});
  ScenarioConfig c;

  if (!j.contains("zone")) fail("missing key 'zone' in config");
  const json& zone = j.at("zone");
  reject_unknown(zone, "zone", {"extent_m", "resolution"});
  c.extent_m = require<std::vector<double>>(zone, "extent_m", "zone");
  c.resolution = require<std::vector<std::size_t>>(zone, "resolution", "zone");

  if (j.contains("sensing")) {
    const json& s = j.at("sensing");
    reject_unknown(s, "sensing",
                   {"density", "rho_bps_per_m3", "rho_field", "tx_power_dbm", "total_sensors", "slot_s",
                    "sensor_volume_m3", "topo_complexity_cycles_per_bit"});
    if (s.contains("density")) c.sensing.density = density_from_json(s.at("density"), "sensing.density");
    c.sensing.rho_bps_per_m3 = get_or<double>(s, "rho_bps_per_m3", c.sensing.rho_bps_per_m3, "sensing");
    if (s.contains("rho_field")) c.sensing.rho_field = density_from_json(s.at("rho_field"), "sensing.rho_field");
    c.sensing.tx_power_dbm = get_or<double>(s, "tx_power_dbm", c.sensing.tx_power_dbm, "sensing");
    auto& m = c.sensing.metaverse;
    m.total_sensors = get_or<double>(s, "total_sensors", m.total_sensors, "sensing");
    m.slot_s = get_or<double>(s, "slot_s", m.slot_s, "sensing");
    m.sensor_volume_m3 = get_or<double>(s, "sensor_volume_m3", m.sensor_volume_m3, "sensing");
    m.topo_complexity_cycles_per_bit =
        get_or<double>(s, "topo_complexity_cycles_per_bit", m.topo_complexity_cycles_per_bit, "sensing");
  }

  if (j.contains("channel")) {
    const json& ch = j.at("channel");
    reject_unknown(ch, "channel",
                   {"reference_gain_db", "reference_distance_m", "pathloss_exponent", "min_distance_m",
                    "noise_dbm_per_hz"});
    auto& cc = c.channel;
    cc.reference_gain_db = get_or<double>(ch, "reference_gain_db", cc.reference_gain_db, "channel");
    cc.reference_distance_m = get_or<double>(ch, "reference_distance_m", cc.reference_distance_m, "channel");
    cc.pathloss_exponent = get_or<double>(ch, "pathloss_exponent", cc.pathloss_exponent, "channel");
    cc.min_distance_m = get_or<double>(ch, "min_distance_m", cc.min_distance_m, "channel");
    cc.noise_dbm_per_hz = get_or<double>(ch, "noise_dbm_per_hz", cc.noise_dbm_per_hz, "channel");
  }

  if (!j.contains("servers") || !j.at("servers").is_array() || j.at("servers").empty()) {
    fail("config needs a non-empty 'servers' array");
  }
  const json& servers = j.at("servers");
  for (std::size_t i = 0; i < servers.size(); ++i) {
    const std::string where = "servers[" + std::to_string(i) + "]";
    const json& s = servers[i];
    reject_unknown(s, where, {"position_m", "compute_hz", "bandwidth_hz", "reference_gain_db"});
    ServerConfig sc;
    if (!s.contains("position_m")) fail("missing key 'position_m' in " + where);
    sc.position = vec_from_json(s.at("position_m"), where + ".position_m");
    sc.compute_hz = require<double>(s, "compute_hz", where);
    sc.bandwidth_hz = require<double>(s, "bandwidth_hz", where);
    if (s.contains("reference_gain_db")) sc.reference_gain_db = get_or<double>(s, "reference_gain_db", 0.0, where);
    c.servers.push_back(sc);
  }

  if (j.contains("dts")) {
    const json& d = j.at("dts");
    reject_unknown(d, "dts", {"count", "seed", "placement", "types", "mix"});
    c.dts.count = get_or<std::size_t>(d, "count", 0, "dts");
    c.dts.seed = get_or<std::uint64_t>(d, "seed", 1, "dts");
    if (d.contains("placement")) c.dts.placement = density_from_json(d.at("placement"), "dts.placement");
    if (d.contains("types")) {
      const json& types = d.at("types");
      if (!types.is_array()) fail("dts.types must be an array");
      for (std::size_t i = 0; i < types.size(); ++i) {
        const std::string where = "dts.types[" + std::to_string(i) + "]";
        const json& t = types[i];
        reject_unknown(t, where,
                       {"sync_intensity_hz", "tx_power_dbm", "data_bits", "complexity_cycles_per_bit", "bandwidth_hz"});
        DtTypeConfig tc;
        tc.sync_intensity_hz = require<double>(t, "sync_intensity_hz", where);
        tc.tx_power_dbm = require<double>(t, "tx_power_dbm", where);
        tc.data_bits = require<double>(t, "data_bits", where);
        tc.complexity_cycles_per_bit = require<double>(t, "complexity_cycles_per_bit", where);
        tc.bandwidth_hz = require<double>(t, "bandwidth_hz", where);
        c.dts.types.push_back(tc);
      }
    }
    c.dts.mix = get_or<std::vector<double>>(d, "mix", {}, "dts");
    if (c.dts.count > 0 && c.dts.types.empty()) fail("dts.count > 0 needs at least one entry in dts.types");
    if (!c.dts.mix.empty() && c.dts.mix.size() != c.dts.types.size()) {
      fail("dts.mix needs one share per type");
    }
  }

  if (j.contains("solver")) {
    const json& s = j.at("solver");
    reject_unknown(s, "solver",
                   {"tolerance", "max_iterations", "damping", "damping_decay", "alpha_floor", "infeasible_policy", "exhausted_policy"});
    auto& o = c.solver;
    o.tolerance = get_or<double>(s, "tolerance", o.tolerance, "solver");
    o.max_iterations = get_or<std::size_t>(s, "max_iterations", o.max_iterations, "solver");
    o.damping = get_or<double>(s, "damping", o.damping, "solver");
    o.damping_decay = get_or<double>(s, "damping_decay", o.damping_decay, "solver");
    o.alpha_floor = get_or<double>(s, "alpha_floor", o.alpha_floor, "solver");
    o.infeasible_policy =
        policy_from_string(get_or<std::string>(s, "infeasible_policy", "report", "solver"), "solver.infeasible_policy");
    o.exhausted_policy =
        policy_from_string(get_or<std::string>(s, "exhausted_policy", "report", "solver"), "solver.exhausted_policy");
    try {
      o.validate();
    } catch (const Error& e) {
      fail(std::string("solver: ") + e.what());
    }
  }

  if (j.contains("method")) c.method = parse_method(get_or<std::string>(j, "method", "ot", "config"));
  return c;
}

json config_to_json(const ScenarioConfig& c) {
  json j;
  j["zone"] = {{"extent_m", c.extent_m}, {"resolution", c.resolution}};

  json s;
  s["density"] = density_to_json(c.sensing.density);
  s["rho_bps_per_m3"] = c.sensing.rho_bps_per_m3;
  if (c.sensing.rho_field) s["rho_field"] = density_to_json(*c.sensing.rho_field);
  s["tx_power_dbm"] = c.sensing.tx_power_dbm;
  s["total_sensors"] = c.sensing.metaverse.total_sensors;
  s["slot_s"] = c.sensing.metaverse.slot_s;
  s["sensor_volume_m3"] = c.sensing.metaverse.sensor_volume_m3;
  s["topo_complexity_cycles_per_bit"] = c.sensing.metaverse.topo_complexity_cycles_per_bit;
  j["sensing"] = s;

  j["channel"] = {{"reference_gain_db", c.channel.reference_gain_db},
                  {"reference_distance_m", c.channel.reference_distance_m},
                  {"pathloss_exponent", c.channel.pathloss_exponent},
                  {"min_distance_m", c.channel.min_distance_m},
                  {"noise_dbm_per_hz", c.channel.noise_dbm_per_hz}};

  json servers = json::array();
  for (const auto& sc : c.servers) {
    json sj = {{"position_m", vec_to_json(sc.position)}, {"compute_hz", sc.compute_hz}, {"bandwidth_hz", sc.bandwidth_hz}};
    if (sc.reference_gain_db) sj["reference_gain_db"] = *sc.reference_gain_db;
    servers.push_back(sj);
  }
  j["servers"] = servers;

  json d;
  d["count"] = c.dts.count;
  d["seed"] = c.dts.seed;
  d["placement"] = density_to_json(c.dts.placement);
  json types = json::array();
  for (const auto& t : c.dts.types) {
    types.push_back({{"sync_intensity_hz", t.sync_intensity_hz},
                     {"tx_power_dbm", t.tx_power_dbm},
                     {"data_bits", t.data_bits},
                     {"complexity_cycles_per_bit", t.complexity_cycles_per_bit},
                     {"bandwidth_hz", t.bandwidth_hz}});
  }
  d["types"] = types;
  if (!c.dts.mix.empty()) d["mix"] = c.dts.mix;
  j["dts"] = d;

  j["solver"] = {{"tolerance", c.solver.tolerance},
                 {"max_iterations", c.solver.max_iterations},
                 {"damping", c.solver.damping},
                 {"damping_decay", c.solver.damping_decay},
                 {"alpha_floor", c.solver.alpha_floor},
                 {"infeasible_policy", policy_to_string(c.solver.infeasible_policy)},
                 {"exhausted_policy", policy_to_string(c.solver.exhausted_policy)}};
  j["method"] = std::string(to_string(c.method));
  return j;
}

void apply_override(json& j, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    fail("override '" + std::string(assignment) + "' must look like key.path=value");
  }
  const std::string path(assignment.substr(0, eq));
  const std::string raw(assignment.substr(eq + 1));

  json value;
  try {
    value = json::parse(raw);
  } catch (const json::parse_error&) {
    value = raw;
  }

  json* node = &j;
  std::stringstream ss(path);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(ss, part, '.')) parts.push_back(part);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const std::string& key = parts[i];
    const bool last = i + 1 == parts.size();
    if (node->is_array()) {
      std::size_t index = 0;
      try {
        index = std::stoul(key);
      } catch (const std::exception&) {
        fail("override path '" + path + "': '" + key + "' is not an array index");
      }
      if (index >= node->size()) fail("override path '" + path + "': index " + key + " out of range");
      node = &(*node)[index];
    } else {
      if (!node->is_object() && !node->is_null()) fail("override path '" + path + "' descends into a scalar");
      node = &(*node)[key];
    }
    if (last) *node = value;
  }
}

ScenarioConfig load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) fail("cannot open config file '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    fail("malformed JSON in '" + path.string() + "': " + e.what());
  }
  for (const auto& o : overrides) apply_override(j, o);
  return config_from_json(j);
}

double sensing_sigma(const ScenarioConfig& config) noexcept {
  const auto& d = config.sensing.density;
  if (d.kind == DensityKind::Uniform || d.stds.empty()) return 0.0;
  return d.stds.front();
}

}  // namespace edgesync
