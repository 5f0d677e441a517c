#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "edgesync/entities.hpp"
#include "edgesync/geometry.hpp"
#include "edgesync/scenario.hpp"

namespace edgesync {

enum class Method { Ot, Snr };

std::string_view to_string(Method m) noexcept;
Method parse_method(std::string_view name);

struct ChannelConfig {
  double reference_gain_db = -30.0;
  double reference_distance_m = 1.0;
  double pathloss_exponent = 3.0;
  double min_distance_m = 1.0;
  double noise_dbm_per_hz = -170.0;

  friend bool operator==(const ChannelConfig&, const ChannelConfig&) = default;
};

struct SensingConfig {
  DensitySpec density;  // g
  double rho_bps_per_m3 = 50.0;
  /// Spatially varying rho; `scale` carries the units (bps/m^3).
  std::optional<DensitySpec> rho_field;
  double tx_power_dbm = 0.0;  // xi_q = 1 mW
  MetaverseParams metaverse;

  friend bool operator==(const SensingConfig&, const SensingConfig&) = default;
};

struct ServerConfig {
  Vec3 position;
  double compute_hz = 0.0;
  double bandwidth_hz = 0.0;
  std::optional<double> reference_gain_db;

  friend bool operator==(const ServerConfig&, const ServerConfig&) = default;
};

struct DtTypeConfig {
  double sync_intensity_hz = 10.0;
  double tx_power_dbm = 20.0;
  double data_bits = 1e7;
  double complexity_cycles_per_bit = 1e4;
  double bandwidth_hz = 1e6;

  friend bool operator==(const DtTypeConfig&, const DtTypeConfig&) = default;
};

struct FleetConfig {
  std::size_t count = 0;
  std::uint64_t seed = 1;
  DensitySpec placement;  // f
  std::vector<DtTypeConfig> types;
  /// Relative share of each type; empty means round-robin.
  std::vector<double> mix;

  friend bool operator==(const FleetConfig&, const FleetConfig&) = default;
};

/// Scenario as written in the config file: distances in m, powers in dBm,
/// bandwidths and compute in Hz. Converted to SI once by `build_scenario`.
struct ScenarioConfig {
  std::vector<double> extent_m{2000.0, 2000.0};
  std::vector<std::size_t> resolution{200, 200};
  SensingConfig sensing;
  ChannelConfig channel;
  std::vector<ServerConfig> servers;
  FleetConfig dts;
  SolverOptions solver;
  Method method = Method::Ot;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

ScenarioConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ScenarioConfig& config);

/// Applies one `dotted.path=value` override in place. The value is parsed as
/// JSON when possible and kept as a string otherwise.
void apply_override(nlohmann::json& j, std::string_view assignment);

/// Reads a config file and applies the overrides in order.
ScenarioConfig load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides = {});

/// Standard deviation of the first sensing-density component, 0 for uniform.
double sensing_sigma(const ScenarioConfig& config) noexcept;

}  // namespace edgesync
