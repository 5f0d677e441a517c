#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>

#include "edgesync/geometry.hpp"

namespace edgesync {

using ServerIndex = std::uint32_t;
inline constexpr ServerIndex kNoServer = std::numeric_limits<ServerIndex>::max();

/// A base station with its co-located MEC server.
struct EdgeServer {
  Vec3 position;
  double compute_budget_hz = 0.0;       // Psi_b, cycles/s
  double metaverse_bandwidth_hz = 0.0;  // W_b^s
  /// Overrides the channel model's reference gain for links to this server.
  std::optional<double> reference_gain;
};

/// A physical twin and its cyber twin, treated as one DT application.
struct DigitalTwin {
  std::size_t id = 0;
  Vec3 position;
  std::size_t type_index = 0;
  double sync_intensity_hz = 0.0;  // mu_k; the deadline is 1/mu_k
  double data_bits = 0.0;          // D_k
  double complexity_cycles_per_bit = 0.0;  // Gamma_k
  double tx_power_w = 0.0;         // zeta_k
  double bandwidth_hz = 0.0;       // W_k, dedicated uplink band
};

/// Scalars shared by every sensor in the zone.
struct MetaverseParams {
  double slot_s = 1e-3;                    // Delta
  double sensor_volume_m3 = 0.01;          // epsilon
  double total_sensors = 25000.0;          // Q
  double topo_complexity_cycles_per_bit = 5000.0;  // Lambda

  friend bool operator==(const MetaverseParams&, const MetaverseParams&) = default;
};

}  // namespace edgesync
