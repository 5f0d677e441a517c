#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace edgesync {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Vec3&, const Vec3&) = default;
};

double distance(const Vec3& a, const Vec3& b) noexcept;

/// Uniform axis-aligned discretization of the zone [0, extent] per axis.
///
/// One to three axes are supported. Missing axes are collapsed, so for a
/// two-axis grid `cell_volume()` is an area in m^2. Cells are ordered
/// row-major with x varying fastest.
class ZoneGrid {
 public:
  ZoneGrid(std::vector<double> extent, std::vector<std::size_t> resolution);

  std::size_t dimensions() const noexcept { return extent_.size(); }
  std::span<const double> extent() const noexcept { return extent_; }
  std::span<const std::size_t> resolution() const noexcept { return resolution_; }
  std::size_t size() const noexcept { return centers_.size(); }
  const Vec3& center(std::size_t cell) const { return centers_[cell]; }
  std::span<const Vec3> centers() const noexcept { return centers_; }
  double cell_volume() const noexcept { return cell_volume_; }
  /// Lebesgue measure of the zone (length, area or volume).
  double measure() const noexcept;
  double spacing(std::size_t axis) const { return extent_[axis] / static_cast<double>(resolution_[axis]); }

  /// Index of the cell containing `p`; points outside are clamped to the
  /// nearest boundary cell.
  std::size_t locate(const Vec3& p) const noexcept;

  /// Cell index after reflecting the cell center through the zone midpoint
  /// along `axis`.
  std::size_t mirror(std::size_t cell, std::size_t axis) const;

 private:
  std::vector<double> extent_;
  std::vector<std::size_t> resolution_;
  std::vector<Vec3> centers_;
  double cell_volume_ = 0.0;
};

ZoneGrid build_grid(std::vector<double> extent, std::vector<std::size_t> resolution);

enum class DensityKind { Uniform, TruncatedGaussian, GaussianMixture };

/// Parameters of an isotropic Gaussian mixture (or a uniform field). For a
/// single truncated Gaussian use one component.
struct DensitySpec {
  DensityKind kind = DensityKind::Uniform;
  std::vector<Vec3> means;
  std::vector<double> stds;
  std::vector<double> weights;
  /// Multiplies the raw field when not normalizing (e.g. bps/m^3 for rho).
  double scale = 1.0;

  friend bool operator==(const DensitySpec&, const DensitySpec&) = default;
};

struct DensityField {
  DensitySpec spec;
  std::vector<double> values;

  /// Sum of value * cell_volume.
  double integral(const ZoneGrid& grid) const;
};

/// Evaluates `spec` at every cell center. With `normalize`, the field is
/// rescaled so it integrates to one over the zone, which also truncates any
/// Gaussian at the zone boundary.
DensityField make_density(const ZoneGrid& grid, const DensitySpec& spec, bool normalize);

/// Draws `n` positions: a cell by inverse CDF over cell masses, then a
/// uniform point inside that cell. Each point consumes a fixed number of
/// draws, so the first m points of a larger sample equal a sample of m.
std::vector<Vec3> sample_points(const ZoneGrid& grid, const DensityField& field, std::size_t n,
                                std::uint64_t seed);

}  // namespace edgesync
