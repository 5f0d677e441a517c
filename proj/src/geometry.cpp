#include "edgesync/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "edgesync/error.hpp"

namespace edgesync {

double distance(const Vec3& a, const Vec3& b) noexcept {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

namespace {

double axis_value(const Vec3& p, std::size_t axis) {
  switch (axis) {
    case 0: return p.x;
    case 1: return p.y;
    default: return p.z;
  }
}

void set_axis(Vec3& p, std::size_t axis, double v) {
  switch (axis) {
    case 0: p.x = v; break;
    case 1: p.y = v; break;
    default: p.z = v; break;
  }
}

// Standard uniform in [0, 1) from the top 53 bits; identical on every platform.
double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

ZoneGrid::ZoneGrid(std::vector<double> extent, std::vector<std::size_t> resolution)
    : extent_(std::move(extent)), resolution_(std::move(resolution)) {
  if (extent_.empty() || extent_.size() > 3 || extent_.size() != resolution_.size()) {
    throw Error(ErrorCode::InvalidArgument, "grid needs 1-3 axes with matching extent and resolution");
  }
  for (double e : extent_) {
    if (!(e > 0.0) || !std::isfinite(e)) {
      throw Error(ErrorCode::NonPositiveExtent, "every extent must be > 0");
    }
  }
  for (std::size_t r : resolution_) {
    if (r == 0) throw Error(ErrorCode::ZeroResolution, "every resolution must be >= 1");
  }

  cell_volume_ = 1.0;
  std::size_t count = 1;
  for (std::size_t a = 0; a < extent_.size(); ++a) {
    cell_volume_ *= spacing(a);
    count *= resolution_[a];
  }

  centers_.reserve(count);
  const std::size_t nx = resolution_[0];
  const std::size_t ny = dimensions() > 1 ? resolution_[1] : 1;
  const std::size_t nz = dimensions() > 2 ? resolution_[2] : 1;
  for (std::size_t k = 0; k < nz; ++k) {
    for (std::size_t j = 0; j < ny; ++j) {
      for (std::size_t i = 0; i < nx; ++i) {
        Vec3 c;
        c.x = (static_cast<double>(i) + 0.5) * spacing(0);
        if (dimensions() > 1) c.y = (static_cast<double>(j) + 0.5) * spacing(1);
        if (dimensions() > 2) c.z = (static_cast<double>(k) + 0.5) * spacing(2);
        centers_.push_back(c);
      }
    }
  }
}

double ZoneGrid::measure() const noexcept {
  double m = 1.0;
  for (double e : extent_) m *= e;
  return m;
}

std::size_t ZoneGrid::locate(const Vec3& p) const noexcept {
  std::size_t index = 0;
  std::size_t stride = 1;
  for (std::size_t a = 0; a < dimensions(); ++a) {
    const double t = axis_value(p, a) / spacing(a);
    std::size_t i = 0;
    if (t > 0.0) i = std::min(static_cast<std::size_t>(t), resolution_[a] - 1);
    index += i * stride;
    stride *= resolution_[a];
  }
  return index;
}

std::size_t ZoneGrid::mirror(std::size_t cell, std::size_t axis) const {
  if (axis >= dimensions()) throw Error(ErrorCode::InvalidArgument, "mirror axis out of range");
  Vec3 c = centers_[cell];
  set_axis(c, axis, extent_[axis] - axis_value(c, axis));
  return locate(c);
}

ZoneGrid build_grid(std::vector<double> extent, std::vector<std::size_t> resolution) {
  return ZoneGrid(std::move(extent), std::move(resolution));
}

double DensityField::integral(const ZoneGrid& grid) const {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum * grid.cell_volume();
}

DensityField make_density(const ZoneGrid& grid, const DensitySpec& spec, bool normalize) {
  DensityField field{spec, std::vector<double>(grid.size(), 0.0)};

  if (spec.kind == DensityKind::Uniform) {
    std::fill(field.values.begin(), field.values.end(), spec.scale);
  } else {
    const std::size_t n = spec.means.size();
    if (n == 0 || spec.stds.size() != n) {
      throw Error(ErrorCode::DegenerateSpec, "gaussian spec needs one std per mean");
    }
    if (spec.kind == DensityKind::TruncatedGaussian && n != 1) {
      throw Error(ErrorCode::DegenerateSpec, "truncated gaussian takes exactly one component");
    }
    std::vector<double> weights = spec.weights;
    if (weights.empty()) weights.assign(n, 1.0);
    if (weights.size() != n) throw Error(ErrorCode::DegenerateSpec, "one weight per component required");
    double total_weight = 0.0;
    for (double w : weights) {
      if (!(w >= 0.0)) throw Error(ErrorCode::DegenerateSpec, "mixture weights must be >= 0");
      total_weight += w;
    }
    if (!(total_weight > 0.0)) throw Error(ErrorCode::DegenerateSpec, "mixture weights are all zero");
    for (double s : spec.stds) {
      if (!(s > 0.0)) throw Error(ErrorCode::DegenerateSpec, "standard deviations must be > 0");
    }

    const double dims = static_cast<double>(grid.dimensions());
    for (std::size_t c = 0; c < grid.size(); ++c) {
      const Vec3& x = grid.center(c);
      double v = 0.0;
      for (std::size_t m = 0; m < n; ++m) {
        const double s = spec.stds[m];
        const double d = distance(x, spec.means[m]);
        const double norm = std::pow(2.0 * std::numbers::pi * s * s, -0.5 * dims);
        v += weights[m] / total_weight * norm * std::exp(-0.5 * d * d / (s * s));
      }
      field.values[c] = spec.scale * v;
    }
  }

  if (normalize) {
    const double mass = field.integral(grid);
    if (!(mass > 0.0) || !std::isfinite(mass)) {
      throw Error(ErrorCode::DegenerateSpec, "field has no mass inside the zone");
    }
    for (double& v : field.values) v /= mass;
  }
  return field;
}

std::vector<Vec3> sample_points(const ZoneGrid& grid, const DensityField& field, std::size_t n,
                                std::uint64_t seed) {
  std::vector<Vec3> points;
  if (n == 0) return points;
  if (field.values.size() != grid.size()) {
    throw Error(ErrorCode::InvalidArgument, "field does not match grid");
  }

  std::vector<double> cdf(grid.size());
  double acc = 0.0;
  for (std::size_t c = 0; c < grid.size(); ++c) {
    acc += std::max(field.values[c], 0.0);
    cdf[c] = acc;
  }
  if (!(acc > 0.0)) throw Error(ErrorCode::DegenerateSpec, "cannot sample a zero-mass field");

  std::mt19937_64 rng(seed);
  points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = unit_draw(rng) * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    std::size_t cell = static_cast<std::size_t>(std::distance(cdf.begin(), it));
    cell = std::min(cell, grid.size() - 1);

    Vec3 p = grid.center(cell);
    for (std::size_t a = 0; a < 3; ++a) {
      const double jitter = unit_draw(rng) - 0.5;
      if (a < grid.dimensions()) set_axis(p, a, axis_value(p, a) + jitter * grid.spacing(a));
    }
    points.push_back(p);
  }
  return points;
}

}  // namespace edgesync
