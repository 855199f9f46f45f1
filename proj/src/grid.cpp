#include "steiner/grid.hpp"

#include <algorithm>
#include <sstream>

#include "steiner/errors.hpp"

namespace steiner {

GridSpec::GridSpec(int dim, int resolution, double extent)
    : dim_(dim), n_(resolution), extent_(extent), h_(2.0 * extent / resolution), cell_count_(1) {
  if (dim != 2 && dim != 3) throw ConfigInvalid("grid dimension must be 2 or 3");
  if (resolution < 8) throw ConfigInvalid("grid resolution must be at least 8");
  if (!(extent > 0.0) || !std::isfinite(extent)) throw ConfigInvalid("grid extent must be positive");
  for (int k = 0; k < dim; ++k) cell_count_ *= static_cast<std::size_t>(resolution);
}

std::array<int, kMaxDim> GridSpec::coords(std::size_t linear) const {
  std::array<int, kMaxDim> ijk{};
  const auto n = static_cast<std::size_t>(n_);
  for (int k = 0; k < dim_; ++k) {
    ijk[k] = static_cast<int>(linear % n);
    linear /= n;
  }
  return ijk;
}

Vec GridSpec::cell_center(std::size_t linear) const {
  const auto ijk = coords(linear);
  Vec p(dim_);
  for (int k = 0; k < dim_; ++k) p[k] = center(ijk[k]);
  return p;
}

OccupancyField::OccupancyField(GridSpec grid) : grid_(grid), values_(grid.cell_count(), 0.0) {}

OccupancyField::OccupancyField(GridSpec grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.cell_count()) throw GridMismatch("value count does not match grid");
  for (double v : values_) {
    if (!(v >= 0.0 && v <= 1.0)) throw ConfigInvalid("occupancy value outside [0, 1]");
  }
}

double OccupancyField::sample(const Vec& p) const {
  const int d = grid_.dim();
  const int n = grid_.resolution();
  const double inv_h = 1.0 / grid_.cell_size();
  const double r = grid_.extent();

  std::array<int, kMaxDim> base{};
  std::array<double, kMaxDim> frac{};
  for (int k = 0; k < d; ++k) {
    const double g = (p[k] + r) * inv_h - 0.5;
    if (g <= -1.0 || g >= n) return 0.0;
    const double fl = std::floor(g);
    base[k] = static_cast<int>(fl);
    frac[k] = g - fl;
  }

  bool interior = true;
  for (int k = 0; k < d; ++k) interior = interior && base[k] >= 0 && base[k] < n - 1;
  if (interior) {
    const std::size_t stride1 = static_cast<std::size_t>(n);
    const double* v = values_.data() + grid_.index(base[0], base[1], d == 3 ? base[2] : 0);
    const double fx = frac[0], fy = frac[1];
    const double lo = (1 - fy) * ((1 - fx) * v[0] + fx * v[1]) + fy * ((1 - fx) * v[stride1] + fx * v[stride1 + 1]);
    if (d == 2) return lo;
    const double* w = v + stride1 * stride1;
    const double hi = (1 - fy) * ((1 - fx) * w[0] + fx * w[1]) + fy * ((1 - fx) * w[stride1] + fx * w[stride1 + 1]);
    return (1 - frac[2]) * lo + frac[2] * hi;
  }

  auto value = [&](int i0, int i1, int i2) -> double {
    if (i0 < 0 || i0 >= n || i1 < 0 || i1 >= n || i2 < 0 || i2 >= n) return 0.0;
    return values_[grid_.index(i0, i1, i2)];
  };

  if (d == 2) {
    const int i = base[0], j = base[1];
    const double fx = frac[0], fy = frac[1];
    return (1 - fy) * ((1 - fx) * value(i, j, 0) + fx * value(i + 1, j, 0)) +
           fy * ((1 - fx) * value(i, j + 1, 0) + fx * value(i + 1, j + 1, 0));
  }
  const int i = base[0], j = base[1], k = base[2];
  const double fx = frac[0], fy = frac[1], fz = frac[2];
  const double c00 = (1 - fx) * value(i, j, k) + fx * value(i + 1, j, k);
  const double c10 = (1 - fx) * value(i, j + 1, k) + fx * value(i + 1, j + 1, k);
  const double c01 = (1 - fx) * value(i, j, k + 1) + fx * value(i + 1, j, k + 1);
  const double c11 = (1 - fx) * value(i, j + 1, k + 1) + fx * value(i + 1, j + 1, k + 1);
  return (1 - fz) * ((1 - fy) * c00 + fy * c10) + fz * ((1 - fy) * c01 + fy * c11);
}

void OccupancyField::check_support() const {
  const double r2 = grid_.extent() * grid_.extent();
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] <= 0.0) continue;
    const Vec c = grid_.cell_center(i);
    if (dot(c, c) > r2) {
      std::ostringstream msg;
      msg << "occupied cell centered at distance " << norm(c) << " exceeds inscribed radius " << grid_.extent();
      throw ShapeOutOfDomain(msg.str());
    }
  }
}

OccupancyField OccupancyField::reflected(const Vec& unit_normal) const {
  OccupancyField out(grid_);
  auto dst = out.mutable_values();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    const Vec z = grid_.cell_center(i);
    const Vec mirror = z - 2.0 * dot(z, unit_normal) * unit_normal;
    dst[i] = std::clamp(sample(mirror), 0.0, 1.0);
  }
  return out;
}

}  // namespace steiner
