#include "steiner/symmetrizer.hpp"

#include <algorithm>
#include <cmath>

#include "steiner/errors.hpp"
#include "steiner/measures.hpp"

namespace steiner {

std::vector<Vec> orthobasis(const Direction& u) {
  const int d = u.dim();
  const Vec& uv = u.vector();
  Vec w = Vec::unit(d, d - 1) - uv;
  const double ww = dot(w, w);

  std::vector<Vec> basis;
  basis.reserve(static_cast<std::size_t>(d - 1));
  for (int k = 0; k < d - 1; ++k) {
    Vec e = Vec::unit(d, k);
    if (ww > 0.0) e -= (2.0 * w[k] / ww) * w;
    basis.push_back(e);
  }
  return basis;
}

namespace {

// Axis-aligned bounds [lo, hi] outside which the interpolated field vanishes.
struct Bounds {
  Vec lo;
  Vec hi;
};

Bounds domain_bounds(const GridSpec& g) {
  const double cube = g.extent() + 0.5 * g.cell_size();
  Vec lo(g.dim()), hi(g.dim());
  for (int k = 0; k < g.dim(); ++k) lo[k] = -cube, hi[k] = cube;
  return {lo, hi};
}

// Bounding box of the occupied cells, grown by one cell (interpolation reach).
Bounds support_bounds(const OccupancyField& f) {
  const GridSpec& g = f.grid();
  const int d = g.dim();
  std::array<int, kMaxDim> lo{}, hi{};
  lo.fill(g.resolution());
  hi.fill(-1);
  auto values = f.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] <= 0.0) continue;
    const auto ijk = g.coords(i);
    for (int k = 0; k < d; ++k) lo[k] = std::min(lo[k], ijk[k]), hi[k] = std::max(hi[k], ijk[k]);
  }
  Bounds b{Vec(d), Vec(d)};
  for (int k = 0; k < d; ++k) {
    if (hi[k] < lo[k]) return {Vec(d), Vec(d)};
    b.lo[k] = g.center(lo[k]) - g.cell_size();
    b.hi[k] = g.center(hi[k]) + g.cell_size();
  }
  return b;
}

double line_integral(const OccupancyField& f, const Direction& u, const Vec& x, const Bounds& box) {
  const GridSpec& g = f.grid();
  const int d = g.dim();
  const double h = g.cell_size();

  // Interpolated support lies within R + h sqrt(d) of the origin, and x is
  // orthogonal to u, so |x + t u|^2 = |x|^2 + t^2.
  const double reach = g.extent() + h * std::sqrt(static_cast<double>(d));
  const double reach2 = reach * reach - dot(x, x);
  if (reach2 <= 0.0) return 0.0;
  double t_lo = -std::sqrt(reach2);
  double t_hi = -t_lo;

  for (int k = 0; k < d; ++k) {
    if (u[k] == 0.0) {
      if (x[k] < box.lo[k] || x[k] > box.hi[k]) return 0.0;
      continue;
    }
    double a = (box.lo[k] - x[k]) / u[k];
    double b = (box.hi[k] - x[k]) / u[k];
    if (a > b) std::swap(a, b);
    t_lo = std::max(t_lo, a);
    t_hi = std::min(t_hi, b);
  }
  if (t_lo >= t_hi) return 0.0;

  // Samples sit on the lattice t = k h/2, shared by every fiber.
  const double step = 0.5 * h;
  const auto k_lo = static_cast<long>(std::ceil(t_lo / step));
  const auto k_hi = static_cast<long>(std::floor(t_hi / step));
  const Vec& uv = u.vector();
  double sum = 0.0;
  for (long k = k_lo; k <= k_hi; ++k) sum += f.sample(x + (static_cast<double>(k) * step) * uv);
  return sum * step;
}

}  // namespace

double fiber_mass(const OccupancyField& f, const Direction& u, const Vec& x) {
  return line_integral(f, u, x, domain_bounds(f.grid()));
}

FiberMassCache::FiberMassCache(const OccupancyField& f, const Direction& u)
    : u_(u), basis_(orthobasis(u)) {
  const GridSpec& g = f.grid();
  if (u.dim() != g.dim()) throw GridMismatch("direction and field dimensions differ");
  const double h = g.cell_size();
  const double r = g.extent();
  spacing_ = 0.5 * h;
  origin_ = -r - h;
  nodes_ = 2 * g.resolution() + 5;

  const double reach = r + h * std::sqrt(static_cast<double>(g.dim()));
  const Bounds box = support_bounds(f);
  const auto n = static_cast<std::size_t>(nodes_);
  if (g.dim() == 2) {
    masses_.assign(n, 0.0);
    for (int j = 0; j < nodes_; ++j) {
      const double s = node(j);
      if (std::abs(s) > reach) continue;
      masses_[static_cast<std::size_t>(j)] = line_integral(f, u, s * basis_[0], box);
    }
  } else {
    masses_.assign(n * n, 0.0);
    for (int k = 0; k < nodes_; ++k) {
      for (int j = 0; j < nodes_; ++j) {
        const double s0 = node(j), s1 = node(k);
        if (s0 * s0 + s1 * s1 > reach * reach) continue;
        masses_[static_cast<std::size_t>(k) * n + static_cast<std::size_t>(j)] =
            line_integral(f, u, s0 * basis_[0] + s1 * basis_[1], box);
      }
    }
  }
}

double FiberMassCache::mass_at(std::span<const double> s) const {
  const double inv = 1.0 / spacing_;
  const double g0 = (s[0] - origin_) * inv;
  if (g0 < 0.0 || g0 > nodes_ - 1) return 0.0;
  const int j = std::min(static_cast<int>(g0), nodes_ - 2);
  const double a = g0 - j;
  if (s.size() == 1) {
    return (1.0 - a) * masses_[static_cast<std::size_t>(j)] + a * masses_[static_cast<std::size_t>(j + 1)];
  }
  const double g1 = (s[1] - origin_) * inv;
  if (g1 < 0.0 || g1 > nodes_ - 1) return 0.0;
  const int k = std::min(static_cast<int>(g1), nodes_ - 2);
  const double b = g1 - k;
  const auto n = static_cast<std::size_t>(nodes_);
  auto m = [&](int jj, int kk) { return masses_[static_cast<std::size_t>(kk) * n + static_cast<std::size_t>(jj)]; };
  return (1.0 - b) * ((1.0 - a) * m(j, k) + a * m(j + 1, k)) + b * ((1.0 - a) * m(j, k + 1) + a * m(j + 1, k + 1));
}

double FiberMassCache::total() const {
  double sum = 0.0;
  for (double m : masses_) sum += m;
  return sum * std::pow(spacing_, static_cast<double>(basis_.size()));
}

OccupancyField steiner_symmetrize(const OccupancyField& f, const Direction& u, bool renormalize) {
  const GridSpec& g = f.grid();
  const FiberMassCache cache(f, u);
  const double h = g.cell_size();
  const double r2 = g.extent() * g.extent();
  const Vec& uv = u.vector();
  const auto& basis = cache.basis();

  OccupancyField out(g);
  auto dst = out.mutable_values();
  std::array<double, 2> s{};
  const std::span<const double> coords(s.data(), basis.size());
  for (std::size_t i = 0; i < dst.size(); ++i) {
    const Vec z = g.cell_center(i);
    if (dot(z, z) > r2) continue;
    const double t = dot(z, uv);
    for (std::size_t b = 0; b < basis.size(); ++b) s[b] = dot(z, basis[b]);
    const double half = 0.5 * cache.mass_at(coords);
    if (half <= 0.0 || std::abs(t) - 0.5 * h >= half) continue;
    const double covered = std::min(half, t + 0.5 * h) - std::max(-half, t - 0.5 * h);
    dst[i] = std::clamp(covered / h, 0.0, 1.0);
  }

  if (renormalize) {
    const double before = volume(f);
    const double after = volume(out);
    if (after > empty_threshold(g)) {
      const double scale = before / after;
      for (auto& v : dst) v = std::min(1.0, v * scale);
    }
  }
  return out;
}

OccupancyField symmetrize_sequence(const OccupancyField& f, std::span<const Direction> directions,
                                   bool renormalize) {
  OccupancyField current = f;
  for (const auto& u : directions) current = steiner_symmetrize(current, u, renormalize);
  return current;
}

}  // namespace steiner
