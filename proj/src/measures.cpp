#include "steiner/measures.hpp"

#include <numbers>

#include "steiner/errors.hpp"

namespace steiner {

double unit_ball_volume(int dim) {
  switch (dim) {
    case 2:
      return std::numbers::pi;
    case 3:
      return 4.0 * std::numbers::pi / 3.0;
    default:
      throw ConfigInvalid("dimension must be 2 or 3");
  }
}

double moment_unit_ball(int dim) { return dim * unit_ball_volume(dim) / (dim + 2); }

double empty_threshold(const GridSpec& grid) {
  return 1e-12 * std::pow(2.0 * grid.extent(), grid.dim());
}

double volume(const OccupancyField& f) {
  double sum = 0.0;
  for (double v : f.values()) sum += v;
  return sum * f.grid().cell_volume();
}

Vec barycenter(const OccupancyField& f) {
  const GridSpec& g = f.grid();
  const double vol = volume(f);
  if (vol < empty_threshold(g)) throw EmptySet("barycenter of an empty set");

  Vec first(g.dim());
  auto values = f.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] == 0.0) continue;
    first += values[i] * g.cell_center(i);
  }
  return first * (g.cell_volume() / vol);
}

double moment_of_inertia(const OccupancyField& f) {
  const GridSpec& g = f.grid();
  const double h = g.cell_size();
  double second = 0.0;
  double mass = 0.0;
  auto values = f.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] == 0.0) continue;
    const Vec c = g.cell_center(i);
    second += values[i] * dot(c, c);
    mass += values[i];
  }
  return g.cell_volume() * (second + mass * g.dim() * h * h / 12.0);
}

double nikodym_distance(const OccupancyField& a, const OccupancyField& b) {
  if (!(a.grid() == b.grid())) throw GridMismatch("nikodym distance between fields on different grids");
  auto va = a.values();
  auto vb = b.values();
  double sum = 0.0;
  for (std::size_t i = 0; i < va.size(); ++i) sum += std::abs(va[i] - vb[i]);
  return sum * a.grid().cell_volume();
}

double perimeter_tv(const OccupancyField& f) {
  const GridSpec& g = f.grid();
  const int n = g.resolution();
  const int d = g.dim();
  const int nz = d == 3 ? n : 1;

  auto value = [&](int i, int j, int k) -> double {
    if (i < 0 || i >= n || j < 0 || j >= n || k < 0 || k >= nz) return 0.0;
    return f.at(i, j, k);
  };

  double sum = 0.0;
  for (int k = 0; k < nz; ++k) {
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        const double gx = value(i + 1, j, k) - value(i - 1, j, k);
        const double gy = value(i, j + 1, k) - value(i, j - 1, k);
        const double gz = d == 3 ? value(i, j, k + 1) - value(i, j, k - 1) : 0.0;
        const double sq = gx * gx + gy * gy + gz * gz;
        if (sq > 0.0) sum += 0.5 * std::sqrt(sq);
      }
    }
  }
  return sum * std::pow(g.cell_size(), d - 1);
}

double equivalent_ball_radius(double volume, int dim) {
  return std::pow(volume / unit_ball_volume(dim), 1.0 / dim);
}

double equivalent_ball_radius(const OccupancyField& f) {
  const double vol = volume(f);
  if (vol < empty_threshold(f.grid())) throw EmptySet("equivalent radius of an empty set");
  return equivalent_ball_radius(vol, f.grid().dim());
}

}  // namespace steiner
