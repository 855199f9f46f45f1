#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace steiner {

inline constexpr int kMaxDim = 3;

// Point or vector of R^d, d in {2, 3}. Components past `dim` are kept at zero.
struct Vec {
  int dim = 0;
  std::array<double, kMaxDim> c{};

  Vec() = default;
  explicit Vec(int d) : dim(d) {}
  Vec(double x, double y) : dim(2), c{x, y, 0.0} {}
  Vec(double x, double y, double z) : dim(3), c{x, y, z} {}

  static Vec unit(int d, int axis) {
    Vec v(d);
    v.c[static_cast<std::size_t>(axis)] = 1.0;
    return v;
  }

  double& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return c[static_cast<std::size_t>(i)]; }

  Vec& operator+=(const Vec& o) {
    for (int i = 0; i < kMaxDim; ++i) c[i] += o.c[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    for (int i = 0; i < kMaxDim; ++i) c[i] -= o.c[i];
    return *this;
  }
  Vec& operator*=(double s) {
    for (auto& x : c) x *= s;
    return *this;
  }

  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend Vec operator*(Vec a, double s) { return a *= s; }
  friend Vec operator*(double s, Vec a) { return a *= s; }
  friend Vec operator-(Vec a) { return a *= -1.0; }
  friend bool operator==(const Vec&, const Vec&) = default;
};

inline double dot(const Vec& a, const Vec& b) {
  return a.c[0] * b.c[0] + a.c[1] * b.c[1] + a.c[2] * b.c[2];
}

inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

// Uniform cubical grid of N^d cells over [-R, R]^d.
//
// Cell i along an axis has center -R + (i + 1/2) h with h = 2R/N. Linear cell
// index is i0 + N*(i1 + N*i2): axis 0 varies fastest.
class GridSpec {
 public:
  GridSpec(int dim, int resolution, double extent);

  int dim() const { return dim_; }
  int resolution() const { return n_; }
  double extent() const { return extent_; }
  double cell_size() const { return h_; }
  double cell_volume() const { return std::pow(h_, dim_); }
  std::size_t cell_count() const { return cell_count_; }

  double center(int i) const { return -extent_ + (i + 0.5) * h_; }

  std::size_t index(int i0, int i1, int i2 = 0) const {
    return static_cast<std::size_t>(i0) +
           static_cast<std::size_t>(n_) *
               (static_cast<std::size_t>(i1) + static_cast<std::size_t>(n_) * static_cast<std::size_t>(i2));
  }

  // Per-axis cell coordinates of a linear index.
  std::array<int, kMaxDim> coords(std::size_t linear) const;
  Vec cell_center(std::size_t linear) const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  int dim_;
  int n_;
  double extent_;
  double h_;
  std::size_t cell_count_;
};

// Fractional indicator of a bounded set: each value is the covered fraction of
// its cell. Values lie in [0, 1] and every cell with a positive value has its
// center inside the inscribed ball B(o, R).
class OccupancyField {
 public:
  explicit OccupancyField(GridSpec grid);
  OccupancyField(GridSpec grid, std::vector<double> values);

  const GridSpec& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  // Unchecked write access; callers maintain the [0, 1] and support invariants.
  std::span<double> mutable_values() { return values_; }

  double at(int i0, int i1, int i2 = 0) const { return values_[grid_.index(i0, i1, i2)]; }

  // Multilinear interpolation of cell-center values; zero outside the grid.
  double sample(const Vec& p) const;

  // Throws ShapeOutOfDomain if a positive cell has its center outside B(o, R).
  void check_support() const;

  // Mirror image under z -> z - 2 (z.u) u, resampled by multilinear interpolation.
  OccupancyField reflected(const Vec& unit_normal) const;

  friend bool operator==(const OccupancyField&, const OccupancyField&) = default;

 private:
  GridSpec grid_;
  std::vector<double> values_;
};

}  // namespace steiner
