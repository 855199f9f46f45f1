#pragma once

#include <span>
#include <vector>

#include "steiner/directions.hpp"
#include "steiner/grid.hpp"

namespace steiner {

// d - 1 orthonormal vectors spanning u^perp: the images of e_1 .. e_{d-1} under
// the Householder reflection that maps e_d to u (identity when u = e_d).
std::vector<Vec> orthobasis(const Direction& u);

// Line integral of the multilinearly interpolated occupancy along x + t u,
// sampled every h/2 and clipped to the grid cube. `x` is a point of u^perp.
double fiber_mass(const OccupancyField& f, const Direction& u, const Vec& x);

// Fiber masses on a uniform lattice of spacing h/2 over the projection of the
// grid's inscribed ball onto u^perp (padded by one cell on each side).
class FiberMassCache {
 public:
  FiberMassCache(const OccupancyField& f, const Direction& u);

  const Direction& direction() const { return u_; }
  const std::vector<Vec>& basis() const { return basis_; }
  double spacing() const { return spacing_; }
  int nodes_per_axis() const { return nodes_; }
  std::span<const double> masses() const { return masses_; }

  // Coordinate of lattice node j along each basis axis.
  double node(int j) const { return origin_ + j * spacing_; }

  // Multilinear interpolation of the masses at basis coordinates `s`.
  double mass_at(std::span<const double> s) const;

  // Riemann sum of masses times spacing^(d-1); approximates volume(f).
  double total() const;

 private:
  Direction u_;
  std::vector<Vec> basis_;
  double spacing_;
  double origin_;
  int nodes_;
  std::vector<double> masses_;
};

// Steiner symmetral of `f` along `u`, reconstructed by gathering: every output
// cell gets the fraction of its u-extent [t - h/2, t + h/2] covered by the
// centered segment [-m/2, m/2], m the fiber mass through the cell center.
// Cells centered outside B(o, R) stay empty. With `renormalize` the output is
// rescaled to the input volume (clamped to [0, 1]).
OccupancyField steiner_symmetrize(const OccupancyField& f, const Direction& u, bool renormalize = false);

// S_{u_n} ... S_{u_1} f: applies directions left to right.
OccupancyField symmetrize_sequence(const OccupancyField& f, std::span<const Direction> directions,
                                   bool renormalize = false);

}  // namespace steiner
