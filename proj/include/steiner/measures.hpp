#pragma once

#include "steiner/grid.hpp"

namespace steiner {

// Volume of the unit ball: pi for d = 2, 4 pi / 3 for d = 3.
double unit_ball_volume(int dim);

// Central moment of inertia of the unit ball, d kappa_d / (d + 2).
double moment_unit_ball(int dim);

// Volumes below 1e-12 (2R)^d count as the empty set.
double empty_threshold(const GridSpec& grid);

double volume(const OccupancyField& f);

// Throws EmptySet when the field has no volume.
Vec barycenter(const OccupancyField& f);

// Integral of |z|^2 over the set. Cell-center quadrature plus the exact
// in-cell second moment d h^2 / 12 per unit occupied volume.
double moment_of_inertia(const OccupancyField& f);

// L1 distance of occupancies; the symmetric-difference volume for binary fields.
double nikodym_distance(const OccupancyField& a, const OccupancyField& b);

// Isotropic discrete total variation (central differences, Euclidean norm).
double perimeter_tv(const OccupancyField& f);

// Radius of the ball having the same volume.
double equivalent_ball_radius(const OccupancyField& f);
double equivalent_ball_radius(double volume, int dim);

}  // namespace steiner
