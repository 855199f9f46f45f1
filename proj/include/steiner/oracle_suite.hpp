#pragma once

#include <cstdint>
#include <vector>

#include "steiner/box_oracle.hpp"
#include "steiner/directions.hpp"

namespace steiner {

// Union of 1..max_boxes random boxes inside [-half_width, half_width]^dim,
// each side uniform in [0.25, 1] * half_width. Coordinates are snapped inward
// to multiples of 2^-10, so oracle sums and products are exact in double.
BoxUnion random_box_union(Rng& rng, int dim, int max_boxes, double half_width);

struct OracleCase {
  int axis = 0;
  double volume = 0.0;
  double error_coarse = 0.0;  // d_N(raster symmetral, rasterized exact symmetral)
  double error_fine = 0.0;
};

struct OracleSuiteReport {
  int coarse_resolution = 0;
  int fine_resolution = 0;
  std::vector<OracleCase> cases;
  double max_relative_error = 0.0;  // max error_fine / volume
  double shrink_ratio = 0.0;        // sum error_coarse / sum error_fine
  double tolerance = 0.05;
  double required_ratio = 1.7;

  bool passed() const { return max_relative_error <= tolerance && shrink_ratio >= required_ratio; }
};

// Raster symmetrizer against the exact box oracle on random 2D box unions
// (at most six boxes) along coordinate axes, at two resolutions.
OracleSuiteReport run_oracle_suite(std::uint64_t seed, int cases, int coarse_resolution = 128,
                                   int fine_resolution = 256);

}  // namespace steiner
