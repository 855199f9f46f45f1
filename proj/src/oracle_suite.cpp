#include "steiner/oracle_suite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "steiner/measures.hpp"
#include "steiner/symmetrizer.hpp"

namespace steiner {

BoxUnion random_box_union(Rng& rng, int dim, int max_boxes, double half_width) {
  constexpr double kLattice = 1024.0;
  const int count = 1 + static_cast<int>(uniform01(rng) * max_boxes);
  std::vector<Box> boxes;
  for (int b = 0; b < count; ++b) {
    Vec lo(dim), hi(dim);
    for (int k = 0; k < dim; ++k) {
      const double side = (0.25 + 0.75 * uniform01(rng)) * half_width;
      const double center = (2.0 * uniform01(rng) - 1.0) * (half_width - 0.5 * side);
      lo[k] = std::ceil((center - 0.5 * side) * kLattice) / kLattice;
      hi[k] = std::floor((center + 0.5 * side) * kLattice) / kLattice;
    }
    boxes.emplace_back(lo, hi);
  }
  return BoxUnion(dim, boxes);
}

OracleSuiteReport run_oracle_suite(std::uint64_t seed, int cases, int coarse_resolution, int fine_resolution) {
  constexpr int kDim = 2;
  constexpr double kExtent = 2.0;
  const GridSpec coarse(kDim, coarse_resolution, kExtent);
  const GridSpec fine(kDim, fine_resolution, kExtent);

  OracleSuiteReport report;
  report.coarse_resolution = coarse_resolution;
  report.fine_resolution = fine_resolution;

  Rng rng(seed);
  double sum_coarse = 0.0, sum_fine = 0.0;
  for (int c = 0; c < cases; ++c) {
    const BoxUnion shape = random_box_union(rng, kDim, 6, 1.2);
    const int axis = c % kDim;
    const BoxUnion exact = exact_symmetral_axis(shape, axis);
    const Direction u = Direction::axis(kDim, axis);

    auto error_at = [&](const GridSpec& g) {
      return nikodym_distance(steiner_symmetrize(to_field(shape, g), u), to_field(exact, g));
    };

    OracleCase oc;
    oc.axis = axis;
    oc.volume = exact_volume(shape);
    oc.error_coarse = error_at(coarse);
    oc.error_fine = error_at(fine);
    report.max_relative_error = std::max(report.max_relative_error, oc.error_fine / oc.volume);
    sum_coarse += oc.error_coarse;
    sum_fine += oc.error_fine;
    report.cases.push_back(oc);
  }
  report.shrink_ratio = sum_fine > 0.0 ? sum_coarse / sum_fine : std::numeric_limits<double>::infinity();
  return report;
}

}  // namespace steiner
