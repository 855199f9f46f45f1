#pragma once

#include <vector>

#include "steiner/grid.hpp"

namespace steiner {

// Closed axis-aligned box with lo < hi componentwise.
struct Box {
  Vec lo;
  Vec hi;

  Box(Vec lo, Vec hi);

  int dim() const { return lo.dim; }
  double volume() const;
  friend bool operator==(const Box&, const Box&) = default;
};

// Exact finite union of axis-aligned boxes, stored as interior-disjoint boxes.
//
// Construction canonicalizes by slab decomposition: split along axis 0 at every
// box face, recurse on the cross-section of each slab, merge neighbouring slabs
// whose cross-sections agree. Equal point sets therefore give equal box lists.
class BoxUnion {
 public:
  BoxUnion(int dim, const std::vector<Box>& boxes);

  int dim() const { return dim_; }
  const std::vector<Box>& boxes() const { return boxes_; }
  bool empty() const { return boxes_.empty(); }
  bool contains(const Vec& p) const;

  friend bool operator==(const BoxUnion&, const BoxUnion&) = default;

 private:
  int dim_;
  std::vector<Box> boxes_;
};

double exact_volume(const BoxUnion& b);
Vec exact_barycenter(const BoxUnion& b);
double exact_moment(const BoxUnion& b);

// Steiner symmetral along the coordinate axis `axis` (0-based), exact.
BoxUnion exact_symmetral_axis(const BoxUnion& b, int axis);

// Exact volume of the symmetric difference.
double exact_nikodym(const BoxUnion& a, const BoxUnion& b);

// Exact per-cell coverage. Throws ShapeOutOfDomain if the union leaves B(o, R).
OccupancyField to_field(const BoxUnion& b, const GridSpec& grid);

}  // namespace steiner
