#pragma once

#include <filesystem>
#include <optional>
#include <variant>
#include <vector>

#include "steiner/box_oracle.hpp"
#include "steiner/grid.hpp"

namespace steiner {

struct BallShape {
  Vec center;
  double radius = 1.0;
};

struct BoxShape {
  Vec lo;
  Vec hi;
};

struct BoxUnionShape {
  std::vector<Box> boxes;
};

// Union {[0,2]x[0,1], [0,1]x[1,2]} (times [0,1] in 3D) scaled by `scale`,
// translated so its bounding box is centered at the origin.
struct LShape {
  double scale = 1.0;
};

struct AnnulusShape {
  double r_in = 0.5;
  double r_out = 1.0;
};

struct TwoBallsShape {
  std::array<Vec, 2> centers;
  std::array<double, 2> radii{};
};

// 2D grayscale mask read from a PGM file carrying an `#extent R` comment.
struct MaskShape {
  std::filesystem::path path;
};

using ShapeVariant =
    std::variant<BallShape, BoxShape, BoxUnionShape, LShape, AnnulusShape, TwoBallsShape, MaskShape>;

// Initial set of an experiment. When normalize_volume_to is set the shape is
// dilated about the origin until its volume equals the target.
struct ShapeSpec {
  ShapeVariant variant;
  std::optional<double> normalize_volume_to;
};

// Default shapes of the experiment library, normalized to volume kappa_d.
ShapeSpec default_ball(int dim);
ShapeSpec default_l_shape(int dim);
ShapeSpec default_annulus(int dim);
ShapeSpec default_two_balls(int dim);
ShapeSpec default_box_union(int dim);

// Exact volume of the shape before normalization. Mask volumes are pixel sums.
double shape_volume(const ShapeSpec& shape, int dim);

// Same shape with every length multiplied by `factor` (target volume by factor^d).
ShapeSpec scaled(const ShapeSpec& shape, double factor, int dim);

// Boundary cells get the mean of 4^d supersamples of the indicator; cells
// away from the boundary are exactly 0 or 1.
//
// Throws ShapeOutOfDomain when the support leaves the inscribed ball and
// BadMaskFile for unreadable masks.
OccupancyField rasterize(const ShapeSpec& shape, const GridSpec& grid);

// Rasterized centered ball. Requires radius <= R - h.
OccupancyField ball_field(double radius, const GridSpec& grid);

}  // namespace steiner
