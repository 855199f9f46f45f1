#include "steiner/shapes.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>

#include "steiner/errors.hpp"
#include "steiner/measures.hpp"
#include "steiner/pgm.hpp"

namespace steiner {
namespace {

// Signed-distance bound of an unnormalized shape: |value| never exceeds the
// distance to the boundary. Masks report 0 everywhere (always supersampled).
struct Evaluator {
  std::function<double(const Vec&)> distance;
  std::function<double(const Vec&)> density;
};

double box_distance(const Vec& p, const Vec& lo, const Vec& hi) {
  double outside = 0.0;
  double inside = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < p.dim; ++k) {
    const double q = std::abs(p[k] - 0.5 * (lo[k] + hi[k])) - 0.5 * (hi[k] - lo[k]);
    outside += q > 0.0 ? q * q : 0.0;
    inside = std::max(inside, q);
  }
  return outside > 0.0 ? std::sqrt(outside) : std::min(inside, 0.0);
}

double boxes_distance(const Vec& p, const std::vector<Box>& boxes) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& b : boxes) d = std::min(d, box_distance(p, b.lo, b.hi));
  return d;
}

std::vector<Box> l_shape_boxes(double scale, int dim) {
  Vec lo1(dim), hi1(dim), lo2(dim), hi2(dim);
  const Vec shift = dim == 2 ? Vec(1.0, 1.0) : Vec(1.0, 1.0, 0.5);
  hi1[0] = 2.0, hi1[1] = 1.0;
  lo2[1] = 1.0, hi2[0] = 1.0, hi2[1] = 2.0;
  if (dim == 3) hi1[2] = 1.0, hi2[2] = 1.0;
  return {Box((lo1 - shift) * scale, (hi1 - shift) * scale), Box((lo2 - shift) * scale, (hi2 - shift) * scale)};
}

void check_dim(const Vec& v, int dim, const char* what) {
  if (v.dim != dim) throw ConfigInvalid(std::string(what) + " has the wrong dimension");
}

struct MaskGeometry {
  GrayImage image;
  double pixel = 0.0;
  double half_height = 0.0;

  double level(const Vec& p) const {
    const double r = *image.extent;
    const double col = std::floor((p[0] + r) / pixel);
    const double row = std::floor((half_height - p[1]) / pixel);
    if (col < 0 || row < 0 || col >= image.width || row >= image.height) return 0.0;
    return image.level(static_cast<int>(col), static_cast<int>(row));
  }
};

std::shared_ptr<const MaskGeometry> load_mask(const MaskShape& m) {
  auto geo = std::make_shared<MaskGeometry>();
  geo->image = read_pgm(m.path);
  if (!geo->image.extent) throw BadMaskFile("mask file lacks the required #extent comment");
  geo->pixel = 2.0 * *geo->image.extent / geo->image.width;
  geo->half_height = 0.5 * geo->pixel * geo->image.height;
  return geo;
}

double two_ball_intersection(const TwoBallsShape& s, int dim) {
  const double dist = norm(s.centers[0] - s.centers[1]);
  const double r1 = s.radii[0], r2 = s.radii[1];
  if (dist >= r1 + r2) return 0.0;
  if (dist <= std::abs(r1 - r2)) return unit_ball_volume(dim) * std::pow(std::min(r1, r2), dim);
  if (dim == 2) {
    const double a1 = std::acos((dist * dist + r1 * r1 - r2 * r2) / (2 * dist * r1));
    const double a2 = std::acos((dist * dist + r2 * r2 - r1 * r1) / (2 * dist * r2));
    const double k = std::sqrt((-dist + r1 + r2) * (dist + r1 - r2) * (dist - r1 + r2) * (dist + r1 + r2));
    return r1 * r1 * a1 + r2 * r2 * a2 - 0.5 * k;
  }
  const double s2 = r1 + r2 - dist;
  return std::numbers::pi * s2 * s2 *
         (dist * dist + 2 * dist * (r1 + r2) - 3 * (r1 - r2) * (r1 - r2)) / (12 * dist);
}

Evaluator make_evaluator(const ShapeVariant& variant, int dim) {
  return std::visit(
      [dim](const auto& s) -> Evaluator {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BallShape>) {
          check_dim(s.center, dim, "ball center");
          return {[s](const Vec& p) { return norm(p - s.center) - s.radius; }, {}};
        } else if constexpr (std::is_same_v<T, BoxShape>) {
          const Box box(s.lo, s.hi);
          check_dim(box.lo, dim, "box");
          return {[box](const Vec& p) { return box_distance(p, box.lo, box.hi); }, {}};
        } else if constexpr (std::is_same_v<T, BoxUnionShape>) {
          if (s.boxes.empty()) throw ConfigInvalid("box union needs at least one box");
          for (const auto& b : s.boxes) check_dim(b.lo, dim, "box");
          return {[boxes = s.boxes](const Vec& p) { return boxes_distance(p, boxes); }, {}};
        } else if constexpr (std::is_same_v<T, LShape>) {
          if (!(s.scale > 0.0)) throw ConfigInvalid("l-shape scale must be positive");
          return {[boxes = l_shape_boxes(s.scale, dim)](const Vec& p) { return boxes_distance(p, boxes); }, {}};
        } else if constexpr (std::is_same_v<T, AnnulusShape>) {
          if (!(s.r_in >= 0.0 && s.r_out > s.r_in)) throw ConfigInvalid("annulus needs 0 <= r_in < r_out");
          return {[s](const Vec& p) { return std::max(norm(p) - s.r_out, s.r_in - norm(p)); }, {}};
        } else if constexpr (std::is_same_v<T, TwoBallsShape>) {
          check_dim(s.centers[0], dim, "ball center");
          check_dim(s.centers[1], dim, "ball center");
          return {[s](const Vec& p) {
                    return std::min(norm(p - s.centers[0]) - s.radii[0], norm(p - s.centers[1]) - s.radii[1]);
                  },
                  {}};
        } else {
          if (dim != 2) throw ConfigInvalid("mask shapes are two-dimensional");
          auto geo = load_mask(s);
          return {[](const Vec&) { return 0.0; }, [geo](const Vec& p) { return geo->level(p); }};
        }
      },
      variant);
}

}  // namespace

ShapeSpec default_ball(int dim) { return {BallShape{Vec(dim), 1.0}, unit_ball_volume(dim)}; }

ShapeSpec default_l_shape(int dim) { return {LShape{1.0}, unit_ball_volume(dim)}; }

ShapeSpec default_annulus(int dim) { return {AnnulusShape{0.5, 1.0}, unit_ball_volume(dim)}; }

ShapeSpec default_two_balls(int dim) {
  TwoBallsShape s;
  s.centers = dim == 2 ? std::array{Vec(0.6, 0.2), Vec(-0.5, -0.4)}
                       : std::array{Vec(0.6, 0.2, 0.1), Vec(-0.5, -0.4, -0.1)};
  s.radii = {0.6, 0.5};
  return {s, unit_ball_volume(dim)};
}

ShapeSpec default_box_union(int dim) {
  BoxUnionShape s;
  if (dim == 2) {
    s.boxes = {Box(Vec(-1.0, -0.6), Vec(0.2, 0.3)), Box(Vec(0.0, -0.2), Vec(0.8, 0.9)),
               Box(Vec(-0.5, 0.3), Vec(0.3, 0.7))};
  } else {
    s.boxes = {Box(Vec(-1.0, -0.6, -0.5), Vec(0.2, 0.3, 0.5)), Box(Vec(0.0, -0.2, -0.3), Vec(0.8, 0.9, 0.6)),
               Box(Vec(-0.5, 0.3, -0.6), Vec(0.3, 0.7, 0.2))};
  }
  return {s, unit_ball_volume(dim)};
}

double shape_volume(const ShapeSpec& shape, int dim) {
  const double kappa = unit_ball_volume(dim);
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BallShape>) {
          return kappa * std::pow(s.radius, dim);
        } else if constexpr (std::is_same_v<T, BoxShape>) {
          return Box(s.lo, s.hi).volume();
        } else if constexpr (std::is_same_v<T, BoxUnionShape>) {
          return exact_volume(BoxUnion(dim, s.boxes));
        } else if constexpr (std::is_same_v<T, LShape>) {
          return 3.0 * std::pow(s.scale, dim);
        } else if constexpr (std::is_same_v<T, AnnulusShape>) {
          return kappa * (std::pow(s.r_out, dim) - std::pow(s.r_in, dim));
        } else if constexpr (std::is_same_v<T, TwoBallsShape>) {
          return kappa * (std::pow(s.radii[0], dim) + std::pow(s.radii[1], dim)) - two_ball_intersection(s, dim);
        } else {
          if (dim != 2) throw ConfigInvalid("mask shapes are two-dimensional");
          const auto geo = load_mask(s);
          double sum = 0.0;
          for (int r = 0; r < geo->image.height; ++r) {
            for (int c = 0; c < geo->image.width; ++c) sum += geo->image.level(c, r);
          }
          return sum * geo->pixel * geo->pixel;
        }
      },
      shape.variant);
}

ShapeSpec scaled(const ShapeSpec& shape, double factor, int dim) {
  if (!(factor > 0.0)) throw ConfigInvalid("scale factor must be positive");
  ShapeSpec out = shape;
  std::visit(
      [&](auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BallShape>) {
          s.center *= factor;
          s.radius *= factor;
        } else if constexpr (std::is_same_v<T, BoxShape>) {
          s.lo *= factor;
          s.hi *= factor;
        } else if constexpr (std::is_same_v<T, BoxUnionShape>) {
          for (auto& b : s.boxes) b = Box(b.lo * factor, b.hi * factor);
        } else if constexpr (std::is_same_v<T, LShape>) {
          s.scale *= factor;
        } else if constexpr (std::is_same_v<T, AnnulusShape>) {
          s.r_in *= factor;
          s.r_out *= factor;
        } else if constexpr (std::is_same_v<T, TwoBallsShape>) {
          for (auto& c : s.centers) c *= factor;
          for (auto& r : s.radii) r *= factor;
        } else {
          throw ConfigInvalid("mask shapes cannot be rescaled; use normalize_volume_to");
        }
      },
      out.variant);
  if (out.normalize_volume_to) *out.normalize_volume_to *= std::pow(factor, dim);
  return out;
}

OccupancyField rasterize(const ShapeSpec& shape, const GridSpec& grid) {
  const int d = grid.dim();
  const Evaluator eval = make_evaluator(shape.variant, d);

  double scale = 1.0;
  if (shape.normalize_volume_to) {
    const double target = *shape.normalize_volume_to;
    if (!(target > 0.0)) throw ConfigInvalid("target volume must be positive");
    const double base = shape_volume(shape, d);
    if (!(base > 0.0)) throw ConfigInvalid("cannot normalize a shape of zero volume");
    scale = std::pow(target / base, 1.0 / d);
  }
  const double inv_scale = 1.0 / scale;

  auto density = [&](const Vec& p) -> double {
    const Vec q = p * inv_scale;
    return eval.density ? eval.density(q) : (eval.distance(q) <= 0.0 ? 1.0 : 0.0);
  };

  const double h = grid.cell_size();
  const double half_diagonal = 0.5 * h * std::sqrt(static_cast<double>(d));
  constexpr int kSub = 4;
  const int sub_count = d == 2 ? kSub * kSub : kSub * kSub * kSub;

  OccupancyField field(grid);
  auto values = field.mutable_values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    const Vec c = grid.cell_center(i);
    const double dist = eval.distance(c * inv_scale) * scale;
    if (dist > half_diagonal) continue;
    if (dist < -half_diagonal) {
      values[i] = 1.0;
      continue;
    }
    double sum = 0.0;
    for (int s = 0; s < sub_count; ++s) {
      Vec p = c;
      int rest = s;
      for (int k = 0; k < d; ++k) {
        p[k] += ((rest % kSub) + 0.5) * h / kSub - 0.5 * h;
        rest /= kSub;
      }
      sum += density(p);
    }
    values[i] = sum / sub_count;
  }
  field.check_support();
  return field;
}

OccupancyField ball_field(double radius, const GridSpec& grid) {
  if (!(radius > 0.0)) throw ConfigInvalid("ball radius must be positive");
  if (radius > grid.extent() - grid.cell_size()) {
    throw ShapeOutOfDomain("ball radius exceeds R - h");
  }
  return rasterize(ShapeSpec{BallShape{Vec(grid.dim()), radius}, std::nullopt}, grid);
}

}  // namespace steiner
