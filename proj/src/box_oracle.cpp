#include "steiner/box_oracle.hpp"

#include <algorithm>
#include <utility>

#include "steiner/errors.hpp"

namespace steiner {
namespace {

using Interval = std::pair<double, double>;
// Box restricted to a suffix of the axes.
using Slab = std::vector<Interval>;

std::vector<double> breakpoints(const std::vector<Slab>& boxes, std::size_t axis) {
  std::vector<double> xs;
  xs.reserve(2 * boxes.size());
  for (const auto& b : boxes) {
    xs.push_back(b[axis].first);
    xs.push_back(b[axis].second);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

// Canonical interior-disjoint decomposition of a union of equal-rank slabs.
std::vector<Slab> canonical(const std::vector<Slab>& boxes) {
  if (boxes.empty()) return {};
  if (boxes.front().empty()) return {Slab{}};

  const auto xs = breakpoints(boxes, 0);
  std::vector<Slab> out;
  std::vector<Slab> run_cross;
  double run_lo = 0.0, run_hi = 0.0;

  auto flush = [&] {
    for (const auto& c : run_cross) {
      Slab s;
      s.reserve(c.size() + 1);
      s.emplace_back(run_lo, run_hi);
      s.insert(s.end(), c.begin(), c.end());
      out.push_back(std::move(s));
    }
    run_cross.clear();
  };

  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double x0 = xs[i], x1 = xs[i + 1];
    std::vector<Slab> sub;
    for (const auto& b : boxes) {
      if (b[0].first <= x0 && b[0].second >= x1) sub.emplace_back(b.begin() + 1, b.end());
    }
    auto cross = canonical(sub);
    if (cross.empty()) {
      flush();
      continue;
    }
    if (!run_cross.empty() && run_hi == x0 && cross == run_cross) {
      run_hi = x1;
      continue;
    }
    flush();
    run_cross = std::move(cross);
    run_lo = x0;
    run_hi = x1;
  }
  flush();
  return out;
}

Slab to_slab(const Box& b) {
  Slab s;
  for (int k = 0; k < b.dim(); ++k) s.emplace_back(b.lo[k], b.hi[k]);
  return s;
}

Box from_slab(int dim, const Slab& s) {
  Vec lo(dim), hi(dim);
  for (int k = 0; k < dim; ++k) {
    lo[k] = s[static_cast<std::size_t>(k)].first;
    hi[k] = s[static_cast<std::size_t>(k)].second;
  }
  return Box(lo, hi);
}

// Calls fn(cell_lo, cell_hi) for every cell of the product of 1D partitions.
template <typename Fn>
void for_each_cell(int dim, const std::vector<std::vector<double>>& cuts, Fn&& fn) {
  for (const auto& c : cuts) {
    if (c.size() < 2) return;
  }
  std::vector<std::size_t> idx(static_cast<std::size_t>(dim), 0);
  Vec lo(dim), hi(dim);
  while (true) {
    for (int k = 0; k < dim; ++k) {
      lo[k] = cuts[k][idx[k]];
      hi[k] = cuts[k][idx[k] + 1];
    }
    fn(lo, hi);
    int k = 0;
    for (; k < dim; ++k) {
      if (++idx[k] + 1 < cuts[k].size()) break;
      idx[k] = 0;
    }
    if (k == dim) return;
  }
}

}  // namespace

Box::Box(Vec lo_, Vec hi_) : lo(lo_), hi(hi_) {
  if (lo.dim != hi.dim) throw ConfigInvalid("box corners have different dimensions");
  for (int k = 0; k < lo.dim; ++k) {
    if (!std::isfinite(lo[k]) || !std::isfinite(hi[k]) || !(lo[k] < hi[k])) {
      throw ConfigInvalid("box requires finite lo < hi on every axis");
    }
  }
}

double Box::volume() const {
  double v = 1.0;
  for (int k = 0; k < dim(); ++k) v *= hi[k] - lo[k];
  return v;
}

BoxUnion::BoxUnion(int dim, const std::vector<Box>& boxes) : dim_(dim) {
  std::vector<Slab> slabs;
  slabs.reserve(boxes.size());
  for (const auto& b : boxes) {
    if (b.dim() != dim) throw ConfigInvalid("box dimension does not match union");
    slabs.push_back(to_slab(b));
  }
  for (const auto& s : canonical(slabs)) boxes_.push_back(from_slab(dim, s));
}

bool BoxUnion::contains(const Vec& p) const {
  return std::any_of(boxes_.begin(), boxes_.end(), [&](const Box& b) {
    for (int k = 0; k < dim_; ++k) {
      if (p[k] < b.lo[k] || p[k] > b.hi[k]) return false;
    }
    return true;
  });
}

double exact_volume(const BoxUnion& b) {
  double v = 0.0;
  for (const auto& box : b.boxes()) v += box.volume();
  return v;
}

Vec exact_barycenter(const BoxUnion& b) {
  const double vol = exact_volume(b);
  if (vol <= 0.0) throw EmptySet("barycenter of an empty box union");
  Vec first(b.dim());
  for (const auto& box : b.boxes()) {
    const double v = box.volume();
    for (int k = 0; k < b.dim(); ++k) first[k] += v * 0.5 * (box.lo[k] + box.hi[k]);
  }
  return first * (1.0 / vol);
}

double exact_moment(const BoxUnion& b) {
  double mu = 0.0;
  for (const auto& box : b.boxes()) {
    for (int k = 0; k < b.dim(); ++k) {
      double term = (box.hi[k] * box.hi[k] * box.hi[k] - box.lo[k] * box.lo[k] * box.lo[k]) / 3.0;
      for (int j = 0; j < b.dim(); ++j) {
        if (j != k) term *= box.hi[j] - box.lo[j];
      }
      mu += term;
    }
  }
  return mu;
}

BoxUnion exact_symmetral_axis(const BoxUnion& b, int axis) {
  const int d = b.dim();
  if (axis < 0 || axis >= d) throw ConfigInvalid("symmetrization axis out of range");

  // Arrangement of the projections onto the hyperplane x_axis = 0. The axis
  // itself gets the trivial partition {0, 1} so for_each_cell can be reused.
  std::vector<std::vector<double>> cuts(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) {
    if (k == axis) {
      cuts[k] = {0.0, 1.0};
      continue;
    }
    for (const auto& box : b.boxes()) {
      cuts[k].push_back(box.lo[k]);
      cuts[k].push_back(box.hi[k]);
    }
    std::sort(cuts[k].begin(), cuts[k].end());
    cuts[k].erase(std::unique(cuts[k].begin(), cuts[k].end()), cuts[k].end());
  }

  std::vector<Box> out;
  for_each_cell(d, cuts, [&](const Vec& lo, const Vec& hi) {
    double chord = 0.0;
    for (const auto& box : b.boxes()) {
      bool covers = true;
      for (int k = 0; k < d && covers; ++k) {
        if (k != axis) covers = box.lo[k] <= lo[k] && box.hi[k] >= hi[k];
      }
      if (covers) chord += box.hi[axis] - box.lo[axis];
    }
    if (chord <= 0.0) return;
    Vec slo = lo, shi = hi;
    slo[axis] = -0.5 * chord;
    shi[axis] = 0.5 * chord;
    out.emplace_back(slo, shi);
  });
  return BoxUnion(d, out);
}

double exact_nikodym(const BoxUnion& a, const BoxUnion& b) {
  if (a.dim() != b.dim()) throw GridMismatch("box unions of different dimensions");
  const int d = a.dim();
  std::vector<std::vector<double>> cuts(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) {
    for (const auto* u : {&a, &b}) {
      for (const auto& box : u->boxes()) {
        cuts[k].push_back(box.lo[k]);
        cuts[k].push_back(box.hi[k]);
      }
    }
    std::sort(cuts[k].begin(), cuts[k].end());
    cuts[k].erase(std::unique(cuts[k].begin(), cuts[k].end()), cuts[k].end());
  }

  double sum = 0.0;
  for_each_cell(d, cuts, [&](const Vec& lo, const Vec& hi) {
    const Vec mid = 0.5 * (lo + hi);
    if (a.contains(mid) != b.contains(mid)) {
      double v = 1.0;
      for (int k = 0; k < d; ++k) v *= hi[k] - lo[k];
      sum += v;
    }
  });
  return sum;
}

OccupancyField to_field(const BoxUnion& b, const GridSpec& grid) {
  if (b.dim() != grid.dim()) throw GridMismatch("box union and grid dimensions differ");
  const int d = grid.dim();
  const int n = grid.resolution();
  const double h = grid.cell_size();
  const double r = grid.extent();

  OccupancyField field(grid);
  auto values = field.mutable_values();

  for (const auto& box : b.boxes()) {
    // Per-axis covered fraction of every cell overlapping the box.
    std::array<int, kMaxDim> first{}, count{};
    std::array<std::vector<double>, kMaxDim> cover;
    for (int k = 0; k < d; ++k) {
      const int i0 = std::max(0, static_cast<int>(std::floor((box.lo[k] + r) / h)));
      const int i1 = std::min(n - 1, static_cast<int>(std::floor((box.hi[k] + r) / h)));
      first[k] = i0;
      count[k] = std::max(0, i1 - i0 + 1);
      for (int i = i0; i <= i1; ++i) {
        const double lo = -r + i * h;
        const double overlap = std::min(box.hi[k], lo + h) - std::max(box.lo[k], lo);
        cover[k].push_back(std::max(0.0, overlap) / h);
      }
    }
    if (d == 2) count[2] = 1, cover[2] = {1.0};
    for (int c = 0; c < count[2]; ++c) {
      for (int bj = 0; bj < count[1]; ++bj) {
        for (int a = 0; a < count[0]; ++a) {
          const double frac = cover[0][a] * cover[1][bj] * cover[2][c];
          if (frac <= 0.0) continue;
          values[grid.index(first[0] + a, first[1] + bj, d == 3 ? first[2] + c : 0)] += frac;
        }
      }
    }
  }
  for (auto& v : values) v = std::min(v, 1.0);
  field.check_support();
  return field;
}

}  // namespace steiner
