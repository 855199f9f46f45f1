#pragma once

#include <cstdint>
#include <random>
#include <variant>
#include <vector>

#include "steiner/grid.hpp"

namespace steiner {

// A point of the projective sphere S^{d-1}/{u ~ -u}: a unit vector whose first
// component that exceeds 1e-12 in magnitude is positive.
class Direction {
 public:
  int dim() const { return v_.dim; }
  const Vec& vector() const { return v_; }
  double operator[](int i) const { return v_[i]; }

  static Direction axis(int dim, int k) { return Direction(Vec::unit(dim, k)); }

  friend Direction canonicalize(const Vec& v);
  friend bool operator==(const Direction&, const Direction&) = default;

 private:
  explicit Direction(const Vec& v) : v_(v) {}
  Vec v_;
};

inline constexpr double kSignTolerance = 1e-12;

// Normalizes and picks the representative of {v, -v}. Throws ZeroVector.
Direction canonicalize(const Vec& v);

// min(|u - v|, |u + v|).
double direction_distance(const Direction& u, const Direction& v);

// Seedable generator with standardized integer output.
using Rng = std::mt19937_64;

// Uniform double in [0, 1) from the top 53 bits of one draw.
double uniform01(Rng& rng);
// Standard normal by Box-Muller, one value per two uniforms.
double standard_normal(Rng& rng);

// Uniform law on S^{d-1}/~: normalized Gaussian vector, canonicalized.
Direction sample_uniform(Rng& rng, int dim);

// Probability of {u : |u.w| >= 1/sqrt(2)} under the uniform law.
double double_cap_probability(int dim);

struct IidUniform {
  std::uint64_t seed = 0;
};

// d = 2: angle frac(n phi) pi with phi the golden ratio conjugate.
// d = 3: height 2 frac(n a) - 1 with a = 1/plastic number, azimuth n times
// the golden angle, folded onto the canonical hemisphere.
struct Equidistributed {};

struct Cyclic {
  std::vector<Direction> list;
};

// Density proportional to |u.e_1|^k, sampled by rejection from IidUniform.
struct AxisBiased {
  std::uint64_t seed = 0;
  double exponent = 0.0;
};

using DirectionPolicy = std::variant<IidUniform, Equidistributed, Cyclic, AxisBiased>;

// Sequence u_1, u_2, ... of directions. Single owner; not thread safe.
class DirectionSource {
 public:
  DirectionSource(DirectionPolicy policy, int dim);

  Direction next();
  // Number of directions produced so far.
  std::uint64_t index() const { return index_; }
  int dim() const { return dim_; }

 private:
  DirectionPolicy policy_;
  int dim_;
  std::uint64_t index_ = 0;
  Rng rng_;
};

// Empirical checks of the uniform sampler.
struct SamplerReport {
  int dim = 0;
  std::uint64_t samples = 0;
  double cap_empirical = 0.0;
  double cap_analytic = 0.0;
  double cap_sigma = 0.0;  // binomial standard error at the analytic value
  double chi_square = 0.0;
  int bins = 0;
  double chi_square_critical = 0.0;  // upper 0.001 quantile, bins - 1 dof
  bool cap_ok = false;
  bool uniform_ok = false;

  bool passed() const { return cap_ok && uniform_ok; }
};

// Equal-area bin of the canonical hemisphere: 100 angular bins for d = 2,
// 10 bands in u_1 times 10 azimuth sectors for d = 3.
int hemisphere_bin(const Direction& u);
int hemisphere_bin_count(int dim);

// Pearson statistic of the binned sample against equal expected counts.
double hemisphere_chi_square(const std::vector<Direction>& sample, int dim);
double chi_square_critical(int dof, double significance);

// Double-cap frequency (w = e_1 rotated off-axis) and the chi-square test
// over `samples` draws of `source`.
SamplerReport sampler_check(DirectionSource& source, std::uint64_t samples);

}  // namespace steiner
