#include "steiner/directions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/distributions/chi_squared.hpp>

#include "steiner/errors.hpp"

namespace steiner {

Direction canonicalize(const Vec& v) {
  const double len = norm(v);
  if (!(len > 0.0) || !std::isfinite(len)) throw ZeroVector("cannot take the direction of a zero vector");
  // Unit vectors are kept as given so that canonicalization is idempotent.
  Vec u = std::abs(len - 1.0) <= 4.0 * std::numeric_limits<double>::epsilon() ? v : v * (1.0 / len);
  for (int k = 0; k < u.dim; ++k) {
    if (std::abs(u[k]) > kSignTolerance) {
      if (u[k] < 0.0) u = -u;
      break;
    }
  }
  return Direction(u);
}

double direction_distance(const Direction& u, const Direction& v) {
  return std::min(norm(u.vector() - v.vector()), norm(u.vector() + v.vector()));
}

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double standard_normal(Rng& rng) {
  const double u1 = 1.0 - uniform01(rng);  // (0, 1]
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Direction sample_uniform(Rng& rng, int dim) {
  while (true) {
    Vec g(dim);
    for (int k = 0; k < dim; ++k) g[k] = standard_normal(rng);
    if (norm(g) > 0.0) return canonicalize(g);
  }
}

double double_cap_probability(int dim) {
  switch (dim) {
    case 2:
      return 0.5;
    case 3:
      return 1.0 - 1.0 / std::numbers::sqrt2;
    default:
      throw ConfigInvalid("dimension must be 2 or 3");
  }
}

namespace {

constexpr double kPlasticInverse = 0.75487766624669276005;  // 1 / 1.3247179572...
constexpr double kGoldenConjugate = 0.61803398874989484820;

Direction equidistributed_direction(std::uint64_t n, int dim) {
  const auto nd = static_cast<double>(n);
  if (dim == 2) {
    const double theta = std::fmod(nd * kGoldenConjugate, 1.0) * std::numbers::pi;
    return canonicalize(Vec(std::cos(theta), std::sin(theta)));
  }
  const double z = 2.0 * std::fmod(nd * kPlasticInverse, 1.0) - 1.0;
  const double phi = 2.0 * std::numbers::pi * std::fmod(nd * (1.0 - kGoldenConjugate), 1.0);
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return canonicalize(Vec(r * std::cos(phi), r * std::sin(phi), z));
}

}  // namespace

DirectionSource::DirectionSource(DirectionPolicy policy, int dim) : policy_(std::move(policy)), dim_(dim) {
  if (dim != 2 && dim != 3) throw ConfigInvalid("dimension must be 2 or 3");
  if (const auto* c = std::get_if<Cyclic>(&policy_)) {
    if (c->list.empty()) throw EmptyCycle("cyclic direction list is empty");
    for (const auto& u : c->list) {
      if (u.dim() != dim) throw ConfigInvalid("cyclic direction has the wrong dimension");
    }
  }
  if (const auto* a = std::get_if<AxisBiased>(&policy_)) {
    if (!(a->exponent >= 0.0)) throw ConfigInvalid("axis-biased exponent must be non-negative");
    rng_.seed(a->seed);
  }
  if (const auto* s = std::get_if<IidUniform>(&policy_)) rng_.seed(s->seed);
}

Direction DirectionSource::next() {
  const std::uint64_t n = index_++;
  return std::visit(
      [&](const auto& p) -> Direction {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, IidUniform>) {
          return sample_uniform(rng_, dim_);
        } else if constexpr (std::is_same_v<T, Equidistributed>) {
          return equidistributed_direction(n + 1, dim_);
        } else if constexpr (std::is_same_v<T, Cyclic>) {
          return p.list[n % p.list.size()];
        } else {
          while (true) {
            const Direction u = sample_uniform(rng_, dim_);
            if (p.exponent == 0.0 || uniform01(rng_) < std::pow(std::abs(u[0]), p.exponent)) return u;
          }
        }
      },
      policy_);
}

int hemisphere_bin_count(int /*dim*/) { return 100; }

int hemisphere_bin(const Direction& u) {
  if (u.dim() == 2) {
    // Canonical angles lie in (-pi/2, pi/2].
    const double t = (std::atan2(u[1], u[0]) + 0.5 * std::numbers::pi) / std::numbers::pi;
    return std::clamp(static_cast<int>(t * 100.0), 0, 99);
  }
  // u_1 is uniform on [0, 1] over the hemisphere (Archimedes), so bands in u_1
  // crossed with azimuth sectors have equal area.
  const int band = std::clamp(static_cast<int>(std::abs(u[0]) * 10.0), 0, 9);
  const double az = (std::atan2(u[2], u[1]) + std::numbers::pi) / (2.0 * std::numbers::pi);
  const int sector = std::clamp(static_cast<int>(az * 10.0), 0, 9);
  return band * 10 + sector;
}

double hemisphere_chi_square(const std::vector<Direction>& sample, int dim) {
  const int bins = hemisphere_bin_count(dim);
  std::vector<double> counts(static_cast<std::size_t>(bins), 0.0);
  for (const auto& u : sample) counts[static_cast<std::size_t>(hemisphere_bin(u))] += 1.0;
  const double expected = static_cast<double>(sample.size()) / bins;
  double chi = 0.0;
  for (double c : counts) chi += (c - expected) * (c - expected) / expected;
  return chi;
}

double chi_square_critical(int dof, double significance) {
  boost::math::chi_squared dist(dof);
  return boost::math::quantile(boost::math::complement(dist, significance));
}

SamplerReport sampler_check(DirectionSource& source, std::uint64_t samples) {
  const int dim = source.dim();
  const Direction w = canonicalize(dim == 2 ? Vec(0.6, 0.8) : Vec(0.3, 0.5, 0.8));
  const double threshold = 1.0 / std::numbers::sqrt2;

  std::vector<Direction> drawn;
  drawn.reserve(samples);
  std::uint64_t in_cap = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    drawn.push_back(source.next());
    if (std::abs(dot(drawn.back().vector(), w.vector())) >= threshold) ++in_cap;
  }

  SamplerReport r;
  r.dim = dim;
  r.samples = samples;
  r.cap_analytic = double_cap_probability(dim);
  r.cap_empirical = samples ? static_cast<double>(in_cap) / static_cast<double>(samples) : 0.0;
  r.cap_sigma = std::sqrt(r.cap_analytic * (1.0 - r.cap_analytic) / static_cast<double>(std::max<std::uint64_t>(samples, 1)));
  r.cap_ok = samples > 0 && std::abs(r.cap_empirical - r.cap_analytic) <= 3.0 * r.cap_sigma;
  r.bins = hemisphere_bin_count(dim);
  r.chi_square = samples ? hemisphere_chi_square(drawn, dim) : 0.0;
  r.chi_square_critical = chi_square_critical(r.bins - 1, 1e-3);
  r.uniform_ok = samples > 0 && r.chi_square <= r.chi_square_critical;
  return r;
}

}  // namespace steiner
