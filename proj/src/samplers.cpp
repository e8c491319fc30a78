#include "gasr/samplers.hpp"

#include <cassert>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace gasr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Robert-style shifted-exponential draw on [za, inf), za >= 0.
// Proposal rate lam = (za + sqrt(za^2 + 4)) / 2 maximizes acceptance.
double tail_exponential(double za, double zb, RngStream& rng) {
  const double lam = 0.5 * (za + std::sqrt(za * za + 4.0));
  for (;;) {
    const double z = za + rng.exponential(lam);
    if (z > zb) continue;
    const double diff = z - lam;
    if (std::log(rng.uniform01()) <= -0.5 * diff * diff) return z;
  }
}

// Uniform proposal on [za, zb]; accept against the density peak inside.
double bounded_uniform(double za, double zb, RngStream& rng) {
  double peak2 = 0.0;  // squared z at the density maximum over [za, zb]
  if (za > 0.0)
    peak2 = za * za;
  else if (zb < 0.0)
    peak2 = zb * zb;
  for (;;) {
    const double z = rng.uniform(za, zb);
    if (std::log(rng.uniform01()) <= 0.5 * (peak2 - z * z)) return z;
  }
}

// Standard-normal draw restricted to [za, zb].
double truncated_std_normal(double za, double zb, RngStream& rng) {
  const double mass = normal_cdf(zb) - normal_cdf(za);
  if (mass >= 0.3) {
    for (;;) {
      const double z = rng.normal();
      if (z >= za && z <= zb) return z;
    }
  }
  if (zb <= 0.0) return -truncated_std_normal(-zb, -za, rng);  // mirror to the right tail
  if (za <= 0.0) return bounded_uniform(za, zb, rng);          // narrow region straddling 0
  if (zb == kInf) return tail_exponential(za, zb, rng);
  // Two-sided region in the right tail: crossover rule between the uniform
  // and the shifted-exponential proposal keeps acceptance bounded.
  const double root = std::sqrt(za * za + 4.0);
  const double width_limit = 2.0 * std::sqrt(std::numbers::e) / (za + root) *
                             std::exp(0.25 * (za * za - za * root));
  if (zb - za <= width_limit) return bounded_uniform(za, zb, rng);
  return tail_exponential(za, zb, rng);
}

}  // namespace

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double sample_gamma_dist(double shape, double rate, RngStream& rng) {
  if (!(shape > 0.0) || !(rate > 0.0))
    throw std::invalid_argument("sample_gamma_dist: shape and rate must be positive");
  if (shape < 1.0) {
    const double u = rng.uniform01();
    return sample_gamma_dist(shape + 1.0, rate, rng) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, t;
    do {
      x = rng.normal();
      t = 1.0 + c * x;
    } while (t <= 0.0);
    const double v = t * t * t;
    const double u = rng.uniform01();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v / rate;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v / rate;
  }
}

double sample_truncated_normal(double mu, double var, double lo, double hi, RngStream& rng) {
  if (!std::isfinite(mu) || !std::isfinite(var) || !(var > 0.0))
    throw std::invalid_argument("sample_truncated_normal: mu/var must be finite, var > 0");
  if (std::isnan(lo) || std::isnan(hi) || !(lo < hi))
    throw std::invalid_argument("sample_truncated_normal: requires lo < hi");
  const double sd = std::sqrt(var);
  const double za = (lo == -kInf) ? -kInf : (lo - mu) / sd;
  const double zb = (hi == kInf) ? kInf : (hi - mu) / sd;
  const double z = truncated_std_normal(za, zb, rng);
  double x = mu + sd * z;
  if (x < lo) x = lo;  // guard against round-off at the boundaries
  if (x > hi) x = hi;
  assert(x >= lo && x <= hi);
  return x;
}

std::vector<double> sample_uniform_sphere(int dim, double radius, RngStream& rng) {
  if (dim < 1) throw std::invalid_argument("sample_uniform_sphere: dim must be >= 1");
  if (!(radius > 0.0) || radius > 1.0)
    throw std::invalid_argument("sample_uniform_sphere: radius must lie in (0, 1]");
  std::vector<double> x(dim);
  for (;;) {
    double sq = 0.0;
    for (auto& xi : x) {
      xi = rng.normal();
      sq += xi * xi;
    }
    if (sq > 0.0) {
      const double scale = radius / std::sqrt(sq);
      for (auto& xi : x) xi *= scale;
      return x;
    }
  }
}

}  // namespace gasr
