#include "gasr/mcem.hpp"

#include <cmath>
#include <stdexcept>

#include "gasr/special.hpp"

namespace gasr {

namespace {

constexpr double kAMin = 1e-6;
constexpr double kAMax = 1e6;

double gamma_sum(const SufficientStats& stats) {
  double s = 0.0;
  for (double g : stats.mean_gamma) s += g;
  return s;
}

double log_gamma_sum(const SufficientStats& stats) {
  double s = 0.0;
  for (double lg : stats.mean_log_gamma) s += lg;
  return s;
}

}  // namespace

SufficientStats accumulate(std::span<const FactorState> window, const ObservedMatrix& data) {
  if (window.empty()) throw std::invalid_argument("accumulate: empty window");
  const int r = window.front().r();
  SufficientStats stats;
  stats.mean_gamma.assign(r, 0.0);
  stats.mean_log_gamma.assign(r, 0.0);
  stats.window = static_cast<int>(window.size());
  for (const FactorState& state : window) {
    if (state.r() != r) throw std::invalid_argument("accumulate: inconsistent ranks in window");
    for (int k = 0; k < r; ++k) {
      stats.mean_gamma[k] += state.gamma(k);
      stats.mean_log_gamma[k] += std::log(state.gamma(k));
    }
    stats.mean_residual += residual_sq_norm(state, data);
  }
  const double inv = 1.0 / static_cast<double>(stats.window);
  for (int k = 0; k < r; ++k) {
    stats.mean_gamma[k] *= inv;
    stats.mean_log_gamma[k] *= inv;
  }
  stats.mean_residual *= inv;
  return stats;
}

double update_a(double a, const SufficientStats& stats) {
  if (!(a > 0.0)) throw std::invalid_argument("update_a: a must be positive");
  const double r = static_cast<double>(stats.mean_gamma.size());
  if (r < 1.0) throw std::invalid_argument("update_a: empty statistics");
  const double S = gamma_sum(stats);
  const double L = log_gamma_sum(stats);
  if (!(S > 0.0) || !std::isfinite(S) || !std::isfinite(L))
    throw NumericError("update_a: degenerate gamma statistics");

  for (int iter = 0; iter < 100; ++iter) {
    const double denom = trigamma(a) - 1.0 / a;  // positive for all a > 0
    if (!(denom > 0.0)) throw NumericError("update_a: non-positive Newton denominator");
    const double grad = digamma(a) - std::log(r * a / S) - L / r;
    double next = a - grad / denom;
    if (!std::isfinite(next)) throw NumericError("update_a: non-finite Newton step");
    next = std::min(std::max(next, kAMin), kAMax);
    const bool done = std::abs(next - a) < 1e-8;
    a = next;
    if (done) break;
  }
  return a;
}

double update_b(double a_next, const SufficientStats& stats) {
  const double S = gamma_sum(stats);
  if (!(S > 0.0)) throw NumericError("update_b: sum of <gamma_i> must be positive");
  return static_cast<double>(stats.mean_gamma.size()) * a_next / S;
}

double update_sigma2(const SufficientStats& stats, std::size_t n_obs) {
  if (n_obs == 0) throw std::invalid_argument("update_sigma2: no observed entries");
  if (!(stats.mean_residual >= 0.0))
    throw NumericError("update_sigma2: negative mean residual");
  return std::max(stats.mean_residual / static_cast<double>(n_obs), kSigma2Floor);
}

Hyperparameters em_step_from_stats(const Hyperparameters& hp, const SufficientStats& stats,
                                   std::size_t n_obs) {
  Hyperparameters next;
  next.a = update_a(hp.a, stats);
  next.b = update_b(next.a, stats);
  next.sigma2 = update_sigma2(stats, n_obs);
  return next;
}

Hyperparameters em_step(const Hyperparameters& hp, std::span<const FactorState> window,
                        const ObservedMatrix& data) {
  return em_step_from_stats(hp, accumulate(window, data), data.n_obs());
}

double expected_log_joint(const Hyperparameters& hp, const SufficientStats& stats,
                          std::size_t n_obs) {
  double value = -0.5 * static_cast<double>(n_obs) * std::log(hp.sigma2) -
                 stats.mean_residual / (2.0 * hp.sigma2);
  const double prior_const = hp.a * std::log(hp.b) - std::lgamma(hp.a);
  for (std::size_t i = 0; i < stats.mean_gamma.size(); ++i)
    value += prior_const + hp.a * stats.mean_log_gamma[i] - hp.b * stats.mean_gamma[i];
  return value;
}

}  // namespace gasr
