#pragma once

#include <span>
#include <vector>

#include "gasr/gibbs.hpp"
#include "gasr/observed.hpp"
#include "gasr/state.hpp"

namespace gasr {

/// Sample means over the EM window: <gamma_i>, <ln gamma_i> per latent
/// dimension and the mean residual squared norm.
struct SufficientStats {
  std::vector<double> mean_gamma;
  std::vector<double> mean_log_gamma;
  double mean_residual = 0.0;
  int window = 0;
};

/// Arithmetic means over a nonempty window of retained sampler states.
SufficientStats accumulate(std::span<const FactorState> window, const ObservedMatrix& data);

/// Newton iteration for the gamma-prior shape on the profile objective
/// (rate profiled out), iterated to |step| < 1e-8 or 100 steps, clamped to
/// [1e-6, 1e6]. Throws NumericError on degenerate statistics.
double update_a(double a, const SufficientStats& stats);

/// Rate update b = r * a / sum_i <gamma_i>.
double update_b(double a_next, const SufficientStats& stats);

/// Noise update sigma2 = mean_residual / n_obs, floored at kSigma2Floor.
double update_sigma2(const SufficientStats& stats, std::size_t n_obs);

/// One M-step: shape, then rate, then noise variance.
Hyperparameters em_step(const Hyperparameters& hp, std::span<const FactorState> window,
                        const ObservedMatrix& data);
Hyperparameters em_step_from_stats(const Hyperparameters& hp, const SufficientStats& stats,
                                   std::size_t n_obs);

/// The sampled E-step objective the M-step maximizes (additive constant
/// dropped): -(n/2) ln sigma2 - <residual>/(2 sigma2)
///           + sum_i [a ln b - ln Gamma(a) + a <ln gamma_i> - b <gamma_i>].
double expected_log_joint(const Hyperparameters& hp, const SufficientStats& stats,
                          std::size_t n_obs);

}  // namespace gasr
