#pragma once

#include <span>
#include <vector>

#include "gasr/rng.hpp"

namespace gasr {

inline constexpr double kSigma2Floor = 1e-12;

/// Gamma-prior shape/rate and Gaussian noise variance. All strictly
/// positive; sigma2 is floored at kSigma2Floor.
struct Hyperparameters {
  double a = 1.0;
  double b = 1.0;
  double sigma2 = 1.0;

  void validate() const;
};

/// Current sampler state: r latent dimensions with coefficient d_k >= 0,
/// factor vectors u_k in R^m and v_k in R^n constrained to the unit ball,
/// and per-dimension regularization weight gamma_k > 0.
class FactorState {
 public:
  FactorState(int r, int m, int n);

  int r() const { return r_; }
  int m() const { return m_; }
  int n() const { return n_; }

  double& d(int k) { return d_[k]; }
  double d(int k) const { return d_[k]; }
  double& gamma(int k) { return gamma_[k]; }
  double gamma(int k) const { return gamma_[k]; }

  double& u(int k, int i) { return u_[static_cast<std::size_t>(k) * m_ + i]; }
  double u(int k, int i) const { return u_[static_cast<std::size_t>(k) * m_ + i]; }
  double& v(int k, int j) { return v_[static_cast<std::size_t>(k) * n_ + j]; }
  double v(int k, int j) const { return v_[static_cast<std::size_t>(k) * n_ + j]; }

  std::span<const double> u_vec(int k) const {
    return {u_.data() + static_cast<std::size_t>(k) * m_, static_cast<std::size_t>(m_)};
  }
  std::span<const double> v_vec(int k) const {
    return {v_.data() + static_cast<std::size_t>(k) * n_, static_cast<std::size_t>(n_)};
  }
  std::span<const double> d_vec() const { return d_; }
  std::span<const double> gamma_vec() const { return gamma_; }

  double u_sqnorm(int k) const;
  double v_sqnorm(int k) const;

  /// Whether all constraints hold: d_k >= 0, gamma_k > 0, factor norms
  /// <= 1 + slack (slack absorbs round-off at the ball boundary).
  bool in_support(double norm_slack = 1e-9) const;

  bool operator==(const FactorState&) const = default;

 private:
  int r_, m_, n_;
  std::vector<double> d_, gamma_, u_, v_;
};

/// Sampler initialization: factor vectors drawn as uniform directions with
/// the given norm, all d_k zero, gamma_k drawn from the prior conditional
/// Gamma(a + 1, b).
FactorState make_initial_state(int r, int m, int n, double init_norm, const Hyperparameters& hp,
                               RngStream& rng);

}  // namespace gasr
