#include "gasr/state.hpp"

#include <stdexcept>

#include "gasr/samplers.hpp"

namespace gasr {

void Hyperparameters::validate() const {
  if (!(a > 0.0) || !(b > 0.0) || !(sigma2 >= kSigma2Floor))
    throw std::invalid_argument("Hyperparameters: a > 0, b > 0, sigma2 >= 1e-12 required");
}

FactorState::FactorState(int r, int m, int n)
    : r_(r),
      m_(m),
      n_(n),
      d_(r, 0.0),
      gamma_(r, 1.0),
      u_(static_cast<std::size_t>(r) * m, 0.0),
      v_(static_cast<std::size_t>(r) * n, 0.0) {
  if (r < 1 || m < 1 || n < 1)
    throw std::invalid_argument("FactorState: r, m, n must be positive");
}

double FactorState::u_sqnorm(int k) const {
  double s = 0.0;
  for (double x : u_vec(k)) s += x * x;
  return s;
}

double FactorState::v_sqnorm(int k) const {
  double s = 0.0;
  for (double x : v_vec(k)) s += x * x;
  return s;
}

bool FactorState::in_support(double norm_slack) const {
  for (int k = 0; k < r_; ++k) {
    if (!(d_[k] >= 0.0)) return false;
    if (!(gamma_[k] > 0.0)) return false;
    if (u_sqnorm(k) > 1.0 + norm_slack) return false;
    if (v_sqnorm(k) > 1.0 + norm_slack) return false;
  }
  return true;
}

FactorState make_initial_state(int r, int m, int n, double init_norm, const Hyperparameters& hp,
                               RngStream& rng) {
  hp.validate();
  FactorState state(r, m, n);
  for (int k = 0; k < r; ++k) {
    const auto uk = sample_uniform_sphere(m, init_norm, rng);
    for (int i = 0; i < m; ++i) state.u(k, i) = uk[i];
    const auto vk = sample_uniform_sphere(n, init_norm, rng);
    for (int j = 0; j < n; ++j) state.v(k, j) = vk[j];
    state.gamma(k) = sample_gamma_dist(hp.a + 1.0, hp.b, rng);
  }
  return state;
}

}  // namespace gasr
