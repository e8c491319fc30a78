#pragma once

#include <cstdint>
#include <vector>

#include "gasr/observed.hpp"
#include "gasr/rng.hpp"
#include "gasr/state.hpp"

namespace gasr {

/// Stats of the truncated-Gaussian conditional for one coefficient d_alpha:
/// the conditional is N(-B/A, sigma2/A) restricted to [0, inf). A = 0 means
/// the data term vanished and the conditional falls back to the
/// exponential prior Exponential(gamma_alpha).
struct DStats {
  double A = 0.0;
  double B = 0.0;
};

/// Stats for one factor element: conditional N(-D/C, sigma2/C) restricted
/// to [-rho, rho], where rho^2 = 1 - (squared norm of the rest of the same
/// factor vector). C = 0 degenerates to Uniform(-rho, rho); rho = 0 pins
/// the element to zero.
struct UvStats {
  double C = 0.0;
  double D = 0.0;
  double rho = 0.0;
};

enum class Side { U, V };

/// Sum of squared residuals over the observed cells,
/// sum_{(i,j)} (x_ij - sum_k d_k u_ki v_kj)^2.
double residual_sq_norm(const FactorState& state, const ObservedMatrix& data);

/// Log joint density of (state, observed data) up to an additive constant:
/// data term plus exponential/gamma prior terms, -inf outside the support
/// (d_k < 0, gamma_k <= 0, factor norms > 1 + 1e-9).
double log_joint(const FactorState& state, const Hyperparameters& hp, const ObservedMatrix& data);

/// One systematic Gibbs scan over the state, phases in the order
/// gamma -> d -> U -> V. Keeps an incremental residual cache so a sweep
/// costs O(|observed| * r); the cache and the factor norm caches are
/// refreshed from scratch at every sweep start to stop drift.
class SweepEngine {
 public:
  SweepEngine(const ObservedMatrix& data, FactorState state, Hyperparameters hp);

  const FactorState& state() const { return state_; }
  const Hyperparameters& hyperparameters() const { return hp_; }
  void set_hyperparameters(const Hyperparameters& hp);

  void sweep(RngStream& rng);

  // Individual phases, usable standalone (systematic scan order inside).
  void sample_gamma_phase(RngStream& rng);
  void sample_d_phase(RngStream& rng);
  void sample_u_phase(RngStream& rng);
  void sample_v_phase(RngStream& rng);

  DStats d_stats(int alpha) const;
  UvStats uv_stats(Side side, int alpha, int beta) const;

  /// Draw from the current conditional of d_alpha (no state update).
  double draw_d_conditional(int alpha, RngStream& rng) const;
  /// Draw from the current conditional of one factor element (no update).
  double draw_factor_conditional(Side side, int alpha, int beta, RngStream& rng) const;

  /// Residual squared norm from the cache.
  double residual_sq() const;
  double log_joint_value() const;

  /// Rebuild the residual and factor-norm caches from the current state.
  void refresh_caches();

  /// Number of observed-entry visits performed by the sampling phases;
  /// proxies the arithmetic cost of the sweeps run so far.
  std::uint64_t work_units() const { return work_; }

 private:
  void apply_d_update(int alpha, double d_new);

  int m_, n_, r_;
  std::size_t nobs_;
  std::vector<int> ei_, ej_;
  std::vector<double> ex_;
  std::vector<int> row_ptr_, row_entries_;
  std::vector<int> col_ptr_, col_entries_;

  FactorState state_;
  Hyperparameters hp_;
  std::vector<double> res_;
  std::vector<double> usq_, vsq_;
  std::uint64_t work_ = 0;
};

// Single-phase convenience wrappers over a fresh engine; state is updated
// in place. Draw-for-draw identical to the corresponding engine phase.
void sample_gamma_coeffs(FactorState& state, const Hyperparameters& hp, RngStream& rng);
DStats d_conditional_stats(const FactorState& state, const Hyperparameters& hp,
                           const ObservedMatrix& data, int alpha);
UvStats uv_conditional_stats(const FactorState& state, const Hyperparameters& hp,
                             const ObservedMatrix& data, Side side, int alpha, int beta);
void sample_d(FactorState& state, const Hyperparameters& hp, const ObservedMatrix& data,
              RngStream& rng);
void sample_uv(FactorState& state, const Hyperparameters& hp, const ObservedMatrix& data,
               RngStream& rng);
void gibbs_sweep(FactorState& state, const Hyperparameters& hp, const ObservedMatrix& data,
                 RngStream& rng);

}  // namespace gasr
