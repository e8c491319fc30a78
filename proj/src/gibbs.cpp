#include "gasr/gibbs.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "gasr/samplers.hpp"

namespace gasr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNormSlack = 1e-9;

// Beyond this z-score the truncated-Gaussian tail is numerically an
// exponential; sample it as one.
constexpr double kTailZ = 1e8;

}  // namespace

double residual_sq_norm(const FactorState& state, const ObservedMatrix& data) {
  if (state.m() != data.m || state.n() != data.n)
    throw std::invalid_argument("residual_sq_norm: state/data dimension mismatch");
  double total = 0.0;
  for (const Entry& e : data.entries) {
    double pred = 0.0;
    for (int k = 0; k < state.r(); ++k) pred += state.d(k) * state.u(k, e.row) * state.v(k, e.col);
    const double diff = e.value - pred;
    total += diff * diff;
  }
  return total;
}

double log_joint(const FactorState& state, const Hyperparameters& hp, const ObservedMatrix& data) {
  if (state.m() != data.m || state.n() != data.n)
    throw std::invalid_argument("log_joint: state/data dimension mismatch");
  if (!state.in_support(kNormSlack)) return -kInf;
  const double nobs = static_cast<double>(data.n_obs());
  double value = -0.5 * nobs * std::log(2.0 * std::numbers::pi * hp.sigma2) -
                 residual_sq_norm(state, data) / (2.0 * hp.sigma2);
  const double prior_const = hp.a * std::log(hp.b) - std::lgamma(hp.a);
  for (int k = 0; k < state.r(); ++k)
    value += prior_const + hp.a * std::log(state.gamma(k)) - (hp.b + state.d(k)) * state.gamma(k);
  return value;
}

SweepEngine::SweepEngine(const ObservedMatrix& data, FactorState state, Hyperparameters hp)
    : m_(data.m), n_(data.n), r_(state.r()), nobs_(data.n_obs()), state_(std::move(state)), hp_(hp) {
  if (state_.m() != m_ || state_.n() != n_)
    throw std::invalid_argument("SweepEngine: state/data dimension mismatch");
  if (nobs_ == 0) throw std::invalid_argument("SweepEngine: no observed entries");
  hp_.validate();
  data.validate();

  ei_.resize(nobs_);
  ej_.resize(nobs_);
  ex_.resize(nobs_);
  for (std::size_t e = 0; e < nobs_; ++e) {
    ei_[e] = data.entries[e].row;
    ej_[e] = data.entries[e].col;
    ex_[e] = data.entries[e].value;
  }

  // Counting-sort adjacency by row and by column.
  row_ptr_.assign(m_ + 1, 0);
  col_ptr_.assign(n_ + 1, 0);
  for (std::size_t e = 0; e < nobs_; ++e) {
    ++row_ptr_[ei_[e] + 1];
    ++col_ptr_[ej_[e] + 1];
  }
  for (int i = 0; i < m_; ++i) row_ptr_[i + 1] += row_ptr_[i];
  for (int j = 0; j < n_; ++j) col_ptr_[j + 1] += col_ptr_[j];
  row_entries_.resize(nobs_);
  col_entries_.resize(nobs_);
  std::vector<int> rfill(row_ptr_.begin(), row_ptr_.end() - 1);
  std::vector<int> cfill(col_ptr_.begin(), col_ptr_.end() - 1);
  for (std::size_t e = 0; e < nobs_; ++e) {
    row_entries_[rfill[ei_[e]]++] = static_cast<int>(e);
    col_entries_[cfill[ej_[e]]++] = static_cast<int>(e);
  }

  res_.resize(nobs_);
  usq_.resize(r_);
  vsq_.resize(r_);
  refresh_caches();
}

void SweepEngine::set_hyperparameters(const Hyperparameters& hp) {
  hp.validate();
  hp_ = hp;
}

void SweepEngine::refresh_caches() {
  for (std::size_t e = 0; e < nobs_; ++e) {
    double pred = 0.0;
    for (int k = 0; k < r_; ++k) pred += state_.d(k) * state_.u(k, ei_[e]) * state_.v(k, ej_[e]);
    res_[e] = ex_[e] - pred;
  }
  for (int k = 0; k < r_; ++k) {
    usq_[k] = state_.u_sqnorm(k);
    vsq_[k] = state_.v_sqnorm(k);
  }
}

double SweepEngine::residual_sq() const {
  double total = 0.0;
  for (double r : res_) total += r * r;
  return total;
}

double SweepEngine::log_joint_value() const {
  if (!state_.in_support(kNormSlack)) return -kInf;
  double value = -0.5 * static_cast<double>(nobs_) *
                     std::log(2.0 * std::numbers::pi * hp_.sigma2) -
                 residual_sq() / (2.0 * hp_.sigma2);
  const double prior_const = hp_.a * std::log(hp_.b) - std::lgamma(hp_.a);
  for (int k = 0; k < r_; ++k)
    value += prior_const + hp_.a * std::log(state_.gamma(k)) -
             (hp_.b + state_.d(k)) * state_.gamma(k);
  return value;
}

void SweepEngine::sweep(RngStream& rng) {
  refresh_caches();
  sample_gamma_phase(rng);
  sample_d_phase(rng);
  sample_u_phase(rng);
  sample_v_phase(rng);
}

void SweepEngine::sample_gamma_phase(RngStream& rng) {
  for (int k = 0; k < r_; ++k)
    state_.gamma(k) = sample_gamma_dist(hp_.a + 1.0, hp_.b + state_.d(k), rng);
}

DStats SweepEngine::d_stats(int alpha) const {
  DStats s;
  const double d_alpha = state_.d(alpha);
  for (std::size_t e = 0; e < nobs_; ++e) {
    const double g = state_.u(alpha, ei_[e]) * state_.v(alpha, ej_[e]);
    s.A += g * g;
    s.B -= g * (res_[e] + d_alpha * g);
  }
  s.B += hp_.sigma2 * state_.gamma(alpha);
  return s;
}

void SweepEngine::apply_d_update(int alpha, double d_new) {
  const double delta = d_new - state_.d(alpha);
  if (delta != 0.0) {
    for (std::size_t e = 0; e < nobs_; ++e)
      res_[e] -= delta * state_.u(alpha, ei_[e]) * state_.v(alpha, ej_[e]);
  }
  state_.d(alpha) = d_new;
}

double SweepEngine::draw_d_conditional(int alpha, RngStream& rng) const {
  const DStats s = d_stats(alpha);
  double d_new;
  if (s.A <= 0.0) {
    d_new = rng.exponential(state_.gamma(alpha));
  } else {
    const double tail_z = s.B / (std::sqrt(hp_.sigma2) * std::sqrt(s.A));
    if (tail_z > kTailZ)
      d_new = rng.exponential(s.B / hp_.sigma2);
    else
      d_new = sample_truncated_normal(-s.B / s.A, hp_.sigma2 / s.A, 0.0, kInf, rng);
  }
  if (!std::isfinite(d_new)) throw NumericError("sample_d: non-finite draw");
  return d_new;
}

void SweepEngine::sample_d_phase(RngStream& rng) {
  for (int alpha = 0; alpha < r_; ++alpha) {
    const double d_new = draw_d_conditional(alpha, rng);
    work_ += 2 * nobs_;
    apply_d_update(alpha, d_new);
  }
}

UvStats SweepEngine::uv_stats(Side side, int alpha, int beta) const {
  UvStats s;
  const double d_alpha = state_.d(alpha);
  if (side == Side::U) {
    const double t = state_.u(alpha, beta);
    const double rho2 = 1.0 - (usq_[alpha] - t * t);
    if (rho2 < -1e-12) throw NumericError("uv_stats: factor norm invariant broken");
    s.rho = std::sqrt(std::max(rho2, 0.0));
    for (int p = row_ptr_[beta]; p < row_ptr_[beta + 1]; ++p) {
      const int e = row_entries_[p];
      const double dv = d_alpha * state_.v(alpha, ej_[e]);
      s.C += dv * dv;
      s.D -= dv * (res_[e] + t * dv);
    }
  } else {
    const double t = state_.v(alpha, beta);
    const double rho2 = 1.0 - (vsq_[alpha] - t * t);
    if (rho2 < -1e-12) throw NumericError("uv_stats: factor norm invariant broken");
    s.rho = std::sqrt(std::max(rho2, 0.0));
    for (int p = col_ptr_[beta]; p < col_ptr_[beta + 1]; ++p) {
      const int e = col_entries_[p];
      const double du = d_alpha * state_.u(alpha, ei_[e]);
      s.C += du * du;
      s.D -= du * (res_[e] + t * du);
    }
  }
  return s;
}

double SweepEngine::draw_factor_conditional(Side side, int alpha, int beta,
                                            RngStream& rng) const {
  const UvStats s = uv_stats(side, alpha, beta);
  if (s.rho <= 0.0) return 0.0;
  if (s.C <= 0.0) return rng.uniform(-s.rho, s.rho);
  const double value =
      sample_truncated_normal(-s.D / s.C, hp_.sigma2 / s.C, -s.rho, s.rho, rng);
  if (!std::isfinite(value)) throw NumericError("sample_uv: non-finite draw");
  return value;
}

void SweepEngine::sample_u_phase(RngStream& rng) {
  for (int alpha = 0; alpha < r_; ++alpha) {
    const double d_alpha = state_.d(alpha);
    for (int beta = 0; beta < m_; ++beta) {
      const double t_old = state_.u(alpha, beta);
      const double t_new = draw_factor_conditional(Side::U, alpha, beta, rng);
      work_ += 2 * static_cast<std::uint64_t>(row_ptr_[beta + 1] - row_ptr_[beta]);
      const double delta = d_alpha * (t_new - t_old);
      if (delta != 0.0) {
        for (int p = row_ptr_[beta]; p < row_ptr_[beta + 1]; ++p) {
          const int e = row_entries_[p];
          res_[e] -= delta * state_.v(alpha, ej_[e]);
        }
      }
      usq_[alpha] += t_new * t_new - t_old * t_old;
      state_.u(alpha, beta) = t_new;
    }
  }
}

void SweepEngine::sample_v_phase(RngStream& rng) {
  for (int alpha = 0; alpha < r_; ++alpha) {
    const double d_alpha = state_.d(alpha);
    for (int beta = 0; beta < n_; ++beta) {
      const double t_old = state_.v(alpha, beta);
      const double t_new = draw_factor_conditional(Side::V, alpha, beta, rng);
      work_ += 2 * static_cast<std::uint64_t>(col_ptr_[beta + 1] - col_ptr_[beta]);
      const double delta = d_alpha * (t_new - t_old);
      if (delta != 0.0) {
        for (int p = col_ptr_[beta]; p < col_ptr_[beta + 1]; ++p) {
          const int e = col_entries_[p];
          res_[e] -= delta * state_.u(alpha, ei_[e]);
        }
      }
      vsq_[alpha] += t_new * t_new - t_old * t_old;
      state_.v(alpha, beta) = t_new;
    }
  }
}

void sample_gamma_coeffs(FactorState& state, const Hyperparameters& hp, RngStream& rng) {
  hp.validate();
  for (int k = 0; k < state.r(); ++k)
    state.gamma(k) = sample_gamma_dist(hp.a + 1.0, hp.b + state.d(k), rng);
}

DStats d_conditional_stats(const FactorState& state, const Hyperparameters& hp,
                           const ObservedMatrix& data, int alpha) {
  if (alpha < 0 || alpha >= state.r())
    throw std::invalid_argument("d_conditional_stats: alpha out of range");
  SweepEngine engine(data, state, hp);
  return engine.d_stats(alpha);
}

UvStats uv_conditional_stats(const FactorState& state, const Hyperparameters& hp,
                             const ObservedMatrix& data, Side side, int alpha, int beta) {
  if (alpha < 0 || alpha >= state.r())
    throw std::invalid_argument("uv_conditional_stats: alpha out of range");
  const int limit = (side == Side::U) ? state.m() : state.n();
  if (beta < 0 || beta >= limit)
    throw std::invalid_argument("uv_conditional_stats: beta out of range");
  SweepEngine engine(data, state, hp);
  return engine.uv_stats(side, alpha, beta);
}

void sample_d(FactorState& state, const Hyperparameters& hp, const ObservedMatrix& data,
              RngStream& rng) {
  SweepEngine engine(data, state, hp);
  engine.sample_d_phase(rng);
  state = engine.state();
}

void sample_uv(FactorState& state, const Hyperparameters& hp, const ObservedMatrix& data,
               RngStream& rng) {
  SweepEngine engine(data, state, hp);
  engine.sample_u_phase(rng);
  engine.sample_v_phase(rng);
  state = engine.state();
}

void gibbs_sweep(FactorState& state, const Hyperparameters& hp, const ObservedMatrix& data,
                 RngStream& rng) {
  SweepEngine engine(data, state, hp);
  engine.sweep(rng);
  state = engine.state();
}

}  // namespace gasr
