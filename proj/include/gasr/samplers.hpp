#pragma once

#include <vector>

#include "gasr/rng.hpp"

namespace gasr {

/// Draw from Gamma(shape, rate), density proportional to
/// x^{shape-1} e^{-rate x}. Marsaglia-Tsang squeeze for shape >= 1;
/// shape < 1 is boosted through x = y * u^{1/shape} with y ~ Gamma(shape+1).
double sample_gamma_dist(double shape, double rate, RngStream& rng);

/// Draw from N(mu, var) restricted to [lo, hi]. lo may be -inf and hi +inf
/// (not both bounds equal; lo < hi required). Rejection sampling with three
/// proposal regimes chosen by the Gaussian mass of [lo, hi]:
///   - direct normal draws when the region holds mass >= 0.3,
///   - shifted-exponential proposal for tail regions,
///   - uniform proposal for narrow two-sided regions.
/// The returned value never falls outside [lo, hi].
double sample_truncated_normal(double mu, double var, double lo, double hi, RngStream& rng);

/// Uniform direction in R^dim scaled to the given norm; radius must lie in
/// (0, 1] (factor vectors live inside the unit ball).
std::vector<double> sample_uniform_sphere(int dim, double radius, RngStream& rng);

/// Standard normal CDF.
double normal_cdf(double z);

}  // namespace gasr
