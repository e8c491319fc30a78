#pragma once

namespace gasr {

/// Digamma function for x > 0. Shifts the argument above 10 with the
/// recurrence psi(x) = psi(x+1) - 1/x, then evaluates the asymptotic
/// Bernoulli series. Relative accuracy is ~1e-14 over [1e-6, 1e6]
/// (absolute near the zero at x ~ 1.4616).
double digamma(double x);

/// Trigamma function for x > 0, same scheme as digamma.
double trigamma(double x);

}  // namespace gasr
