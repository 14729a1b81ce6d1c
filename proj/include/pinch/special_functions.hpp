#pragma once

#include "pinch/model.hpp"

namespace pinch {

/// e^{-x} I0(x) for x >= 0, in (0, 1]. Taylor series up to x = 15, the
/// Hankel asymptotic expansion beyond.
double bessel_i0_scaled(double x);

/// Arguments of the first-order Marcum Q function.
struct MarcumArgs {
  double a = 0.0;  ///< noncentrality
  double b = 0.0;  ///< threshold
};

/// Q1(a, b) = int_b^inf x exp(-(x^2 + a^2)/2) I0(a x) dx.
///
/// Evaluated as the Poisson mixture
///   sum_k Pois(k; a^2/2) * PoisCdf(k; b^2/2),
/// which has nonnegative terms only; for b < a the complementary mixture
/// 1 - Q1 is summed instead. The series is cut once a bound on the remaining
/// terms drops below 1e-15 times the partial sum. Throws DomainError for
/// negative arguments.
double marcum_q1(MarcumArgs args);

/// a = sqrt(2 eta) / mu, b = sqrt(2 r^2 t / rho) / mu.
MarcumArgs marcum_args(const ChannelParams& params, double r_sq, double t);

/// Pr(rho |h|^2 >= t) at squared distance r_sq: the LoS branch is Rician
/// (Marcum Q), the blocked branch exponential. Result clamped to [0, 1].
double ccdf_inst_snr(const ChannelParams& params, double r_sq, double t);

}  // namespace pinch
