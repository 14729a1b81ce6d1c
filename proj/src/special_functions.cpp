#include "pinch/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "pinch/error.hpp"

namespace pinch {

namespace {

constexpr double kSeriesCutoff = 15.0;
constexpr double kTailTolerance = 1e-15;  // relative to the partial sum (<= 1)
// Above this Poisson mean, e^{-mean} is too close to the subnormal range for
// running products and the terms are formed in log space instead.
constexpr double kLinearSpaceLimit = 600.0;

double i0_series(double x) {
  const double q = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<double>(k) * k);
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}

// e^{-x} I0(x) ~ (2 pi x)^{-1/2} sum_k ((2k-1)!!)^2 / (k! (8x)^k)
double i0_scaled_asymptotic(double x) {
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double next = term * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * x);
    if (next >= term) break;  // asymptotic series started to diverge
    term = next;
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

// Remaining Poisson mass beyond index k given the pmf at k, valid once the
// pmf is decreasing (k + 2 > mean): geometric bound with ratio mean/(k+2).
double poisson_tail_bound(double pmf_k, double mean, int k) {
  const double next = pmf_k * mean / (k + 1);
  const double ratio = mean / (k + 2);
  return next / (1.0 - ratio);
}

// sum_k Pois(k; u) F_v(k - s), with F_v the Poisson(v) cdf and s = 1 when
// `strict`. This is P(V <= U), or P(V < U) when strict, for independent
// Poisson variables.
double poisson_mixture(double u, double v, bool strict) {
  const bool log_space = u >= kLinearSpaceLimit || v >= kLinearSpaceLimit;
  const double log_u = std::log(u);
  const double log_v = std::log(v);
  // Terms peak near the root of u (k + v) = k^2.
  const double peak = 0.5 * (u + std::sqrt(u * u + 4.0 * u * v));
  const int cap = static_cast<int>(peak + 40.0 * std::sqrt(u + v + 1.0) + 200.0);
  double p = 0.0;
  double q = 0.0;
  double cdf = 0.0;
  double sum = 0.0;
  for (int k = 0; k <= cap; ++k) {
    const double q_prev = q;
    if (log_space) {
      const double log_fact = std::lgamma(k + 1.0);
      p = std::exp(-u + k * log_u - log_fact);
      q = std::exp(-v + k * log_v - log_fact);
    } else {
      p = k == 0 ? std::exp(-u) : p * u / k;
      q = k == 0 ? std::exp(-v) : q * v / k;
    }
    cdf = std::min(cdf + (strict ? q_prev : q), 1.0);
    const double term = p * cdf;
    sum += term;
    if (k == 0 || sum == 0.0) continue;
    // Two bounds on what is left: the Poisson(u) mass itself, and a geometric
    // series on the terms, whose ratio is at most u (k + 1 + v) / (k (k + 1)).
    double left = std::numeric_limits<double>::infinity();
    if (k + 2 > u) left = poisson_tail_bound(p, u, k);
    const double ratio = u * (k + 1.0 + v) / (k * (k + 1.0));
    if (ratio < 1.0) left = std::min(left, term * ratio / (1.0 - ratio));
    if (left <= kTailTolerance * sum) break;
  }
  return sum;
}

}  // namespace

double bessel_i0_scaled(double x) {
  if (!(x >= 0.0)) throw DomainError("bessel_i0_scaled requires x >= 0");
  if (x <= kSeriesCutoff) return std::exp(-x) * i0_series(x);
  return i0_scaled_asymptotic(x);
}

double marcum_q1(MarcumArgs args) {
  if (!(args.a >= 0.0) || !(args.b >= 0.0))
    throw DomainError("marcum_q1 requires a >= 0 and b >= 0");
  if (args.b == 0.0) return 1.0;
  const double x = 0.5 * args.a * args.a;
  const double y = 0.5 * args.b * args.b;
  if (x == 0.0) return std::exp(-y);
  // Q1 = P(Y <= X) for X ~ Pois(a^2/2), Y ~ Pois(b^2/2). Sum whichever of Q1
  // and 1 - Q1 = P(X < Y) is the smaller one so both ends keep full precision.
  const double q = y < x ? 1.0 - poisson_mixture(y, x, true) : poisson_mixture(x, y, false);
  return std::clamp(q, 0.0, 1.0);
}

MarcumArgs marcum_args(const ChannelParams& params, double r_sq, double t) {
  const double mu = std::sqrt(params.mu_sq);
  return {std::sqrt(2.0 * params.eta) / mu, std::sqrt(2.0 * r_sq * t / params.rho) / mu};
}

double ccdf_inst_snr(const ChannelParams& params, double r_sq, double t) {
  if (!(r_sq > 0.0)) throw DomainError("ccdf_inst_snr requires r_sq > 0");
  if (!(t >= 0.0)) throw DomainError("ccdf_inst_snr requires t >= 0");
  if (t == 0.0) return 1.0;
  const double p_los = std::exp(-params.beta * r_sq);
  const double p_blocked = -std::expm1(-params.beta * r_sq);
  const double nlos_tail = std::exp(-t * r_sq / (params.rho * params.mu_sq));
  const double los_tail = p_los > 0.0 ? marcum_q1(marcum_args(params, r_sq, t)) : 0.0;
  return std::clamp(p_los * los_tail + p_blocked * nlos_tail, 0.0, 1.0);
}

}  // namespace pinch
