#pragma once

// Direct simulation of the composite channel h = gamma * h_LoS + h_NLoS and
// brute-force grid optimizers. Everything here is an oracle for the analytic
// formulas and the bisection solvers; none of it is used by them.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "pinch/feasibility.hpp"
#include "pinch/model.hpp"
#include "pinch/outage_solver.hpp"

namespace pinch {

/// Samples are split into fixed-size batches; batch i draws from its own
/// generator seeded by splitmix64(seed, i), so results depend only on
/// (seed, samples, batch) and never on `workers`.
struct McConfig {
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 1;
  std::uint64_t batch = 1u << 16;
  unsigned workers = 1;

  void validate() const;
};

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
};

using McRng = std::mt19937_64;

/// Generator for batch `index` of a run seeded with `seed`.
McRng batch_rng(std::uint64_t seed, std::uint64_t index);

/// One antenna-to-user link with all deterministic parts precomputed.
class ChannelSampler {
 public:
  /// x_pin only sets the LoS phase, which cannot change |h|^2 statistics.
  ChannelSampler(const ChannelParams& params, double r_sq, double x_pin = 0.0);

  /// Draws |h|^2: Bernoulli LoS gate, deterministic LoS term, CN(0, mu^2/r^2) NLoS.
  double operator()(McRng& rng);
  /// Same draw with the LoS gate forced (for branch-wise checks).
  double draw(McRng& rng, bool los);

 private:
  double p_los_;
  std::complex<double> los_;
  double nlos_sigma_;  // per-component standard deviation
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
};

double sample_channel_power(const ChannelParams& params, double r_sq, McRng& rng,
                            double x_pin = 0.0);

/// Sample mean of rho |h|^2 with its standard error.
McEstimate estimate_avg_snr(const ChannelParams& params, double r_sq, const McConfig& cfg,
                            double x_pin = 0.0);

/// Fraction of draws with rho |h|^2 >= t, binomial standard error.
McEstimate estimate_ccdf(const ChannelParams& params, double r_sq, double t, const McConfig& cfg,
                         double x_pin = 0.0);

/// estimate_ccdf for several thresholds sharing one sample stream.
std::vector<McEstimate> estimate_ccdf_curve(const ChannelParams& params, double r_sq,
                                            std::span<const double> thresholds,
                                            const McConfig& cfg, double x_pin = 0.0);

/// Binomial standard error of a proportion, with p floored at 1/(2n) away from 0 and 1.
double binomial_std_error(std::uint64_t hits, std::uint64_t samples);

struct GridSolution {
  Solution solution;
  /// Upper bound on (true optimum - grid optimum) from a Lipschitz bound on
  /// every user's average SNR and half the grid spacing.
  double slack = 0.0;
};

/// Evaluates min_m avg SNR on a uniform grid over [0, D_x].
GridSolution grid_search_maxmin(const Scenario& scenario, std::size_t grid_points);

/// For each x on a uniform position grid, the largest t on `t_grid` (sorted
/// ascending) meeting every analytic CCDF constraint; returns the best pair.
/// t_star is 0 when no grid threshold is feasible anywhere.
Solution grid_search_outage(const Scenario& scenario, const OutageSpec& spec,
                            std::size_t grid_points, std::span<const double> t_grid);

}  // namespace pinch
