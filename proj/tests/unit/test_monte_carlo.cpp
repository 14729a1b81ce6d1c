#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pinch/error.hpp"
#include "pinch/maxmin_solver.hpp"
#include "pinch/monte_carlo.hpp"
#include "pinch/outage_solver.hpp"
#include "pinch/special_functions.hpp"

using namespace pinch;

namespace {

McConfig config(std::uint64_t samples, std::uint64_t seed) {
  McConfig cfg;
  cfg.samples = samples;
  cfg.seed = seed;
  return cfg;
}

double z_score(double expected, const McEstimate& e) { return (e.mean - expected) / e.std_error; }

}  // namespace

TEST_CASE("config validation") {
  McConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.samples = 0;
  CHECK_THROWS_AS(cfg.validate(), InvalidParameter);
  cfg = McConfig{};
  cfg.batch = 0;
  CHECK_THROWS_AS(cfg.validate(), InvalidParameter);
}

TEST_CASE("pure LoS channel is deterministic") {
  ChannelParams p = oracle::default_channel(0.0);
  p.mu_sq = 1e-30;
  McRng rng = batch_rng(1, 0);
  for (int i = 0; i < 100; ++i)
    CHECK(sample_channel_power(p, 150.0, rng) == doctest::Approx(p.eta / 150.0).epsilon(1e-9));
  const auto est = estimate_avg_snr(p, 150.0, config(10'000, 2));
  CHECK(est.mean == doctest::Approx(p.rho * p.eta / 150.0).epsilon(1e-9));
  CHECK(est.std_error <= 1e-9 * est.mean);
}

TEST_CASE("blocked branch is exponential") {
  const ChannelParams p = oracle::default_channel(0.01);
  ChannelSampler sampler(p, 150.0);
  McRng rng = batch_rng(3, 0);
  const int n = 1'000'000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = sampler.draw(rng, false);
    sum += v;
    sum_sq += v * v;
  }
  const double scale = p.mu_sq / 150.0;
  const double mean = sum / n;
  const double var = sum_sq / n - mean * mean;
  // Exponential: sd of the mean = scale / sqrt(n); sd of the sample variance ~ sqrt(8) scale^2 / sqrt(n).
  CHECK(std::abs(mean - scale) <= 3 * scale / std::sqrt(n));
  CHECK(std::abs(var - scale * scale) <= 5 * std::sqrt(8.0) * scale * scale / std::sqrt(n));
}

TEST_CASE("exponential median identity") {
  const ChannelParams p = oracle::default_channel(1e3);
  const double t = p.rho * p.mu_sq * std::log(2.0) / 150.0;
  const auto est = estimate_ccdf(p, 150.0, t, config(1'000'000, 4));
  CHECK(std::abs(z_score(0.5, est)) <= 3);
}

TEST_CASE("mean power matches the closed form") {
  const ChannelParams p = oracle::default_channel(0.01);
  const auto est = estimate_avg_snr(p, 150.0, config(1'000'000, 5));
  CHECK(std::abs(z_score(avg_snr(p, 150.0), est)) <= 3);
}

TEST_CASE("estimates are seed-deterministic and independent of workers") {
  const ChannelParams p = oracle::default_channel(0.005);
  McConfig a = config(300'001, 77);
  McConfig b = a;
  b.workers = 3;
  const auto e1 = estimate_avg_snr(p, 200.0, a);
  const auto e2 = estimate_avg_snr(p, 200.0, a);
  const auto e3 = estimate_avg_snr(p, 200.0, b);
  CHECK(e1.mean == e2.mean);
  CHECK(e1.std_error == e2.std_error);
  CHECK(e1.mean == e3.mean);
  CHECK(e1.std_error == e3.std_error);
  const auto c1 = estimate_ccdf(p, 200.0, 3e4, a);
  const auto c3 = estimate_ccdf(p, 200.0, 3e4, b);
  CHECK(c1.mean == c3.mean);
  CHECK(estimate_avg_snr(p, 200.0, config(300'001, 78)).mean != e1.mean);
}

TEST_CASE("standard error scales like 1/sqrt(n)") {
  const ChannelParams p = oracle::default_channel(0.005);
  const auto small = estimate_avg_snr(p, 200.0, config(200'000, 8));
  const auto large = estimate_avg_snr(p, 200.0, config(400'000, 8));
  CHECK(small.std_error / large.std_error == doctest::Approx(std::sqrt(2.0)).epsilon(0.05));
}

TEST_CASE("binomial standard error") {
  CHECK(binomial_std_error(50, 100) == doctest::Approx(0.05));
  CHECK(binomial_std_error(0, 100) > 0.0);
  CHECK(binomial_std_error(100, 100) > 0.0);
  CHECK(binomial_std_error(0, 100) == doctest::Approx(binomial_std_error(100, 100)).epsilon(1e-15));
}

TEST_CASE("CCDF estimates") {
  const ChannelParams p = oracle::default_channel(0.005);
  CHECK(estimate_ccdf(p, 150.0, 0.0, config(1000, 1)).mean == 1.0);
  const std::vector<double> ts = {1e3, 2e4, 6e4, 1.5e5};
  const auto curve = estimate_ccdf_curve(p, 150.0, ts, config(1'000'000, 9));
  for (std::size_t j = 0; j < ts.size(); ++j)
    CHECK(std::abs(z_score(ccdf_inst_snr(p, 150.0, ts[j]), curve[j])) <= 3);
  for (std::size_t j = 1; j < ts.size(); ++j) CHECK(curve[j].mean <= curve[j - 1].mean);
}

TEST_CASE("LoS phase does not change the statistics") {
  ChannelParams p = oracle::default_channel(0.005);
  const auto base = estimate_avg_snr(p, 180.0, config(1'000'000, 10), 3.0);
  p.guided_wavelength = p.carrier_wavelength / 1.1;
  const auto other = estimate_avg_snr(p, 180.0, config(1'000'000, 11), 7.3);
  const double se = std::hypot(base.std_error, other.std_error);
  CHECK(std::abs(base.mean - other.mean) <= 3 * se);
}

TEST_CASE("grid search for max-min") {
  const ChannelParams p = oracle::default_channel(0.005);
  const Scenario one = make_scenario(30, 10, 10, {{10.1, 2}}, p);
  const auto g = grid_search_maxmin(one, 301);
  CHECK(g.solution.x_star == doctest::Approx(10.1).epsilon(0.05 / 10.1));
  CHECK_THROWS_AS(grid_search_maxmin(one, 1), InvalidParameter);

  std::mt19937_64 rng(12);
  const Scenario s = oracle::random_scenario(rng, 4, 40, 0.005);
  const auto coarse = grid_search_maxmin(s, 1000);
  const auto fine = grid_search_maxmin(s, 100'000);
  const double exact = solve_maxmin(s, SolverTolerances::defaults_for(s)).t_star;
  CHECK(fine.solution.t_star >= coarse.solution.t_star - coarse.slack);
  CHECK(exact * (1 + 1e-3) >= fine.solution.t_star);
  CHECK(fine.solution.t_star >= exact - fine.slack - 1e-3 * exact);
}

TEST_CASE("grid search for outage") {
  const ChannelParams p = oracle::default_channel(0.005);
  const Scenario one = make_scenario(30, 10, 10, {{10.1, 2}}, p);
  // t spacing fine enough that neighbouring x grid points cannot tie.
  std::vector<double> fine(2'000'001);
  for (std::size_t k = 0; k < fine.size(); ++k) fine[k] = 0.01 * k;
  const auto g = grid_search_outage(one, OutageSpec::uniform(0.1, 1), 301, fine);
  CHECK(g.x_star == doctest::Approx(10.1).epsilon(0.05 / 10.1));
  std::vector<double> ts(200);
  for (std::size_t k = 0; k < ts.size(); ++k) ts[k] = 100.0 * k;
  // Nearly vacuous budgets reach the top of the t-grid.
  const auto loose = grid_search_outage(one, OutageSpec::uniform(0.999999, 1), 31, ts);
  CHECK(loose.t_star == ts.back());
  // Impossible thresholds give zero.
  std::vector<double> huge = {1e12, 2e12};
  CHECK(grid_search_outage(one, OutageSpec::uniform(0.1, 1), 31, huge).t_star == 0.0);
}
