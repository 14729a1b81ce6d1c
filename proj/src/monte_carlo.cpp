#include "pinch/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "pinch/error.hpp"
#include "pinch/special_functions.hpp"

namespace pinch {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Runs body(batch_index, batch_size) for every batch, possibly on several
// threads. Each batch writes only its own slot, so scheduling never changes
// the result.
template <class Body>
void for_each_batch(const McConfig& cfg, Body&& body) {
  const std::uint64_t batches = (cfg.samples + cfg.batch - 1) / cfg.batch;
  const auto size_of = [&](std::uint64_t i) {
    return std::min(cfg.batch, cfg.samples - i * cfg.batch);
  };
  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(std::max(cfg.workers, 1u), batches));
  if (workers <= 1) {
    for (std::uint64_t i = 0; i < batches; ++i) body(i, size_of(i));
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::uint64_t i = next++; i < batches; i = next++) body(i, size_of(i));
    });
  for (auto& th : pool) th.join();
}

struct Moments {
  double n = 0.0;
  double mean = 0.0;
  double m2 = 0.0;  // sum of squared deviations
};

Moments merge(const Moments& a, const Moments& b) {
  if (a.n == 0.0) return b;
  if (b.n == 0.0) return a;
  Moments out;
  out.n = a.n + b.n;
  const double delta = b.mean - a.mean;
  out.mean = a.mean + delta * (b.n / out.n);
  out.m2 = a.m2 + b.m2 + delta * delta * (a.n * b.n / out.n);
  return out;
}

// Pairwise reduction in index order.
Moments reduce(const std::vector<Moments>& parts, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return parts[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return merge(reduce(parts, lo, mid), reduce(parts, mid, hi));
}

}  // namespace

void McConfig::validate() const {
  if (samples < 1) throw InvalidParameter("Monte-Carlo sample count must be >= 1");
  if (batch < 1) throw InvalidParameter("Monte-Carlo batch size must be >= 1");
}

McRng batch_rng(std::uint64_t seed, std::uint64_t index) {
  return McRng(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

ChannelSampler::ChannelSampler(const ChannelParams& params, double r_sq, double x_pin) {
  if (!(r_sq > 0.0)) throw DomainError("channel sampling requires r_sq > 0");
  const double r = std::sqrt(r_sq);
  p_los_ = los_probability(params, r_sq);
  const double phase = 2.0 * std::numbers::pi * r / params.carrier_wavelength +
                       2.0 * std::numbers::pi * x_pin / params.guided_wavelength;
  los_ = std::polar(std::sqrt(params.eta) / r, -phase);
  nlos_sigma_ = std::sqrt(params.mu_sq / (2.0 * r_sq));
}

double ChannelSampler::draw(McRng& rng, bool los) {
  std::complex<double> h{nlos_sigma_ * normal_(rng), nlos_sigma_ * normal_(rng)};
  if (los) h += los_;
  return std::norm(h);
}

double ChannelSampler::operator()(McRng& rng) {
  const bool los = uniform_(rng) < p_los_;
  return draw(rng, los);
}

double sample_channel_power(const ChannelParams& params, double r_sq, McRng& rng, double x_pin) {
  ChannelSampler sampler(params, r_sq, x_pin);
  return sampler(rng);
}

McEstimate estimate_avg_snr(const ChannelParams& params, double r_sq, const McConfig& cfg,
                            double x_pin) {
  cfg.validate();
  const ChannelSampler prototype(params, r_sq, x_pin);
  const std::uint64_t batches = (cfg.samples + cfg.batch - 1) / cfg.batch;
  std::vector<Moments> parts(batches);
  for_each_batch(cfg, [&](std::uint64_t i, std::uint64_t n) {
    ChannelSampler sampler = prototype;
    McRng rng = batch_rng(cfg.seed, i);
    Moments m;
    for (std::uint64_t k = 0; k < n; ++k) {
      const double v = params.rho * sampler(rng);
      m.n += 1.0;
      const double delta = v - m.mean;
      m.mean += delta / m.n;
      m.m2 += delta * (v - m.mean);
    }
    parts[i] = m;
  });
  const Moments total = reduce(parts, 0, parts.size());
  const double variance = total.n > 1.0 ? total.m2 / (total.n - 1.0) : 0.0;
  return {total.mean, std::sqrt(variance / total.n), cfg.samples};
}

double binomial_std_error(std::uint64_t hits, std::uint64_t samples) {
  const double n = static_cast<double>(samples);
  const double floor = 0.5 / n;
  const double p = std::clamp(static_cast<double>(hits) / n, floor, 1.0 - floor);
  return std::sqrt(p * (1.0 - p) / n);
}

std::vector<McEstimate> estimate_ccdf_curve(const ChannelParams& params, double r_sq,
                                            std::span<const double> thresholds,
                                            const McConfig& cfg, double x_pin) {
  cfg.validate();
  const ChannelSampler prototype(params, r_sq, x_pin);
  const std::uint64_t batches = (cfg.samples + cfg.batch - 1) / cfg.batch;
  const std::size_t k = thresholds.size();
  std::vector<std::uint64_t> counts(batches * k, 0);
  for_each_batch(cfg, [&](std::uint64_t i, std::uint64_t n) {
    ChannelSampler sampler = prototype;
    McRng rng = batch_rng(cfg.seed, i);
    std::uint64_t* row = counts.data() + i * k;
    for (std::uint64_t s = 0; s < n; ++s) {
      const double snr = params.rho * sampler(rng);
      for (std::size_t j = 0; j < k; ++j)
        if (snr >= thresholds[j]) ++row[j];
    }
  });
  std::vector<McEstimate> out(k);
  for (std::size_t j = 0; j < k; ++j) {
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < batches; ++i) hits += counts[i * k + j];
    out[j] = {static_cast<double>(hits) / static_cast<double>(cfg.samples),
              binomial_std_error(hits, cfg.samples), cfg.samples};
  }
  return out;
}

McEstimate estimate_ccdf(const ChannelParams& params, double r_sq, double t, const McConfig& cfg,
                         double x_pin) {
  const double thresholds[] = {t};
  return estimate_ccdf_curve(params, r_sq, thresholds, cfg, x_pin).front();
}

GridSolution grid_search_maxmin(const Scenario& scenario, std::size_t grid_points) {
  scenario.validate();
  if (grid_points < 2) throw InvalidParameter("grid search needs at least two points");
  const double last = static_cast<double>(grid_points - 1);
  GridSolution out;
  Solution& best = out.solution;
  best.t_star = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid_points; ++i) {
    const double x = i + 1 == grid_points ? scenario.dx : scenario.dx * (i / last);
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m < scenario.size() && worst > best.t_star; ++m)
      worst = std::min(worst, avg_snr(scenario.channels[m],
                                      distance_squared(scenario.users[m], scenario.dv, x)));
    if (worst > best.t_star) {
      best.t_star = worst;
      best.x_star = x;
    }
  }
  best.feasible = Interval::point(best.x_star);
  for (std::size_t m = 0; m < scenario.size(); ++m)
    best.per_user_bounds.push_back(
        distance_squared(scenario.users[m], scenario.dv, best.x_star));

  // |d avg_snr / dx| <= rho (eta + mu^2) / C^2 * 2 |x - x_m|.
  double lipschitz = 0.0;
  for (std::size_t m = 0; m < scenario.size(); ++m) {
    const auto& p = scenario.channels[m];
    const double c = scenario.offset(m);
    const double reach = std::max(scenario.users[m].x, scenario.dx - scenario.users[m].x);
    lipschitz = std::max(lipschitz, p.rho * (p.eta + p.mu_sq) / (c * c) * 2.0 * reach);
  }
  out.slack = lipschitz * 0.5 * scenario.dx / last;
  return out;
}

Solution grid_search_outage(const Scenario& scenario, const OutageSpec& spec,
                            std::size_t grid_points, std::span<const double> t_grid) {
  scenario.validate();
  spec.validate(scenario.size());
  if (grid_points < 2 || t_grid.size() < 2)
    throw InvalidParameter("grid search needs at least two points per axis");
  const double last = static_cast<double>(grid_points - 1);
  std::vector<double> r_sq(scenario.size());
  const auto feasible = [&](std::size_t idx) {
    for (std::size_t m = 0; m < scenario.size(); ++m)
      if (ccdf_inst_snr(scenario.channels[m], r_sq[m], t_grid[idx]) < 1.0 - spec.epsilons[m])
        return false;
    return true;
  };

  Solution best;
  best.x_star = scenario.dx / 2.0;
  std::ptrdiff_t best_idx = -1;
  for (std::size_t i = 0; i < grid_points; ++i) {
    const double x = i + 1 == grid_points ? scenario.dx : scenario.dx * (i / last);
    for (std::size_t m = 0; m < scenario.size(); ++m)
      r_sq[m] = distance_squared(scenario.users[m], scenario.dv, x);
    // Only a strictly better grid threshold can change the answer.
    std::size_t lo = static_cast<std::size_t>(best_idx + 1);
    if (lo >= t_grid.size() || !feasible(lo)) continue;
    std::size_t hi = t_grid.size();  // first index known (or assumed) infeasible
    while (hi - lo > 1) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (feasible(mid))
        lo = mid;
      else
        hi = mid;
    }
    best_idx = static_cast<std::ptrdiff_t>(lo);
    best.x_star = x;
  }
  best.t_star = best_idx < 0 ? 0.0 : t_grid[static_cast<std::size_t>(best_idx)];
  best.feasible = Interval::point(best.x_star);
  for (std::size_t m = 0; m < scenario.size(); ++m)
    best.per_user_bounds.push_back(
        distance_squared(scenario.users[m], scenario.dv, best.x_star));
  return best;
}

}  // namespace pinch
