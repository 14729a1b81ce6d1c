#include "pinch/maxmin_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "pinch/error.hpp"

namespace pinch {

DistanceBound avg_snr_bound(const ChannelParams& params, double t,
                            const SquaredDistanceRange& range, double eps_y, int max_iter) {
  if (t > f_scalar(params, range.y_min)) return {DistanceBound::Kind::Infeasible, 0.0};
  if (t <= f_scalar(params, range.y_max)) return {DistanceBound::Kind::Vacuous, range.y_max};
  const double alpha = bisect_last_true([&](double y) { return f_scalar(params, y) >= t; },
                                        range.y_min, range.y_max, eps_y, max_iter);
  return {DistanceBound::Kind::Root, alpha};
}

double invert_f(const ChannelParams& params, double t, const SquaredDistanceRange& range,
                double eps_y, int max_iter) {
  const double top = f_scalar(params, range.y_min);
  const double bottom = f_scalar(params, range.y_max);
  if (t > top) {
    std::ostringstream msg;
    msg << "threshold " << t << " exceeds the maximum achievable average SNR " << top;
    throw ThresholdOutOfRange(ThresholdOutOfRange::Side::TooLarge, range.y_min, msg.str());
  }
  if (t < bottom) {
    std::ostringstream msg;
    msg << "threshold " << t << " is below the minimum average SNR " << bottom
        << "; every position is feasible";
    throw ThresholdOutOfRange(ThresholdOutOfRange::Side::TooSmall, range.y_max, msg.str());
  }
  return avg_snr_bound(params, t, range, eps_y, max_iter).value;
}

Interval user_interval_avg(const Scenario& scenario, std::size_t user_index, double t,
                           const SolverTolerances& tol) {
  const auto range = squared_distance_range(scenario, user_index);
  const auto bound =
      avg_snr_bound(scenario.channels[user_index], t, range, tol.eps_y, tol.max_iter);
  return interval_from_bound(scenario, user_index, bound);
}

namespace {

Interval feasibility_with_ranges(const Scenario& scenario,
                                 const std::vector<SquaredDistanceRange>& ranges, double t,
                                 const SolverTolerances& tol) {
  // Any user whose best position cannot reach t makes the whole level infeasible.
  for (std::size_t m = 0; m < scenario.size(); ++m)
    if (t > f_scalar(scenario.channels[m], ranges[m].y_min)) return Interval::empty();
  Interval common{0.0, scenario.dx};
  for (std::size_t m = 0; m < scenario.size() && common; ++m) {
    const auto bound = avg_snr_bound(scenario.channels[m], t, ranges[m], tol.eps_y, tol.max_iter);
    common = common.intersect(interval_from_bound(scenario, m, bound));
  }
  return common;
}

std::vector<SquaredDistanceRange> all_ranges(const Scenario& scenario) {
  std::vector<SquaredDistanceRange> ranges(scenario.size());
  for (std::size_t m = 0; m < scenario.size(); ++m)
    ranges[m] = squared_distance_range(scenario, m);
  return ranges;
}

}  // namespace

Interval feasibility_avg(const Scenario& scenario, double t, const SolverTolerances& tol) {
  return feasibility_with_ranges(scenario, all_ranges(scenario), t, tol);
}

Solution solve_maxmin(const Scenario& scenario, const SolverTolerances& tol) {
  scenario.validate();
  tol.validate();
  const auto ranges = all_ranges(scenario);
  double best_peak = 0.0;
  for (std::size_t m = 0; m < scenario.size(); ++m)
    best_peak = std::max(best_peak, f_scalar(scenario.channels[m], ranges[m].y_min));

  const auto search = maximize_threshold(
      [&](double t) { return feasibility_with_ranges(scenario, ranges, t, tol); },
      2.0 * best_peak, tol.eps_t, tol.max_iter);

  Solution s;
  s.t_star = search.t;
  s.feasible = search.feasible;
  s.x_star = s.feasible.midpoint();
  s.outer_iterations = search.iterations;
  s.per_user_bounds.resize(scenario.size());
  for (std::size_t m = 0; m < scenario.size(); ++m)
    s.per_user_bounds[m] =
        avg_snr_bound(scenario.channels[m], s.t_star, ranges[m], tol.eps_y, tol.max_iter)
            .as_bound();
  return s;
}

Solution two_user_closed_form(const Scenario& scenario) {
  if (scenario.size() != 2 || scenario.channels.size() != 2)
    throw InvalidScenario("the closed form applies to exactly two users");
  const auto& c0 = scenario.channels[0];
  const auto& c1 = scenario.channels[1];
  c0.validate();
  c1.validate();
  if (c0.rho != c1.rho || c0.mu_sq != c1.mu_sq)
    throw UnsupportedAssumption("the closed form requires equal rho and mu^2 for both users");
  if (c0.eta != c1.eta || c0.beta != c1.beta)
    throw UnsupportedAssumption("the closed form requires a common eta and beta");

  // Order so that x1 <= x2; C follows its user.
  std::size_t first = 0;
  std::size_t second = 1;
  if (scenario.users[1].x < scenario.users[0].x) std::swap(first, second);
  const double x1 = scenario.users[first].x;
  const double x2 = scenario.users[second].x;
  const double c_1 = scenario.offset(first);
  const double c_2 = scenario.offset(second);
  const double delta = x2 - x1;
  const double c_max = std::max(c_1, c_2);
  const double c_min = std::min(c_1, c_2);

  double alpha = 0.0;
  double x_star = 0.0;
  if (delta <= std::sqrt(c_max - c_min)) {
    alpha = c_max;
    x_star = c_2 >= c_1 ? x2 : x1;
  } else {
    alpha = delta * delta / 4.0 + (c_1 + c_2) / 2.0 + (c_1 - c_2) * (c_1 - c_2) / (4.0 * delta * delta);
    x_star = (x1 + x2) / 2.0 + (c_2 - c_1) / (2.0 * delta);
  }
  if (x_star < 0.0 || x_star > scenario.dx) {
    std::ostringstream msg;
    msg << "closed-form optimum x = " << x_star << " lies outside [0, " << scenario.dx
        << "]; use the bisection solver";
    throw BoundaryRegime(msg.str(), x_star);
  }

  Solution s;
  s.t_star = f_scalar(c0, alpha);
  s.x_star = x_star;
  s.feasible = Interval::point(x_star);
  s.per_user_bounds = {alpha, alpha};
  return s;
}

Solution fixed_antenna_baseline(const Scenario& scenario) {
  scenario.validate();
  Solution s;
  s.x_star = scenario.dx / 2.0;
  s.feasible = Interval::point(s.x_star);
  s.t_star = std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < scenario.size(); ++m) {
    const double r_sq = distance_squared(scenario.users[m], scenario.dv, s.x_star);
    s.per_user_bounds.push_back(r_sq);
    s.t_star = std::min(s.t_star, avg_snr(scenario.channels[m], r_sq));
  }
  return s;
}

}  // namespace pinch
