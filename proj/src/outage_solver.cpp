#include "pinch/outage_solver.hpp"

#include <algorithm>
#include <cmath>

#include "pinch/error.hpp"
#include "pinch/special_functions.hpp"

namespace pinch {

namespace {

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw InvalidParameter("outage probability must lie in (0, 1)");
}

std::vector<SquaredDistanceRange> all_ranges(const Scenario& scenario) {
  std::vector<SquaredDistanceRange> ranges(scenario.size());
  for (std::size_t m = 0; m < scenario.size(); ++m)
    ranges[m] = squared_distance_range(scenario, m);
  return ranges;
}

Interval feasibility_with_ranges(const Scenario& scenario, const OutageSpec& spec,
                                 const std::vector<SquaredDistanceRange>& ranges, double t,
                                 const SolverTolerances& tol) {
  Interval common{0.0, scenario.dx};
  for (std::size_t m = 0; m < scenario.size() && common; ++m) {
    const auto bound =
        invert_ccdf(scenario.channels[m], t, spec.epsilons[m], ranges[m], tol.eps_u, tol.max_iter);
    common = common.intersect(interval_from_bound(scenario, m, bound));
  }
  return common;
}

}  // namespace

OutageSpec OutageSpec::uniform(double epsilon, std::size_t users) {
  return {std::vector<double>(users, epsilon)};
}

void OutageSpec::validate(std::size_t users) const {
  if (epsilons.size() != users)
    throw InvalidParameter("one outage probability is required per user");
  for (double e : epsilons) check_epsilon(e);
}

DistanceBound invert_ccdf(const ChannelParams& params, double t, double epsilon,
                          const SquaredDistanceRange& range, double eps_u, int max_iter) {
  check_epsilon(epsilon);
  if (!(t >= 0.0)) throw InvalidParameter("threshold must be >= 0");
  const double target = 1.0 - epsilon;
  const auto meets = [&](double y) { return ccdf_inst_snr(params, y, t) >= target; };
  if (!meets(range.y_min)) return {DistanceBound::Kind::Infeasible, 0.0};
  if (meets(range.y_max)) return {DistanceBound::Kind::Vacuous, range.y_max};
  return {DistanceBound::Kind::Root,
          bisect_last_true(meets, range.y_min, range.y_max, eps_u, max_iter)};
}

Interval user_interval_outage(const Scenario& scenario, std::size_t user_index, double t,
                              double epsilon, const SolverTolerances& tol) {
  const auto range = squared_distance_range(scenario, user_index);
  const auto bound =
      invert_ccdf(scenario.channels[user_index], t, epsilon, range, tol.eps_u, tol.max_iter);
  return interval_from_bound(scenario, user_index, bound);
}

Interval feasibility_outage(const Scenario& scenario, const OutageSpec& spec, double t,
                            const SolverTolerances& tol) {
  spec.validate(scenario.size());
  return feasibility_with_ranges(scenario, spec, all_ranges(scenario), t, tol);
}

Solution solve_outage(const Scenario& scenario, const OutageSpec& spec,
                      const SolverTolerances& tol) {
  scenario.validate();
  spec.validate(scenario.size());
  tol.validate();
  const auto ranges = all_ranges(scenario);
  // LoS-limited SNR at the closest reachable point; the search doubles it if needed.
  double t_max = 0.0;
  for (std::size_t m = 0; m < scenario.size(); ++m) {
    const auto& p = scenario.channels[m];
    t_max = std::max(t_max, 2.0 * p.rho * p.eta / ranges[m].y_min);
  }

  const auto search = maximize_threshold(
      [&](double t) { return feasibility_with_ranges(scenario, spec, ranges, t, tol); }, t_max,
      tol.eps_t, tol.max_iter);

  Solution s;
  s.t_star = search.t;
  s.feasible = search.feasible;
  s.x_star = s.feasible.midpoint();
  s.outer_iterations = search.iterations;
  s.per_user_bounds.resize(scenario.size());
  for (std::size_t m = 0; m < scenario.size(); ++m)
    s.per_user_bounds[m] = invert_ccdf(scenario.channels[m], s.t_star, spec.epsilons[m], ranges[m],
                                       tol.eps_u, tol.max_iter)
                               .as_bound();
  return s;
}

Solution fixed_antenna_outage_baseline(const Scenario& scenario, const OutageSpec& spec,
                                       const SolverTolerances& tol) {
  scenario.validate();
  spec.validate(scenario.size());
  tol.validate();
  const double x = scenario.dx / 2.0;
  std::vector<double> r_sq(scenario.size());
  double t_max = 0.0;
  for (std::size_t m = 0; m < scenario.size(); ++m) {
    r_sq[m] = distance_squared(scenario.users[m], scenario.dv, x);
    const auto& p = scenario.channels[m];
    t_max = std::max(t_max, 2.0 * p.rho * p.eta / r_sq[m]);
  }
  const auto feasible_at = [&](double t) {
    for (std::size_t m = 0; m < scenario.size(); ++m)
      if (ccdf_inst_snr(scenario.channels[m], r_sq[m], t) < 1.0 - spec.epsilons[m])
        return Interval::empty();
    return Interval::point(x);
  };
  const auto search = maximize_threshold(feasible_at, t_max, tol.eps_t, tol.max_iter);

  Solution s;
  s.t_star = search.t;
  s.x_star = x;
  s.feasible = Interval::point(x);
  s.outer_iterations = search.iterations;
  s.per_user_bounds = r_sq;
  return s;
}

}  // namespace pinch
