#pragma once

#include <cstddef>
#include <vector>

#include "pinch/feasibility.hpp"
#include "pinch/model.hpp"

namespace pinch {

/// Per-user outage budgets eps_m in (0, 1).
struct OutageSpec {
  std::vector<double> epsilons;

  static OutageSpec uniform(double epsilon, std::size_t users);
  void validate(std::size_t users) const;
};

/// U(t): the largest r^2 in [y_min, y_max] with CCDF(r^2, t) >= 1 - epsilon.
/// Throws InvalidParameter for epsilon outside (0, 1) or negative t.
DistanceBound invert_ccdf(const ChannelParams& params, double t, double epsilon,
                          const SquaredDistanceRange& range, double eps_u, int max_iter = 200);

/// J_m(t) = {x in [0, D_x] : Pr(SNR_m >= t) >= 1 - eps}.
Interval user_interval_outage(const Scenario& scenario, std::size_t user_index, double t,
                              double epsilon, const SolverTolerances& tol);

/// T(t), the intersection of all J_m(t).
Interval feasibility_outage(const Scenario& scenario, const OutageSpec& spec, double t,
                            const SolverTolerances& tol);

/// Largest t such that every user meets its outage budget at some common x.
Solution solve_outage(const Scenario& scenario, const OutageSpec& spec,
                      const SolverTolerances& tol);

/// Same objective with the antenna fixed at D_x / 2 (bisection on t only).
Solution fixed_antenna_outage_baseline(const Scenario& scenario, const OutageSpec& spec,
                                       const SolverTolerances& tol);

}  // namespace pinch
