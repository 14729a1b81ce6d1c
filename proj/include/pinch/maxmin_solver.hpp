#pragma once

#include <cstddef>

#include "pinch/feasibility.hpp"
#include "pinch/model.hpp"

namespace pinch {

/// alpha with f(alpha) = t on [y_min, y_max], to within eps_y.
///
/// Throws ThresholdOutOfRange when t lies outside [f(y_max), f(y_min)].
double invert_f(const ChannelParams& params, double t, const SquaredDistanceRange& range,
                double eps_y, int max_iter = 200);

/// Non-throwing form of invert_f used by the solvers.
DistanceBound avg_snr_bound(const ChannelParams& params, double t,
                            const SquaredDistanceRange& range, double eps_y, int max_iter = 200);

/// I_m(t) = {x in [0, D_x] : avg SNR of user m >= t}.
Interval user_interval_avg(const Scenario& scenario, std::size_t user_index, double t,
                           const SolverTolerances& tol);

/// F(t), the intersection of all I_m(t).
Interval feasibility_avg(const Scenario& scenario, double t, const SolverTolerances& tol);

/// Maximizes the minimum average SNR over x in [0, D_x]. x_star is the
/// midpoint of F(t_star).
Solution solve_maxmin(const Scenario& scenario, const SolverTolerances& tol);

/// Closed-form optimum for two users with equal rho and mu^2.
Solution two_user_closed_form(const Scenario& scenario);

/// Antenna fixed at D_x / 2.
Solution fixed_antenna_baseline(const Scenario& scenario);

}  // namespace pinch
