#pragma once

// Shared vocabulary of the two placement solvers: feasibility intervals on the
// waveguide axis, tolerances, and the solution record.

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <vector>

#include "pinch/model.hpp"

namespace pinch {

/// Closed interval [lo, hi] or the explicit empty set.
class Interval {
 public:
  /// The empty set.
  Interval() = default;
  /// Throws InvalidParameter when lo > hi or either bound is NaN.
  Interval(double lo, double hi);

  static Interval empty() { return {}; }
  static Interval point(double x) { return {x, x}; }

  bool is_empty() const noexcept { return empty_; }
  explicit operator bool() const noexcept { return !empty_; }

  // lo/hi/midpoint require a nonempty interval.
  double lo() const;
  double hi() const;
  double midpoint() const;
  double width() const noexcept { return empty_ ? 0.0 : hi_ - lo_; }

  bool contains(double x) const noexcept { return !empty_ && lo_ <= x && x <= hi_; }
  /// Set inclusion; the empty set is a subset of everything.
  bool contains(const Interval& other) const noexcept;
  Interval intersect(const Interval& other) const noexcept;

  friend bool operator==(const Interval& a, const Interval& b) noexcept;

 private:
  bool empty_ = true;
  double lo_ = 0.0;
  double hi_ = 0.0;
};

std::ostream& operator<<(std::ostream& os, const Interval& interval);

struct SolverTolerances {
  double eps_t = 1e-3;  ///< relative tolerance on the threshold t
  double eps_y = 1e-6;  ///< m^2, inner inversion of the average-SNR curve
  double eps_u = 1e-6;  ///< m^2, inner inversion of the CCDF
  int max_iter = 200;   ///< cap on any bisection loop

  /// eps_t = 1e-3 and eps_y = eps_u = 1e-9 * max_m y_max.
  static SolverTolerances defaults_for(const Scenario& scenario);
  void validate() const;
};

struct Solution {
  double t_star = 0.0;
  double x_star = 0.0;
  Interval feasible;  ///< feasible set at t_star
  int outer_iterations = 0;
  /// Per-user squared-distance bounds at t_star (alpha_m or U_m; y_max when
  /// the constraint is vacuous, NaN when infeasible). Point designs store r_m^2.
  std::vector<double> per_user_bounds;
};

/// Outcome of inverting a monotone per-user constraint into r^2 <= bound.
struct DistanceBound {
  enum class Kind {
    Infeasible,  ///< no position satisfies the constraint
    Vacuous,     ///< every position satisfies it; value = y_max
    Root,        ///< value is the (feasible-side) root within the tolerance
  };
  Kind kind = Kind::Infeasible;
  double value = 0.0;

  double as_bound() const;  ///< NaN for Infeasible
};

/// {x : (x_m - x)^2 + C_m <= bound} intersected with [0, dx].
Interval interval_from_bound(const Scenario& scenario, std::size_t user_index,
                             const DistanceBound& bound);

/// Largest y in [lo, hi] with pred(y) true, for pred true on [lo, y*] and
/// false beyond, with pred(lo) assumed true. Performs
/// min(max_iter, ceil(log2((hi - lo)/tol))) halvings and returns the
/// true-side end, so the result always satisfies pred.
double bisect_last_true(const std::function<bool(double)>& pred, double lo, double hi, double tol,
                        int max_iter);

/// Outcome of the outer bisection on the threshold.
struct ThresholdSearch {
  double t = 0.0;      ///< largest threshold certified feasible
  Interval feasible;   ///< feasible set at t
  int iterations = 0;
};

/// Bisection on t over a nested family of feasible sets. `t_max` is doubled
/// while still feasible. Stops once (t_hi - t_lo) <= eps_t * t_lo.
ThresholdSearch maximize_threshold(const std::function<Interval(double)>& feasible_at, double t_max,
                                   double eps_t, int max_iter);

}  // namespace pinch
