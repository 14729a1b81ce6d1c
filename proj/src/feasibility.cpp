#include "pinch/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "pinch/error.hpp"

namespace pinch {

Interval::Interval(double lo, double hi) : empty_(false), lo_(lo), hi_(hi) {
  if (std::isnan(lo) || std::isnan(hi) || lo > hi)
    throw InvalidParameter("interval requires lo <= hi");
}

double Interval::lo() const {
  if (empty_) throw DomainError("lo() of an empty interval");
  return lo_;
}

double Interval::hi() const {
  if (empty_) throw DomainError("hi() of an empty interval");
  return hi_;
}

double Interval::midpoint() const {
  if (empty_) throw DomainError("midpoint() of an empty interval");
  return lo_ + 0.5 * (hi_ - lo_);
}

bool Interval::contains(const Interval& other) const noexcept {
  if (other.empty_) return true;
  return !empty_ && lo_ <= other.lo_ && other.hi_ <= hi_;
}

Interval Interval::intersect(const Interval& other) const noexcept {
  if (empty_ || other.empty_) return {};
  const double lo = std::max(lo_, other.lo_);
  const double hi = std::min(hi_, other.hi_);
  if (lo > hi) return {};
  return {lo, hi};
}

bool operator==(const Interval& a, const Interval& b) noexcept {
  if (a.empty_ || b.empty_) return a.empty_ == b.empty_;
  return a.lo_ == b.lo_ && a.hi_ == b.hi_;
}

std::ostream& operator<<(std::ostream& os, const Interval& interval) {
  if (interval.is_empty()) return os << "[]";
  return os << '[' << interval.lo() << ", " << interval.hi() << ']';
}

SolverTolerances SolverTolerances::defaults_for(const Scenario& scenario) {
  double y_max = 0.0;
  for (std::size_t m = 0; m < scenario.size(); ++m)
    y_max = std::max(y_max, squared_distance_range(scenario, m).y_max);
  SolverTolerances tol;
  if (y_max > 0.0) tol.eps_y = tol.eps_u = 1e-9 * y_max;
  return tol;
}

void SolverTolerances::validate() const {
  if (!(eps_t > 0.0) || !(eps_y > 0.0) || !(eps_u > 0.0))
    throw InvalidParameter("solver tolerances must be > 0");
  if (max_iter < 1) throw InvalidParameter("max_iter must be >= 1");
}

double DistanceBound::as_bound() const {
  return kind == Kind::Infeasible ? std::numeric_limits<double>::quiet_NaN() : value;
}

Interval interval_from_bound(const Scenario& scenario, std::size_t user_index,
                             const DistanceBound& bound) {
  switch (bound.kind) {
    case DistanceBound::Kind::Infeasible:
      return Interval::empty();
    case DistanceBound::Kind::Vacuous:
      return {0.0, scenario.dx};
    case DistanceBound::Kind::Root:
      break;
  }
  const double half_width = std::sqrt(std::max(bound.value - scenario.offset(user_index), 0.0));
  const double x = scenario.users[user_index].x;
  const double lo = std::max(0.0, x - half_width);
  const double hi = std::min(scenario.dx, x + half_width);
  if (lo > hi) return Interval::empty();
  return {lo, hi};
}

double bisect_last_true(const std::function<bool(double)>& pred, double lo, double hi, double tol,
                        int max_iter) {
  if (!(hi > lo)) return lo;
  const double steps = std::ceil(std::log2((hi - lo) / tol));
  const int n = std::clamp(static_cast<int>(std::max(steps, 0.0)), 0, max_iter);
  for (int i = 0; i < n; ++i) {
    const double mid = lo + 0.5 * (hi - lo);
    if (pred(mid))
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

ThresholdSearch maximize_threshold(const std::function<Interval(double)>& feasible_at, double t_max,
                                   double eps_t, int max_iter) {
  ThresholdSearch out;
  out.feasible = feasible_at(0.0);
  double lo = 0.0;
  double hi = t_max;
  for (int grow = 0; grow < max_iter; ++grow) {
    Interval f = feasible_at(hi);
    if (!f) break;
    lo = hi;
    out.feasible = f;
    hi *= 2.0;
  }
  while (out.iterations < max_iter && !(hi - lo <= eps_t * lo)) {
    const double mid = lo + 0.5 * (hi - lo);
    Interval f = feasible_at(mid);
    if (f) {
      lo = mid;
      out.feasible = f;
    } else {
      hi = mid;
    }
    ++out.iterations;
  }
  out.t = lo;
  return out;
}

}  // namespace pinch
