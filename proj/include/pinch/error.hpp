#pragma once

#include <stdexcept>
#include <string>

namespace pinch {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter violates its documented range (non-positive frequency, eps outside (0,1), ...).
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// A function was evaluated outside its mathematical domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Scenario-level validation failure (user outside region, size mismatch, ...).
class InvalidScenario : public Error {
 public:
  using Error::Error;
};

/// The two-user closed form requires equal rho and mu^2 for both users.
class UnsupportedAssumption : public Error {
 public:
  using Error::Error;
};

/// The two-user closed-form optimum lies outside [0, D_x]; use the bisection solver.
class BoundaryRegime : public Error {
 public:
  BoundaryRegime(const std::string& what, double x_unconstrained)
      : Error(what), x_unconstrained_(x_unconstrained) {}
  double x_unconstrained() const noexcept { return x_unconstrained_; }

 private:
  double x_unconstrained_;
};

/// A threshold lies outside the achievable range [f(y_max), f(y_min)] of a user.
///
/// `TooLarge` means the threshold is not achievable anywhere (infeasible).
/// `TooSmall` means every position satisfies it; `fallback()` then holds y_max.
class ThresholdOutOfRange : public Error {
 public:
  enum class Side { TooLarge, TooSmall };
  ThresholdOutOfRange(Side side, double fallback, const std::string& what)
      : Error(what), side_(side), fallback_(fallback) {}
  Side side() const noexcept { return side_; }
  double fallback() const noexcept { return fallback_; }

 private:
  Side side_;
  double fallback_;
};

}  // namespace pinch
