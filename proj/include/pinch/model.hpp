#pragma once

// Geometry, unit conversions and closed-form channel statistics of a single
// waveguide carrying one pinching antenna at height dv above the user plane.

#include <cstddef>
#include <random>
#include <vector>

namespace pinch {

inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s
inline constexpr double kDefaultRefractiveIndex = 1.4;  // lambda_g = lambda / n_eff

/// User location in the service region; the user plane is z = 0.
struct UserPosition {
  double x = 0.0;  ///< m, along the waveguide axis
  double y = 0.0;  ///< m, lateral offset from the waveguide
};

/// Per-user channel constants. All powers are linear and dimensionless.
struct ChannelParams {
  double beta = 0.0;                ///< 1/m^2, LoS blockage coefficient
  double eta = 0.0;                 ///< LoS power constant c^2 / (4 pi f_c)^2
  double mu_sq = 0.0;               ///< aggregate NLoS power
  double rho = 0.0;                 ///< transmit SNR factor P / sigma^2
  double guided_wavelength = 0.0;   ///< m
  double carrier_wavelength = 0.0;  ///< m

  /// Throws InvalidParameter when an invariant is violated.
  void validate() const;
};

/// Link-budget quantities as they appear in deployment tables (dB / dBm / Hz).
struct LinkBudget {
  double fc_hz = 28e9;
  double p_dbm = 40.0;
  double noise_dbm = -90.0;
  double mu_sq_db = -60.0;
  double beta = 0.005;
  double refractive_index = kDefaultRefractiveIndex;

  bool operator==(const LinkBudget&) const = default;
};

struct Scenario {
  double dx = 0.0;  ///< m, region length along the waveguide
  double dy = 0.0;  ///< m, region width
  double dv = 0.0;  ///< m, waveguide height
  std::vector<UserPosition> users;
  std::vector<ChannelParams> channels;  ///< one per user

  std::size_t size() const noexcept { return users.size(); }

  /// C_m = y_m^2 + dv^2, the squared distance floor of user m.
  double offset(std::size_t m) const;

  /// Throws InvalidScenario (or InvalidParameter for channel constants).
  void validate() const;
};

/// Extremes of r_m^2 over antenna positions in [0, D_x].
struct SquaredDistanceRange {
  double y_min = 0.0;
  double y_max = 0.0;
};

/// eta = c^2 / (4 pi f_c)^2.
double eta_from_carrier(double carrier_frequency_hz);

/// 10^(value/10); works for dBm (mW reference) and plain dB alike.
double dbm_to_linear(double value);

/// rho = P / sigma^2 from dBm quantities.
double snr_factor(double p_dbm, double noise_dbm);

ChannelParams channel_from_budget(const LinkBudget& budget);

/// r^2 = (x_m - x_pin)^2 + y_m^2 + dv^2.
double distance_squared(const UserPosition& user, double dv, double x_pin);

/// e^{-beta r^2}.
double los_probability(const ChannelParams& params, double r_sq);

/// rho (eta e^{-beta r^2} + mu^2) / r^2, the mean of rho |h|^2.
double avg_snr(const ChannelParams& params, double r_sq);

/// The average SNR as a function of the squared distance y > 0. Strictly
/// decreasing; throws DomainError for y <= 0.
double f_scalar(const ChannelParams& params, double y);

SquaredDistanceRange squared_distance_range(const Scenario& scenario, std::size_t user_index);

/// Builds a scenario with identical channel constants for every user.
Scenario make_scenario(double dx, double dy, double dv, std::vector<UserPosition> users,
                       const ChannelParams& channel);

/// Drops `count` users uniformly over [0, dx] x [-dy/2, dy/2].
std::vector<UserPosition> uniform_users(std::mt19937_64& rng, std::size_t count, double dx,
                                        double dy);

}  // namespace pinch
