#include "pinch/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "pinch/error.hpp"

namespace pinch {

namespace {

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

void ChannelParams::validate() const {
  if (!(beta >= 0.0)) throw InvalidParameter("beta must be >= 0");
  if (!positive(eta)) throw InvalidParameter("eta must be > 0");
  if (!positive(mu_sq)) throw InvalidParameter("mu_sq must be > 0");
  if (!positive(rho)) throw InvalidParameter("rho must be > 0");
  if (!positive(guided_wavelength) || !positive(carrier_wavelength))
    throw InvalidParameter("wavelengths must be > 0");
}

double Scenario::offset(std::size_t m) const {
  if (m >= users.size()) throw InvalidParameter("user index out of range");
  return users[m].y * users[m].y + dv * dv;
}

void Scenario::validate() const {
  if (!positive(dx) || !positive(dy) || !positive(dv))
    throw InvalidScenario("region dimensions dx, dy, dv must be > 0");
  if (users.empty()) throw InvalidScenario("scenario has no users");
  if (users.size() != channels.size())
    throw InvalidScenario("one channel parameter set is required per user");
  for (std::size_t m = 0; m < users.size(); ++m) {
    const auto& u = users[m];
    if (!(u.x >= 0.0 && u.x <= dx) || !(std::abs(u.y) <= dy / 2)) {
      std::ostringstream msg;
      msg << "user " << m << " at (" << u.x << ", " << u.y << ") lies outside the region";
      throw InvalidScenario(msg.str());
    }
    channels[m].validate();
  }
}

double eta_from_carrier(double carrier_frequency_hz) {
  if (!positive(carrier_frequency_hz)) throw InvalidParameter("carrier frequency must be > 0");
  const double r = kSpeedOfLight / (4.0 * std::numbers::pi * carrier_frequency_hz);
  return r * r;
}

double dbm_to_linear(double value) { return std::pow(10.0, value / 10.0); }

double snr_factor(double p_dbm, double noise_dbm) { return dbm_to_linear(p_dbm - noise_dbm); }

ChannelParams channel_from_budget(const LinkBudget& budget) {
  if (!positive(budget.refractive_index)) throw InvalidParameter("refractive index must be > 0");
  ChannelParams p;
  p.beta = budget.beta;
  p.eta = eta_from_carrier(budget.fc_hz);
  p.mu_sq = dbm_to_linear(budget.mu_sq_db);
  p.rho = snr_factor(budget.p_dbm, budget.noise_dbm);
  p.carrier_wavelength = kSpeedOfLight / budget.fc_hz;
  p.guided_wavelength = p.carrier_wavelength / budget.refractive_index;
  p.validate();
  return p;
}

double distance_squared(const UserPosition& user, double dv, double x_pin) {
  const double dx = user.x - x_pin;
  return dx * dx + user.y * user.y + dv * dv;
}

double los_probability(const ChannelParams& params, double r_sq) {
  return std::exp(-params.beta * r_sq);
}

double avg_snr(const ChannelParams& params, double r_sq) {
  return params.rho * (params.eta * std::exp(-params.beta * r_sq) + params.mu_sq) / r_sq;
}

double f_scalar(const ChannelParams& params, double y) {
  if (!(y > 0.0)) throw DomainError("f_scalar requires y > 0");
  return avg_snr(params, y);
}

SquaredDistanceRange squared_distance_range(const Scenario& scenario, std::size_t user_index) {
  const double c = scenario.offset(user_index);
  const double x = scenario.users[user_index].x;
  const double to_lo = x;                 // distance to x_pin = 0
  const double to_hi = x - scenario.dx;   // distance to x_pin = D_x
  double nearest = 0.0;
  if (x < 0.0 || x > scenario.dx) nearest = std::min(to_lo * to_lo, to_hi * to_hi);
  return {c + nearest, c + std::max(to_lo * to_lo, to_hi * to_hi)};
}

Scenario make_scenario(double dx, double dy, double dv, std::vector<UserPosition> users,
                       const ChannelParams& channel) {
  Scenario s;
  s.dx = dx;
  s.dy = dy;
  s.dv = dv;
  s.channels.assign(users.size(), channel);
  s.users = std::move(users);
  return s;
}

std::vector<UserPosition> uniform_users(std::mt19937_64& rng, std::size_t count, double dx,
                                        double dy) {
  std::uniform_real_distribution<double> ux(0.0, dx);
  std::uniform_real_distribution<double> uy(-dy / 2, dy / 2);
  std::vector<UserPosition> users(count);
  for (auto& u : users) {
    u.x = ux(rng);
    u.y = uy(rng);
  }
  return users;
}

}  // namespace pinch
