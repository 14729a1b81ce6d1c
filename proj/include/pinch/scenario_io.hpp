#pragma once

// Scenario documents: a JSON file with explicit units in key names.
//
//   {
//     "schema": 1,
//     "region":   {"dx": 30, "dy": 10, "dv": 10},
//     "defaults": {"fc_hz": 28e9, "p_dbm": 40, "noise_dbm": -90,
//                  "mu_sq_db": -60, "beta": 0.005, "refractive_index": 1.4},
//     "users":    [{"x": 10, "y": 5}, {"x": 20, "y": -2, "noise_dbm": -85}],
//     "outage":   {"epsilon": 0.1}            or {"epsilons": [0.02, 0.1]},
//     "tolerances": {"eps_t": 1e-3, "eps_y": 1e-6, "eps_u": 1e-6, "max_iter": 200}
//   }
//
// Only region.dx and users are required; everything else falls back to the
// LinkBudget defaults (28 GHz, 40 dBm, -90 dBm, -60 dB, dy = dv = 10 m).

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pinch/error.hpp"
#include "pinch/feasibility.hpp"
#include "pinch/model.hpp"
#include "pinch/outage_solver.hpp"

namespace pinch {

/// Malformed or schema-invalid scenario document. what() carries the
/// line/column or the JSON path of the offending field.
class ScenarioError : public Error {
 public:
  using Error::Error;
};

struct UserEntry {
  double x = 0.0;
  double y = 0.0;
  std::optional<double> noise_dbm;
  std::optional<double> mu_sq_db;
  std::optional<double> beta;

  bool operator==(const UserEntry&) const = default;
};

struct ToleranceEntry {
  std::optional<double> eps_t;
  std::optional<double> eps_y;
  std::optional<double> eps_u;
  std::optional<int> max_iter;

  bool operator==(const ToleranceEntry&) const = default;
};

struct ScenarioFile {
  int schema = 1;
  double dx = 0.0;
  double dy = 10.0;
  double dv = 10.0;
  LinkBudget defaults;
  std::vector<UserEntry> users;
  std::optional<double> epsilon;
  std::optional<std::vector<double>> epsilons;
  ToleranceEntry tolerances;

  bool operator==(const ScenarioFile&) const = default;
};

inline constexpr int kScenarioSchema = 1;

ScenarioFile parse_scenario(std::string_view text);
ScenarioFile load_scenario(const std::filesystem::path& path);
std::string serialize_scenario(const ScenarioFile& file);

/// Linear-unit scenario; throws InvalidScenario / InvalidParameter when invalid.
Scenario to_scenario(const ScenarioFile& file);

/// Per-user outage budgets, if the document has an "outage" section.
std::optional<OutageSpec> outage_spec(const ScenarioFile& file);

/// File tolerances on top of SolverTolerances::defaults_for(scenario).
SolverTolerances solver_tolerances(const ScenarioFile& file, const Scenario& scenario);

}  // namespace pinch
