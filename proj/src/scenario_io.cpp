#include "pinch/scenario_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

namespace pinch {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ScenarioError(path + ": " + message);
}

void reject_unknown(const json& obj, const std::string& path,
                    std::initializer_list<std::string_view> known) {
  for (const auto& [key, value] : obj.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end())
      fail(path.empty() ? key : path + "." + key, "unknown field");
  }
}

const json& require_object(const json& parent, const char* key, const std::string& path) {
  if (!parent.contains(key)) fail(path, std::string("missing required field '") + key + "'");
  const json& v = parent.at(key);
  if (!v.is_object()) fail(path, "expected an object");
  return v;
}

double number_at(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(path, "expected a finite number");
  return d;
}

std::optional<double> optional_number(const json& obj, const char* key, const std::string& path) {
  if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
  return number_at(obj.at(key), path + "." + key);
}

std::string location(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  std::ostringstream out;
  out << "line " << line << ", column " << column;
  return out.str();
}

void read_region(const json& root, ScenarioFile& file) {
  const json& region = require_object(root, "region", "region");
  reject_unknown(region, "region", {"dx", "dy", "dv"});
  if (!region.contains("dx")) fail("region", "missing required field 'dx'");
  file.dx = number_at(region.at("dx"), "region.dx");
  if (auto v = optional_number(region, "dy", "region")) file.dy = *v;
  if (auto v = optional_number(region, "dv", "region")) file.dv = *v;
}

void read_defaults(const json& root, ScenarioFile& file) {
  if (!root.contains("defaults")) return;
  const json& d = require_object(root, "defaults", "defaults");
  reject_unknown(d, "defaults",
                 {"fc_hz", "p_dbm", "noise_dbm", "mu_sq_db", "beta", "refractive_index"});
  LinkBudget& b = file.defaults;
  if (auto v = optional_number(d, "fc_hz", "defaults")) b.fc_hz = *v;
  if (auto v = optional_number(d, "p_dbm", "defaults")) b.p_dbm = *v;
  if (auto v = optional_number(d, "noise_dbm", "defaults")) b.noise_dbm = *v;
  if (auto v = optional_number(d, "mu_sq_db", "defaults")) b.mu_sq_db = *v;
  if (auto v = optional_number(d, "beta", "defaults")) b.beta = *v;
  if (auto v = optional_number(d, "refractive_index", "defaults")) b.refractive_index = *v;
}

void read_users(const json& root, ScenarioFile& file) {
  if (!root.contains("users")) fail("users", "missing required field");
  const json& users = root.at("users");
  if (!users.is_array()) fail("users", "expected an array");
  if (users.empty()) fail("users", "at least one user is required");
  for (std::size_t i = 0; i < users.size(); ++i) {
    const std::string path = "users[" + std::to_string(i) + "]";
    const json& u = users[i];
    if (!u.is_object()) fail(path, "expected an object");
    reject_unknown(u, path, {"x", "y", "noise_dbm", "mu_sq_db", "beta"});
    UserEntry e;
    if (!u.contains("x")) fail(path, "missing required field 'x'");
    if (!u.contains("y")) fail(path, "missing required field 'y'");
    e.x = number_at(u.at("x"), path + ".x");
    e.y = number_at(u.at("y"), path + ".y");
    e.noise_dbm = optional_number(u, "noise_dbm", path);
    e.mu_sq_db = optional_number(u, "mu_sq_db", path);
    e.beta = optional_number(u, "beta", path);
    file.users.push_back(e);
  }
}

void read_outage(const json& root, ScenarioFile& file) {
  if (!root.contains("outage")) return;
  const json& o = require_object(root, "outage", "outage");
  reject_unknown(o, "outage", {"epsilon", "epsilons"});
  if (o.contains("epsilon") == o.contains("epsilons"))
    fail("outage", "exactly one of 'epsilon' or 'epsilons' is required");
  if (o.contains("epsilon")) {
    file.epsilon = number_at(o.at("epsilon"), "outage.epsilon");
    return;
  }
  const json& list = o.at("epsilons");
  if (!list.is_array()) fail("outage.epsilons", "expected an array");
  std::vector<double> eps;
  for (std::size_t i = 0; i < list.size(); ++i)
    eps.push_back(number_at(list[i], "outage.epsilons[" + std::to_string(i) + "]"));
  if (eps.size() != file.users.size())
    fail("outage.epsilons", "expected one entry per user (" + std::to_string(file.users.size()) +
                                "), got " + std::to_string(eps.size()));
  file.epsilons = std::move(eps);
}

void read_tolerances(const json& root, ScenarioFile& file) {
  if (!root.contains("tolerances")) return;
  const json& t = require_object(root, "tolerances", "tolerances");
  reject_unknown(t, "tolerances", {"eps_t", "eps_y", "eps_u", "max_iter"});
  file.tolerances.eps_t = optional_number(t, "eps_t", "tolerances");
  file.tolerances.eps_y = optional_number(t, "eps_y", "tolerances");
  file.tolerances.eps_u = optional_number(t, "eps_u", "tolerances");
  if (t.contains("max_iter")) {
    const json& v = t.at("max_iter");
    if (!v.is_number_integer()) fail("tolerances.max_iter", "expected an integer");
    file.tolerances.max_iter = v.get<int>();
  }
}

}  // namespace

ScenarioFile parse_scenario(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ScenarioError("malformed JSON at " + location(text, e.byte == 0 ? 0 : e.byte - 1) +
                        ": " + e.what());
  }
  if (!root.is_object()) fail("<root>", "expected an object");
  reject_unknown(root, "", {"schema", "region", "defaults", "users", "outage", "tolerances"});

  ScenarioFile file;
  if (!root.contains("schema")) fail("schema", "missing required field");
  if (!root.at("schema").is_number_integer() || root.at("schema").get<int>() != kScenarioSchema)
    fail("schema", "unsupported schema version (expected " + std::to_string(kScenarioSchema) + ")");
  read_region(root, file);
  read_defaults(root, file);
  read_users(root, file);
  read_outage(root, file);
  read_tolerances(root, file);
  return file;
}

ScenarioFile load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError(path.string() + ": cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

std::string serialize_scenario(const ScenarioFile& file) {
  json root;
  root["schema"] = file.schema;
  root["region"] = {{"dx", file.dx}, {"dy", file.dy}, {"dv", file.dv}};
  const LinkBudget& b = file.defaults;
  root["defaults"] = {{"fc_hz", b.fc_hz},       {"p_dbm", b.p_dbm}, {"noise_dbm", b.noise_dbm},
                      {"mu_sq_db", b.mu_sq_db}, {"beta", b.beta},   {"refractive_index", b.refractive_index}};
  json users = json::array();
  for (const auto& u : file.users) {
    json e = {{"x", u.x}, {"y", u.y}};
    if (u.noise_dbm) e["noise_dbm"] = *u.noise_dbm;
    if (u.mu_sq_db) e["mu_sq_db"] = *u.mu_sq_db;
    if (u.beta) e["beta"] = *u.beta;
    users.push_back(std::move(e));
  }
  root["users"] = std::move(users);
  if (file.epsilon) root["outage"] = {{"epsilon", *file.epsilon}};
  if (file.epsilons) root["outage"] = {{"epsilons", *file.epsilons}};
  json tol = json::object();
  if (file.tolerances.eps_t) tol["eps_t"] = *file.tolerances.eps_t;
  if (file.tolerances.eps_y) tol["eps_y"] = *file.tolerances.eps_y;
  if (file.tolerances.eps_u) tol["eps_u"] = *file.tolerances.eps_u;
  if (file.tolerances.max_iter) tol["max_iter"] = *file.tolerances.max_iter;
  if (!tol.empty()) root["tolerances"] = std::move(tol);
  return root.dump(2) + "\n";
}

Scenario to_scenario(const ScenarioFile& file) {
  Scenario s;
  s.dx = file.dx;
  s.dy = file.dy;
  s.dv = file.dv;
  for (const auto& u : file.users) {
    s.users.push_back({u.x, u.y});
    LinkBudget budget = file.defaults;
    if (u.noise_dbm) budget.noise_dbm = *u.noise_dbm;
    if (u.mu_sq_db) budget.mu_sq_db = *u.mu_sq_db;
    if (u.beta) budget.beta = *u.beta;
    s.channels.push_back(channel_from_budget(budget));
  }
  s.validate();
  return s;
}

std::optional<OutageSpec> outage_spec(const ScenarioFile& file) {
  std::optional<OutageSpec> spec;
  if (file.epsilon) spec = OutageSpec::uniform(*file.epsilon, file.users.size());
  if (file.epsilons) spec = OutageSpec{*file.epsilons};
  if (spec) spec->validate(file.users.size());
  return spec;
}

SolverTolerances solver_tolerances(const ScenarioFile& file, const Scenario& scenario) {
  SolverTolerances tol = SolverTolerances::defaults_for(scenario);
  if (file.tolerances.eps_t) tol.eps_t = *file.tolerances.eps_t;
  if (file.tolerances.eps_y) tol.eps_y = *file.tolerances.eps_y;
  if (file.tolerances.eps_u) tol.eps_u = *file.tolerances.eps_u;
  if (file.tolerances.max_iter) tol.max_iter = *file.tolerances.max_iter;
  tol.validate();
  return tol;
}

}  // namespace pinch
