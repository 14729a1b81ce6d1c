#include "pinch/cli.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "pinch/error.hpp"
#include "pinch/maxmin_solver.hpp"
#include "pinch/monte_carlo.hpp"
#include "pinch/outage_solver.hpp"
#include "pinch/scenario_io.hpp"
#include "pinch/special_functions.hpp"

namespace pinch::cli {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kCcdfSlack = 1e-6;

struct GlobalOptions {
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::optional<double> eps_t;
  std::optional<double> eps_y;
  std::optional<double> eps_u;
  std::optional<int> max_iter;
};

struct Loaded {
  ScenarioFile file;
  Scenario scenario;
  SolverTolerances tol;
  std::string id;
};

SolverTolerances with_overrides(SolverTolerances tol, const GlobalOptions& g) {
  if (g.eps_t) tol.eps_t = *g.eps_t;
  if (g.eps_y) tol.eps_y = *g.eps_y;
  if (g.eps_u) tol.eps_u = *g.eps_u;
  if (g.max_iter) tol.max_iter = *g.max_iter;
  tol.validate();
  return tol;
}

Loaded load(const std::string& path, const GlobalOptions& g) {
  Loaded l;
  l.file = load_scenario(path);
  l.scenario = to_scenario(l.file);
  l.tol = with_overrides(solver_tolerances(l.file, l.scenario), g);
  l.id = std::filesystem::path(path).stem().string();
  return l;
}

std::string num(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

ordered_json number_or_null(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

ordered_json interval_json(const Interval& i) {
  if (i.is_empty()) return nullptr;
  return {{"lo", i.lo()}, {"hi", i.hi()}};
}

ordered_json solution_json(const Solution& s, const std::vector<double>& per_user_value) {
  ordered_json bounds = ordered_json::array();
  for (double b : s.per_user_bounds) bounds.push_back(number_or_null(b));
  ordered_json values = ordered_json::array();
  for (double v : per_user_value) values.push_back(number_or_null(v));
  return {{"t_star", s.t_star},
          {"t_star_db", number_or_null(10.0 * std::log10(s.t_star))},
          {"x_star", s.x_star},
          {"feasible", interval_json(s.feasible)},
          {"outer_iterations", s.outer_iterations},
          {"per_user_bounds", bounds},
          {"per_user_value", values}};
}

ordered_json tolerances_json(const SolverTolerances& tol) {
  return {{"eps_t", tol.eps_t}, {"eps_y", tol.eps_y}, {"eps_u", tol.eps_u}, {"max_iter", tol.max_iter}};
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw InvalidParameter("cannot write " + out_path);
  file << text;
}

std::vector<double> user_avg_snr(const Scenario& s, double x) {
  std::vector<double> v;
  for (std::size_t m = 0; m < s.size(); ++m)
    v.push_back(avg_snr(s.channels[m], distance_squared(s.users[m], s.dv, x)));
  return v;
}

std::vector<double> user_ccdf(const Scenario& s, double x, double t) {
  std::vector<double> v;
  for (std::size_t m = 0; m < s.size(); ++m)
    v.push_back(ccdf_inst_snr(s.channels[m], distance_squared(s.users[m], s.dv, x), t));
  return v;
}

double relative_gap(double pin, double fix) { return pin > 0.0 ? (pin - fix) / pin : kNaN; }

// ---------------------------------------------------------------- solve

struct SolveOptions {
  std::string metric = "avg-snr";
  std::string scenario;
  std::string out;
};

int cmd_solve(const SolveOptions& o, const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  const Loaded l = load(o.scenario, g);
  const Scenario& s = l.scenario;
  ordered_json doc;
  doc["schema"] = 1;
  doc["command"] = "solve";
  doc["metric"] = o.metric;
  doc["scenario"] = l.id;
  doc["users"] = s.size();
  doc["tolerances"] = tolerances_json(l.tol);

  bool anomaly = false;
  if (o.metric == "avg-snr") {
    const Solution pin = solve_maxmin(s, l.tol);
    const Solution fix = fixed_antenna_baseline(s);
    const auto pin_values = user_avg_snr(s, pin.x_star);
    doc["pinching"] = solution_json(pin, pin_values);
    doc["fixed"] = solution_json(fix, user_avg_snr(s, fix.x_star));
    doc["gap"] = number_or_null(relative_gap(pin.t_star, fix.t_star));
    anomaly = !pin.feasible.contains(pin.x_star);
    for (double v : pin_values) anomaly = anomaly || v < pin.t_star * (1.0 - l.tol.eps_t);
  } else {
    const auto spec = outage_spec(l.file);
    if (!spec) {
      err << "error: metric 'outage' requires an outage section with epsilon or epsilons\n";
      return kInvalidInput;
    }
    const Solution pin = solve_outage(s, *spec, l.tol);
    const Solution fix = fixed_antenna_outage_baseline(s, *spec, l.tol);
    const auto pin_values = user_ccdf(s, pin.x_star, pin.t_star);
    doc["epsilons"] = spec->epsilons;
    doc["pinching"] = solution_json(pin, pin_values);
    doc["fixed"] = solution_json(fix, user_ccdf(s, fix.x_star, fix.t_star));
    doc["gap"] = number_or_null(relative_gap(pin.t_star, fix.t_star));
    anomaly = !pin.feasible.contains(pin.x_star);
    for (std::size_t m = 0; m < s.size(); ++m)
      anomaly = anomaly || pin_values[m] < 1.0 - spec->epsilons[m] - kCcdfSlack;
  }
  emit(doc.dump(2) + "\n", o.out, out);
  if (anomaly) {
    err << "error: solution failed its feasibility self-check\n";
    return kSolverAnomaly;
  }
  return kOk;
}

// ---------------------------------------------------------------- closed-form

struct ClosedFormOptions {
  std::string scenario;
  std::string out;
};

int cmd_closed_form(const ClosedFormOptions& o, const GlobalOptions& g, std::ostream& out,
                    std::ostream& err) {
  const Loaded l = load(o.scenario, g);
  Solution closed;
  try {
    closed = two_user_closed_form(l.scenario);
  } catch (const BoundaryRegime& e) {
    err << "error: " << e.what() << "\n";
    return kSolverAnomaly;
  }
  const Solution bisect = solve_maxmin(l.scenario, l.tol);
  ordered_json doc;
  doc["schema"] = 1;
  doc["command"] = "closed-form";
  doc["scenario"] = l.id;
  doc["closed_form"] = solution_json(closed, user_avg_snr(l.scenario, closed.x_star));
  doc["bisection"] = solution_json(bisect, user_avg_snr(l.scenario, bisect.x_star));
  doc["relative_t_difference"] = std::abs(closed.t_star - bisect.t_star) / closed.t_star;
  emit(doc.dump(2) + "\n", o.out, out);
  return kOk;
}

// ---------------------------------------------------------------- sweep

struct SweepOptions {
  std::string metric = "avg-snr";
  std::string scenario;
  std::vector<std::string> axes;
  std::size_t drops = 100;
  std::string out;
};

struct SweepPoint {
  double dx;
  double beta;
  std::size_t m;
  double epsilon;  // NaN when unused
};

struct SweepRow {
  SweepPoint point;
  double t_star = 0.0;
  double x_star = 0.0;
  double baseline = 0.0;
  double gap = 0.0;
  double iterations = 0.0;
  double wall_time = 0.0;
};

SweepRow evaluate_point(const SweepOptions& o, const GlobalOptions& g, const ScenarioFile& base,
                        const SweepPoint& p, bool beta_swept) {
  const auto started = std::chrono::steady_clock::now();
  ScenarioFile f = base;
  f.dx = p.dx;
  f.defaults.beta = p.beta;
  if (beta_swept)
    for (auto& u : f.users) u.beta.reset();
  if (!std::isnan(p.epsilon)) {
    f.epsilon = p.epsilon;
    f.epsilons.reset();
  }

  const std::size_t drops = std::max<std::size_t>(o.drops, 1);
  SweepRow row;
  row.point = p;
  double pin_sum = 0.0, fix_sum = 0.0, x_sum = 0.0, it_sum = 0.0;
  for (std::size_t d = 0; d < drops; ++d) {
    if (o.drops > 0) {
      McRng rng = batch_rng(g.seed, d);
      f.users.clear();
      for (const auto& u : uniform_users(rng, p.m, f.dx, f.dy)) {
        UserEntry e;
        e.x = u.x;
        e.y = u.y;
        f.users.push_back(e);
      }
    }
    const Scenario s = to_scenario(f);
    const SolverTolerances tol = with_overrides(solver_tolerances(f, s), g);
    Solution pin, fix;
    if (o.metric == "avg-snr") {
      pin = solve_maxmin(s, tol);
      fix = fixed_antenna_baseline(s);
    } else {
      const auto spec = outage_spec(f);
      if (!spec) throw InvalidParameter("metric 'outage' requires epsilon (file or --axis)");
      pin = solve_outage(s, *spec, tol);
      fix = fixed_antenna_outage_baseline(s, *spec, tol);
    }
    pin_sum += pin.t_star;
    fix_sum += fix.t_star;
    x_sum += pin.x_star;
    it_sum += pin.outer_iterations;
  }
  row.t_star = pin_sum / drops;
  row.baseline = fix_sum / drops;
  row.x_star = x_sum / drops;
  row.iterations = it_sum / drops;
  row.gap = relative_gap(row.t_star, row.baseline);
  row.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return row;
}

int cmd_sweep(const SweepOptions& o, const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  if (o.axes.size() > 2) {
    err << "error: at most two sweep axes are supported (got " << o.axes.size() << ")\n";
    return kInvalidInput;
  }
  const ScenarioFile base = load_scenario(o.scenario);
  to_scenario(base);  // validate the base document up front

  struct Axis {
    std::string name;
    std::vector<double> values;
  };
  std::vector<Axis> axes;
  for (const auto& spec : o.axes) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) {
      err << "error: axis '" << spec << "' must look like NAME=SPEC\n";
      return kInvalidInput;
    }
    Axis a{spec.substr(0, eq), parse_grid(spec.substr(eq + 1))};
    if (a.name != "dx" && a.name != "beta" && a.name != "m" && a.name != "epsilon") {
      err << "error: unknown sweep axis '" << a.name << "' (expected dx, beta, m or epsilon)\n";
      return kInvalidInput;
    }
    for (const auto& prev : axes)
      if (prev.name == a.name) {
        err << "error: axis '" << a.name << "' given twice\n";
        return kInvalidInput;
      }
    axes.push_back(std::move(a));
  }
  const auto swept = [&](const std::string& name) {
    for (const auto& a : axes)
      if (a.name == name) return true;
    return false;
  };
  if (o.drops == 0 && (swept("m") || swept("dx"))) {
    err << "error: sweeping m or dx needs random drops (--drops > 0)\n";
    return kInvalidInput;
  }

  SweepPoint seed_point{base.dx, base.defaults.beta, base.users.size(),
                        base.epsilon ? *base.epsilon : kNaN};
  std::vector<SweepPoint> points;
  const auto apply = [](SweepPoint p, const Axis& a, double v) {
    if (a.name == "dx") p.dx = v;
    if (a.name == "beta") p.beta = v;
    if (a.name == "m") {
      if (!(v >= 1.0) || v != std::floor(v)) throw InvalidParameter("m values must be integers >= 1");
      p.m = static_cast<std::size_t>(v);
    }
    if (a.name == "epsilon") p.epsilon = v;
    return p;
  };
  if (axes.empty()) points.push_back(seed_point);
  if (axes.size() == 1)
    for (double v : axes[0].values) points.push_back(apply(seed_point, axes[0], v));
  if (axes.size() == 2)
    for (double v0 : axes[0].values)
      for (double v1 : axes[1].values)
        points.push_back(apply(apply(seed_point, axes[0], v0), axes[1], v1));

  std::vector<SweepRow> rows(points.size());
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        rows[i] = evaluate_point(o, g, base, points[i], swept("beta"));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(g.workers, points.size()));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  const std::string id = std::filesystem::path(o.scenario).stem().string();
  std::ostringstream csv;
  csv << kSweepColumns << "\n";
  for (const auto& r : rows) {
    csv << id << ',' << o.metric << ',' << num(r.point.dx) << ',' << num(r.point.beta) << ','
        << r.point.m << ',' << num(r.point.epsilon) << ',' << num(r.t_star) << ','
        << num(r.x_star) << ',' << num(r.baseline) << ',' << num(r.gap) << ','
        << num(r.iterations) << ',' << num(r.wall_time) << "\n";
  }
  emit(csv.str(), o.out, out);
  return kOk;
}

// ---------------------------------------------------------------- ccdf

struct CcdfOptions {
  std::string scenario;
  std::size_t user = 0;
  double x_pin = 0.0;
  std::string t_grid;
  std::uint64_t samples = 100'000;
  std::string out;
};

int cmd_ccdf(const CcdfOptions& o, const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  const Loaded l = load(o.scenario, g);
  const Scenario& s = l.scenario;
  if (o.user >= s.size()) {
    err << "error: --user " << o.user << " out of range (scenario has " << s.size() << " users)\n";
    return kInvalidInput;
  }
  if (!(o.x_pin >= 0.0 && o.x_pin <= s.dx)) {
    err << "error: --x-pin " << o.x_pin << " lies outside [0, " << s.dx << "]\n";
    return kInvalidInput;
  }
  const std::vector<double> ts = parse_grid(o.t_grid);
  for (double t : ts)
    if (!(t >= 0.0)) {
      err << "error: thresholds must be >= 0\n";
      return kInvalidInput;
    }
  const auto& params = s.channels[o.user];
  const double r_sq = distance_squared(s.users[o.user], s.dv, o.x_pin);
  McConfig cfg;
  cfg.samples = o.samples;
  cfg.seed = g.seed;
  cfg.workers = g.workers;
  const auto mc = estimate_ccdf_curve(params, r_sq, ts, cfg, o.x_pin);

  std::ostringstream csv;
  csv << kCcdfColumns << "\n";
  for (std::size_t i = 0; i < ts.size(); ++i)
    csv << num(ts[i]) << ',' << num(ccdf_inst_snr(params, r_sq, ts[i])) << ',' << num(mc[i].mean)
        << ',' << num(mc[i].std_error) << "\n";
  emit(csv.str(), o.out, out);
  return kOk;
}

// ---------------------------------------------------------------- verify

struct VerifyOptions {
  std::string scenario;
  std::uint64_t samples = 200'000;
  double corrupt_eta = 1.0;
  std::string report;
};

struct Check {
  std::string name;
  bool passed = true;
  bool skipped = false;
  std::vector<std::pair<std::string, double>> values;
};

Check mc_check(std::string name, double analytic, const McEstimate& mc) {
  Check c;
  c.name = std::move(name);
  const double z = mc.std_error > 0.0 ? (analytic - mc.mean) / mc.std_error
                                      : (analytic == mc.mean ? 0.0 : kNaN);
  c.passed = std::isfinite(z) && std::abs(z) <= 3.0;
  c.values = {{"analytic", analytic}, {"mc", mc.mean}, {"std_error", mc.std_error}, {"z", z}};
  return c;
}

int cmd_verify(const VerifyOptions& o, const GlobalOptions& g, std::ostream& out,
               std::ostream& err) {
  if (!(o.corrupt_eta > 0.0)) {
    err << "error: --corrupt-eta must be > 0\n";
    return kInvalidInput;
  }
  const Loaded l = load(o.scenario, g);
  const Scenario& truth = l.scenario;
  // The analytic side sees the (possibly corrupted) model; the simulator always
  // samples the true channel.
  Scenario model = truth;
  for (auto& c : model.channels) c.eta *= o.corrupt_eta;

  McConfig cfg;
  cfg.samples = o.samples;
  cfg.seed = g.seed;
  cfg.workers = g.workers;

  std::vector<Check> checks;
  const Solution pin = solve_maxmin(model, l.tol);
  for (std::size_t m = 0; m < truth.size(); ++m) {
    const double r_sq = distance_squared(truth.users[m], truth.dv, pin.x_star);
    McConfig user_cfg = cfg;
    user_cfg.seed = g.seed + 1000 * (m + 1);
    checks.push_back(mc_check("avg-snr-formula user=" + std::to_string(m),
                              avg_snr(model.channels[m], r_sq),
                              estimate_avg_snr(truth.channels[m], r_sq, user_cfg, pin.x_star)));
    const double mean_snr = avg_snr(truth.channels[m], r_sq);
    const std::vector<double> ts = {0.5 * mean_snr, mean_snr, 2.0 * mean_snr};
    user_cfg.seed += 1;
    const auto mc = estimate_ccdf_curve(truth.channels[m], r_sq, ts, user_cfg, pin.x_star);
    for (std::size_t k = 0; k < ts.size(); ++k)
      checks.push_back(mc_check("ccdf-formula user=" + std::to_string(m) + " t=" + num(ts[k]),
                                ccdf_inst_snr(model.channels[m], r_sq, ts[k]), mc[k]));
  }

  {
    const auto grid = grid_search_maxmin(model, 100'000);
    Check c;
    c.name = "maxmin-vs-grid";
    const double rel = std::abs(pin.t_star - grid.solution.t_star) / grid.solution.t_star;
    c.passed = rel <= l.tol.eps_t;
    c.values = {{"bisection", pin.t_star}, {"grid", grid.solution.t_star}, {"relative", rel}};
    checks.push_back(c);
  }

  {
    Check c;
    c.name = "closed-form-vs-bisection";
    try {
      const Solution closed = two_user_closed_form(model);
      const double rel = std::abs(closed.t_star - pin.t_star) / closed.t_star;
      const double dx = std::abs(closed.x_star - pin.x_star);
      c.passed = rel <= 10.0 * l.tol.eps_t && dx <= pin.feasible.width() + 1e-9 * truth.dx;
      c.values = {{"closed_form", closed.t_star}, {"bisection", pin.t_star}, {"relative", rel},
                  {"x_difference", dx}, {"interval_width", pin.feasible.width()}};
    } catch (const Error&) {
      c.skipped = true;  // not a two-user equal-parameter interior instance
    }
    checks.push_back(c);
  }

  if (const auto spec = outage_spec(l.file)) {
    const Solution outage = solve_outage(model, *spec, l.tol);
    std::vector<double> t_grid(1000);
    for (std::size_t i = 0; i < t_grid.size(); ++i)
      t_grid[i] = 2.0 * outage.t_star * static_cast<double>(i) / (t_grid.size() - 1);
    const Solution grid = grid_search_outage(model, *spec, 1000, t_grid);
    Check c;
    c.name = "outage-vs-grid";
    const double step = t_grid[1];
    const double slack = step + 2e-3 * outage.t_star;
    c.passed = std::abs(outage.t_star - grid.t_star) <= slack && grid.t_star < t_grid.back();
    c.values = {{"bisection", outage.t_star}, {"grid", grid.t_star}, {"slack", slack}};
    checks.push_back(c);
    for (std::size_t m = 0; m < truth.size(); ++m) {
      const double r_sq = distance_squared(truth.users[m], truth.dv, outage.x_star);
      McConfig user_cfg = cfg;
      user_cfg.seed = g.seed + 5000 + m;
      const McEstimate mc =
          estimate_ccdf(truth.channels[m], r_sq, outage.t_star, user_cfg, outage.x_star);
      Check u;
      u.name = "outage-mc user=" + std::to_string(m);
      const double outage_rate = 1.0 - mc.mean;
      u.passed = outage_rate <= spec->epsilons[m] + 3.0 * mc.std_error;
      u.values = {{"epsilon", spec->epsilons[m]}, {"mc_outage", outage_rate},
                  {"std_error", mc.std_error}};
      checks.push_back(u);
    }
  }

  std::size_t failed = 0;
  ordered_json report;
  report["schema"] = 1;
  report["command"] = "verify";
  report["scenario"] = l.id;
  report["seed"] = g.seed;
  report["samples"] = o.samples;
  report["corrupt_eta"] = o.corrupt_eta;
  report["checks"] = ordered_json::array();
  for (const auto& c : checks) {
    const char* status = c.skipped ? "SKIP" : (c.passed ? "PASS" : "FAIL");
    if (!c.skipped && !c.passed) ++failed;
    out << status << ' ' << c.name;
    ordered_json values = ordered_json::object();
    for (const auto& [k, v] : c.values) {
      out << ' ' << k << '=' << num(v);
      values[k] = number_or_null(v);
    }
    out << "\n";
    report["checks"].push_back({{"name", c.name}, {"status", status}, {"values", values}});
  }
  report["failed"] = failed;
  report["passed"] = failed == 0;
  out << "verify: " << checks.size() << " checks, " << failed << " failed\n";
  if (!o.report.empty()) emit(report.dump(2) + "\n", o.report, out);
  if (failed > 0) {
    for (const auto& c : checks)
      if (!c.skipped && !c.passed) err << "check failed: " << c.name << "\n";
    return kCheckFailed;
  }
  return kOk;
}

}  // namespace

std::vector<double> parse_grid(const std::string& spec) {
  const auto to_double = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw InvalidParameter("bad number '" + s + "' in grid '" + spec + "'");
    }
    if (used != s.size() || !std::isfinite(v))
      throw InvalidParameter("bad number '" + s + "' in grid '" + spec + "'");
    return v;
  };
  std::vector<std::string> parts;
  const char sep = spec.find(':') != std::string::npos ? ':' : ',';
  std::stringstream in(spec);
  for (std::string item; std::getline(in, item, sep);) parts.push_back(item);
  if (parts.empty()) throw InvalidParameter("empty grid");
  std::vector<double> values;
  if (sep == ':') {
    if (parts.size() != 3) throw InvalidParameter("range grid must be start:stop:count");
    const double a = to_double(parts[0]);
    const double b = to_double(parts[1]);
    const double n = to_double(parts[2]);
    if (!(n >= 1.0) || n != std::floor(n) || n > 1e7)
      throw InvalidParameter("grid count must be a positive integer");
    const auto count = static_cast<std::size_t>(n);
    if (count == 1) return {a};
    for (std::size_t i = 0; i < count; ++i)
      values.push_back(i + 1 == count ? b : a + (b - a) * static_cast<double>(i) / (count - 1));
    return values;
  }
  for (const auto& p : parts) values.push_back(to_double(p));
  return values;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pinching-antenna placement under probabilistic LoS blockage", "pinch"};
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_option("--seed", g.seed, "Seed for random drops and Monte-Carlo runs")->capture_default_str();
  app.add_option("--workers", g.workers, "Worker threads for sweeps and Monte Carlo")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--eps-t", g.eps_t, "Relative tolerance on the threshold t");
  app.add_option("--eps-y", g.eps_y, "Inner tolerance (m^2) of the average-SNR inversion");
  app.add_option("--eps-u", g.eps_u, "Inner tolerance (m^2) of the CCDF inversion");
  app.add_option("--max-iter", g.max_iter, "Iteration cap of every bisection loop");

  const auto metric_check = CLI::IsMember({"avg-snr", "outage"});

  SolveOptions solve;
  auto* solve_cmd = app.add_subcommand("solve", "Optimal antenna position and fixed baseline");
  solve_cmd->fallthrough();
  solve_cmd->add_option("--metric", solve.metric)->check(metric_check)->capture_default_str();
  solve_cmd->add_option("--scenario", solve.scenario)->required();
  solve_cmd->add_option("--out", solve.out, "Result file (default: stdout)");

  ClosedFormOptions closed;
  auto* closed_cmd = app.add_subcommand("closed-form", "Two-user closed form vs bisection");
  closed_cmd->fallthrough();
  closed_cmd->add_option("--scenario", closed.scenario)->required();
  closed_cmd->add_option("--out", closed.out);

  SweepOptions sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Parameter sweep written as CSV");
  sweep_cmd->fallthrough();
  sweep_cmd->add_option("--metric", sweep.metric)->check(metric_check)->capture_default_str();
  sweep_cmd->add_option("--scenario", sweep.scenario)->required();
  sweep_cmd->add_option("--axis", sweep.axes, "NAME=SPEC with NAME in {dx, beta, m, epsilon}");
  sweep_cmd->add_option("--drops", sweep.drops, "Random user drops per grid point (0: file users)")
      ->capture_default_str();
  sweep_cmd->add_option("--out", sweep.out);

  CcdfOptions ccdf;
  auto* ccdf_cmd = app.add_subcommand("ccdf", "Analytic vs Monte-Carlo SNR CCDF");
  ccdf_cmd->fallthrough();
  ccdf_cmd->add_option("--scenario", ccdf.scenario)->required();
  ccdf_cmd->add_option("--user", ccdf.user)->capture_default_str();
  ccdf_cmd->add_option("--x-pin", ccdf.x_pin)->required();
  ccdf_cmd->add_option("--t-grid", ccdf.t_grid)->required();
  ccdf_cmd->add_option("--samples", ccdf.samples)->check(CLI::PositiveNumber)->capture_default_str();
  ccdf_cmd->add_option("--out", ccdf.out);

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run every analytic-vs-oracle check");
  verify_cmd->fallthrough();
  verify_cmd->add_option("--scenario", verify.scenario)->required();
  verify_cmd->add_option("--samples", verify.samples)->check(CLI::PositiveNumber)->capture_default_str();
  verify_cmd->add_option("--corrupt-eta", verify.corrupt_eta,
                         "Scale eta on the analytic side only (negative control)");
  verify_cmd->add_option("--report", verify.report, "Machine-readable JSON report");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }

  try {
    if (solve_cmd->parsed()) return cmd_solve(solve, g, out, err);
    if (closed_cmd->parsed()) return cmd_closed_form(closed, g, out, err);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep, g, out, err);
    if (ccdf_cmd->parsed()) return cmd_ccdf(ccdf, g, out, err);
    if (verify_cmd->parsed()) return cmd_verify(verify, g, out, err);
  } catch (const UnsupportedAssumption& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
  return kInvalidInput;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace pinch::cli
