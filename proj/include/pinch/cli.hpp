#pragma once

// Command-line front end. `run` is the whole program; tools/pinch.cpp only
// forwards argv to it.
//
//   pinch solve       --metric avg-snr|outage --scenario FILE [--out FILE]
//   pinch closed-form --scenario FILE [--out FILE]
//   pinch sweep       --metric M --scenario FILE --axis NAME=SPEC [--axis ...]
//                     [--drops N] [--out FILE.csv]
//   pinch ccdf        --scenario FILE --user I --x-pin X --t-grid SPEC [--out FILE.csv]
//   pinch verify      --scenario FILE [--samples N] [--corrupt-eta F] [--report FILE]
//
// Global flags: --seed, --workers, --eps-t, --eps-y, --eps-u, --max-iter.
// ccdf and verify also take --samples.
// Grid SPEC is either "start:stop:count" (inclusive, uniform) or "v1,v2,...".

#include <iosfwd>
#include <string>
#include <vector>

namespace pinch::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,    ///< verify found an oracle disagreement
  kInvalidInput = 2,   ///< unreadable / schema-invalid input or bad flags
  kSolverAnomaly = 3,  ///< a solution failed its own feasibility self-check
};

/// Fixed column order of sweep CSV files.
inline constexpr const char* kSweepColumns =
    "scenario_id,metric,dx,beta,m,epsilon,t_star,x_star,baseline_t_star,gap,iterations,wall_time_s";

/// Fixed column order of ccdf CSV files.
inline constexpr const char* kCcdfColumns = "t,analytic_ccdf,mc_ccdf,mc_std_error";

/// Parses a grid spec ("a:b:n" or "v1,v2,..."); throws pinch::InvalidParameter.
std::vector<double> parse_grid(const std::string& spec);

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pinch::cli
