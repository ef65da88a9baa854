#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "metageo/caps.hpp"
#include "metageo/wreath.hpp"

namespace metageo {

/// Invalid command/solver/group configuration; the CLI maps it to exit 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command {
  normal_form,
  geodesic_wreath,
  geodesic_metabelian,
  flow,
  steiner,
  tsp,
  oracle_check,
  bench,
};

struct RunConfig {
  Command command = Command::geodesic_metabelian;
  std::optional<GroupSpec> group;  // wreath commands; selects wreath mode in oracle-check
  int rank = 2;                    // metabelian commands
  std::string solver = "exact";    // exact | line-exact | heuristic | mst | bruteforce
  std::string format = "json";     // json | text
  std::uint64_t seed = 1;
  SolverCaps caps;
  int radius = 4;      // oracle-check bound
  int sample = 0;      // oracle-check: 0 = enumerate, else sample count
  int box_margin = 1;  // group Steiner bounding-box margin
  int bench_min_size = 5;
  int bench_max_size = 12;
  int bench_trials = 3;
};

/// Applies the METAGEO_MAX_EXACT environment override to the exact-solver
/// caps. Flags take precedence over the environment; the CLI main applies
/// defaults, then this, then flags.
SolverCaps caps_from_env(SolverCaps base);

/// Streams records for each input line (word or JSON instance, depending on
/// the command); oracle-check and bench ignore the input stream. Per-line
/// failures are reported inline and never abort the stream.
/// Returns 0 on success, 1 if any per-word error or oracle mismatch occurred.
/// Throws ConfigError for malformed configurations (exit 2).
int run_command(const RunConfig& config, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace metageo
