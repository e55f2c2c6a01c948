#pragma once

#include <iosfwd>
#include <json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "expfun/frequencies.hpp"
#include "expfun/moments.hpp"
#include "expfun/polynomial.hpp"

namespace expfun::cli {

using Json = nlohmann::json;
using Report = nlohmann::ordered_json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

enum class Command { eval, verify, hankel, turan, moments, certify };
enum class Format { csv, json };

std::optional<Command> parse_command(std::string_view name);
const char* to_string(Command command);
std::optional<Format> parse_format(std::string_view name);

struct RunConfig {
  Command command = Command::eval;
  std::vector<Complex> frequencies;
  std::optional<int> m;
  std::optional<std::pair<double, double>> interval;
  int samples = 0;
  std::vector<double> points;
  int grid = kDefaultGrid;
  std::optional<double> tol;
  int k = 0;
  int top_order = -1;
  Orientation orientation = Orientation::nonnegative;
  std::optional<Json> measure;
  std::optional<std::string> out_path;
  std::optional<Format> format;

  FrequencyVector frequency_vector() const { return FrequencyVector(frequencies); }
};

/// Grid size used when a config does not set one: EXPFUN_GRID if present,
/// otherwise 4096. Throws ConfigError for a malformed EXPFUN_GRID.
int default_grid();

/// Validates a config document for `command`. Unknown keys are rejected.
RunConfig parse_config(const Json& doc, Command command, int fallback_grid);

/// Parses a measure document:
///   {"kind":"atoms","support":[a,b],"atoms":[[x,w],...]}
///   {"kind":"density","support":[a,b],"expr":"uniform|truncexp(r)|poly(c0,c1,...)"}
Measure parse_measure(const Json& doc);

struct Outcome {
  Report report;
  /// A negative result that --assert turns into exit code 1.
  bool check_failed = false;
  /// The report's "rows" form a plain table (eval, turan).
  bool tabular = false;
};

Outcome cmd_eval(const RunConfig& config);
Outcome cmd_verify(const RunConfig& config);
Outcome cmd_hankel(const RunConfig& config);
Outcome cmd_turan(const RunConfig& config);
Outcome cmd_moments(const RunConfig& config);
Outcome cmd_certify(const RunConfig& config);
Outcome run_command(const RunConfig& config);

/// Shortest round-trip decimal form of a double.
std::string format_number(double value);

/// Tabular reports emit their "rows" as one CSV table with a header; every
/// other report becomes key,value rows with flattened keys (a.b, a[0]).
std::string to_csv(const Report& report, bool tabular);
std::string to_json(const Report& report);

/// Full command-line entry point; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace expfun::cli
