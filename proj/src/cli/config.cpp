#include <cmath>
#include <cstdlib>
#include <regex>
#include <set>

#include "expfun/cli.hpp"

namespace expfun::cli {

namespace {

const std::set<std::string>& allowed_keys(Command command) {
  static const std::set<std::string> eval{"command", "frequencies", "output", "m",
                                          "interval", "samples", "points"};
  static const std::set<std::string> verify{"command", "frequencies", "output", "m",
                                            "interval", "grid", "tol", "orientation"};
  static const std::set<std::string> hankel{"command", "frequencies", "output", "k",
                                            "top_order", "interval", "grid", "points",
                                            "tol"};
  static const std::set<std::string> turan{"command", "frequencies", "output",
                                           "interval", "samples", "points"};
  static const std::set<std::string> moments{"command", "frequencies", "output",
                                             "measure", "tol", "grid"};
  static const std::set<std::string> certify{"command", "frequencies", "output"};
  switch (command) {
    case Command::eval: return eval;
    case Command::verify: return verify;
    case Command::hankel: return hankel;
    case Command::turan: return turan;
    case Command::moments: return moments;
    case Command::certify: return certify;
  }
  return certify;
}

double number(const Json& v, const std::string& what) {
  if (!v.is_number()) throw ConfigError(what + " must be a number");
  return v.get<double>();
}

int integer(const Json& v, const std::string& what) {
  if (!v.is_number_integer()) throw ConfigError(what + " must be an integer");
  return v.get<int>();
}

std::pair<double, double> interval(const Json& v, const std::string& what) {
  if (!v.is_array() || v.size() != 2) throw ConfigError(what + " must be [lo, hi]");
  const double lo = number(v[0], what + "[0]");
  const double hi = number(v[1], what + "[1]");
  if (!(lo <= hi)) throw ConfigError(what + " needs lo <= hi");
  return {lo, hi};
}

std::vector<Complex> frequencies(const Json& v) {
  if (!v.is_array() || v.empty()) {
    throw ConfigError("frequencies must be a non-empty array");
  }
  std::vector<Complex> out;
  for (const auto& item : v) {
    if (item.is_number()) {
      out.emplace_back(item.get<double>(), 0.0);
    } else if (item.is_array() && item.size() == 2 && item[0].is_number() &&
               item[1].is_number()) {
      out.emplace_back(item[0].get<double>(), item[1].get<double>());
    } else {
      throw ConfigError("each frequency must be a real number or a [re, im] pair");
    }
  }
  return out;
}

std::vector<double> numbers(const Json& v, const std::string& what) {
  if (!v.is_array()) throw ConfigError(what + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& item : v) out.push_back(number(item, what));
  return out;
}

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
  if (name == "eval") return Command::eval;
  if (name == "verify") return Command::verify;
  if (name == "hankel") return Command::hankel;
  if (name == "turan") return Command::turan;
  if (name == "moments") return Command::moments;
  if (name == "certify") return Command::certify;
  return std::nullopt;
}

const char* to_string(Command command) {
  switch (command) {
    case Command::eval: return "eval";
    case Command::verify: return "verify";
    case Command::hankel: return "hankel";
    case Command::turan: return "turan";
    case Command::moments: return "moments";
    case Command::certify: return "certify";
  }
  return "unknown";
}

std::optional<Format> parse_format(std::string_view name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  return std::nullopt;
}

int default_grid() {
  const char* env = std::getenv("EXPFUN_GRID");
  if (env == nullptr || *env == '\0') return kDefaultGrid;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 64 || v > 10'000'000) {
    throw ConfigError("EXPFUN_GRID must be an integer in [64, 10000000]");
  }
  return static_cast<int>(v);
}

RunConfig parse_config(const Json& doc, Command command, int fallback_grid) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  const auto& allowed = allowed_keys(command);
  for (const auto& [key, value] : doc.items()) {
    if (!allowed.contains(key)) {
      throw ConfigError("unknown key '" + key + "' for command " + to_string(command));
    }
  }

  RunConfig cfg;
  cfg.command = command;
  cfg.grid = fallback_grid;
  if (doc.contains("command")) {
    const auto& c = doc["command"];
    if (!c.is_string() || parse_command(c.get<std::string>()) != command) {
      throw ConfigError(std::string("config command does not match '") +
                        to_string(command) + "'");
    }
  }
  if (!doc.contains("frequencies")) throw ConfigError("missing 'frequencies'");
  cfg.frequencies = frequencies(doc["frequencies"]);
  try {
    (void)cfg.frequency_vector();
  } catch (const std::invalid_argument& ex) {
    throw ConfigError(ex.what());
  }

  if (doc.contains("m")) {
    cfg.m = integer(doc["m"], "m");
    if (*cfg.m < 0) throw ConfigError("m must be >= 0");
  }
  if (doc.contains("interval")) cfg.interval = interval(doc["interval"], "interval");
  if (doc.contains("samples")) {
    cfg.samples = integer(doc["samples"], "samples");
    if (cfg.samples < 1) throw ConfigError("samples must be >= 1");
  }
  if (doc.contains("points")) cfg.points = numbers(doc["points"], "points");
  if (doc.contains("grid")) {
    cfg.grid = integer(doc["grid"], "grid");
    if (cfg.grid < 64) throw ConfigError("grid must be >= 64");
  }
  if (doc.contains("tol")) {
    cfg.tol = number(doc["tol"], "tol");
    if (*cfg.tol < 0.0) throw ConfigError("tol must be >= 0");
  }
  if (doc.contains("k")) {
    cfg.k = integer(doc["k"], "k");
    if (cfg.k < 0) throw ConfigError("k must be >= 0");
  }
  if (doc.contains("top_order")) {
    cfg.top_order = integer(doc["top_order"], "top_order");
    if (cfg.top_order < 0) throw ConfigError("top_order must be >= 0");
  }
  if (doc.contains("orientation")) {
    const auto& o = doc["orientation"];
    if (o == "nonnegative") {
      cfg.orientation = Orientation::nonnegative;
    } else if (o == "nonpositive") {
      cfg.orientation = Orientation::nonpositive;
    } else {
      throw ConfigError("orientation must be 'nonnegative' or 'nonpositive'");
    }
  }
  if (doc.contains("measure")) {
    cfg.measure = doc["measure"];
    (void)parse_measure(*cfg.measure);
  }
  if (doc.contains("output")) {
    const auto& out = doc["output"];
    if (!out.is_object()) throw ConfigError("output must be an object");
    for (const auto& [key, value] : out.items()) {
      if (key == "path") {
        if (!value.is_string()) throw ConfigError("output.path must be a string");
        cfg.out_path = value.get<std::string>();
      } else if (key == "format") {
        if (!value.is_string() || !parse_format(value.get<std::string>())) {
          throw ConfigError("output.format must be 'csv' or 'json'");
        }
        cfg.format = parse_format(value.get<std::string>());
      } else {
        throw ConfigError("unknown key 'output." + key + "'");
      }
    }
  }

  switch (command) {
    case Command::eval:
    case Command::turan:
      if (cfg.points.empty() && !cfg.interval) {
        throw ConfigError("need 'points' or 'interval'");
      }
      if (cfg.interval && cfg.samples == 0) throw ConfigError("'interval' needs 'samples'");
      break;
    case Command::verify:
      if (!cfg.interval) throw ConfigError("missing 'interval'");
      if (!(cfg.interval->first < cfg.interval->second)) {
        throw ConfigError("interval needs lo < hi");
      }
      break;
    case Command::hankel:
      if (cfg.points.empty() && !cfg.interval) {
        throw ConfigError("need 'points' or 'interval'");
      }
      if (cfg.interval && !(cfg.interval->first < cfg.interval->second)) {
        throw ConfigError("interval needs lo < hi");
      }
      break;
    case Command::moments:
      if (!cfg.measure) throw ConfigError("missing 'measure'");
      break;
    case Command::certify:
      break;
  }
  return cfg;
}

Measure parse_measure(const Json& doc) {
  if (!doc.is_object()) throw ConfigError("measure must be an object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "kind" && key != "support" && key != "atoms" && key != "expr") {
      throw ConfigError("unknown key 'measure." + key + "'");
    }
  }
  if (!doc.contains("kind") || !doc["kind"].is_string()) {
    throw ConfigError("measure.kind must be 'atoms' or 'density'");
  }
  if (!doc.contains("support")) throw ConfigError("missing measure.support");
  const auto [a, b] = interval(doc["support"], "measure.support");
  const auto kind = doc["kind"].get<std::string>();

  try {
    if (kind == "atoms") {
      if (doc.contains("expr")) throw ConfigError("atomic measures take no 'expr'");
      if (!doc.contains("atoms") || !doc["atoms"].is_array()) {
        throw ConfigError("measure.atoms must be an array of [x, w] pairs");
      }
      std::vector<Atom> atoms;
      for (const auto& item : doc["atoms"]) {
        if (!item.is_array() || item.size() != 2) {
          throw ConfigError("each atom must be an [x, w] pair");
        }
        atoms.push_back({number(item[0], "atom location"), number(item[1], "atom weight")});
      }
      return Measure::atomic(a, b, std::move(atoms));
    }
    if (kind == "density") {
      if (doc.contains("atoms")) throw ConfigError("density measures take no 'atoms'");
      if (!doc.contains("expr") || !doc["expr"].is_string()) {
        throw ConfigError("measure.expr must be a string");
      }
      const auto expr = doc["expr"].get<std::string>();
      static const std::regex uniform_re(R"(\s*uniform\s*)");
      static const std::regex truncexp_re(R"(\s*truncexp\(\s*([^)]+?)\s*\)\s*)");
      static const std::regex poly_re(R"(\s*poly\(([^)]*)\)\s*)");
      std::smatch match;
      if (std::regex_match(expr, uniform_re)) {
        const double height = 1.0 / (b - a);
        return Measure::with_density(a, b, [height](double) { return height; }, expr);
      }
      if (std::regex_match(expr, match, truncexp_re)) {
        const double rate = std::stod(match[1].str());
        if (!(rate > 0.0)) throw ConfigError("truncexp rate must be > 0");
        const double norm = rate / -std::expm1(-rate * (b - a));
        return Measure::with_density(
            a, b, [=](double x) { return norm * std::exp(-rate * (x - a)); }, expr);
      }
      if (std::regex_match(expr, match, poly_re)) {
        PolynomialCoeffs p;
        const std::string body = match[1].str();
        static const std::regex num_re(R"(\s*([^,]+?)\s*(,|$))");
        for (auto it = std::sregex_iterator(body.begin(), body.end(), num_re);
             it != std::sregex_iterator(); ++it) {
          if ((*it)[1].length() == 0) continue;
          std::size_t used = 0;
          const std::string tok = (*it)[1].str();
          p.coeffs.push_back(std::stod(tok, &used));
          if (used != tok.size()) throw ConfigError("bad poly coefficient '" + tok + "'");
        }
        if (p.is_zero()) throw ConfigError("poly density needs a nonzero coefficient");
        return Measure::with_density(a, b, [p](double x) { return p(x); }, expr);
      }
      throw ConfigError("unknown density expr '" + expr + "'");
    }
  } catch (const std::invalid_argument& ex) {
    throw ConfigError(std::string("bad measure: ") + ex.what());
  }
  throw ConfigError("measure.kind must be 'atoms' or 'density'");
}

}  // namespace expfun::cli
