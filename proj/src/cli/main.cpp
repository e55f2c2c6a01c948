#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "expfun/cli.hpp"
#include "expfun/error.hpp"

namespace expfun::cli {

namespace {

Json read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& ex) {
    throw ConfigError(std::string("config is not valid JSON: ") + ex.what());
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fundamental functions of constant-coefficient differential operators",
               "expfun"};
  std::string command_name;
  std::string config_path;
  std::string out_path;
  std::string format_name;
  bool assert_mode = false;
  app.add_option("command", command_name, "eval|verify|hankel|turan|moments|certify")
      ->required()
      ->check(CLI::IsMember({"eval", "verify", "hankel", "turan", "moments", "certify"}));
  app.add_option("--config", config_path, "JSON config file")->required();
  app.add_flag("--assert", assert_mode, "exit with code 1 when a check fails");
  app.add_option("--out", out_path, "write output here instead of stdout");
  app.add_option("--format", format_name, "csv (default) or json")
      ->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& ex) {
    err << "expfun: " << ex.what() << "\n";
    return kExitConfig;
  }

  try {
    const Command command = *parse_command(command_name);
    const RunConfig cfg = parse_config(read_config(config_path), command, default_grid());
    const Outcome outcome = run_command(cfg);

    Format format = cfg.format.value_or(Format::csv);
    if (!format_name.empty()) format = *parse_format(format_name);
    const std::string text =
        format == Format::json ? to_json(outcome.report) : to_csv(outcome.report, outcome.tabular);

    std::string path = cfg.out_path.value_or("");
    if (!out_path.empty()) path = out_path;
    if (path.empty()) {
      out << text;
    } else {
      std::ofstream file(path, std::ios::binary);
      if (!file) throw ConfigError("cannot write '" + path + "'");
      file << text;
    }
    return assert_mode && outcome.check_failed ? kExitCheckFailed : kExitOk;
  } catch (const ConfigError& ex) {
    err << "expfun: config error: " << ex.what() << "\n";
    return kExitConfig;
  } catch (const NumericalError& ex) {
    err << "expfun: numerical failure: " << ex.what() << "\n";
    return kExitNumeric;
  } catch (const std::invalid_argument& ex) {
    err << "expfun: invalid input: " << ex.what() << "\n";
    return kExitConfig;
  } catch (const std::logic_error& ex) {
    err << "expfun: invalid input: " << ex.what() << "\n";
    return kExitConfig;
  } catch (const nlohmann::json::exception& ex) {
    err << "expfun: config error: " << ex.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& ex) {
    err << "expfun: numerical failure: " << ex.what() << "\n";
    return kExitNumeric;
  }
}

}  // namespace expfun::cli
