// qsanov: command-line front end.
//
//   qsanov divergence --sigma S.json --rho R.json
//   qsanov exponents  --sigma S.json --rho R.json --r-grid 0.01:0.5:50 --format csv --out curve.csv
//   qsanov measure    --sigma S.json --n 4
//   qsanov sample     --sigma S.json --n 4 --count 100 --seed 7
//   qsanov verify     --d 2 --n 2..6
//   qsanov scan       --sigma S.json --rho R.json --r 0.05 --n 2..7
//
// Any subcommand also accepts --config FILE (JSON object with the same keys);
// flags given on the command line override the file.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsanov/cli.hpp"
#include "qsanov/errors.hpp"

namespace {

const char* kStringKeys[] = {"sigma", "rho",  "n",     "r-grid", "s-grid",     "seed", "support-tol",
                             "budget", "out", "format", "d",     "count", "r", "bound-scale"};

const char* describe(const std::string& key) {
  if (key == "sigma") return "alternative state, matrix JSON file";
  if (key == "rho") return "reference state, matrix JSON file";
  if (key == "n") return "block length: INT or A..B";
  if (key == "r-grid") return "rate grid start:stop:count";
  if (key == "s-grid") return "order grid start:stop:count inside (0,1)";
  if (key == "seed") return "random seed";
  if (key == "support-tol") return "eigenvalues at or below this count as zero";
  if (key == "budget") return "largest n allowed for operator-level work";
  if (key == "out") return "output path (default stdout)";
  if (key == "format") return "json or csv";
  if (key == "d") return "local dimension for verify";
  if (key == "count") return "number of samples";
  if (key == "r") return "rate for scan";
  return "";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Schur sampling and empirical-type measurements: divergences, exponents and finite-n checks"};
  app.require_subcommand(1);

  std::map<std::string, std::string> values;
  std::string config_path;
  const char* commands[] = {"divergence", "exponents", "measure", "verify", "scan", "sample"};
  for (const char* name : commands) {
    CLI::App* sub = app.add_subcommand(name, std::string("run ") + name);
    sub->add_option("--config", config_path, "JSON config file");
    for (const char* key : kStringKeys) {
      CLI::Option* opt = sub->add_option(std::string("--") + key, values[key], describe(key));
      if (std::string(key) == "bound-scale") opt->group("");
    }
  }

  CLI11_PARSE(app, argc, argv);

  qsanov::RawConfig raw;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "error: cannot open config file " << config_path << "\n";
      return 1;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
      auto doc = nlohmann::json::parse(buffer.str());
      if (!doc.is_object()) throw qsanov::ValidationError("config: expected a JSON object");
      for (auto it = doc.begin(); it != doc.end(); ++it)
        raw[it.key()] = it->is_string() ? it->get<std::string>() : it->dump();
    } catch (const std::exception& e) {
      std::cerr << "error: config " << config_path << ": " << e.what() << "\n";
      return 1;
    }
  }
  for (CLI::App* sub : app.get_subcommands()) {
    raw["command"] = sub->get_name();
    for (const char* key : kStringKeys)
      if (sub->count(std::string("--") + key) > 0) raw[key] = values[key];
  }

  qsanov::RunConfig config;
  try {
    config = qsanov::validate_config(raw);
  } catch (const qsanov::ValidationError& e) {
    for (const auto& msg : e.errors()) std::cerr << "error: " << msg << "\n";
    return 1;
  }
  return qsanov::run(config, std::cout, std::cerr);
}
