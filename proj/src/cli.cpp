#include "qsanov/cli.hpp"

#include <charconv>
#include <cmath>
#include <iostream>
#include <set>

#include <json.hpp>

#include "qsanov/divergences.hpp"
#include "qsanov/errors.hpp"
#include "qsanov/exponents.hpp"
#include "qsanov/format.hpp"
#include "qsanov/io.hpp"
#include "qsanov/sanov.hpp"

namespace qsanov {

namespace {

const std::set<std::string> kKnownKeys{"command", "sigma", "rho",   "n",      "r-grid",
                                       "s-grid",  "seed",  "support-tol", "budget", "out",
                                       "format",  "d",     "count", "r",      "bound-scale"};

template <typename T>
bool parse_number(const std::string& text, T& value) {
  const char* first = text.data();
  const char* last = first + text.size();
  auto res = std::from_chars(first, last, value);
  return res.ec == std::errc() && res.ptr == last;
}

std::optional<Command> parse_command(const std::string& s) {
  if (s == "divergence") return Command::divergence;
  if (s == "exponents") return Command::exponents;
  if (s == "measure") return Command::measure;
  if (s == "verify") return Command::verify;
  if (s == "scan") return Command::scan;
  if (s == "sample") return Command::sample;
  return std::nullopt;
}

bool needs_sigma(Command c) { return c != Command::verify; }
bool needs_rho(Command c) {
  return c == Command::divergence || c == Command::exponents || c == Command::scan;
}
bool needs_n(Command c) {
  return c == Command::measure || c == Command::sample || c == Command::scan;
}

}  // namespace

const char* command_name(Command c) {
  switch (c) {
    case Command::divergence: return "divergence";
    case Command::exponents: return "exponents";
    case Command::measure: return "measure";
    case Command::verify: return "verify";
    case Command::scan: return "scan";
    case Command::sample: return "sample";
  }
  return "?";
}

std::vector<double> parse_grid(const std::string& text) {
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? std::string::npos : text.find(':', a + 1);
  if (b == std::string::npos || text.find(':', b + 1) != std::string::npos)
    throw ValidationError("grid \"" + text + "\" must look like start:stop:count");
  double start = 0.0, stop = 0.0;
  int count = 0;
  if (!parse_number(text.substr(0, a), start) || !parse_number(text.substr(a + 1, b - a - 1), stop) ||
      !parse_number(text.substr(b + 1), count))
    throw ValidationError("grid \"" + text + "\" has a malformed number");
  if (count < 1) throw ValidationError("grid \"" + text + "\" is empty (count < 1)");
  if (count > 1 && !(stop > start))
    throw ValidationError("grid \"" + text + "\" is not ascending (stop <= start)");
  std::vector<double> grid(count);
  for (int k = 0; k < count; ++k)
    grid[k] = count == 1 ? start : start + (stop - start) * k / (count - 1);
  if (count > 1) grid.back() = stop;
  return grid;
}

std::vector<int> parse_n_range(const std::string& text) {
  const auto dots = text.find("..");
  int lo = 0, hi = 0;
  if (dots == std::string::npos) {
    if (!parse_number(text, lo)) throw ValidationError("n \"" + text + "\" is not an integer or A..B");
    hi = lo;
  } else if (!parse_number(text.substr(0, dots), lo) || !parse_number(text.substr(dots + 2), hi)) {
    throw ValidationError("n \"" + text + "\" is not an integer or A..B");
  }
  if (lo < 1 || hi < lo) throw ValidationError("n range \"" + text + "\" must satisfy 1 <= A <= B");
  std::vector<int> out;
  for (int n = lo; n <= hi; ++n) out.push_back(n);
  return out;
}

RunConfig validate_config(const RawConfig& raw) {
  std::vector<std::string> errors;
  RunConfig cfg;
  auto get = [&](const std::string& key) -> const std::string* {
    auto it = raw.find(key);
    return it == raw.end() ? nullptr : &it->second;
  };
  for (const auto& [key, value] : raw)
    if (!kKnownKeys.count(key)) errors.push_back("unknown option \"" + key + "\"");

  bool command_ok = false;
  if (const auto* c = get("command")) {
    if (auto parsed = parse_command(*c)) {
      cfg.command = *parsed;
      command_ok = true;
    } else {
      errors.push_back("command: unknown command \"" + *c + "\"");
    }
  } else {
    errors.push_back("command: missing");
  }

  if (const auto* v = get("budget")) {
    if (!parse_number(*v, cfg.budget.max_n) || cfg.budget.max_n < 1)
      errors.push_back("budget: must be a positive integer, got \"" + *v + "\"");
  }
  if (const auto* v = get("support-tol")) {
    if (!parse_number(*v, cfg.support_tol) || !(cfg.support_tol >= 0.0))
      errors.push_back("support-tol: must be a nonnegative number, got \"" + *v + "\"");
  }
  if (const auto* v = get("seed")) {
    std::uint64_t seed = 0;
    if (!parse_number(*v, seed))
      errors.push_back("seed: must be a nonnegative integer, got \"" + *v + "\"");
    else
      cfg.seed = seed;
  }
  if (const auto* v = get("d")) {
    if (!parse_number(*v, cfg.d) || cfg.d < 1) errors.push_back("d: must be a positive integer");
  }
  if (const auto* v = get("count")) {
    if (!parse_number(*v, cfg.count)) errors.push_back("count: must be a nonnegative integer");
  }
  if (const auto* v = get("r")) {
    double r = 0.0;
    if (!parse_number(*v, r) || !(r > 0.0))
      errors.push_back("r: must be a positive number, got \"" + *v + "\"");
    else
      cfg.r = r;
  }
  if (const auto* v = get("bound-scale")) {
    if (!parse_number(*v, cfg.bound_scale) || !(cfg.bound_scale > 0.0))
      errors.push_back("bound-scale: must be a positive number");
  }
  if (const auto* v = get("format")) {
    if (*v == "json")
      cfg.format = OutputFormat::json;
    else if (*v == "csv")
      cfg.format = OutputFormat::csv;
    else
      errors.push_back("format: must be json or csv, got \"" + *v + "\"");
  }
  if (const auto* v = get("out")) cfg.out_path = *v;
  if (const auto* v = get("sigma")) cfg.sigma_path = *v;
  if (const auto* v = get("rho")) cfg.rho_path = *v;

  auto grid = [&](const char* key, std::vector<double>& target) {
    if (const auto* v = get(key)) {
      try {
        target = parse_grid(*v);
      } catch (const ValidationError& e) {
        errors.push_back(std::string(key) + ": " + e.what());
      }
    }
  };
  grid("r-grid", cfg.r_grid);
  grid("s-grid", cfg.s_grid);
  for (double r : cfg.r_grid)
    if (!(r > 0.0)) {
      errors.push_back("r-grid: values must be positive");
      break;
    }
  for (double s : cfg.s_grid)
    if (!(s > 0.0 && s < 1.0)) {
      errors.push_back("s-grid: values must lie in (0,1)");
      break;
    }

  if (const auto* v = get("n")) {
    try {
      cfg.n_values = parse_n_range(*v);
    } catch (const ValidationError& e) {
      errors.push_back(std::string("n: ") + e.what());
    }
  }

  if (command_ok) {
    const Command c = cfg.command;
    if (needs_sigma(c) && cfg.sigma_path.empty())
      errors.push_back(std::string("sigma: required by ") + command_name(c));
    if (needs_rho(c) && cfg.rho_path.empty())
      errors.push_back(std::string("rho: required by ") + command_name(c));
    if (needs_n(c) && !get("n")) errors.push_back(std::string("n: required by ") + command_name(c));
    if ((c == Command::measure || c == Command::sample) && cfg.n_values.size() > 1)
      errors.push_back(std::string("n: ") + command_name(c) + " takes a single n");
    if (c == Command::exponents && !get("r-grid"))
      errors.push_back("r-grid: required by exponents");
    if (c == Command::scan && !cfg.r) errors.push_back("r: required by scan");
    if (c == Command::sample && !cfg.seed) errors.push_back("seed: required by sample");
    if (cfg.format == OutputFormat::csv && c != Command::exponents && c != Command::scan)
      errors.push_back(std::string("format: csv is only available for exponents and scan"));
    if (c == Command::verify) {
      if (cfg.n_values.empty()) cfg.n_values = {2, 3, 4, 5, 6};
      if (cfg.d != 2 && cfg.d != 3) errors.push_back("d: verify bundles states for d = 2 and 3 only");
    }
    for (int n : cfg.n_values)
      if (n > cfg.budget.max_n) {
        errors.push_back("n: " + std::to_string(n) + " exceeds the budget n <= " +
                         std::to_string(cfg.budget.max_n));
        break;
      }
  }
  if (cfg.s_grid.empty()) cfg.s_grid = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};

  if (!errors.empty()) throw ValidationError(std::move(errors));
  return cfg;
}

RunConfig validate_config_text(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("config: malformed JSON (") + e.what() + ")");
  }
  if (!doc.is_object()) throw ValidationError("config: expected a JSON object");
  RawConfig raw;
  std::vector<std::string> errors;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (it->is_string())
      raw[it.key()] = it->get<std::string>();
    else if (it->is_number())
      raw[it.key()] = it->dump();
    else
      errors.push_back(it.key() + ": must be a string or a number");
  }
  if (!errors.empty()) throw ValidationError(std::move(errors));
  return validate_config(raw);
}

namespace {

std::string divergence_report(const RunConfig& cfg, const DensityMatrix& rho,
                              const DensityMatrix& sigma) {
  nlohmann::ordered_json j;
  auto num = [](double v) -> nlohmann::ordered_json {
    if (std::isfinite(v)) return v;
    return format_number(v);
  };
  const double tol = cfg.support_tol;
  j["dim"] = rho.dim();
  j["relative_entropy"] = num(relative_entropy(rho, sigma, tol));
  j["relative_entropy_reverse"] = num(relative_entropy(sigma, rho, tol));
  j["log_fidelity"] = num(log_fidelity(rho, sigma, tol));
  try {
    j["d_hat"] = num(d_hat(rho, sigma, tol));
  } catch (const std::exception& e) {
    j["d_hat"] = nullptr;
    j["d_hat_error"] = e.what();
  }
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (double s : cfg.s_grid) {
    nlohmann::ordered_json row;
    row["s"] = s;
    try {
      row["phi"] = num(phi_sandwich(s, rho, sigma, tol));
    } catch (const std::exception& e) {
      row["phi"] = nullptr;
    }
    try {
      row["phi_reverse"] = num(phi_sandwich(1.0 - s, sigma, rho, tol));
    } catch (const std::exception& e) {
      row["phi_reverse"] = nullptr;
    }
    rows.push_back(row);
  }
  j["phi_grid"] = rows;
  return j.dump(1) + "\n";
}

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  switch (cfg.command) {
    case Command::divergence: {
      const DensityMatrix sigma = load_density_matrix(cfg.sigma_path);
      const DensityMatrix rho = load_density_matrix(cfg.rho_path);
      if (sigma.dim() != rho.dim()) throw ValidationError("sigma and rho differ in dimension");
      write_text(cfg.out_path, divergence_report(cfg, rho, sigma), out);
      return 0;
    }
    case Command::exponents: {
      const DensityMatrix sigma = load_density_matrix(cfg.sigma_path);
      const DensityMatrix rho = load_density_matrix(cfg.rho_path);
      if (sigma.dim() != rho.dim()) throw ValidationError("sigma and rho differ in dimension");
      ExponentOptions options;
      options.support_tol = cfg.support_tol;
      const ExponentCurve curve = exponent_curve(rho, sigma, cfg.r_grid, options);
      if (cfg.format == OutputFormat::csv) {
        write_text(cfg.out_path, exponent_curve_to_csv(curve), out);
        if (!cfg.out_path.empty() && cfg.out_path != "-")
          write_text(cfg.out_path + ".json", exponent_curve_sidecar(curve), out);
      } else {
        write_text(cfg.out_path, exponent_curve_to_json(curve), out);
      }
      return 0;
    }
    case Command::measure: {
      const DensityMatrix sigma = load_density_matrix(cfg.sigma_path);
      const int n = cfg.n_values.front();
      check_budget(n, static_cast<int>(sigma.dim()), cfg.budget);
      write_text(cfg.out_path, distribution_to_json(outcome_distribution(sigma, n, cfg.budget)), out);
      return 0;
    }
    case Command::sample: {
      const DensityMatrix sigma = load_density_matrix(cfg.sigma_path);
      const int n = cfg.n_values.front();
      check_budget(n, static_cast<int>(sigma.dim()), cfg.budget);
      const auto dist = outcome_distribution(sigma, n, cfg.budget);
      write_text(cfg.out_path, samples_to_json(sample_outcomes(dist, cfg.count, *cfg.seed)), out);
      return 0;
    }
    case Command::verify: {
      VerifyOptions options;
      options.d = cfg.d;
      options.n_list = cfg.n_values;
      options.s_grid = cfg.s_grid;
      if (!cfg.r_grid.empty()) options.lemma_rates = cfg.r_grid;
      options.budget = cfg.budget;
      options.bound_scale = cfg.bound_scale;
      for (int n : options.n_list) check_budget(n, options.d, options.budget);
      const VerifyResult result = run_verification(options);
      std::string text;
      for (const auto& rep : result.reports) text += report_to_json_line(rep);
      text += summary_to_json(result.summary);
      write_text(cfg.out_path, text, out);
      if (result.summary.failed() > 0) {
        err << "verify: " << result.summary.failed() << " of " << result.summary.total
            << " bounds failed\n";
        return 2;
      }
      return 0;
    }
    case Command::scan: {
      const DensityMatrix sigma = load_density_matrix(cfg.sigma_path);
      const DensityMatrix rho = load_density_matrix(cfg.rho_path);
      if (sigma.dim() != rho.dim()) throw ValidationError("sigma and rho differ in dimension");
      for (int n : cfg.n_values) check_budget(n, static_cast<int>(sigma.dim()), cfg.budget);
      ExponentOptions options;
      options.support_tol = cfg.support_tol;
      const ScanResult scan = theorem2_scan(sigma, rho, *cfg.r, cfg.n_values, cfg.budget, options);
      write_text(cfg.out_path,
                 cfg.format == OutputFormat::csv ? scan_to_csv(scan) : scan_to_json(scan, *cfg.r),
                 out);
      bool floors_ok = true;
      for (const auto& p : scan.points) floors_ok = floors_ok && p.floor.passed;
      return floors_ok ? 0 : 2;
    }
  }
  return 1;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    return execute(config, out, err);
  } catch (const ValidationError& e) {
    for (const auto& msg : e.errors()) err << "error: " << msg << "\n";
    return 1;
  } catch (const ResourceError& e) {
    err << "resource error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace qsanov
