#pragma once

// Command-line front end. Flags are gathered into a raw key/value map,
// validated in one pass (every problem reported together) and executed by run().
//
// Exit status: 0 success, 1 invalid input or a failed computation,
// 2 when a verification bound fails.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qsanov/schur.hpp"

namespace qsanov {

enum class Command { divergence, exponents, measure, verify, scan, sample };
enum class OutputFormat { json, csv };

struct RunConfig {
  Command command = Command::divergence;
  std::string sigma_path;
  std::string rho_path;
  std::vector<int> n_values;
  std::vector<double> r_grid;
  std::vector<double> s_grid;
  std::optional<std::uint64_t> seed;
  double support_tol = 1e-12;
  SizeBudget budget{};
  std::string out_path;  // empty: stdout
  OutputFormat format = OutputFormat::json;
  int d = 2;
  std::size_t count = 1000;
  std::optional<double> r;
  double bound_scale = 1.0;  // test hook: scales the tail bounds in verify
};

/// Keys: command, sigma, rho, n, r-grid, s-grid, seed, support-tol, budget,
/// out, format, d, count, r, bound-scale. Unknown keys are errors.
using RawConfig = std::map<std::string, std::string>;

/// Throws ValidationError carrying every problem found.
RunConfig validate_config(const RawConfig& raw);
/// Same, from a JSON object whose members use the keys above.
RunConfig validate_config_text(const std::string& json_text);

/// "start:stop:count", evenly spaced and inclusive.
std::vector<double> parse_grid(const std::string& text);
/// "7" or "2..6".
std::vector<int> parse_n_range(const std::string& text);

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

const char* command_name(Command c);

}  // namespace qsanov
