#include "qsanov/io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "qsanov/errors.hpp"
#include "qsanov/format.hpp"

namespace qsanov {

namespace {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

ordered number(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

ComplexMatrix read_part(const json& doc, const char* field, long dim, const std::string& source,
                        std::vector<std::string>& errors) {
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  const std::string where = source + ": field \"" + field + "\"";
  if (!doc.contains(field)) {
    errors.push_back(where + " is missing");
    return out;
  }
  const json& rows = doc.at(field);
  if (!rows.is_array() || static_cast<long>(rows.size()) != dim) {
    errors.push_back(where + " must be an array of " + std::to_string(dim) + " rows");
    return out;
  }
  for (long i = 0; i < dim; ++i) {
    const json& row = rows[i];
    if (!row.is_array() || static_cast<long>(row.size()) != dim) {
      errors.push_back(where + " row " + std::to_string(i) + " must hold " + std::to_string(dim) +
                       " numbers");
      continue;
    }
    for (long j = 0; j < dim; ++j) {
      if (!row[j].is_number()) {
        errors.push_back(where + " entry [" + std::to_string(i) + "][" + std::to_string(j) +
                         "] is not a number");
        continue;
      }
      out(i, j) = row[j].get<double>();
    }
  }
  return out;
}

ordered pair_json(const OutcomePair& pair) {
  ordered j;
  j["young"] = pair.young.parts();
  j["type"] = pair.type.counts();
  return j;
}

}  // namespace

DensityMatrix parse_density_matrix(const std::string& text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(source + ": malformed JSON (" + e.what() + ")");
  }
  if (!doc.is_object()) throw ValidationError(source + ": expected a JSON object");
  if (!doc.contains("dim") || !doc.at("dim").is_number_integer() || doc.at("dim").get<long>() < 1)
    throw ValidationError(source + ": field \"dim\" must be a positive integer");
  const long dim = doc.at("dim").get<long>();
  std::vector<std::string> errors;
  const ComplexMatrix re = read_part(doc, "re", dim, source, errors);
  ComplexMatrix im = ComplexMatrix::Zero(dim, dim);
  if (doc.contains("im")) im = read_part(doc, "im", dim, source, errors);
  if (!errors.empty()) throw ValidationError(std::move(errors));
  ComplexMatrix m = re + Complex(0.0, 1.0) * im;
  try {
    return DensityMatrix(std::move(m));
  } catch (const ValidationError& e) {
    throw ValidationError(source + ": " + e.what());
  }
}

DensityMatrix load_density_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open state file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_density_matrix(buffer.str(), path);
}

std::string density_matrix_to_json(const DensityMatrix& rho) {
  ordered j;
  const auto dim = rho.dim();
  j["dim"] = dim;
  ordered re = ordered::array(), im = ordered::array();
  for (Eigen::Index i = 0; i < dim; ++i) {
    ordered rr = ordered::array(), ii = ordered::array();
    for (Eigen::Index k = 0; k < dim; ++k) {
      rr.push_back(rho.matrix()(i, k).real());
      ii.push_back(rho.matrix()(i, k).imag());
    }
    re.push_back(rr);
    im.push_back(ii);
  }
  j["re"] = re;
  j["im"] = im;
  return j.dump() + "\n";
}

std::string distribution_to_json(const JointOutcomeDistribution& dist) {
  // One entry per line keeps diffs of exported distributions readable.
  std::string out = "[";
  for (std::size_t i = 0; i < dist.entries.size(); ++i) {
    ordered j = pair_json(dist.entries[i].pair);
    j["prob"] = number(dist.entries[i].prob);
    out += (i ? ",\n " : "\n ") + j.dump();
  }
  return out + "\n]\n";
}

std::string samples_to_json(const std::vector<OutcomePair>& samples) {
  ordered arr = ordered::array();
  for (const auto& s : samples) arr.push_back(pair_json(s));
  return arr.dump() + "\n";
}

std::string report_to_json_line(const BoundReport& report) {
  ordered j;
  j["context"] = report.context;
  j["n"] = report.n;
  j["lhs"] = number(report.lhs);
  j["relation"] = report.relation;
  j["rhs"] = number(report.rhs);
  j["slack"] = number(report.slack);
  j["passed"] = report.passed;
  j["vacuous"] = report.vacuous;
  return j.dump() + "\n";
}

std::string summary_to_json(const VerifySummary& summary) {
  ordered j;
  j["summary"] = {{"total", summary.total},
                  {"passed", summary.passed},
                  {"failed", summary.failed()},
                  {"vacuous", summary.vacuous}};
  return j.dump() + "\n";
}

std::string exponent_curve_to_csv(const ExponentCurve& curve) {
  std::string out = std::string(kExponentCurveHeader) + "\nr,b_e_hat,s_opt\n";
  for (std::size_t i = 0; i < curve.r_grid.size(); ++i) {
    out += format_number(curve.r_grid[i]) + "," + format_number(curve.b_values[i]) + "," +
           format_number(curve.s_opt[i]) + "\n";
  }
  return out;
}

std::string exponent_curve_sidecar(const ExponentCurve& curve) {
  ordered j;
  j["d_hat"] = number(curve.d_hat);
  j["d_sigma_rho"] = number(curve.d_sigma_rho);
  return j.dump() + "\n";
}

std::string exponent_curve_to_json(const ExponentCurve& curve) {
  ordered j;
  j["d_hat"] = number(curve.d_hat);
  j["d_sigma_rho"] = number(curve.d_sigma_rho);
  ordered points = ordered::array();
  for (std::size_t i = 0; i < curve.r_grid.size(); ++i)
    points.push_back({{"r", curve.r_grid[i]}, {"b_e_hat", number(curve.b_values[i])},
                      {"s_opt", number(curve.s_opt[i])}});
  j["points"] = points;
  return j.dump(1) + "\n";
}

std::string scan_to_csv(const ScanResult& scan) {
  std::string out = std::string(kScanHeader) + "\nn,probability,exponent,floor_lhs,floor_rhs,floor_passed\n";
  for (const auto& p : scan.points) {
    out += std::to_string(p.n) + "," + format_number(p.probability) + "," +
           format_number(p.exponent) + "," + format_number(p.floor.lhs) + "," +
           format_number(p.floor.rhs) + "," + (p.floor.passed ? "1" : "0") + "\n";
  }
  return out;
}

std::string scan_to_json(const ScanResult& scan, double r) {
  ordered j;
  j["r"] = r;
  j["limit_target"] = number(scan.limit_target);
  j["d_sigma_rho"] = number(scan.d_sigma_rho);
  j["final_distance"] = number(scan.final_distance);
  j["steps_toward"] = scan.steps_toward;
  j["steps_away"] = scan.steps_away;
  ordered points = ordered::array();
  for (const auto& p : scan.points) {
    points.push_back({{"n", p.n},
                      {"probability", number(p.probability)},
                      {"exponent", number(p.exponent)},
                      {"floor", ordered::parse(report_to_json_line(p.floor))}});
  }
  j["points"] = points;
  return j.dump(1) + "\n";
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ValidationError("cannot write output file " + path);
  file << text;
}

}  // namespace qsanov
