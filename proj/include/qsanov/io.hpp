#pragma once

// Exchange formats: density matrices as {"dim","re","im"} JSON, outcome
// distributions as JSON arrays, bound reports as JSON lines and curves as
// CSV files with a versioned header comment.

#include <iosfwd>
#include <string>
#include <vector>

#include "qsanov/exponents.hpp"
#include "qsanov/sanov.hpp"
#include "qsanov/schur.hpp"
#include "qsanov/spectral.hpp"

namespace qsanov {

/// Parses a density matrix; errors name the offending field and `source`.
DensityMatrix parse_density_matrix(const std::string& json_text, const std::string& source = "<input>");
DensityMatrix load_density_matrix(const std::string& path);
std::string density_matrix_to_json(const DensityMatrix& rho);

std::string distribution_to_json(const JointOutcomeDistribution& dist);
std::string samples_to_json(const std::vector<OutcomePair>& samples);

std::string report_to_json_line(const BoundReport& report);
std::string summary_to_json(const VerifySummary& summary);

inline constexpr const char* kExponentCurveHeader = "# qsanov exponent-curve v1";
inline constexpr const char* kScanHeader = "# qsanov sanov-scan v1";

/// CSV rows r,b_e_hat,s_opt after the header comment.
std::string exponent_curve_to_csv(const ExponentCurve& curve);
/// {"d_hat": ..., "d_sigma_rho": ...}; an infinite D is written as the string "inf".
std::string exponent_curve_sidecar(const ExponentCurve& curve);
std::string exponent_curve_to_json(const ExponentCurve& curve);

std::string scan_to_csv(const ScanResult& scan);
std::string scan_to_json(const ScanResult& scan, double r);

/// Writes `text` to `path`, or to `out` when path is empty or "-".
void write_text(const std::string& path, const std::string& text, std::ostream& out);

}  // namespace qsanov
