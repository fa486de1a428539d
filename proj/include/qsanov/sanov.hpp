#pragma once

// Finite-n verification harness: the rate function on outcome pairs, the
// rate-r ball, the tail bound for the true state, the per-outcome lower bound
// under an alternative state and the exponent scan toward B_e.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qsanov/exponents.hpp"
#include "qsanov/partitions.hpp"
#include "qsanov/schur.hpp"
#include "qsanov/spectral.hpp"

namespace qsanov {

/// Returns rho pinched to its diagonal. Prints a warning to stderr when that
/// discards off-diagonal weight above `tol`.
DensityMatrix diagonal_reference(const DensityMatrix& rho, double tol = kHermitianTolerance);

/// r(p', rho'||rho) = D(rho'||rho) + H(rho') - H(p') for rho', rho diagonal.
/// +infinity when rho' charges a letter rho does not.
double rate_r(std::span<const double> p_prime, std::span<const double> rho_prime_diag,
              std::span<const double> rho_diag);
double rate_r(const ProbabilityVector& p_prime, const DensityMatrix& rho_prime,
              const DensityMatrix& rho);
/// Rate of an outcome pair: p' = lambda/n, rho' = diag(type/n).
double rate_r(const OutcomePair& pair, const DensityMatrix& rho);

struct SetSplit {
  std::vector<OutcomePair> inside;   // rate <= r
  std::vector<OutcomePair> outside;  // rate > r
};

SetSplit s_set_split(const DensityMatrix& rho, double r, int n, const SizeBudget& budget = {});

inline constexpr double kBoundSlack = 1e-9;
/// Outcomes with probability at or below this carry no usable exponent.
inline constexpr double kVacuousProbability = 1e-14;

struct BoundReport {
  std::string context;
  int n = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;         // margin in the bound's favour
  std::string relation;       // "<=" or ">="
  bool passed = false;
  bool vacuous = false;
};

/// Tail of the true state outside the rate-r ball against
/// (n+1)^{(d+4)(d-1)/2} e^{-nr}. `bound_scale` multiplies the right side and
/// exists only to exercise failure wiring.
BoundReport lemma1_check(const DensityMatrix& rho, double r, int n, const SizeBudget& budget = {},
                         double bound_scale = 1.0);

/// -(1/n) log of the tail probability in lemma1_check (+infinity for an empty tail).
double tail_exponent(const DensityMatrix& rho, double r, int n, const SizeBudget& budget = {});

/// Per-outcome bound:
///   -(1/n) log Tr sigma^n T  >=  (-(1-s) r_n - phi(1-s|sigma||rho)) / s - d(d+3)/(2sn) log(n+1).
BoundReport theorem1_check(const DensityMatrix& sigma, const DensityMatrix& rho,
                           const OutcomePair& pair, double s, int n,
                           const SizeBudget& budget = {});

/// theorem1_check over every outcome pair and every s, reusing one distribution.
std::vector<BoundReport> theorem1_reports(const DensityMatrix& sigma, const DensityMatrix& rho,
                                          int n, const std::vector<double>& s_grid,
                                          const SizeBudget& budget = {},
                                          const std::string& label = "theorem1");

struct ScanPoint {
  int n = 0;
  double probability = 0.0;  // Tr sigma^n summed over the ball
  double exponent = 0.0;     // -(1/n) log probability
  BoundReport floor;         // per-outcome bound at the dominant outcome of the ball
};

struct ScanResult {
  std::vector<ScanPoint> points;
  double limit_target = 0.0;  // B_e(r|rho||sigma)
  double d_sigma_rho = 0.0;
  double final_distance = 0.0;
  int steps_toward = 0;  // consecutive points that move closer to the target
  int steps_away = 0;
};

ScanResult theorem2_scan(const DensityMatrix& sigma, const DensityMatrix& rho, double r,
                         const std::vector<int>& n_list, const SizeBudget& budget = {},
                         const ExponentOptions& options = {});

/// multinomial(n; counts) * prod sigma_i^{counts_i} for diagonal sigma.
double classical_sanov_prob(const DensityMatrix& sigma, const TypeVector& type);
BigRational classical_sanov_prob(const std::vector<BigRational>& sigma_diag, const TypeVector& type);

struct StatePair {
  std::string name;
  DensityMatrix sigma;
  DensityMatrix rho;  // diagonal
};

/// Five fixed (sigma, rho) pairs for d = 2 or 3; at least one sigma carries
/// off-diagonal coherence.
std::vector<StatePair> bundled_pairs(int d);
/// Five fixed diagonal states for d = 2 or 3.
std::vector<DensityMatrix> bundled_rhos(int d);

struct VerifyOptions {
  int d = 2;
  std::vector<int> n_list{2, 3, 4, 5, 6};
  std::vector<double> lemma_rates{0.05, 0.1, 0.2, 0.5};
  std::vector<double> s_grid{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  SizeBudget budget{};
  double bound_scale = 1.0;  // applied to the tail bounds only
};

struct VerifySummary {
  std::size_t total = 0;
  std::size_t passed = 0;
  std::size_t vacuous = 0;
  std::size_t failed() const { return total - passed; }
};

struct VerifyResult {
  std::vector<BoundReport> reports;
  VerifySummary summary;
};

VerifyResult run_verification(const VerifyOptions& options);

}  // namespace qsanov
