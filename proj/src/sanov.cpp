#include "qsanov/sanov.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>

#include "qsanov/divergences.hpp"
#include "qsanov/errors.hpp"
#include "qsanov/format.hpp"

namespace qsanov {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string render(const std::vector<double>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + format_number(v[i]);
  return out + ")";
}

std::vector<double> young_frequencies(const YoungIndex& lambda) {
  std::vector<double> p;
  for (int part : lambda.parts()) p.push_back(static_cast<double>(part) / lambda.n());
  return p;
}

BoundReport upper_report(std::string context, int n, double lhs, double rhs) {
  BoundReport rep;
  rep.context = std::move(context);
  rep.n = n;
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.slack = rhs - lhs;
  rep.relation = "<=";
  rep.passed = lhs <= rhs + kBoundSlack;
  return rep;
}

BoundReport lower_report(std::string context, int n, double lhs, double rhs) {
  BoundReport rep;
  rep.context = std::move(context);
  rep.n = n;
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.slack = lhs - rhs;
  rep.relation = ">=";
  rep.passed = lhs >= rhs - kBoundSlack;
  return rep;
}

// Right side of the per-outcome bound.
double theorem1_rhs(double r_n, double phi, double s, int n, int d) {
  if (std::isinf(r_n)) return -kInf;
  return (-(1.0 - s) * r_n - phi) / s -
         (d * (d + 3.0)) / (2.0 * s * n) * std::log(n + 1.0);
}

BoundReport theorem1_from(const DensityMatrix& rho, const OutcomePair& pair, double prob,
                          double phi, double s, int n, std::string context) {
  const int d = static_cast<int>(rho.dim());
  const double r_n = rate_r(pair, rho);
  const double rhs = theorem1_rhs(r_n, phi, s, n, d);
  if (prob <= kVacuousProbability) {
    BoundReport rep = lower_report(std::move(context), n, kInf, rhs);
    rep.slack = kInf;
    rep.passed = true;
    rep.vacuous = true;
    return rep;
  }
  return lower_report(std::move(context), n, -std::log(prob) / n, rhs);
}

std::string pair_label(const OutcomePair& pair) {
  return "young=" + pair.young.to_string() + " type=" + pair.type.to_string();
}

}  // namespace

DensityMatrix diagonal_reference(const DensityMatrix& rho, double tol) {
  if (rho.is_diagonal(tol)) return rho;
  std::cerr << "warning: reference state is not diagonal in the measurement basis; "
               "using its diagonal\n";
  return DensityMatrix::diagonal(rho.diagonal_entries());
}

double rate_r(std::span<const double> p_prime, std::span<const double> rho_prime_diag,
              std::span<const double> rho_diag) {
  if (p_prime.size() != rho_prime_diag.size() || rho_prime_diag.size() != rho_diag.size())
    throw ValidationError("rate_r: dimension mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < rho_diag.size(); ++i) {
    const double a = rho_prime_diag[i];
    if (a <= 0.0) continue;
    if (rho_diag[i] <= 0.0) return kInf;
    d += a * (std::log(a) - std::log(rho_diag[i]));
  }
  return d + shannon_entropy(rho_prime_diag) - shannon_entropy(p_prime);
}

double rate_r(const ProbabilityVector& p_prime, const DensityMatrix& rho_prime,
              const DensityMatrix& rho) {
  const auto rp = diagonal_reference(rho_prime).diagonal_entries();
  const auto r = diagonal_reference(rho).diagonal_entries();
  return rate_r(p_prime.entries(), rp, r);
}

double rate_r(const OutcomePair& pair, const DensityMatrix& rho) {
  const auto p = young_frequencies(pair.young);
  const auto rp = pair.type.probabilities();
  if (static_cast<Eigen::Index>(rp.size()) != rho.dim())
    throw ValidationError("rate_r: type length differs from the state dimension");
  std::vector<double> padded = p;
  padded.resize(rp.size(), 0.0);
  const auto r = rho.diagonal_entries();
  return rate_r(padded, rp, r);
}

SetSplit s_set_split(const DensityMatrix& rho_in, double r, int n, const SizeBudget& budget) {
  if (!(r > 0.0)) throw DomainError("s_set_split: r must be positive");
  const DensityMatrix rho = diagonal_reference(rho_in);
  SetSplit split;
  for (auto& pair : outcome_pairs(n, static_cast<int>(rho.dim()), budget)) {
    if (rate_r(pair, rho) <= r)
      split.inside.push_back(std::move(pair));
    else
      split.outside.push_back(std::move(pair));
  }
  return split;
}

namespace {

double tail_probability(const DensityMatrix& rho, double r, int n, const SizeBudget& budget) {
  const JointOutcomeDistribution dist = outcome_distribution(rho, n, budget);
  double tail = 0.0;
  for (const auto& e : dist.entries)
    if (rate_r(e.pair, rho) > r) tail += e.prob;
  return tail;
}

}  // namespace

BoundReport lemma1_check(const DensityMatrix& rho_in, double r, int n, const SizeBudget& budget,
                         double bound_scale) {
  if (!(r > 0.0)) throw DomainError("lemma1_check: r must be positive");
  const DensityMatrix rho = diagonal_reference(rho_in);
  const int d = static_cast<int>(rho.dim());
  const double tail = tail_probability(rho, r, n, budget);
  const double rhs =
      bound_scale * std::pow(n + 1.0, (d + 4.0) * (d - 1.0) / 2.0) * std::exp(-n * r);
  return upper_report("lemma1 rho=" + render(rho.diagonal_entries()) + " r=" + format_number(r),
                      n, tail, rhs);
}

double tail_exponent(const DensityMatrix& rho_in, double r, int n, const SizeBudget& budget) {
  const DensityMatrix rho = diagonal_reference(rho_in);
  const double tail = tail_probability(rho, r, n, budget);
  return tail > 0.0 ? -std::log(tail) / n : kInf;
}

BoundReport theorem1_check(const DensityMatrix& sigma, const DensityMatrix& rho_in,
                           const OutcomePair& pair, double s, int n, const SizeBudget& budget) {
  if (!(s > 0.0 && s < 1.0)) throw DomainError("theorem1_check: s must lie in (0,1)");
  const DensityMatrix rho = diagonal_reference(rho_in);
  const JointOutcomeDistribution dist = outcome_distribution(sigma, n, budget);
  const double phi = phi_sandwich(1.0 - s, sigma, rho);
  return theorem1_from(rho, pair, dist.prob(pair), phi, s, n,
                       "theorem1 " + pair_label(pair) + " s=" + format_number(s));
}

std::vector<BoundReport> theorem1_reports(const DensityMatrix& sigma, const DensityMatrix& rho_in,
                                          int n, const std::vector<double>& s_grid,
                                          const SizeBudget& budget, const std::string& label) {
  const DensityMatrix rho = diagonal_reference(rho_in);
  const JointOutcomeDistribution dist = outcome_distribution(sigma, n, budget);
  std::vector<double> phis;
  for (double s : s_grid) {
    if (!(s > 0.0 && s < 1.0)) throw DomainError("theorem1_reports: s must lie in (0,1)");
    phis.push_back(phi_sandwich(1.0 - s, sigma, rho));
  }
  std::vector<BoundReport> out;
  for (const auto& e : dist.entries) {
    for (std::size_t k = 0; k < s_grid.size(); ++k) {
      out.push_back(theorem1_from(rho, e.pair, e.prob, phis[k], s_grid[k], n,
                                  label + " " + pair_label(e.pair) +
                                      " s=" + format_number(s_grid[k])));
    }
  }
  return out;
}

ScanResult theorem2_scan(const DensityMatrix& sigma, const DensityMatrix& rho_in, double r,
                         const std::vector<int>& n_list, const SizeBudget& budget,
                         const ExponentOptions& options) {
  if (!(r > 0.0)) throw DomainError("theorem2_scan: r must be positive");
  if (n_list.empty()) throw ValidationError("theorem2_scan: empty n list");
  const DensityMatrix rho = diagonal_reference(rho_in);
  ScanResult result;
  result.limit_target = b_e_hat(r, rho, sigma, options).value;
  result.d_sigma_rho = relative_entropy(sigma, rho, options.support_tol);

  const std::vector<double> s_grid{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  std::vector<double> phis;
  for (double s : s_grid) phis.push_back(phi_sandwich(1.0 - s, sigma, rho, options.support_tol));

  for (int n : n_list) {
    const JointOutcomeDistribution dist = outcome_distribution(sigma, n, budget);
    ScanPoint point;
    point.n = n;
    const OutcomeProbability* dominant = nullptr;
    for (const auto& e : dist.entries) {
      if (rate_r(e.pair, rho) > r) continue;
      point.probability += e.prob;
      if (!dominant || e.prob > dominant->prob) dominant = &e;
    }
    point.exponent = point.probability > 0.0 ? -std::log(point.probability) / n : kInf;
    if (dominant) {
      // Best bound over the s grid for the dominant outcome.
      BoundReport best;
      for (std::size_t k = 0; k < s_grid.size(); ++k) {
        BoundReport rep = theorem1_from(rho, dominant->pair, dominant->prob, phis[k], s_grid[k], n, "");
        if (k == 0 || rep.rhs > best.rhs) best = rep;
      }
      best.context = "theorem2-floor r=" + format_number(r) + " " + pair_label(dominant->pair);
      point.floor = best;
    } else {
      point.floor = lower_report("theorem2-floor r=" + format_number(r) + " empty", n, kInf, -kInf);
      point.floor.vacuous = true;
    }
    result.points.push_back(point);
  }

  const double target = result.limit_target;
  result.final_distance = std::abs(result.points.back().exponent - target);
  for (std::size_t i = 1; i < result.points.size(); ++i) {
    const double before = std::abs(result.points[i - 1].exponent - target);
    const double after = std::abs(result.points[i].exponent - target);
    if (after <= before)
      ++result.steps_toward;
    else
      ++result.steps_away;
  }
  return result;
}

double classical_sanov_prob(const DensityMatrix& sigma, const TypeVector& type) {
  if (!sigma.is_diagonal()) throw ValidationError("classical_sanov_prob: sigma must be diagonal");
  if (type.dim() != sigma.dim()) throw ValidationError("classical_sanov_prob: dimension mismatch");
  const auto diag = sigma.diagonal_entries();
  double log_p = std::log(multinomial(type.counts()).convert_to<double>());
  for (int i = 0; i < type.dim(); ++i) {
    if (type[i] == 0) continue;
    if (diag[i] <= 0.0) return 0.0;
    log_p += type[i] * std::log(diag[i]);
  }
  return std::exp(log_p);
}

BigRational classical_sanov_prob(const std::vector<BigRational>& sigma_diag, const TypeVector& type) {
  if (static_cast<int>(sigma_diag.size()) != type.dim())
    throw ValidationError("classical_sanov_prob: dimension mismatch");
  BigRational p = BigRational(multinomial(type.counts()));
  for (int i = 0; i < type.dim(); ++i)
    for (int k = 0; k < type[i]; ++k) p *= sigma_diag[i];
  return p;
}

std::vector<StatePair> bundled_pairs(int d) {
  std::vector<StatePair> out;
  if (d == 2) {
    ComplexMatrix coherent(2, 2);
    coherent << 0.5, 0.2, 0.2, 0.5;
    ComplexMatrix twisted(2, 2);
    twisted << 0.3, Complex(0.0, 0.2), Complex(0.0, -0.2), 0.7;
    out.push_back({"self", DensityMatrix::diagonal({1.0 / 3, 2.0 / 3}),
                   DensityMatrix::diagonal({1.0 / 3, 2.0 / 3})});
    out.push_back({"diag-vs-mixed", DensityMatrix::diagonal({1.0 / 3, 2.0 / 3}),
                   DensityMatrix::maximally_mixed(2)});
    out.push_back({"diag-vs-diag", DensityMatrix::diagonal({0.2, 0.8}),
                   DensityMatrix::diagonal({0.6, 0.4})});
    out.push_back({"coherent-vs-mixed", DensityMatrix(coherent), DensityMatrix::maximally_mixed(2)});
    out.push_back({"twisted-vs-diag", DensityMatrix(twisted), DensityMatrix::diagonal({0.7, 0.3})});
  } else if (d == 3) {
    ComplexMatrix coherent(3, 3);
    coherent << 0.4, 0.2, 0.0, 0.2, 0.3, 0.1, 0.0, 0.1, 0.3;
    ComplexMatrix twisted(3, 3);
    twisted << 0.5, Complex(0.0, 0.2), 0.05, Complex(0.0, -0.2), 0.3, 0.0, 0.05, 0.0, 0.2;
    out.push_back({"self", DensityMatrix::diagonal({0.2, 0.3, 0.5}),
                   DensityMatrix::diagonal({0.2, 0.3, 0.5})});
    out.push_back({"diag-vs-mixed", DensityMatrix::diagonal({0.2, 0.3, 0.5}),
                   DensityMatrix::maximally_mixed(3)});
    out.push_back({"diag-vs-diag", DensityMatrix::diagonal({0.6, 0.3, 0.1}),
                   DensityMatrix::diagonal({0.2, 0.2, 0.6})});
    out.push_back({"coherent-vs-mixed", DensityMatrix(coherent), DensityMatrix::maximally_mixed(3)});
    out.push_back({"twisted-vs-diag", DensityMatrix(twisted),
                   DensityMatrix::diagonal({0.4, 0.35, 0.25})});
  } else {
    throw ValidationError("bundled_pairs: only d = 2 and d = 3 are bundled");
  }
  return out;
}

std::vector<DensityMatrix> bundled_rhos(int d) {
  if (d == 2) {
    return {DensityMatrix::diagonal({1.0 / 3, 2.0 / 3}), DensityMatrix::maximally_mixed(2),
            DensityMatrix::diagonal({0.1, 0.9}), DensityMatrix::diagonal({0.25, 0.75}),
            DensityMatrix::diagonal({0.4, 0.6})};
  }
  if (d == 3) {
    return {DensityMatrix::diagonal({0.2, 0.3, 0.5}), DensityMatrix::maximally_mixed(3),
            DensityMatrix::diagonal({0.1, 0.1, 0.8}), DensityMatrix::diagonal({0.5, 0.25, 0.25}),
            DensityMatrix::diagonal({0.6, 0.3, 0.1})};
  }
  throw ValidationError("bundled_rhos: only d = 2 and d = 3 are bundled");
}

VerifyResult run_verification(const VerifyOptions& options) {
  for (int n : options.n_list) check_budget(n, options.d, options.budget);
  VerifyResult result;
  const auto rhos = bundled_rhos(options.d);
  for (int n : options.n_list) {
    for (std::size_t k = 0; k < rhos.size(); ++k) {
      for (double r : options.lemma_rates) {
        BoundReport rep = lemma1_check(rhos[k], r, n, options.budget, options.bound_scale);
        result.reports.push_back(std::move(rep));
      }
    }
  }
  for (const auto& pair : bundled_pairs(options.d)) {
    for (int n : options.n_list) {
      auto reps = theorem1_reports(pair.sigma, pair.rho, n, options.s_grid, options.budget,
                                   "theorem1 " + pair.name);
      for (auto& rep : reps) result.reports.push_back(std::move(rep));
    }
  }
  for (const auto& rep : result.reports) {
    ++result.summary.total;
    if (rep.passed) ++result.summary.passed;
    if (rep.vacuous) ++result.summary.vacuous;
  }
  return result;
}

}  // namespace qsanov
