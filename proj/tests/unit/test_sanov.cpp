#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qsanov/divergences.hpp"
#include "qsanov/errors.hpp"
#include "qsanov/sanov.hpp"

using namespace qsanov;

namespace {

double h(const std::vector<double>& p) {
  double out = 0.0;
  for (double x : p)
    if (x > 0) out -= x * std::log(x);
  return out;
}

const DensityMatrix kThirds = DensityMatrix::diagonal({1.0 / 3, 2.0 / 3});

}  // namespace

TEST(Rate, ScalarExamples) {
  const std::vector<double> rho{0.5, 0.5}, rho_prime{0.25, 0.75};
  const std::vector<double> sorted{0.75, 0.25}, corner{1.0, 0.0};
  const double d = 0.25 * std::log(0.5) + 0.75 * std::log(1.5);
  EXPECT_NEAR(rate_r(sorted, rho_prime, rho), d, 1e-15);
  EXPECT_NEAR(rate_r(sorted, rho_prime, rho), 0.130812, 1e-6);
  EXPECT_NEAR(rate_r(corner, rho_prime, rho), d + h(rho_prime), 1e-15);
  EXPECT_NEAR(rate_r(corner, rho_prime, rho), 0.693147, 1e-6);
  const std::vector<double> self{2.0 / 3, 1.0 / 3}, diag{1.0 / 3, 2.0 / 3};
  EXPECT_NEAR(rate_r(self, diag, diag), 0.0, 1e-15);
  const std::vector<double> charged{0.5, 0.5}, pure{1.0, 0.0};
  EXPECT_TRUE(std::isinf(rate_r(charged, charged, pure)));
}

TEST(Rate, OutcomePairForm) {
  const OutcomePair pair{YoungIndex({3, 1}), TypeVector({1, 3})};
  const std::vector<double> p{0.75, 0.25}, rp{0.25, 0.75}, r{0.5, 0.5};
  EXPECT_NEAR(rate_r(pair, DensityMatrix::maximally_mixed(2)), rate_r(p, rp, r), 1e-15);
  EXPECT_NEAR(rate_r(ProbabilityVector(p), DensityMatrix::diagonal(rp), DensityMatrix::maximally_mixed(2)),
              rate_r(p, rp, r), 1e-15);
}

TEST(Rate, NonnegativeOnOutcomes) {
  for (int d = 2; d <= 3; ++d)
    for (int n = 1; n <= 6; ++n)
      for (const auto& rho : bundled_rhos(d))
        for (const auto& pair : outcome_pairs(n, d)) {
          const double v = rate_r(pair, rho);
          EXPECT_GE(v, -1e-9);
          if (std::abs(v) < 1e-12) {
            // zero rate only when lambda/n is the sorted type and the type is rho itself
            auto sorted = pair.type.sorted_counts();
            EXPECT_EQ(sorted, pair.young.parts());
            const auto diag = rho.diagonal_entries();
            for (int i = 0; i < d; ++i) EXPECT_NEAR(pair.type[i] / double(n), diag[i], 1e-12);
          }
        }
}

TEST(Split, PartitionsOutcomeSet) {
  const auto rho = DensityMatrix::maximally_mixed(2);
  const auto all = outcome_pairs(4, 2);
  const auto loose = s_set_split(rho, 1e6, 4);
  EXPECT_TRUE(loose.outside.empty());
  EXPECT_EQ(loose.inside.size(), all.size());
  const auto tight = s_set_split(rho, 1e-12, 4);
  EXPECT_EQ(tight.inside.size() + tight.outside.size(), all.size());
  ASSERT_EQ(tight.inside.size(), 1u);
  EXPECT_EQ(tight.inside[0].young.parts(), (std::vector<int>{2, 2}));
  EXPECT_EQ(tight.inside[0].type.counts(), (std::vector<int>{2, 2}));
  const auto mid = s_set_split(rho, 0.2, 4);
  for (const auto& p : mid.inside) EXPECT_LE(rate_r(p, rho), 0.2);
  for (const auto& p : mid.outside) EXPECT_GT(rate_r(p, rho), 0.2);
}

TEST(TailBound, PassesOnGrid) {
  for (int n = 2; n <= 7; ++n) {
    const auto rep = lemma1_check(kThirds, 0.1, n);
    EXPECT_TRUE(rep.passed) << "n=" << n << " lhs=" << rep.lhs << " rhs=" << rep.rhs;
    EXPECT_EQ(rep.relation, "<=");
  }
  for (int n = 2; n <= 7; ++n)
    for (const auto& rho : bundled_rhos(2))
      for (double r : {0.05, 0.1, 0.2, 0.5}) EXPECT_TRUE(lemma1_check(rho, r, n).passed);
}

TEST(TailBound, EmptyTailAndFailureWiring) {
  const auto rep = lemma1_check(kThirds, 100.0, 4);
  EXPECT_EQ(rep.lhs, 0.0);
  EXPECT_TRUE(rep.passed);
  EXPECT_FALSE(lemma1_check(kThirds, 0.05, 4, {}, 1e-12).passed);
}

TEST(TailBound, TailExponentTrend) {
  double prev = 0.0;
  for (int n = 2; n <= 7; ++n) {
    const double e = tail_exponent(kThirds, 0.1, n);
    EXPECT_GT(e, 0.0);
    prev = e;
  }
  EXPECT_LT(std::abs(prev - 0.1), 0.5);  // loose sanity; the acceptance run reports the trend
}

TEST(OutcomeBound, BundledPairsPass) {
  for (int d = 2; d <= 3; ++d) {
    const int n_max = d == 2 ? 6 : 4;
    const std::vector<double> s_grid{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    for (const auto& pair : bundled_pairs(d))
      for (int n = 2; n <= n_max; ++n)
        for (const auto& rep : theorem1_reports(pair.sigma, pair.rho, n, s_grid)) {
          EXPECT_TRUE(rep.passed) << pair.name << " n=" << n << " lhs=" << rep.lhs << " rhs=" << rep.rhs;
          EXPECT_EQ(rep.relation, ">=");
        }
  }
}

TEST(OutcomeBound, ClassicalOracleForCommutingPair) {
  const auto sigma = DensityMatrix::diagonal({0.2, 0.8});
  const auto rho = DensityMatrix::diagonal({0.6, 0.4});
  const int n = 4, d = 2;
  for (const auto& pair : outcome_pairs(n, d)) {
    // Tr sigma^n T = prod sigma_i^{c_i} * rank(T) for diagonal sigma.
    const double rank = joint_projector(pair.young, pair.type, d).matrix().trace().real();
    const double prob = std::pow(0.2, pair.type[0]) * std::pow(0.8, pair.type[1]) * rank;
    const double rn = rate_r(pair, rho);
    for (double s : {0.25, 0.5, 0.75}) {
      const double phi = std::log(std::pow(0.2, s) * std::pow(0.6, 1 - s) + std::pow(0.8, s) * std::pow(0.4, 1 - s));
      const double rhs = (-(1 - s) * rn - phi) / s - d * (d + 3) / (2.0 * s * n) * std::log(n + 1.0);
      const auto rep = theorem1_check(sigma, rho, pair, s, n);
      EXPECT_NEAR(rep.lhs, -std::log(prob) / n, 1e-9);
      EXPECT_NEAR(rep.rhs, rhs, 1e-9);
      EXPECT_TRUE(rep.passed);
    }
  }
}

TEST(OutcomeBound, VacuousForImpossibleOutcome) {
  const auto sigma = DensityMatrix::diagonal({1.0, 0.0});
  const auto rep = theorem1_check(sigma, DensityMatrix::maximally_mixed(2),
                                  {YoungIndex({1, 1}), TypeVector({1, 1})}, 0.5, 2);
  EXPECT_TRUE(rep.vacuous);
  EXPECT_TRUE(std::isinf(rep.lhs));
  EXPECT_TRUE(rep.passed);
}

TEST(ClassicalSanov, Examples) {
  EXPECT_NEAR(classical_sanov_prob(DensityMatrix::maximally_mixed(2), TypeVector({1, 1})), 0.5, 1e-15);
  EXPECT_NEAR(classical_sanov_prob(kThirds, TypeVector({1, 1})), 4.0 / 9, 1e-15);
  EXPECT_EQ(classical_sanov_prob(DensityMatrix::diagonal({1.0, 0.0}), TypeVector({0, 2})), 0.0);
}

TEST(ClassicalSanov, ExactSumIsOne) {
  const std::vector<BigRational> sigma{BigRational(1, 6), BigRational(1, 3), BigRational(1, 2)};
  for (int n = 1; n <= 10; ++n) {
    BigRational total = 0;
    for (const auto& type : enumerate_types(n, 3)) total += classical_sanov_prob(sigma, type);
    EXPECT_EQ(total, BigRational(1));
  }
}

TEST(ClassicalSanov, MatchesOperatorTrace) {
  const auto sigma = DensityMatrix::diagonal({0.2, 0.3, 0.5});
  const int n = 3;
  const ComplexMatrix big = tensor_power(sigma, n).matrix();
  for (const auto& type : enumerate_types(n, 3)) {
    const double trace = (big * type_projector(type, 3).matrix()).trace().real();
    EXPECT_NEAR(classical_sanov_prob(sigma, type), trace, 1e-10);
  }
}

TEST(RateSearch, RateExistsForNinetyPercentOfDHat) {
  for (const auto& pair : bundled_pairs(2)) {
    if (pair.name == "self") continue;
    const double dh = d_hat(pair.rho, pair.sigma);
    const double target = 0.9 * dh;
    bool found = false;
    for (int k = 1; k <= 40 && !found; ++k) {
      const double r = std::pow(10.0, -k / 4.0);
      found = b_e_hat(r, pair.rho, pair.sigma).value >= target;
    }
    EXPECT_TRUE(found) << pair.name;
  }
}

TEST(Scan, SingletonAndTarget) {
  const auto scan = theorem2_scan(DensityMatrix::diagonal({0.2, 0.8}), DensityMatrix::diagonal({0.6, 0.4}),
                                  0.05, {4});
  ASSERT_EQ(scan.points.size(), 1u);
  EXPECT_EQ(scan.steps_toward + scan.steps_away, 0);
  EXPECT_NEAR(scan.limit_target,
              b_e_hat(0.05, DensityMatrix::diagonal({0.6, 0.4}), DensityMatrix::diagonal({0.2, 0.8})).value,
              0.0);
  EXPECT_TRUE(scan.points[0].floor.passed);
}

TEST(Scan, PureTrueStateHasFiniteTarget) {
  // true state pure, alternative maximally mixed: D(sigma||rho) is infinite, the target is log 2
  const auto pure = DensityMatrix::diagonal({1.0, 0.0});
  const auto half = DensityMatrix::maximally_mixed(2);
  const auto scan = theorem2_scan(half, pure, 0.05, {2, 3, 4});
  EXPECT_NEAR(scan.limit_target, std::log(2.0), 1e-6);
  EXPECT_TRUE(std::isinf(scan.d_sigma_rho));
  for (const auto& p : scan.points) EXPECT_TRUE(p.floor.passed);
}

TEST(Scan, CommutingDiagnostics) {
  const auto sigma = DensityMatrix::diagonal({0.2, 0.8});
  const auto rho = DensityMatrix::diagonal({0.6, 0.4});
  const auto scan = theorem2_scan(sigma, rho, 0.05, {2, 3, 4, 5, 6, 7});
  ASSERT_EQ(scan.points.size(), 6u);
  for (const auto& p : scan.points) {
    EXPECT_TRUE(p.floor.passed);
    EXPECT_GE(p.exponent, 0.0);
  }
  // finite n is far from the limit here; only the bookkeeping is pinned down
  EXPECT_NEAR(scan.final_distance, std::abs(scan.points.back().exponent - scan.limit_target), 1e-15);
  EXPECT_NEAR(scan.limit_target, b_e_hat(0.05, rho, sigma).value, 1e-12);
}

TEST(Verify, SummaryCountsEverything) {
  VerifyOptions opts;
  const auto result = run_verification(opts);
  EXPECT_EQ(result.summary.total, result.reports.size());
  EXPECT_EQ(result.summary.failed(), 0u);
  opts.bound_scale = 1e-12;
  EXPECT_GT(run_verification(opts).summary.failed(), 0u);
}

TEST(DiagonalReference, PinchesOffDiagonals) {
  ComplexMatrix m(2, 2);
  m << 0.5, 0.2, 0.2, 0.5;
  const auto pinched = diagonal_reference(DensityMatrix(m));
  EXPECT_TRUE(pinched.is_diagonal(0.0));
  EXPECT_NEAR(pinched.matrix()(0, 0).real(), 0.5, 0.0);
}
