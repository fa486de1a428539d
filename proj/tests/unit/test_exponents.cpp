#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qsanov/divergences.hpp"
#include "qsanov/errors.hpp"
#include "qsanov/exponents.hpp"
#include "random_states.hpp"

using namespace qsanov;
using qsanov::testing::random_state;

namespace {

// Classical curve s -> log sum sigma_i^s rho_i^{1-s} and its exact derivative.
struct ClassicalCurve {
  std::vector<double> sigma, rho;

  double phi(double s) const {
    double z = 0.0;
    for (std::size_t i = 0; i < sigma.size(); ++i) z += std::pow(sigma[i], s) * std::pow(rho[i], 1 - s);
    return std::log(z);
  }
  double dphi(double s) const {
    double z = 0.0, dz = 0.0;
    for (std::size_t i = 0; i < sigma.size(); ++i) {
      const double w = std::pow(sigma[i], s) * std::pow(rho[i], 1 - s);
      z += w;
      dz += w * (std::log(sigma[i]) - std::log(rho[i]));
    }
    return dz / z;
  }
  double s_of_r(double r) const {
    double lo = 1e-12, hi = 1 - 1e-12;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (mid * dphi(mid) - phi(mid) - r < 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }
  double b_e_grid(double r) const {
    double best = 0.0;  // the s -> 1 end contributes 0
    for (int k = 1; k < 10000; ++k) {
      const double s = k / 10000.0;
      best = std::max(best, (-(1 - s) * r - phi(s)) / s);
    }
    return best;
  }
};

const ClassicalCurve kThirds{{1.0 / 3, 2.0 / 3}, {0.5, 0.5}};

DensityMatrix sigma_thirds() { return DensityMatrix::diagonal({1.0 / 3, 2.0 / 3}); }
DensityMatrix rho_half() { return DensityMatrix::maximally_mixed(2); }

DensityMatrix coherent_sigma() {
  ComplexMatrix m(2, 2);
  m << 0.5, 0.2, 0.2, 0.5;
  return DensityMatrix(m);
}

}  // namespace

TEST(SOfR, ClassicalRootFinder) {
  const double s = solve_s_of_r(0.05, rho_half(), sigma_thirds());
  EXPECT_NEAR(s, kThirds.s_of_r(0.05), 1e-6);
}

TEST(SOfR, ResidualOfStationarity) {
  for (double r : {0.01, 0.03, 0.05}) {
    const double s = solve_s_of_r(r, rho_half(), sigma_thirds());
    const double residual = s * kThirds.dphi(s) - kThirds.phi(s) - r;
    EXPECT_LE(std::abs(residual), 1e-8);
  }
}

TEST(SOfR, VanishesWithRateAndIsMonotone) {
  // Near r = 0 the root behaves like sqrt(2 r / phi''(0)), so how small s(1e-4) is depends on
  // the pair's curvature; the limit itself is checked further down the scale.
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rho = random_state(rng, 3);
    const auto sigma = random_state(rng, 3);
    double prev = 1.0;
    for (int k = 2; k <= 8; ++k) {
      const double s = solve_s_of_r(std::pow(10.0, -k), rho, sigma);
      EXPECT_LT(s, prev);
      prev = s;
    }
    EXPECT_LT(prev, 0.05);
    const double dsr = relative_entropy(sigma, rho);
    prev = 0.0;
    for (int k = 1; k <= 8; ++k) {
      const double s = solve_s_of_r(dsr * k / 10.0, rho, sigma);
      EXPECT_GE(s, prev - 1e-8);
      prev = s;
    }
  }
  // the commuting pair used for the classical oracle is comfortably inside the 0.05 mark
  EXPECT_LT(solve_s_of_r(1e-4, rho_half(), sigma_thirds()), 0.05);
}

TEST(SOfR, DomainErrors) {
  const double dsr = relative_entropy(sigma_thirds(), rho_half());
  EXPECT_THROW(solve_s_of_r(0.0, rho_half(), sigma_thirds()), DomainError);
  EXPECT_THROW(solve_s_of_r(dsr * 1.01, rho_half(), sigma_thirds()), DomainError);
}

TEST(BeHat, ClassicalGridOracle) {
  for (double r : {0.005, 0.02, 0.05}) {
    const BeHat b = b_e_hat(r, rho_half(), sigma_thirds());
    EXPECT_NEAR(b.value, kThirds.b_e_grid(r), 1e-6) << "r = " << r;
  }
}

TEST(BeHat, ZeroRegionIsExact) {
  const double dsr = relative_entropy(sigma_thirds(), rho_half());
  const BeHat b = b_e_hat(2 * dsr, rho_half(), sigma_thirds());
  EXPECT_EQ(b.value, 0.0);
  EXPECT_TRUE(b.at_boundary);
  EXPECT_EQ(b_e_hat(dsr, rho_half(), sigma_thirds()).value, 0.0);
}

TEST(BeHat, StationaryValueAgrees) {
  std::mt19937_64 rng(2);
  std::vector<std::pair<DensityMatrix, DensityMatrix>> pairs{
      {rho_half(), sigma_thirds()}, {rho_half(), coherent_sigma()}};
  pairs.emplace_back(random_state(rng, 3), random_state(rng, 3));
  for (const auto& [rho, sigma] : pairs) {
    const double dsr = relative_entropy(sigma, rho);
    for (double frac : {0.1, 0.3, 0.6}) {
      const double r = frac * dsr;
      const double s = solve_s_of_r(r, rho, sigma);
      const double stationary = (-(1 - s) * r - phi_reverse(s, rho, sigma)) / s;
      EXPECT_NEAR(b_e_hat(r, rho, sigma).value, stationary, 1e-7);
    }
  }
}

TEST(BeHat, GridCertificate) {
  std::mt19937_64 rng(3);
  const auto rho = random_state(rng, 3);
  const auto sigma = random_state(rng, 3);
  const double r = 0.2 * relative_entropy(sigma, rho);
  const double value = b_e_hat(r, rho, sigma).value;
  for (int k = 1; k <= 99; ++k) EXPECT_LE(b_e_objective(k / 100.0, r, rho, sigma), value + 1e-8);
}

TEST(BeHat, ApproachesDHatAsRateVanishes) {
  // d_hat - B_e(r) ~ sqrt(2 r phi''(0)): nondecreasing as r falls, and the gap closes like sqrt(r).
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 5; ++trial) {
    const auto rho = random_state(rng, 2);
    const auto sigma = random_state(rng, 2);
    const double dh = d_hat(rho, sigma);
    double prev = -1.0;
    for (int k = 1; k <= 8; ++k) {
      const double r = std::pow(10.0, -k);
      if (r >= relative_entropy(sigma, rho)) continue;
      const double v = b_e_hat(r, rho, sigma).value;
      EXPECT_GE(v, prev - 1e-9);
      prev = v;
    }
    EXPECT_LE(prev, dh + 1e-6);
    EXPECT_NEAR(prev, dh, 1e-3);
    const double g4 = dh - b_e_hat(1e-4, rho, sigma).value;
    const double g6 = dh - b_e_hat(1e-6, rho, sigma).value;
    EXPECT_NEAR(g4 / g6, 10.0, 1.5);
  }
}

TEST(BeHat, DivergentEdgeIsInfinite) {
  // alternative pure, true state maximally mixed: sigma^n never lands near rho
  const auto pure = DensityMatrix::diagonal({1.0, 0.0});
  const auto half = DensityMatrix::maximally_mixed(2);
  EXPECT_TRUE(std::isinf(b_e_hat(0.05, half, pure).value));
  EXPECT_EQ(b_e_hat(std::log(2.0), half, pure).value, 0.0);
  // roles swapped: the supremum sits at the s -> 1 end and equals log 2
  EXPECT_NEAR(b_e_hat(0.05, pure, half).value, std::log(2.0), 1e-6);
}

TEST(LegendreDual, RecoversPhi) {
  for (double r0 : {0.02, 0.05}) {
    const auto dual = legendre_dual_max(r0, rho_half(), sigma_thirds());
    const double s0 = solve_s_of_r(r0, rho_half(), sigma_thirds());
    EXPECT_NEAR(dual.max_value, kThirds.phi(s0), 1e-6);
    EXPECT_NEAR(dual.argmax_r, r0, 1e-4);
  }
}

TEST(LegendreDual, ObjectiveIsConcave) {
  const double r0 = 0.05;
  const double s0 = solve_s_of_r(r0, rho_half(), sigma_thirds());
  const double dsr = relative_entropy(sigma_thirds(), rho_half());
  std::vector<double> values;
  for (int k = 1; k < 40; ++k)
    values.push_back(legendre_dual_objective(dsr * k / 40.0, s0, rho_half(), sigma_thirds()));
  for (std::size_t i = 1; i + 1 < values.size(); ++i)
    EXPECT_LE(values[i + 1] - 2 * values[i] + values[i - 1], 1e-9);
}

TEST(ExponentCurve, Invariants) {
  std::mt19937_64 rng(5);
  const auto rho = random_state(rng, 2);
  const auto sigma = random_state(rng, 2);
  const double dsr = relative_entropy(sigma, rho);
  std::vector<double> grid;
  for (int k = 1; k <= 30; ++k) grid.push_back(1.2 * dsr * k / 30.0);
  const auto curve = exponent_curve(rho, sigma, grid);
  ASSERT_EQ(curve.b_values.size(), grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_GE(curve.b_values[i], 0.0);
    EXPECT_LE(curve.b_values[i], curve.d_hat + 1e-6);
    if (i > 0) {
      EXPECT_LE(curve.b_values[i], curve.b_values[i - 1] + 1e-12);
      if (grid[i] < dsr) {
        EXPECT_GE(curve.s_opt[i] - curve.s_opt[i - 1], -1e-8);
      }
    }
    if (grid[i] >= dsr) {
      EXPECT_EQ(curve.b_values[i], 0.0);
    }
  }
  const auto single = exponent_curve(rho, sigma, {grid[3]});
  EXPECT_EQ(single.b_values[0], b_e_hat(grid[3], rho, sigma).value);
  EXPECT_THROW(exponent_curve(rho, sigma, {0.2, 0.1}), ValidationError);
}

TEST(ExponentCurve, CommutingHitsZero) {
  const double dsr = relative_entropy(sigma_thirds(), rho_half());
  const auto curve = exponent_curve(rho_half(), sigma_thirds(), {0.5 * dsr, dsr, 1.5 * dsr});
  EXPECT_GT(curve.b_values[0], 0.0);
  EXPECT_EQ(curve.b_values[1], 0.0);
  EXPECT_EQ(curve.b_values[2], 0.0);
}
