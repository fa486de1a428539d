#include "qsanov/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "qsanov/divergences.hpp"
#include "qsanov/errors.hpp"

namespace qsanov {

namespace {

constexpr int kGridCertificatePoints = 99;
constexpr double kCertificateSlack = 1e-8;

double domain_upper(const DensityMatrix& rho, const DensityMatrix& sigma,
                    const ExponentOptions& options) {
  const double d = relative_entropy(sigma, rho, options.support_tol);
  return std::isinf(d) ? options.r_max : d;
}

// Brent maximisation of f over [lo, hi]; returns (argmax, max).
template <typename F>
std::pair<double, double> maximize(F f, double lo, double hi) {
  constexpr int kBits = std::numeric_limits<double>::digits / 2 + 4;
  std::uintmax_t max_iter = 200;
  auto [x, neg] = boost::math::tools::brent_find_minima(
      [&](double x) { return -f(x); }, lo, hi, kBits, max_iter);
  return {x, -neg};
}

// r(s) = s phi'(s) - phi(s): the rate whose stationary point is s.
double rate_at(double s, const DensityMatrix& rho, const DensityMatrix& sigma,
               const ExponentOptions& options) {
  return s * phi_reverse_derivative(s, rho, sigma, options) - phi_reverse(s, rho, sigma, options);
}

// Above this, r(s_lower) reflects lim_{s->0} phi(1-s|sigma||rho) < 0 rather than curvature.
constexpr double kDivergentEdgeRate = 1e-8;

}  // namespace

double phi_reverse(double s, const DensityMatrix& rho, const DensityMatrix& sigma,
                   const ExponentOptions& options) {
  return phi_sandwich(1.0 - s, sigma, rho, options.support_tol);
}

double phi_reverse_derivative(double s, const DensityMatrix& rho, const DensityMatrix& sigma,
                              const ExponentOptions& options) {
  const double h = std::min({options.fd_step, 0.5 * s, 0.5 * (1.0 - s)});
  auto central = [&](double step) {
    return (phi_reverse(s + step, rho, sigma, options) - phi_reverse(s - step, rho, sigma, options)) /
           (2.0 * step);
  };
  const double coarse = central(h);
  if (h == options.fd_step) return coarse;
  // Shrunken step near an endpoint: recover the lost order with one Richardson level.
  return (4.0 * central(0.5 * h) - coarse) / 3.0;
}

double solve_s_of_r(double r, const DensityMatrix& rho, const DensityMatrix& sigma,
                    const ExponentOptions& options) {
  const double upper = domain_upper(rho, sigma, options);
  if (!(r > 0.0 && r < upper)) {
    std::ostringstream os;
    os << "solve_s_of_r: r = " << r << " outside (0, " << upper << ")";
    throw DomainError(os.str());
  }
  auto g = [&](double s) {
    return s * phi_reverse_derivative(s, rho, sigma, options) - phi_reverse(s, rho, sigma, options) -
           r;
  };

  double lo = options.s_lower;
  double hi = options.s_upper;
  double g_lo = g(lo);
  double g_hi = g(hi);
  if (!(g_lo < 0.0 && g_hi > 0.0)) {
    // Scan for a sign change; report the pattern if there is none.
    std::string pattern;
    bool found = false;
    double prev_s = lo, prev_g = g_lo;
    pattern += prev_g < 0.0 ? '-' : '+';
    for (int k = 1; k <= 64 && !found; ++k) {
      const double s = lo + (hi - lo) * k / 64.0;
      const double gs = g(s);
      pattern += gs < 0.0 ? '-' : '+';
      if (prev_g < 0.0 && gs >= 0.0) {
        lo = prev_s;
        hi = s;
        g_lo = prev_g;
        g_hi = gs;
        found = true;
      }
      prev_s = s;
      prev_g = gs;
    }
    if (!found) {
      std::ostringstream os;
      os << "solve_s_of_r: no sign change of the stationarity residual for r = " << r
         << "; scanned pattern " << pattern;
      throw NumericError(os.str());
    }
  }

  std::uintmax_t max_iter = 200;
  boost::math::tools::eps_tolerance<double> tol(std::numeric_limits<double>::digits - 3);
  auto [a, b] = boost::math::tools::toms748_solve(g, lo, hi, g_lo, g_hi, tol, max_iter);
  return 0.5 * (a + b);
}

double b_e_objective(double s, double r, const DensityMatrix& rho, const DensityMatrix& sigma,
                     const ExponentOptions& options) {
  return (-(1.0 - s) * r - phi_reverse(s, rho, sigma, options)) / s;
}

BeHat b_e_hat(double r, const DensityMatrix& rho, const DensityMatrix& sigma,
              const ExponentOptions& options) {
  if (!(r > 0.0)) {
    std::ostringstream os;
    os << "b_e_hat: r = " << r << " must be positive";
    throw DomainError(os.str());
  }
  const double d_sigma_rho = relative_entropy(sigma, rho, options.support_tol);
  if (r >= d_sigma_rho) return {0.0, 1.0, true};

  auto objective = [&](double s) { return b_e_objective(s, r, rho, sigma, options); };

  double lo = options.s_lower;
  double hi = options.s_upper;
  BeHat best{-std::numeric_limits<double>::infinity(), 0.5, false};
  // The stationary point can sit outside the bracket; clamp the seed there.
  const double r_low = rate_at(options.s_lower, rho, sigma, options);
  const double r_high = rate_at(options.s_upper, rho, sigma, options);
  if (r < r_low && r_low > kDivergentEdgeRate) {
    // phi(1-s|sigma||rho) stays below zero as s -> 0, so the objective blows up like 1/s.
    return {std::numeric_limits<double>::infinity(), 0.0, true};
  }
  double seed = 0.5;
  if (r <= r_low)
    seed = options.s_lower;
  else if (r >= r_high)
    seed = options.s_upper;
  else if (r < domain_upper(rho, sigma, options))
    seed = solve_s_of_r(r, rho, sigma, options);
  best = {objective(seed), seed, false};
  lo = std::max(lo, seed - 0.05);
  hi = std::min(hi, seed + 0.05);
  auto [s_refined, refined] = maximize(objective, lo, hi);
  if (refined > best.value) best = {refined, s_refined, false};

  // Grid certificate: no grid point may beat the returned value.
  double grid_best = -std::numeric_limits<double>::infinity();
  double grid_arg = 0.5;
  for (int k = 1; k <= kGridCertificatePoints; ++k) {
    const double s = k / static_cast<double>(kGridCertificatePoints + 1);
    const double v = objective(s);
    if (v > grid_best) {
      grid_best = v;
      grid_arg = s;
    }
  }
  if (grid_best > best.value + kCertificateSlack) {
    const double step = 1.0 / (kGridCertificatePoints + 1);
    auto [s2, v2] = maximize(objective, std::max(options.s_lower, grid_arg - step),
                             std::min(options.s_upper, grid_arg + step));
    best = v2 > grid_best ? BeHat{v2, s2, false} : BeHat{grid_best, grid_arg, false};
  }
  // The s -> 1 end of the supremum contributes 0.
  if (best.value < 0.0) best = {0.0, 1.0, true};
  return best;
}

double legendre_dual_objective(double r, double s0, const DensityMatrix& rho,
                               const DensityMatrix& sigma, const ExponentOptions& options) {
  const double s = solve_s_of_r(r, rho, sigma, options);
  return -(1.0 - s0) * r + s0 * ((1.0 - s) * r + phi_reverse(s, rho, sigma, options)) / s;
}

LegendreDual legendre_dual_max(double r0, const DensityMatrix& rho, const DensityMatrix& sigma,
                               const ExponentOptions& options) {
  const double upper = domain_upper(rho, sigma, options);
  if (!(r0 > 0.0 && r0 < upper)) {
    std::ostringstream os;
    os << "legendre_dual_max: r0 = " << r0 << " outside (0, " << upper << ")";
    throw DomainError(os.str());
  }
  const double s0 = solve_s_of_r(r0, rho, sigma, options);
  auto objective = [&](double r) { return legendre_dual_objective(r, s0, rho, sigma, options); };
  // Search over the rates whose stationary points lie inside the s bracket.
  const double r_lo = std::max(rate_at(options.s_lower, rho, sigma, options), 1e-6 * upper);
  const double r_hi = std::min(rate_at(options.s_upper, rho, sigma, options), (1.0 - 1e-6) * upper);
  auto [arg, value] = maximize(objective, r_lo, r_hi);
  return {value, arg};
}

ExponentCurve exponent_curve(const DensityMatrix& rho, const DensityMatrix& sigma,
                             const std::vector<double>& r_grid, const ExponentOptions& options) {
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    if (!(r_grid[i] > 0.0) || (i > 0 && !(r_grid[i] > r_grid[i - 1])))
      throw ValidationError("exponent_curve: r grid must be positive and strictly ascending");
  }
  ExponentCurve curve;
  curve.r_grid = r_grid;
  try {
    curve.d_hat = d_hat(rho, sigma, options.support_tol);
  } catch (const SupportError&) {
    curve.d_hat = std::numeric_limits<double>::infinity();
  }
  curve.d_sigma_rho = relative_entropy(sigma, rho, options.support_tol);
  for (double r : r_grid) {
    const BeHat point = b_e_hat(r, rho, sigma, options);
    curve.b_values.push_back(point.value);
    curve.s_opt.push_back(point.s_star);
  }
  return curve;
}

}  // namespace qsanov
