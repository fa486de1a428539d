#pragma once

// Exponent calculus for the rate-r ball: the Legendre-type transform
//
//   B_e(r|rho||sigma) = sup_{s in (0,1)} (-(1-s) r - phi(1-s|sigma||rho)) / s,
//
// its stationary point s(r), and the dual identity that recovers phi from B_e.

#include <vector>

#include "qsanov/spectral.hpp"

namespace qsanov {

struct ExponentOptions {
  double fd_step = 1e-5;       // central-difference step for d/ds phi(1-s|sigma||rho)
  double s_lower = 1e-6;       // optimisation bracket for s
  double s_upper = 1.0 - 1e-6;
  double r_max = 50.0;         // domain cap when D(sigma||rho) is infinite
  double support_tol = kDefaultSupportTol;
};

/// s -> phi(1-s|sigma||rho), the convex curve every exponent is built from.
double phi_reverse(double s, const DensityMatrix& rho, const DensityMatrix& sigma,
                   const ExponentOptions& options = {});

/// d/ds phi(1-s|sigma||rho) by central differences; the step shrinks near
/// the ends of (0,1) so both stencil points stay inside.
double phi_reverse_derivative(double s, const DensityMatrix& rho, const DensityMatrix& sigma,
                              const ExponentOptions& options = {});

/// Root s(r) of s * phi'(s) = r + phi(s) with phi(s) = phi(1-s|sigma||rho).
/// Requires 0 < r < D(sigma||rho) (or r < r_max when that is infinite).
double solve_s_of_r(double r, const DensityMatrix& rho, const DensityMatrix& sigma,
                    const ExponentOptions& options = {});

/// Objective of the supremum at a fixed s.
double b_e_objective(double s, double r, const DensityMatrix& rho, const DensityMatrix& sigma,
                     const ExponentOptions& options = {});

struct BeHat {
  double value = 0.0;
  double s_star = 1.0;
  bool at_boundary = false;  // r >= D(sigma||rho): value is exactly 0, s_star = 1
};

BeHat b_e_hat(double r, const DensityMatrix& rho, const DensityMatrix& sigma,
              const ExponentOptions& options = {});

struct LegendreDual {
  double max_value = 0.0;
  double argmax_r = 0.0;
};

/// Maximises -(1-s(r0)) r + s(r0) ((1-s(r)) r + phi(1-s(r)|sigma||rho)) / s(r)
/// over r in (0, D(sigma||rho)).
LegendreDual legendre_dual_max(double r0, const DensityMatrix& rho, const DensityMatrix& sigma,
                               const ExponentOptions& options = {});

/// The dual objective at a single r (exposed for concavity checks).
double legendre_dual_objective(double r, double s0, const DensityMatrix& rho,
                               const DensityMatrix& sigma, const ExponentOptions& options = {});

struct ExponentCurve {
  std::vector<double> r_grid;
  std::vector<double> b_values;
  std::vector<double> s_opt;
  double d_hat = 0.0;        // +infinity when the D-hat limit diverges
  double d_sigma_rho = 0.0;  // may be +infinity
};

ExponentCurve exponent_curve(const DensityMatrix& rho, const DensityMatrix& sigma,
                             const std::vector<double>& r_grid, const ExponentOptions& options = {});

}  // namespace qsanov
