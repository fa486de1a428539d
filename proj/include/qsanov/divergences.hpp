#pragma once

// Sandwiched and Petz Renyi functionals and the quantity D-hat built from the
// small-s slope of the sandwiched functional.

#include <vector>

#include "qsanov/spectral.hpp"

namespace qsanov {

/// phi(t|A||B) = log Tr (B^{t/(2(1-t))} A B^{t/(2(1-t))})^{1-t} for t in (0,1).
///
/// B is raised with the 0 -> 0 convention. Throws DomainError outside (0,1) and
/// SupportError when the conjugated operator vanishes.
double phi_sandwich(double t, const DensityMatrix& a, const DensityMatrix& b,
                    double support_tol = kDefaultSupportTol);

/// phi_P(s|rho||sigma) = log Tr rho^{1-s} sigma^s for s in [0,1].
double phi_petz(double s, const DensityMatrix& rho, const DensityMatrix& sigma,
                double support_tol = kDefaultSupportTol);

/// Sandwiched Renyi divergence of order alpha in (0,1), i.e.
/// D_alpha = phi(1-alpha|rho||sigma) / (alpha - 1).
double sandwiched_renyi(double alpha, const DensityMatrix& rho, const DensityMatrix& sigma,
                        double support_tol = kDefaultSupportTol);

/// Petz Renyi divergence D_{1-s|P}(rho||sigma) = -phi_P(s|rho||sigma) / s, s in (0,1].
double petz_renyi(double s, const DensityMatrix& rho, const DensityMatrix& sigma,
                  double support_tol = kDefaultSupportTol);

/// Samples of s -> phi(s|left||right) on an order grid inside (0,1).
struct PhiCurve {
  std::vector<double> orders;
  std::vector<double> values;

  /// Largest violation of midpoint convexity over consecutive triples,
  /// i.e. max of f(mid) - interpolated chord value (<= 0 when convex).
  double max_convexity_violation() const;
};

PhiCurve phi_curve(const DensityMatrix& left, const DensityMatrix& right,
                   const std::vector<double>& orders, double support_tol = kDefaultSupportTol);

/// Diagnostics of the D-hat extrapolation.
struct DHatTrace {
  std::vector<double> s_values;  // descending schedule 2^-4 ... 2^-14
  std::vector<double> slopes;    // -phi(1-s|sigma||rho)/s at each s
  double value = 0.0;            // Richardson limit over the last four points
};

/// D-hat(rho||sigma) = lim_{s->0} -phi(1-s|sigma||rho)/s.
///
/// The slope sequence is nondecreasing as s decreases; a sequence that falls
/// by more than the tolerance raises NumericError. When sigma restricted to the
/// support of rho is singular the slopes diverge and SupportError is raised.
double d_hat(const DensityMatrix& rho, const DensityMatrix& sigma,
             double support_tol = kDefaultSupportTol);
DHatTrace d_hat_trace(const DensityMatrix& rho, const DensityMatrix& sigma,
                      double support_tol = kDefaultSupportTol);

}  // namespace qsanov
