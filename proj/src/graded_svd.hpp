#pragma once

// Log-trace of sandwiched operator powers whose conjugating factor can span
// thousands of orders of magnitude (small-s regime of the sandwiched
// functional).

#include "qsanov/spectral.hpp"

namespace qsanov::detail {

/// log Tr (b^q a b^q)^power for positive semidefinite a, b with q > 0 and
/// power > 0. Eigenvalues of a or b at or below support_tol are exact zeros.
///
/// The conjugation is written as K * diag(beta_j^q) with K = F^dagger V, where
/// a = F F^dagger and b = V diag(beta) V^dagger, and its singular values are
/// computed by one-sided Jacobi, which keeps relative accuracy under column
/// scaling. When the scaling spread exceeds double range the same iteration
/// runs in a 50-digit binary float with a wide exponent. Returns -infinity
/// when the product vanishes.
double sandwich_log_trace(const ComplexMatrix& a, const ComplexMatrix& b, double q, double power,
                          double support_tol);

/// Singular values of a complex matrix by one-sided Jacobi in double.
RealVector jacobi_singular_values(const ComplexMatrix& g);

}  // namespace qsanov::detail
