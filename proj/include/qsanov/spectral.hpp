#pragma once

// Hermitian spectral calculus: decompositions, support-aware matrix
// functions, entropies, relative entropy and fidelity.
//
// All logarithms are natural. Eigenvalues are reported in ascending order.

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qsanov {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kDefaultSupportTol = 1e-12;

/// Square complex matrix equal to its conjugate transpose.
///
/// Construction checks the invariant elementwise and then stores the exact
/// Hermitian part, so downstream eigensolvers see a symmetric input.
class HermitianOperator {
 public:
  HermitianOperator() = default;
  explicit HermitianOperator(ComplexMatrix entries, double tol = kHermitianTolerance);

  static HermitianOperator identity(Eigen::Index dim);
  static HermitianOperator zero(Eigen::Index dim);

  Eigen::Index dim() const noexcept { return entries_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return entries_; }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }

 private:
  ComplexMatrix entries_;
};

/// Unit-trace positive semidefinite Hermitian matrix.
class DensityMatrix {
 public:
  DensityMatrix() = default;
  explicit DensityMatrix(ComplexMatrix entries, double tol = kHermitianTolerance);
  explicit DensityMatrix(const HermitianOperator& op, double tol = kHermitianTolerance);

  static DensityMatrix diagonal(std::span<const double> probabilities);
  static DensityMatrix diagonal(std::initializer_list<double> probabilities);
  static DensityMatrix pure(const ComplexVector& psi);
  static DensityMatrix maximally_mixed(Eigen::Index dim);

  Eigen::Index dim() const noexcept { return entries_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return entries_; }
  HermitianOperator as_operator() const { return HermitianOperator(entries_); }

  /// Diagonal entries in the computational basis.
  std::vector<double> diagonal_entries() const;
  /// True when every off-diagonal entry has modulus at most `tol`.
  bool is_diagonal(double tol = kHermitianTolerance) const;

 private:
  struct Trusted {};
  DensityMatrix(Trusted, ComplexMatrix entries) : entries_(std::move(entries)) {}
  friend DensityMatrix tensor_power(const DensityMatrix& rho, int n);

  ComplexMatrix entries_;
};

/// Nonnegative weights summing to one.
class ProbabilityVector {
 public:
  ProbabilityVector() = default;
  explicit ProbabilityVector(std::vector<double> entries, double tol = 1e-12);

  std::size_t dim() const noexcept { return entries_.size(); }
  const std::vector<double>& entries() const noexcept { return entries_; }
  double operator[](std::size_t i) const { return entries_[i]; }

 private:
  std::vector<double> entries_;
};

struct SpectralDecomposition {
  RealVector eigenvalues;     // ascending
  ComplexMatrix eigenvectors; // unitary, columns match eigenvalues

  ComplexMatrix reconstruct() const;
};

SpectralDecomposition spectral_decompose(const HermitianOperator& h);

/// Applies `f` to the eigenvalues of `h`.
///
/// Eigenvalues with |value| <= support_tol are off-support and map to 0. A
/// non-finite f-value on a retained eigenvalue raises SupportError naming it.
HermitianOperator matrix_function(const HermitianOperator& h,
                                  const std::function<double(double)>& f,
                                  double support_tol = kDefaultSupportTol);

/// h^exponent with the 0 -> 0 convention (exponent 0 gives the support projector).
HermitianOperator matrix_power(const HermitianOperator& h, double exponent,
                               double support_tol = kDefaultSupportTol);

/// Shannon entropy of a probability vector; 0 log 0 = 0.
double entropy(const ProbabilityVector& p);
double shannon_entropy(std::span<const double> p);
/// von Neumann entropy -Tr rho log rho.
double entropy(const DensityMatrix& rho);

/// D(rho||sigma) = Tr rho (log rho - log sigma). Returns +infinity exactly when
/// the support of rho is not contained in the support of sigma.
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma,
                        double support_tol = kDefaultSupportTol);

/// log Tr |rho^{1/2} sigma^{1/2}|.
double log_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma,
                    double support_tol = kDefaultSupportTol);

/// Kronecker product a (x) b, first factor most significant.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
DensityMatrix tensor_power(const DensityMatrix& rho, int n);

}  // namespace qsanov
