#include "qsanov/spectral.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "qsanov/errors.hpp"

namespace qsanov {

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    std::ostringstream os;
    os << what << ": expected a nonempty square matrix, got " << m.rows() << "x" << m.cols();
    throw ValidationError(os.str());
  }
}

void require_hermitian(const ComplexMatrix& m, double tol, const char* what) {
  require_square(m, what);
  const double deviation = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (!(deviation <= tol)) {
    std::ostringstream os;
    os << what << ": not Hermitian (max |X - X^dagger| = " << deviation << ")";
    throw ValidationError(os.str());
  }
}

void require_same_dim(const DensityMatrix& a, const DensityMatrix& b, const char* what) {
  if (a.dim() != b.dim()) {
    std::ostringstream os;
    os << what << ": dimension mismatch (" << a.dim() << " vs " << b.dim() << ")";
    throw ValidationError(os.str());
  }
}

Eigen::SelfAdjointEigenSolver<ComplexMatrix> eigen_of(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
  if (es.info() != Eigen::Success) throw NumericError("Hermitian eigensolver did not converge");
  return es;
}

}  // namespace

HermitianOperator::HermitianOperator(ComplexMatrix entries, double tol) {
  require_hermitian(entries, tol, "HermitianOperator");
  entries_ = 0.5 * (entries + entries.adjoint());
}

HermitianOperator HermitianOperator::identity(Eigen::Index dim) {
  return HermitianOperator(ComplexMatrix::Identity(dim, dim));
}

HermitianOperator HermitianOperator::zero(Eigen::Index dim) {
  return HermitianOperator(ComplexMatrix::Zero(dim, dim));
}

DensityMatrix::DensityMatrix(ComplexMatrix entries, double tol) {
  require_hermitian(entries, tol, "DensityMatrix");
  entries_ = 0.5 * (entries + entries.adjoint());
  const double trace = entries_.trace().real();
  if (!(std::abs(trace - 1.0) <= tol)) {
    std::ostringstream os;
    os << "DensityMatrix: trace " << trace << " differs from 1";
    throw ValidationError(os.str());
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(entries_, Eigen::EigenvaluesOnly);
  const double smallest = es.eigenvalues().minCoeff();
  if (!(smallest >= -tol)) {
    std::ostringstream os;
    os << "DensityMatrix: negative eigenvalue " << smallest;
    throw ValidationError(os.str());
  }
}

DensityMatrix::DensityMatrix(const HermitianOperator& op, double tol)
    : DensityMatrix(op.matrix(), tol) {}

DensityMatrix DensityMatrix::diagonal(std::span<const double> probabilities) {
  ComplexMatrix m = ComplexMatrix::Zero(probabilities.size(), probabilities.size());
  for (std::size_t i = 0; i < probabilities.size(); ++i) m(i, i) = probabilities[i];
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::diagonal(std::initializer_list<double> probabilities) {
  return diagonal(std::span<const double>(probabilities.begin(), probabilities.size()));
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
  const double norm = psi.norm();
  if (!(norm > 0.0)) throw ValidationError("DensityMatrix::pure: zero vector");
  const ComplexVector unit = psi / norm;
  return DensityMatrix(unit * unit.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim) {
  if (dim <= 0) throw ValidationError("DensityMatrix::maximally_mixed: dimension must be positive");
  return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

std::vector<double> DensityMatrix::diagonal_entries() const {
  std::vector<double> out(entries_.rows());
  for (Eigen::Index i = 0; i < entries_.rows(); ++i) out[i] = entries_(i, i).real();
  return out;
}

bool DensityMatrix::is_diagonal(double tol) const {
  for (Eigen::Index i = 0; i < entries_.rows(); ++i)
    for (Eigen::Index j = 0; j < entries_.cols(); ++j)
      if (i != j && std::abs(entries_(i, j)) > tol) return false;
  return true;
}

ProbabilityVector::ProbabilityVector(std::vector<double> entries, double tol)
    : entries_(std::move(entries)) {
  if (entries_.empty()) throw ValidationError("ProbabilityVector: empty");
  double total = 0.0;
  for (double p : entries_) {
    if (!(p >= 0.0)) throw ValidationError("ProbabilityVector: negative or NaN entry");
    total += p;
  }
  if (!(std::abs(total - 1.0) <= tol)) {
    std::ostringstream os;
    os << "ProbabilityVector: entries sum to " << total;
    throw ValidationError(os.str());
  }
}

ComplexMatrix SpectralDecomposition::reconstruct() const {
  return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
}

SpectralDecomposition spectral_decompose(const HermitianOperator& h) {
  auto es = eigen_of(h.matrix());
  return {es.eigenvalues(), es.eigenvectors()};
}

HermitianOperator matrix_function(const HermitianOperator& h,
                                  const std::function<double(double)>& f,
                                  double support_tol) {
  auto es = eigen_of(h.matrix());
  RealVector mapped(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < mapped.size(); ++i) {
    const double lambda = es.eigenvalues()(i);
    if (std::abs(lambda) <= support_tol) {
      mapped(i) = 0.0;
      continue;
    }
    const double value = f(lambda);
    if (!std::isfinite(value)) {
      std::ostringstream os;
      os << "matrix_function: function undefined on retained eigenvalue " << lambda;
      throw SupportError(os.str());
    }
    mapped(i) = value;
  }
  const ComplexMatrix& v = es.eigenvectors();
  ComplexMatrix out = v * mapped.cast<Complex>().asDiagonal() * v.adjoint();
  return HermitianOperator(0.5 * (out + out.adjoint()), std::numeric_limits<double>::infinity());
}

HermitianOperator matrix_power(const HermitianOperator& h, double exponent, double support_tol) {
  if (exponent == 0.0) return matrix_function(h, [](double) { return 1.0; }, support_tol);
  return matrix_function(h, [exponent](double x) { return std::pow(x, exponent); }, support_tol);
}

double shannon_entropy(std::span<const double> p) {
  double h = 0.0;
  for (double x : p)
    if (x > 0.0) h -= x * std::log(x);
  return h;
}

double entropy(const ProbabilityVector& p) { return shannon_entropy(p.entries()); }

double entropy(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho.matrix(), Eigen::EigenvaluesOnly);
  double h = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double x = es.eigenvalues()(i);
    if (x > kDefaultSupportTol) h -= x * std::log(x);
  }
  return std::max(h, 0.0);
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma, double support_tol) {
  require_same_dim(rho, sigma, "relative_entropy");
  auto es = eigen_of(sigma.matrix());
  const ComplexMatrix& u = es.eigenvectors();
  // Tr rho log sigma in sigma's eigenbasis; weight of rho on sigma's kernel decides infinity.
  double cross = 0.0;
  double outside = 0.0;
  for (Eigen::Index k = 0; k < u.cols(); ++k) {
    const double weight = (u.col(k).adjoint() * rho.matrix() * u.col(k))(0, 0).real();
    const double mu = es.eigenvalues()(k);
    if (mu > support_tol) {
      cross += weight * std::log(mu);
    } else {
      outside += weight;
    }
  }
  if (outside > support_tol) return std::numeric_limits<double>::infinity();
  const double value = -entropy(rho) - cross;
  return std::max(value, 0.0);
}

double log_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma, double support_tol) {
  require_same_dim(rho, sigma, "log_fidelity");
  const ComplexMatrix a = matrix_power(rho.as_operator(), 0.5, support_tol).matrix();
  const ComplexMatrix b = matrix_power(sigma.as_operator(), 0.5, support_tol).matrix();
  Eigen::JacobiSVD<ComplexMatrix> svd(a * b);
  const double trace_norm = svd.singularValues().sum();
  return std::min(std::log(trace_norm), 0.0);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

DensityMatrix tensor_power(const DensityMatrix& rho, int n) {
  if (n < 1) throw ValidationError("tensor_power: n must be positive");
  ComplexMatrix out = rho.matrix();
  for (int k = 1; k < n; ++k) out = kron(out, rho.matrix());
  return DensityMatrix(DensityMatrix::Trusted{}, std::move(out));
}

}  // namespace qsanov
