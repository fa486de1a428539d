#include "qsanov/divergences.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "graded_svd.hpp"
#include "qsanov/errors.hpp"

namespace qsanov {

namespace {

void require_same_dim(const DensityMatrix& a, const DensityMatrix& b, const char* what) {
  if (a.dim() != b.dim()) {
    std::ostringstream os;
    os << what << ": dimension mismatch (" << a.dim() << " vs " << b.dim() << ")";
    throw ValidationError(os.str());
  }
}

constexpr int kFirstExponent = 4;
constexpr int kLastExponent = 14;
constexpr int kRichardsonPoints = 4;
constexpr double kMonotoneSlack = 1e-9;
constexpr double kSupportLeakTol = 1e-10;

}  // namespace

double phi_sandwich(double t, const DensityMatrix& a, const DensityMatrix& b, double support_tol) {
  if (!(t > 0.0 && t < 1.0)) {
    std::ostringstream os;
    os << "phi_sandwich: order " << t << " outside (0,1)";
    throw DomainError(os.str());
  }
  require_same_dim(a, b, "phi_sandwich");
  const double q = t / (2.0 * (1.0 - t));
  const double value = detail::sandwich_log_trace(a.matrix(), b.matrix(), q, 1.0 - t, support_tol);
  if (!std::isfinite(value)) {
    throw SupportError(
        "phi_sandwich: the first state has no weight on the support of the second");
  }
  return value;
}

double phi_petz(double s, const DensityMatrix& rho, const DensityMatrix& sigma, double support_tol) {
  if (!(s >= 0.0 && s <= 1.0)) {
    std::ostringstream os;
    os << "phi_petz: order " << s << " outside [0,1]";
    throw DomainError(os.str());
  }
  require_same_dim(rho, sigma, "phi_petz");
  const ComplexMatrix r = matrix_power(rho.as_operator(), 1.0 - s, support_tol).matrix();
  const ComplexMatrix g = matrix_power(sigma.as_operator(), s, support_tol).matrix();
  const double trace = (r * g).trace().real();
  if (!(trace > 0.0)) throw SupportError("phi_petz: rho and sigma have orthogonal supports");
  return std::log(trace);
}

double sandwiched_renyi(double alpha, const DensityMatrix& rho, const DensityMatrix& sigma,
                        double support_tol) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    std::ostringstream os;
    os << "sandwiched_renyi: order " << alpha << " outside (0,1)";
    throw DomainError(os.str());
  }
  return phi_sandwich(1.0 - alpha, rho, sigma, support_tol) / (alpha - 1.0);
}

double petz_renyi(double s, const DensityMatrix& rho, const DensityMatrix& sigma,
                  double support_tol) {
  if (!(s > 0.0 && s <= 1.0)) {
    std::ostringstream os;
    os << "petz_renyi: order " << s << " outside (0,1]";
    throw DomainError(os.str());
  }
  return -phi_petz(s, rho, sigma, support_tol) / s;
}

double PhiCurve::max_convexity_violation() const {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < orders.size(); ++i) {
    const double x0 = orders[i - 1], x1 = orders[i], x2 = orders[i + 1];
    const double w = (x1 - x0) / (x2 - x0);
    const double chord = (1.0 - w) * values[i - 1] + w * values[i + 1];
    worst = std::max(worst, values[i] - chord);
  }
  return worst;
}

PhiCurve phi_curve(const DensityMatrix& left, const DensityMatrix& right,
                   const std::vector<double>& orders, double support_tol) {
  PhiCurve curve;
  curve.orders = orders;
  curve.values.reserve(orders.size());
  for (double t : orders) curve.values.push_back(phi_sandwich(t, left, right, support_tol));
  return curve;
}

DHatTrace d_hat_trace(const DensityMatrix& rho, const DensityMatrix& sigma, double support_tol) {
  require_same_dim(rho, sigma, "d_hat");

  // The limit is finite exactly when sigma, compressed to supp(rho), is
  // invertible there; otherwise the slopes grow like 1/s.
  const SpectralDecomposition eig = spectral_decompose(rho.as_operator());
  std::vector<Eigen::Index> kept;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i)
    if (eig.eigenvalues(i) > support_tol) kept.push_back(i);
  ComplexMatrix v(rho.dim(), static_cast<Eigen::Index>(kept.size()));
  for (std::size_t k = 0; k < kept.size(); ++k)
    v.col(static_cast<Eigen::Index>(k)) = eig.eigenvectors.col(kept[k]);
  const ComplexMatrix compressed = v.adjoint() * sigma.matrix() * v;
  const double smallest =
      Eigen::SelfAdjointEigenSolver<ComplexMatrix>(compressed, Eigen::EigenvaluesOnly).eigenvalues()(0);
  if (smallest <= kSupportLeakTol) {
    std::ostringstream os;
    os << "d_hat: sigma is singular on the support of rho (smallest compressed eigenvalue "
       << smallest << "); the limit diverges to +infinity";
    throw SupportError(os.str());
  }

  DHatTrace trace;
  for (int k = kFirstExponent; k <= kLastExponent; ++k) {
    const double s = std::ldexp(1.0, -k);
    trace.s_values.push_back(s);
    trace.slopes.push_back(-phi_sandwich(1.0 - s, sigma, rho, support_tol) / s);
  }

  for (std::size_t i = 1; i < trace.slopes.size(); ++i) {
    const double prev = trace.slopes[i - 1];
    const double cur = trace.slopes[i];
    if (cur < prev - kMonotoneSlack * (1.0 + std::abs(prev))) {
      std::ostringstream os;
      os << "d_hat: slope sequence not monotone at s = " << trace.s_values[i] << " (" << prev
         << " -> " << cur << ")";
      throw NumericError(os.str());
    }
  }

  // Richardson table on the tail; step ratio 2 and an error series in powers of s.
  const std::size_t first = trace.slopes.size() - kRichardsonPoints;
  std::vector<double> table(trace.slopes.begin() + static_cast<std::ptrdiff_t>(first),
                            trace.slopes.end());
  for (int level = 1; level < kRichardsonPoints; ++level) {
    const double factor = std::ldexp(1.0, level);
    for (std::size_t i = table.size() - 1; i >= static_cast<std::size_t>(level); --i)
      table[i] = (factor * table[i] - table[i - 1]) / (factor - 1.0);
  }
  trace.value = table.back();
  return trace;
}

double d_hat(const DensityMatrix& rho, const DensityMatrix& sigma, double support_tol) {
  return d_hat_trace(rho, sigma, support_tol).value;
}

}  // namespace qsanov
