#include "graded_svd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "qsanov/errors.hpp"

namespace qsanov::detail {

namespace {

using WideFloat = boost::multiprecision::cpp_bin_float_50;

// Column scales below e^{-kDoubleRangeLimit} leave double range once squared.
constexpr double kDoubleRangeLimit = 300.0;
// Real-embedded sizes above this go to Eigen's divide-and-conquer SVD.
constexpr Eigen::Index kJacobiMaxEntries = 160 * 160;

template <typename Real>
struct ColumnMajor {
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  std::vector<Real> data;

  Real* col(Eigen::Index j) { return data.data() + j * rows; }
};

// Hestenes one-sided Jacobi; returns column norms after orthogonalisation.
template <typename Real>
std::vector<Real> one_sided_jacobi(ColumnMajor<Real>& g, const Real& tol) {
  using std::abs;
  using std::sqrt;
  const Eigen::Index rows = g.rows;
  const Eigen::Index cols = g.cols;
  constexpr int kMaxSweeps = 80;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (Eigen::Index i = 0; i + 1 < cols; ++i) {
      for (Eigen::Index j = i + 1; j < cols; ++j) {
        Real* gi = g.col(i);
        Real* gj = g.col(j);
        Real alpha = 0, beta = 0, gamma = 0;
        for (Eigen::Index r = 0; r < rows; ++r) {
          alpha += gi[r] * gi[r];
          beta += gj[r] * gj[r];
          gamma += gi[r] * gj[r];
        }
        if (alpha == 0 || beta == 0) continue;
        // sqrt(alpha) * sqrt(beta): the product alpha * beta underflows for graded columns
        if (abs(gamma) <= tol * sqrt(alpha) * sqrt(beta)) continue;
        rotated = true;
        const Real zeta = (beta - alpha) / (2 * gamma);
        const Real t = (zeta >= 0 ? Real(1) : Real(-1)) / (abs(zeta) + sqrt(1 + zeta * zeta));
        const Real c = 1 / sqrt(1 + t * t);
        const Real s = c * t;
        for (Eigen::Index r = 0; r < rows; ++r) {
          const Real a = gi[r];
          const Real b = gj[r];
          gi[r] = c * a - s * b;
          gj[r] = s * a + c * b;
        }
      }
    }
    if (!rotated) {
      std::vector<Real> norms(cols);
      for (Eigen::Index j = 0; j < cols; ++j) {
        Real acc = 0;
        const Real* gj = g.col(j);
        for (Eigen::Index r = 0; r < rows; ++r) acc += gj[r] * gj[r];
        norms[j] = sqrt(acc);
      }
      return norms;
    }
  }
  throw NumericError("one-sided Jacobi SVD did not converge");
}

// [[Re K, -Im K], [Im K, Re K]] with column j (and its copy) scaled by scale[j].
template <typename Real>
ColumnMajor<Real> real_embedding(const ComplexMatrix& k, const std::vector<Real>& scale) {
  ColumnMajor<Real> g;
  g.rows = 2 * k.rows();
  g.cols = 2 * k.cols();
  g.data.assign(static_cast<std::size_t>(g.rows * g.cols), Real(0));
  const Eigen::Index m = k.rows();
  for (Eigen::Index j = 0; j < k.cols(); ++j) {
    Real* left = g.col(j);
    Real* right = g.col(j + k.cols());
    for (Eigen::Index r = 0; r < m; ++r) {
      const Real re = Real(k(r, j).real()) * scale[j];
      const Real im = Real(k(r, j).imag()) * scale[j];
      left[r] = re;
      left[r + m] = im;
      right[r] = -im;
      right[r + m] = re;
    }
  }
  return g;
}

double log_sum_exp(const std::vector<double>& terms) {
  if (terms.empty()) return -std::numeric_limits<double>::infinity();
  const double top = *std::max_element(terms.begin(), terms.end());
  if (!std::isfinite(top)) return top;
  double acc = 0.0;
  for (double t : terms) acc += std::exp(t - top);
  return top + std::log(acc);
}

}  // namespace

RealVector jacobi_singular_values(const ComplexMatrix& g) {
  std::vector<double> ones(g.cols(), 1.0);
  auto embedded = real_embedding<double>(g, ones);
  const auto norms =
      one_sided_jacobi<double>(embedded, std::numeric_limits<double>::epsilon() * 4);
  std::vector<double> sorted(norms.begin(), norms.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  // Every singular value appears twice in the real embedding.
  RealVector out(g.cols());
  for (Eigen::Index i = 0; i < g.cols(); ++i) out(i) = sorted[2 * i];
  return out;
}

double sandwich_log_trace(const ComplexMatrix& a, const ComplexMatrix& b, double q, double power,
                          double support_tol) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> ea(a);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eb(b);
  if (ea.info() != Eigen::Success || eb.info() != Eigen::Success)
    throw NumericError("sandwich_log_trace: eigensolver failed");

  std::vector<Eigen::Index> a_keep, b_keep;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    if (ea.eigenvalues()(i) > support_tol) a_keep.push_back(i);
  for (Eigen::Index j = 0; j < b.rows(); ++j)
    if (eb.eigenvalues()(j) > support_tol) b_keep.push_back(j);
  if (a_keep.empty() || b_keep.empty()) return -std::numeric_limits<double>::infinity();

  ComplexMatrix f(a.rows(), static_cast<Eigen::Index>(a_keep.size()));
  for (std::size_t i = 0; i < a_keep.size(); ++i)
    f.col(i) = ea.eigenvectors().col(a_keep[i]) * std::sqrt(ea.eigenvalues()(a_keep[i]));
  ComplexMatrix v(b.rows(), static_cast<Eigen::Index>(b_keep.size()));
  std::vector<double> log_beta(b_keep.size());
  for (std::size_t j = 0; j < b_keep.size(); ++j) {
    v.col(j) = eb.eigenvectors().col(b_keep[j]);
    log_beta[j] = std::log(eb.eigenvalues()(b_keep[j]));
  }
  const ComplexMatrix k = f.adjoint() * v;

  const double log_beta_max = *std::max_element(log_beta.begin(), log_beta.end());
  std::vector<double> log_scale(log_beta.size());
  double most_negative = 0.0;
  for (std::size_t j = 0; j < log_beta.size(); ++j) {
    log_scale[j] = q * (log_beta[j] - log_beta_max);
    most_negative = std::min(most_negative, log_scale[j]);
  }
  // b^q = c * diag(scale) with log c = q * log beta_max.
  const double log_c = q * log_beta_max;

  std::vector<double> terms;
  if (most_negative > -kDoubleRangeLimit) {
    std::vector<double> scale(log_scale.size());
    for (std::size_t j = 0; j < scale.size(); ++j) scale[j] = std::exp(log_scale[j]);
    const Eigen::Index embedded_entries = 4 * k.rows() * k.cols();
    if (embedded_entries <= kJacobiMaxEntries) {
      auto g = real_embedding<double>(k, scale);
      const auto norms =
          one_sided_jacobi<double>(g, std::numeric_limits<double>::epsilon() * 4);
      for (double sv : norms)
        if (sv > 0.0) terms.push_back(2.0 * power * std::log(sv));
      return 2.0 * power * log_c + log_sum_exp(terms) - std::log(2.0);
    }
    ComplexMatrix g = k;
    for (Eigen::Index j = 0; j < g.cols(); ++j) g.col(j) *= scale[j];
    Eigen::BDCSVD<ComplexMatrix> svd(g);
    const RealVector& sv = svd.singularValues();
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) > 0.0) terms.push_back(2.0 * power * std::log(sv(i)));
    return 2.0 * power * log_c + log_sum_exp(terms);
  }

  std::vector<WideFloat> scale(log_scale.size());
  for (std::size_t j = 0; j < scale.size(); ++j) scale[j] = exp(WideFloat(log_scale[j]));
  auto g = real_embedding<WideFloat>(k, scale);
  const auto norms = one_sided_jacobi<WideFloat>(g, WideFloat("1e-45"));
  for (const auto& sv : norms)
    if (sv > 0) terms.push_back(2.0 * power * static_cast<double>(log(sv)));
  return 2.0 * power * log_c + log_sum_exp(terms) - std::log(2.0);
}

}  // namespace qsanov::detail
