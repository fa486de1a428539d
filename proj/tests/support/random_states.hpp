#pragma once

#include <cmath>
#include <random>

#include "qsanov/spectral.hpp"

namespace qsanov::testing {

// Haar-ish random states from a seeded engine: Ginibre G, rho = G G^dagger / Tr.
inline ComplexMatrix ginibre(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  return g;
}

inline DensityMatrix random_state(std::mt19937_64& rng, Eigen::Index dim, Eigen::Index rank = -1) {
  if (rank < 0) rank = dim;
  const ComplexMatrix g = ginibre(rng, dim, rank);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(0.5 * (rho + rho.adjoint()));
}

inline ComplexMatrix random_hermitian(std::mt19937_64& rng, Eigen::Index dim) {
  const ComplexMatrix g = ginibre(rng, dim, dim);
  return 0.5 * (g + g.adjoint());
}

inline ComplexMatrix random_unitary(std::mt19937_64& rng, Eigen::Index dim) {
  Eigen::HouseholderQR<ComplexMatrix> qr(ginibre(rng, dim, dim));
  return qr.householderQ() * ComplexMatrix::Identity(dim, dim);
}

inline DensityMatrix random_diagonal_state(std::mt19937_64& rng, Eigen::Index dim) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<double> p(dim);
  double total = 0.0;
  for (auto& x : p) total += (x = u(rng));
  for (auto& x : p) x /= total;
  return DensityMatrix::diagonal(p);
}

}  // namespace qsanov::testing
