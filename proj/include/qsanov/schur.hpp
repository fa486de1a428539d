#pragma once

// Operator-level Schur-Weyl machinery on (C^d)^{(x)n}: Young projectors,
// type projectors, the joint (Young index, type) measurement, the type
// pinching map and the block maps onto the unitary irreps.
//
// Everything is assembled sector by sector. A sector is the span of the basis
// sequences with a fixed type; permutations of tensor factors preserve it, so
// every operator here is block diagonal over sectors (or, for the pinching
// map, becomes so).

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "qsanov/partitions.hpp"
#include "qsanov/spectral.hpp"

namespace qsanov {

struct SizeBudget {
  int max_n = 8;
  std::int64_t max_dim = 4096;  // d^n
};

/// Throws ResourceError when (n, d) exceeds the budget.
void check_budget(int n, int d, const SizeBudget& budget);

/// Flat index of a sequence x_1..x_n, first factor most significant (matches kron).
std::int64_t flat_index(std::span<const int> digits, int d);
std::vector<int> digits_of(std::int64_t index, int n, int d);

/// Precomputed sector data for one (n, d). Immutable once built; shared
/// through a process-wide cache.
class SchurWeylSpace {
 public:
  static std::shared_ptr<const SchurWeylSpace> get(int n, int d, const SizeBudget& budget = {});

  int n() const noexcept { return n_; }
  int d() const noexcept { return d_; }
  std::int64_t dim() const noexcept { return dim_; }

  const std::vector<YoungIndex>& young() const noexcept { return young_; }
  const std::vector<TypeVector>& types() const noexcept { return types_; }
  const std::vector<CycleType>& classes() const noexcept { return classes_; }

  /// Position of a Young index / type in the canonical lists; -1 if absent.
  int young_position(const YoungIndex& lambda) const;
  int type_position(const TypeVector& type) const;

  /// Flat indices of the basis sequences in sector t, ascending.
  const std::vector<std::int64_t>& sector_basis(int t) const { return sectors_[t]; }
  int sector_of(std::int64_t x) const { return sector_of_[x]; }
  int position_in_sector(std::int64_t x) const { return position_[x]; }
  const std::vector<int>& digits(std::int64_t x) const { return digits_[x]; }

  /// Sum of U(pi) over one conjugacy class, restricted to sector t.
  const RealMatrix& class_sum(int c, int t) const { return class_sums_[c][t]; }
  /// P_lambda restricted to sector t, i.e. the joint projector block.
  const RealMatrix& projector_block(int lambda, int t) const { return blocks_[lambda][t]; }
  /// Whether the joint projector of (lambda, t) is nonzero (max-norm > 1e-10).
  bool block_nonzero(int lambda, int t) const { return nonzero_[lambda][t]; }

  /// Orthonormal d^n x d_lambda basis of U_lambda (x) v for a fixed vector v of V_lambda.
  const RealMatrix& irrep_basis(int lambda) const { return irrep_bases_[lambda]; }

  /// Image of basis index x under the tensor-factor permutation pi
  /// (factor k moves to slot pi[k]).
  std::int64_t permute(std::span<const int> pi, std::int64_t x) const;

  SchurWeylSpace(int n, int d);

 private:
  void build_sectors();
  void build_class_sums();
  void build_projector_blocks();
  void build_irrep_bases();

  int n_ = 0;
  int d_ = 0;
  std::int64_t dim_ = 0;
  std::vector<YoungIndex> young_;
  std::vector<TypeVector> types_;
  std::vector<CycleType> classes_;
  std::vector<std::vector<int>> digits_;
  std::vector<std::vector<std::int64_t>> sectors_;
  std::vector<int> sector_of_;
  std::vector<int> position_;
  std::vector<std::vector<RealMatrix>> class_sums_;  // [class][sector]
  std::vector<std::vector<RealMatrix>> blocks_;      // [lambda][sector]
  std::vector<std::vector<bool>> nonzero_;           // [lambda][sector]
  std::vector<RealMatrix> irrep_bases_;              // [lambda]
};

/// Zero-detection threshold for projector blocks.
inline constexpr double kZeroOperatorTol = 1e-10;

/// Pads or trims trailing zero parts so lambda has depth d. Throws when lambda
/// has more than d nonzero rows.
YoungIndex with_depth(const YoungIndex& lambda, int d);

/// U(pi) X U(pi)^dagger for a permutation of the n tensor factors.
ComplexMatrix permute_factors(const ComplexMatrix& x, std::span<const int> pi, int d);

HermitianOperator young_projector(const YoungIndex& lambda, int n, int d,
                                  const SizeBudget& budget = {});
HermitianOperator type_projector(const TypeVector& type, int d, const SizeBudget& budget = {});
HermitianOperator joint_projector(const YoungIndex& lambda, const TypeVector& type, int d,
                                  const SizeBudget& budget = {});

struct OutcomePair {
  YoungIndex young;
  TypeVector type;
  auto operator<=>(const OutcomePair&) const = default;
};

struct OutcomeProbability {
  OutcomePair pair;
  double prob = 0.0;
};

/// Tr sigma^{(x)n} T_{lambda,type} over every pair with a nonzero projector,
/// in canonical order (Young indices as enumerated, then types).
struct JointOutcomeDistribution {
  int n = 0;
  int d = 0;
  std::vector<OutcomeProbability> entries;

  double total() const;
  /// Indexed like enumerate_young(n, d).
  std::vector<double> young_marginal() const;
  /// Indexed like enumerate_types(n, d).
  std::vector<double> type_marginal() const;
  /// Probability of a pair; 0 when the pair is not an outcome.
  double prob(const OutcomePair& pair) const;
};

JointOutcomeDistribution outcome_distribution(const DensityMatrix& sigma, int n,
                                              const SizeBudget& budget = {});

/// The pairs (lambda, type) with a nonzero joint projector.
std::vector<OutcomePair> outcome_pairs(int n, int d, const SizeBudget& budget = {});

/// E_B(X): removes every block between different type sectors.
HermitianOperator pinch_types(const HermitianOperator& x, int n, int d,
                              const SizeBudget& budget = {});

struct YoungBlock {
  YoungIndex young;
  ComplexMatrix block;  // d_lambda x d_lambda
};

/// Gamma_1: lambda -> Tr_{V_lambda} P_lambda X P_lambda, in the basis irrep_basis(lambda).
/// X must commute with every permutation of the factors within 1e-8.
std::vector<YoungBlock> block_decompose(const HermitianOperator& x, int n, int d,
                                        const SizeBudget& budget = {});
/// Gamma_2: sum over lambda of block (x) (identity on V_lambda) / dim V_lambda.
HermitianOperator block_embed(const std::vector<YoungBlock>& blocks, int n, int d,
                              const SizeBudget& budget = {});

/// Draws `count` outcomes by inverse-CDF sampling with a 64-bit Mersenne twister.
std::vector<OutcomePair> sample_outcomes(const JointOutcomeDistribution& dist, std::size_t count,
                                         std::uint64_t seed);

}  // namespace qsanov
