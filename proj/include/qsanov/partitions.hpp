#pragma once

// Young indices, types, cycle types and the exact integer quantities attached
// to them (dimensions, characters, multinomials).

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace qsanov {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Partition of n into at most d parts, stored nonincreasing and padded with
/// zeros to exactly d entries.
class YoungIndex {
 public:
  YoungIndex() = default;
  /// `parts` must be nonincreasing and nonnegative.
  explicit YoungIndex(std::vector<int> parts);
  /// Builds from the nondecreasing rendering, e.g. (0, 1, 3) -> (3, 1, 0).
  static YoungIndex from_nondecreasing(std::vector<int> parts);

  const std::vector<int>& parts() const noexcept { return parts_; }
  std::vector<int> nondecreasing() const;
  int n() const noexcept { return n_; }
  int depth() const noexcept { return static_cast<int>(parts_.size()); }
  /// Number of nonzero rows.
  int rows() const noexcept;
  int operator[](std::size_t i) const { return parts_[i]; }

  std::string to_string() const;
  auto operator<=>(const YoungIndex&) const = default;

 private:
  std::vector<int> parts_;
  int n_ = 0;
};

/// Letter counts of a length-n sequence over a d-letter alphabet.
class TypeVector {
 public:
  TypeVector() = default;
  explicit TypeVector(std::vector<int> counts);

  const std::vector<int>& counts() const noexcept { return counts_; }
  int n() const noexcept { return n_; }
  int dim() const noexcept { return static_cast<int>(counts_.size()); }
  int operator[](std::size_t i) const { return counts_[i]; }
  /// counts / n.
  std::vector<double> probabilities() const;
  /// Counts sorted nonincreasing (n times the sorted spectrum of the empirical state).
  std::vector<int> sorted_counts() const;

  std::string to_string() const;
  auto operator<=>(const TypeVector&) const = default;

 private:
  std::vector<int> counts_;
  int n_ = 0;
};

/// Cycle lengths of a conjugacy class of the symmetric group, nonincreasing.
struct CycleType {
  std::vector<int> lengths;

  int n() const;
  auto operator<=>(const CycleType&) const = default;
};

/// Partitions of n into at most d parts, reverse-lexicographic: (n,0,..) first.
std::vector<YoungIndex> enumerate_young(int n, int d);
/// Compositions of n into d nonnegative parts, reverse-lexicographic.
std::vector<TypeVector> enumerate_types(int n, int d);
/// All cycle types of S_n, reverse-lexicographic.
std::vector<CycleType> enumerate_cycle_types(int n);

/// Prefix-sum dominance of nonincreasing vectors with equal totals.
/// Throws ValidationError when lengths or totals differ.
bool majorizes(std::span<const double> a, std::span<const double> b);
bool majorizes(std::span<const int> a, std::span<const int> b);
/// The nonvanishing condition for the joint projector: lambda majorizes the sorted type.
bool majorizes(const YoungIndex& lambda, const TypeVector& type);

BigInt factorial(int n);
BigInt multinomial(std::span<const int> counts);
BigInt binomial(int n, int k);

/// dim V_lambda = (n!/lambda!) e(lambda), with e evaluated in exact rationals.
BigInt multiplicity_dim(const YoungIndex& lambda);
/// Weyl dimension of the U(d) irrep with highest weight lambda (zero if lambda has > d rows).
BigInt unitary_dim(const YoungIndex& lambda, int d);

/// chi^shape(class) by the Murnaghan-Nakayama rule.
std::int64_t sn_character(const YoungIndex& shape, const CycleType& cls);
/// Number of permutations with the given cycle type, n!/z_mu.
BigInt class_size(const CycleType& cls);
/// Cycle type of a permutation given as images of 0..n-1.
CycleType cycle_type_of(std::span<const int> permutation);

/// e^{n H(lambda/n)} written exactly as n^n / prod lambda_i^lambda_i.
BigRational entropy_power(const YoungIndex& lambda);

}  // namespace qsanov
