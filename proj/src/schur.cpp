#include "qsanov/schur.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>

#include "qsanov/errors.hpp"

namespace qsanov {

namespace {

std::int64_t checked_pow(int d, int n) {
  std::int64_t out = 1;
  for (int k = 0; k < n; ++k) {
    out *= d;
    if (out > (std::int64_t{1} << 40)) return -1;
  }
  return out;
}

// Calls f(perm) for every element of the product of symmetric groups on the
// given position groups; perm is the full permutation of 0..n-1, sign its parity.
template <typename F>
void for_each_in_product(const std::vector<std::vector<int>>& groups, int n, F&& f) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t g, int sign) {
    if (g == groups.size()) {
      f(perm, sign);
      return;
    }
    const auto& slots = groups[g];
    std::vector<int> images = slots;  // sorted ascending
    do {
      for (std::size_t i = 0; i < slots.size(); ++i) perm[slots[i]] = images[i];
      int inversions = 0;
      for (std::size_t i = 0; i < images.size(); ++i)
        for (std::size_t j = i + 1; j < images.size(); ++j)
          if (images[i] > images[j]) ++inversions;
      rec(g + 1, (inversions % 2 == 0) ? sign : -sign);
    } while (std::next_permutation(images.begin(), images.end()));
    for (int s : slots) perm[s] = s;
  };
  rec(0, 1);
}

double to_double(const BigInt& v) { return v.convert_to<double>(); }

ComplexMatrix twirl(const SchurWeylSpace& space, const ComplexMatrix& m) {
  const int n = space.n();
  const std::int64_t dim = space.dim();
  std::vector<int> pi(n);
  std::iota(pi.begin(), pi.end(), 0);
  std::vector<std::int64_t> image(dim);
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  double count = 0.0;
  do {
    for (std::int64_t x = 0; x < dim; ++x) image[x] = space.permute(pi, x);
    for (std::int64_t y = 0; y < dim; ++y)
      for (std::int64_t x = 0; x < dim; ++x) out(image[x], image[y]) += m(x, y);
    count += 1.0;
  } while (std::next_permutation(pi.begin(), pi.end()));
  return out / count;
}

void require_square(const HermitianOperator& x, std::int64_t dim, const char* what) {
  if (x.dim() != dim) {
    std::ostringstream os;
    os << what << ": operator has dimension " << x.dim() << ", expected " << dim;
    throw ValidationError(os.str());
  }
}

}  // namespace

void check_budget(int n, int d, const SizeBudget& budget) {
  if (n < 1 || d < 1) throw ValidationError("need n >= 1 and d >= 1");
  const std::int64_t dim = checked_pow(d, n);
  if (n > budget.max_n || dim < 0 || dim > budget.max_dim) {
    std::ostringstream os;
    os << "size budget exceeded: n = " << n << ", d^n = " << (dim < 0 ? -1 : dim)
       << " (limits n <= " << budget.max_n << ", d^n <= " << budget.max_dim << ")";
    throw ResourceError(os.str());
  }
}

std::int64_t flat_index(std::span<const int> digits, int d) {
  std::int64_t x = 0;
  for (int digit : digits) x = x * d + digit;
  return x;
}

std::vector<int> digits_of(std::int64_t index, int n, int d) {
  std::vector<int> out(n);
  for (int k = n - 1; k >= 0; --k) {
    out[k] = static_cast<int>(index % d);
    index /= d;
  }
  return out;
}

std::shared_ptr<const SchurWeylSpace> SchurWeylSpace::get(int n, int d, const SizeBudget& budget) {
  check_budget(n, d, budget);
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const SchurWeylSpace>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{n, d}];
  if (!slot) slot = std::make_shared<const SchurWeylSpace>(n, d);
  return slot;
}

SchurWeylSpace::SchurWeylSpace(int n, int d)
    : n_(n), d_(d), dim_(checked_pow(d, n)),
      young_(enumerate_young(n, d)), types_(enumerate_types(n, d)),
      classes_(enumerate_cycle_types(n)) {
  build_sectors();
  build_class_sums();
  build_projector_blocks();
  build_irrep_bases();
}

int SchurWeylSpace::young_position(const YoungIndex& lambda) const {
  auto it = std::find(young_.begin(), young_.end(), lambda);
  return it == young_.end() ? -1 : static_cast<int>(it - young_.begin());
}

int SchurWeylSpace::type_position(const TypeVector& type) const {
  auto it = std::find(types_.begin(), types_.end(), type);
  return it == types_.end() ? -1 : static_cast<int>(it - types_.begin());
}

std::int64_t SchurWeylSpace::permute(std::span<const int> pi, std::int64_t x) const {
  const auto& in = digits_[x];
  std::int64_t out = 0;
  std::vector<int> moved(n_);
  for (int k = 0; k < n_; ++k) moved[pi[k]] = in[k];
  for (int k = 0; k < n_; ++k) out = out * d_ + moved[k];
  return out;
}

void SchurWeylSpace::build_sectors() {
  std::map<std::vector<int>, int> type_index;
  for (std::size_t t = 0; t < types_.size(); ++t) type_index[types_[t].counts()] = static_cast<int>(t);
  digits_.resize(dim_);
  sector_of_.resize(dim_);
  position_.resize(dim_);
  sectors_.assign(types_.size(), {});
  for (std::int64_t x = 0; x < dim_; ++x) {
    digits_[x] = digits_of(x, n_, d_);
    std::vector<int> counts(d_, 0);
    for (int digit : digits_[x]) ++counts[digit];
    const int t = type_index.at(counts);
    sector_of_[x] = t;
    position_[x] = static_cast<int>(sectors_[t].size());
    sectors_[t].push_back(x);
  }
}

void SchurWeylSpace::build_class_sums() {
  std::map<std::vector<int>, int> class_index;
  for (std::size_t c = 0; c < classes_.size(); ++c) class_index[classes_[c].lengths] = static_cast<int>(c);
  class_sums_.assign(classes_.size(), {});
  for (auto& per_class : class_sums_) {
    per_class.reserve(sectors_.size());
    for (const auto& sector : sectors_) {
      const auto m = static_cast<Eigen::Index>(sector.size());
      per_class.push_back(RealMatrix::Zero(m, m));
    }
  }
  std::vector<int> pi(n_);
  std::iota(pi.begin(), pi.end(), 0);
  do {
    const int c = class_index.at(cycle_type_of(pi).lengths);
    auto& per_sector = class_sums_[c];
    for (std::int64_t x = 0; x < dim_; ++x) {
      const std::int64_t y = permute(pi, x);
      per_sector[sector_of_[x]](position_[y], position_[x]) += 1.0;
    }
  } while (std::next_permutation(pi.begin(), pi.end()));
}

void SchurWeylSpace::build_projector_blocks() {
  const double n_factorial = to_double(factorial(n_));
  blocks_.assign(young_.size(), {});
  nonzero_.assign(young_.size(), {});
  for (std::size_t l = 0; l < young_.size(); ++l) {
    const double scale = to_double(multiplicity_dim(young_[l])) / n_factorial;
    std::vector<double> weights(classes_.size());
    for (std::size_t c = 0; c < classes_.size(); ++c)
      weights[c] = scale * static_cast<double>(sn_character(young_[l], classes_[c]));
    for (std::size_t t = 0; t < sectors_.size(); ++t) {
      const auto m = static_cast<Eigen::Index>(sectors_[t].size());
      RealMatrix block = RealMatrix::Zero(m, m);
      for (std::size_t c = 0; c < classes_.size(); ++c)
        if (weights[c] != 0.0) block += weights[c] * class_sums_[c][t];
      nonzero_[l].push_back(block.cwiseAbs().maxCoeff() > kZeroOperatorTol);
      blocks_[l].push_back(std::move(block));
    }
  }
}

void SchurWeylSpace::build_irrep_bases() {
  irrep_bases_.clear();
  for (const YoungIndex& lambda : young_) {
    // Row and column groups of the row-wise filled canonical tableau.
    std::vector<std::vector<int>> row_groups, column_groups;
    std::vector<int> row_start;
    int next = 0;
    for (int part : lambda.parts()) {
      row_start.push_back(next);
      if (part > 1) {
        std::vector<int> row(part);
        std::iota(row.begin(), row.end(), next);
        row_groups.push_back(std::move(row));
      }
      next += part;
    }
    for (int j = 0; j < lambda[0]; ++j) {
      std::vector<int> column;
      for (std::size_t i = 0; i < lambda.parts().size(); ++i)
        if (lambda[i] > j) column.push_back(row_start[i] + j);
      if (column.size() > 1) column_groups.push_back(std::move(column));
    }

    const auto d_lambda = static_cast<Eigen::Index>(unitary_dim(lambda, d_).convert_to<long long>());
    RealMatrix basis = RealMatrix::Zero(dim_, d_lambda);
    Eigen::Index filled = 0;
    for (std::size_t t = 0; t < sectors_.size(); ++t) {
      const auto m = static_cast<Eigen::Index>(sectors_[t].size());
      RealMatrix row_sum = RealMatrix::Zero(m, m);
      RealMatrix column_sum = RealMatrix::Zero(m, m);
      for_each_in_product(row_groups, n_, [&](const std::vector<int>& pi, int) {
        for (std::int64_t x : sectors_[t]) row_sum(position_[permute(pi, x)], position_[x]) += 1.0;
      });
      for_each_in_product(column_groups, n_, [&](const std::vector<int>& pi, int sign) {
        for (std::int64_t x : sectors_[t])
          column_sum(position_[permute(pi, x)], position_[x]) += sign;
      });
      const RealMatrix symmetrizer = row_sum * column_sum;
      if (symmetrizer.cwiseAbs().maxCoeff() <= kZeroOperatorTol) continue;
      Eigen::BDCSVD<RealMatrix> svd(symmetrizer, Eigen::ComputeThinU);
      const auto& sv = svd.singularValues();
      const double cutoff = 1e-9 * sv(0);
      Eigen::Index rank = 0;
      while (rank < sv.size() && sv(rank) > cutoff) ++rank;
      if (filled + rank > d_lambda)
        throw NumericError("irrep basis: rank exceeds the Weyl dimension for " + lambda.to_string());
      for (Eigen::Index k = 0; k < rank; ++k)
        for (Eigen::Index i = 0; i < m; ++i) basis(sectors_[t][i], filled + k) = svd.matrixU()(i, k);
      filled += rank;
    }
    if (filled != d_lambda)
      throw NumericError("irrep basis: rank differs from the Weyl dimension for " + lambda.to_string());
    irrep_bases_.push_back(std::move(basis));
  }
}

YoungIndex with_depth(const YoungIndex& lambda, int d) {
  if (lambda.rows() > d) {
    std::ostringstream os;
    os << "Young index " << lambda.to_string() << " has more than " << d << " rows";
    throw ValidationError(os.str());
  }
  std::vector<int> parts = lambda.parts();
  parts.resize(d, 0);
  return YoungIndex(std::move(parts));
}

ComplexMatrix permute_factors(const ComplexMatrix& x, std::span<const int> pi, int d) {
  const int n = static_cast<int>(pi.size());
  const std::int64_t dim = checked_pow(d, n);
  if (dim < 0 || x.rows() != dim || x.cols() != dim)
    throw ValidationError("permute_factors: operator size does not match d^n");
  std::vector<std::int64_t> image(dim);
  std::vector<int> moved(n);
  for (std::int64_t a = 0; a < dim; ++a) {
    const auto in = digits_of(a, n, d);
    for (int k = 0; k < n; ++k) moved[pi[k]] = in[k];
    image[a] = flat_index(moved, d);
  }
  ComplexMatrix out(dim, dim);
  for (std::int64_t b = 0; b < dim; ++b)
    for (std::int64_t a = 0; a < dim; ++a) out(image[a], image[b]) = x(a, b);
  return out;
}

namespace {

int require_young(const SchurWeylSpace& space, const YoungIndex& lambda) {
  const YoungIndex padded = with_depth(lambda, space.d());
  if (padded.n() != space.n()) throw ValidationError("Young index size differs from n");
  return space.young_position(padded);
}

int require_type(const SchurWeylSpace& space, const TypeVector& type) {
  if (type.dim() != space.d()) throw ValidationError("type length differs from d");
  if (type.n() != space.n()) throw ValidationError("type total differs from n");
  return space.type_position(type);
}

ComplexMatrix embed_block(const SchurWeylSpace& space, int l, int t) {
  const auto& basis = space.sector_basis(t);
  const RealMatrix& block = space.projector_block(l, t);
  ComplexMatrix out = ComplexMatrix::Zero(space.dim(), space.dim());
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i < basis.size(); ++i)
      out(basis[i], basis[j]) = block(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  return out;
}

}  // namespace

HermitianOperator young_projector(const YoungIndex& lambda, int n, int d, const SizeBudget& budget) {
  const auto space = SchurWeylSpace::get(n, d, budget);
  const int l = require_young(*space, lambda);
  ComplexMatrix out = ComplexMatrix::Zero(space->dim(), space->dim());
  for (std::size_t t = 0; t < space->types().size(); ++t) out += embed_block(*space, l, static_cast<int>(t));
  return HermitianOperator(std::move(out));
}

HermitianOperator type_projector(const TypeVector& type, int d, const SizeBudget& budget) {
  const auto space = SchurWeylSpace::get(type.n(), d, budget);
  const int t = require_type(*space, type);
  ComplexMatrix out = ComplexMatrix::Zero(space->dim(), space->dim());
  for (std::int64_t x : space->sector_basis(t)) out(x, x) = 1.0;
  return HermitianOperator(std::move(out));
}

HermitianOperator joint_projector(const YoungIndex& lambda, const TypeVector& type, int d,
                                  const SizeBudget& budget) {
  const auto space = SchurWeylSpace::get(type.n(), d, budget);
  const int l = require_young(*space, lambda);
  const int t = require_type(*space, type);
  return HermitianOperator(embed_block(*space, l, t));
}

double JointOutcomeDistribution::total() const {
  double sum = 0.0;
  for (const auto& e : entries) sum += e.prob;
  return sum;
}

std::vector<double> JointOutcomeDistribution::young_marginal() const {
  const auto young = enumerate_young(n, d);
  std::vector<double> out(young.size(), 0.0);
  for (const auto& e : entries) {
    auto it = std::find(young.begin(), young.end(), e.pair.young);
    out[static_cast<std::size_t>(it - young.begin())] += e.prob;
  }
  return out;
}

std::vector<double> JointOutcomeDistribution::type_marginal() const {
  const auto types = enumerate_types(n, d);
  std::vector<double> out(types.size(), 0.0);
  for (const auto& e : entries) {
    auto it = std::find(types.begin(), types.end(), e.pair.type);
    out[static_cast<std::size_t>(it - types.begin())] += e.prob;
  }
  return out;
}

double JointOutcomeDistribution::prob(const OutcomePair& pair) const {
  for (const auto& e : entries)
    if (e.pair == pair) return e.prob;
  return 0.0;
}

JointOutcomeDistribution outcome_distribution(const DensityMatrix& sigma, int n,
                                              const SizeBudget& budget) {
  const int d = static_cast<int>(sigma.dim());
  const auto space = SchurWeylSpace::get(n, d, budget);
  const ComplexMatrix& s = sigma.matrix();
  JointOutcomeDistribution dist;
  dist.n = n;
  dist.d = d;

  // S_t(x, y) = prod_k sigma(x_k, y_k) on each sector.
  std::vector<ComplexMatrix> sector_states;
  for (std::size_t t = 0; t < space->types().size(); ++t) {
    const auto& basis = space->sector_basis(static_cast<int>(t));
    const auto m = static_cast<Eigen::Index>(basis.size());
    ComplexMatrix st(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      const auto& xi = space->digits(basis[i]);
      for (Eigen::Index j = 0; j < m; ++j) {
        const auto& yj = space->digits(basis[j]);
        Complex v = 1.0;
        for (int k = 0; k < n; ++k) v *= s(xi[k], yj[k]);
        st(i, j) = v;
      }
    }
    sector_states.push_back(std::move(st));
  }

  for (std::size_t l = 0; l < space->young().size(); ++l) {
    for (std::size_t t = 0; t < space->types().size(); ++t) {
      if (!space->block_nonzero(static_cast<int>(l), static_cast<int>(t))) continue;
      const RealMatrix& p = space->projector_block(static_cast<int>(l), static_cast<int>(t));
      // Tr(P S) with P real symmetric.
      double prob = (p.cast<Complex>().cwiseProduct(sector_states[t].transpose())).sum().real();
      if (prob < 0.0) {
        if (prob < -1e-12) throw NumericError("outcome_distribution: negative outcome probability");
        prob = 0.0;
      }
      dist.entries.push_back({{space->young()[l], space->types()[t]}, prob});
    }
  }
  return dist;
}

std::vector<OutcomePair> outcome_pairs(int n, int d, const SizeBudget& budget) {
  const auto space = SchurWeylSpace::get(n, d, budget);
  std::vector<OutcomePair> out;
  for (std::size_t l = 0; l < space->young().size(); ++l)
    for (std::size_t t = 0; t < space->types().size(); ++t)
      if (space->block_nonzero(static_cast<int>(l), static_cast<int>(t)))
        out.push_back({space->young()[l], space->types()[t]});
  return out;
}

HermitianOperator pinch_types(const HermitianOperator& x, int n, int d, const SizeBudget& budget) {
  const auto space = SchurWeylSpace::get(n, d, budget);
  require_square(x, space->dim(), "pinch_types");
  ComplexMatrix out = x.matrix();
  for (std::int64_t j = 0; j < space->dim(); ++j)
    for (std::int64_t i = 0; i < space->dim(); ++i)
      if (space->sector_of(i) != space->sector_of(j)) out(i, j) = 0.0;
  return HermitianOperator(std::move(out));
}

std::vector<YoungBlock> block_decompose(const HermitianOperator& x, int n, int d,
                                        const SizeBudget& budget) {
  const auto space = SchurWeylSpace::get(n, d, budget);
  require_square(x, space->dim(), "block_decompose");
  std::vector<int> swap(n);
  for (int k = 0; k + 1 < n; ++k) {
    std::iota(swap.begin(), swap.end(), 0);
    std::swap(swap[k], swap[k + 1]);
    const double defect = (permute_factors(x.matrix(), swap, d) - x.matrix()).cwiseAbs().maxCoeff();
    if (defect > 1e-8) {
      std::ostringstream os;
      os << "block_decompose: operator is not permutation invariant (defect " << defect
         << " under swapping factors " << k << " and " << k + 1 << ")";
      throw ValidationError(os.str());
    }
  }
  std::vector<YoungBlock> out;
  for (std::size_t l = 0; l < space->young().size(); ++l) {
    const ComplexMatrix w = space->irrep_basis(static_cast<int>(l)).cast<Complex>();
    const double dim_v = to_double(multiplicity_dim(space->young()[l]));
    ComplexMatrix block = dim_v * (w.adjoint() * x.matrix() * w);
    block = 0.5 * (block + block.adjoint()).eval();
    out.push_back({space->young()[l], std::move(block)});
  }
  return out;
}

HermitianOperator block_embed(const std::vector<YoungBlock>& blocks, int n, int d,
                              const SizeBudget& budget) {
  const auto space = SchurWeylSpace::get(n, d, budget);
  ComplexMatrix lifted = ComplexMatrix::Zero(space->dim(), space->dim());
  for (const auto& yb : blocks) {
    const int l = require_young(*space, yb.young);
    if (l < 0) throw ValidationError("block_embed: unknown Young index " + yb.young.to_string());
    const RealMatrix& w = space->irrep_basis(l);
    if (yb.block.rows() != w.cols() || yb.block.cols() != w.cols()) {
      std::ostringstream os;
      os << "block_embed: block for " << yb.young.to_string() << " is " << yb.block.rows() << "x"
         << yb.block.cols() << ", expected " << w.cols() << "x" << w.cols();
      throw ValidationError(os.str());
    }
    const ComplexMatrix wc = w.cast<Complex>();
    lifted += wc * yb.block * wc.adjoint();
  }
  // Twirling B (x) |v><v| over S_n replaces |v><v| by the normalised identity on V_lambda.
  ComplexMatrix out = twirl(*space, lifted);
  return HermitianOperator(0.5 * (out + out.adjoint()), 1e-9);
}

std::vector<OutcomePair> sample_outcomes(const JointOutcomeDistribution& dist, std::size_t count,
                                         std::uint64_t seed) {
  std::vector<OutcomePair> out;
  if (count == 0) return out;
  if (dist.entries.empty()) throw ValidationError("sample_outcomes: empty distribution");
  std::vector<double> cdf;
  cdf.reserve(dist.entries.size());
  double running = 0.0;
  for (const auto& e : dist.entries) {
    if (e.prob < 0.0) throw ValidationError("sample_outcomes: negative probability");
    running += e.prob;
    cdf.push_back(running);
  }
  std::mt19937_64 rng(seed);
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * running;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    out.push_back(dist.entries[static_cast<std::size_t>(it - cdf.begin())].pair);
  }
  return out;
}

}  // namespace qsanov
