#include "qsanov/partitions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "qsanov/errors.hpp"

namespace qsanov {

namespace {

std::string join(const std::vector<int>& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

// Beta-set (first-column hook lengths) of a partition with zero parts removed.
std::vector<int> beta_set(const std::vector<int>& parts) {
  std::vector<int> nonzero;
  for (int p : parts)
    if (p > 0) nonzero.push_back(p);
  const int k = static_cast<int>(nonzero.size());
  std::vector<int> beta(k);
  for (int i = 0; i < k; ++i) beta[i] = nonzero[i] + (k - 1 - i);
  return beta;  // strictly decreasing
}

// Normalises a beta-set by dropping the trailing 0,1,2,... run it may carry.
std::vector<int> normalise_beta(std::vector<int> beta) {
  std::sort(beta.begin(), beta.end(), std::greater<>());
  while (!beta.empty() && beta.back() == 0) {
    beta.pop_back();
    for (int& b : beta) --b;
  }
  return beta;
}

std::int64_t mn_recurse(const std::vector<int>& beta, const std::vector<int>& cycles,
                        std::size_t next, std::map<std::pair<std::vector<int>, std::size_t>,
                                                   std::int64_t>& memo) {
  if (next == cycles.size()) return beta.empty() ? 1 : 0;
  auto key = std::make_pair(beta, next);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  const int r = cycles[next];
  std::int64_t total = 0;
  for (std::size_t i = 0; i < beta.size(); ++i) {
    const int target = beta[i] - r;
    if (target < 0) continue;
    if (std::find(beta.begin(), beta.end(), target) != beta.end()) continue;
    // Removing a rim hook moves one bead; the sign counts beads jumped over.
    int crossed = 0;
    for (int b : beta)
      if (b > target && b < beta[i]) ++crossed;
    std::vector<int> moved = beta;
    moved[i] = target;
    const std::int64_t sub = mn_recurse(normalise_beta(std::move(moved)), cycles, next + 1, memo);
    total += (crossed % 2 == 0) ? sub : -sub;
  }
  memo.emplace(std::move(key), total);
  return total;
}

void partitions_rec(int remaining, int max_part, int slots, std::vector<int>& current,
                    std::vector<std::vector<int>>& out) {
  if (remaining == 0) {
    std::vector<int> padded = current;
    padded.resize(current.size() + slots, 0);
    out.push_back(std::move(padded));
    return;
  }
  if (slots == 0) return;
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    current.push_back(part);
    partitions_rec(remaining - part, part, slots - 1, current, out);
    current.pop_back();
  }
}

void compositions_rec(int remaining, int slot, std::vector<int>& current,
                      std::vector<TypeVector>& out) {
  const int d = static_cast<int>(current.size());
  if (slot == d - 1) {
    current[slot] = remaining;
    out.emplace_back(current);
    return;
  }
  for (int c = remaining; c >= 0; --c) {
    current[slot] = c;
    compositions_rec(remaining - c, slot + 1, current, out);
  }
}

BigInt ipow(const BigInt& base, int exponent) {
  BigInt out = 1;
  for (int i = 0; i < exponent; ++i) out *= base;
  return out;
}

}  // namespace

YoungIndex::YoungIndex(std::vector<int> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw ValidationError("YoungIndex: needs at least one part");
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] < 0) throw ValidationError("YoungIndex: negative part in " + join(parts_));
    if (i > 0 && parts_[i] > parts_[i - 1])
      throw ValidationError("YoungIndex: parts must be nonincreasing, got " + join(parts_));
  }
  n_ = std::accumulate(parts_.begin(), parts_.end(), 0);
}

YoungIndex YoungIndex::from_nondecreasing(std::vector<int> parts) {
  std::reverse(parts.begin(), parts.end());
  return YoungIndex(std::move(parts));
}

std::vector<int> YoungIndex::nondecreasing() const {
  return {parts_.rbegin(), parts_.rend()};
}

int YoungIndex::rows() const noexcept {
  return static_cast<int>(std::count_if(parts_.begin(), parts_.end(), [](int p) { return p > 0; }));
}

std::string YoungIndex::to_string() const { return join(parts_); }

TypeVector::TypeVector(std::vector<int> counts) : counts_(std::move(counts)) {
  if (counts_.empty()) throw ValidationError("TypeVector: needs at least one letter");
  for (int c : counts_)
    if (c < 0) throw ValidationError("TypeVector: negative count in " + join(counts_));
  n_ = std::accumulate(counts_.begin(), counts_.end(), 0);
  if (n_ <= 0) throw ValidationError("TypeVector: counts must sum to a positive n");
}

std::vector<double> TypeVector::probabilities() const {
  std::vector<double> p(counts_.size());
  for (std::size_t i = 0; i < counts_.size(); ++i) p[i] = static_cast<double>(counts_[i]) / n_;
  return p;
}

std::vector<int> TypeVector::sorted_counts() const {
  std::vector<int> s = counts_;
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

std::string TypeVector::to_string() const { return join(counts_); }

int CycleType::n() const { return std::accumulate(lengths.begin(), lengths.end(), 0); }

std::vector<YoungIndex> enumerate_young(int n, int d) {
  if (n < 1 || d < 1) throw ValidationError("enumerate_young: need n >= 1 and d >= 1");
  std::vector<std::vector<int>> raw;
  std::vector<int> current;
  partitions_rec(n, n, d, current, raw);
  std::vector<YoungIndex> out;
  out.reserve(raw.size());
  for (auto& p : raw) out.emplace_back(std::move(p));
  return out;
}

std::vector<TypeVector> enumerate_types(int n, int d) {
  if (n < 1 || d < 1) throw ValidationError("enumerate_types: need n >= 1 and d >= 1");
  std::vector<TypeVector> out;
  std::vector<int> current(d, 0);
  compositions_rec(n, 0, current, out);
  return out;
}

std::vector<CycleType> enumerate_cycle_types(int n) {
  if (n < 1) throw ValidationError("enumerate_cycle_types: need n >= 1");
  std::vector<std::vector<int>> raw;
  std::vector<int> current;
  partitions_rec(n, n, n, current, raw);
  std::vector<CycleType> out;
  for (auto& p : raw) {
    p.erase(std::remove(p.begin(), p.end(), 0), p.end());
    out.push_back(CycleType{std::move(p)});
  }
  return out;
}

bool majorizes(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ValidationError("majorizes: length mismatch");
  double sa = 0.0, sb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sa += a[i];
    sb += b[i];
  }
  const double scale = std::max({1.0, std::abs(sa), std::abs(sb)});
  if (std::abs(sa - sb) > 1e-12 * scale) throw ValidationError("majorizes: totals differ");
  double pa = 0.0, pb = 0.0;
  for (std::size_t k = 0; k + 1 < a.size(); ++k) {
    pa += a[k];
    pb += b[k];
    if (pa < pb - 1e-12 * scale) return false;
  }
  return true;
}

bool majorizes(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) throw ValidationError("majorizes: length mismatch");
  long long pa = 0, pb = 0, ta = 0, tb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ta += a[i];
    tb += b[i];
  }
  if (ta != tb) throw ValidationError("majorizes: totals differ");
  for (std::size_t k = 0; k < a.size(); ++k) {
    pa += a[k];
    pb += b[k];
    if (pa < pb) return false;
  }
  return true;
}

bool majorizes(const YoungIndex& lambda, const TypeVector& type) {
  if (lambda.depth() != type.dim())
    throw ValidationError("majorizes: Young index depth differs from type dimension");
  const auto sorted = type.sorted_counts();
  return majorizes(std::span<const int>(lambda.parts()), std::span<const int>(sorted));
}

BigInt factorial(int n) {
  if (n < 0) throw ValidationError("factorial: negative argument");
  BigInt out = 1;
  for (int k = 2; k <= n; ++k) out *= k;
  return out;
}

BigInt multinomial(std::span<const int> counts) {
  int n = 0;
  BigInt denom = 1;
  for (int c : counts) {
    if (c < 0) throw ValidationError("multinomial: negative count");
    n += c;
    denom *= factorial(c);
  }
  return factorial(n) / denom;
}

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  return factorial(n) / (factorial(k) * factorial(n - k));
}

BigInt multiplicity_dim(const YoungIndex& lambda) {
  const std::vector<int> mu = lambda.nondecreasing();
  const int d = static_cast<int>(mu.size());
  BigInt num = factorial(lambda.n());
  BigInt den = 1;
  for (int m : mu) den *= factorial(m);
  // e(lambda) = prod_{j>i} (mu_j - mu_i + j - i) / (mu_j + j - i)
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      num *= mu[j] - mu[i] + (j - i);
      den *= mu[j] + (j - i);
    }
  }
  if (num % den != 0) throw NumericError("multiplicity_dim: non-integral dimension");
  return num / den;
}

BigInt unitary_dim(const YoungIndex& lambda, int d) {
  if (d < 1) throw ValidationError("unitary_dim: d must be positive");
  if (lambda.rows() > d) return 0;
  std::vector<int> parts = lambda.parts();
  parts.resize(d, 0);
  BigInt num = 1, den = 1;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      num *= parts[i] - parts[j] + (j - i);
      den *= (j - i);
    }
  }
  return num / den;
}

std::int64_t sn_character(const YoungIndex& shape, const CycleType& cls) {
  if (shape.n() != cls.n()) throw ValidationError("sn_character: shape and class sizes differ");
  for (int l : cls.lengths)
    if (l <= 0) throw ValidationError("sn_character: cycle lengths must be positive");
  std::vector<int> cycles = cls.lengths;
  std::sort(cycles.begin(), cycles.end(), std::greater<>());
  static std::mutex cache_mutex;
  static std::map<std::pair<std::vector<int>, std::vector<int>>, std::int64_t> cache;
  auto key = std::make_pair(beta_set(shape.parts()), cycles);
  {
    std::lock_guard lock(cache_mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  std::map<std::pair<std::vector<int>, std::size_t>, std::int64_t> memo;
  const std::int64_t value = mn_recurse(key.first, cycles, 0, memo);
  std::lock_guard lock(cache_mutex);
  cache.emplace(std::move(key), value);
  return value;
}

BigInt class_size(const CycleType& cls) {
  std::map<int, int> multiplicity;
  for (int l : cls.lengths) ++multiplicity[l];
  BigInt z = 1;
  for (auto [length, count] : multiplicity) z *= ipow(BigInt(length), count) * factorial(count);
  return factorial(cls.n()) / z;
}

CycleType cycle_type_of(std::span<const int> permutation) {
  const std::size_t n = permutation.size();
  std::vector<bool> seen(n, false);
  CycleType out;
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    int length = 0;
    for (std::size_t i = start; !seen[i]; i = static_cast<std::size_t>(permutation[i])) {
      seen[i] = true;
      ++length;
    }
    out.lengths.push_back(length);
  }
  std::sort(out.lengths.begin(), out.lengths.end(), std::greater<>());
  return out;
}

BigRational entropy_power(const YoungIndex& lambda) {
  BigInt num = ipow(BigInt(lambda.n()), lambda.n());
  BigInt den = 1;
  for (int p : lambda.parts()) den *= ipow(BigInt(p), p);
  return BigRational(num, den);
}

}  // namespace qsanov
