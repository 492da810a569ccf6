#include "rho/combinat.hpp"

#include <algorithm>
#include <numeric>

namespace rho {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
  for (std::size_t j = 0; j < parts_.size(); ++j) {
    if (parts_[j] < 0) throw ArgumentError("partition parts must be non-negative");
    if (j + 1 < parts_.size() && parts_[j] < parts_[j + 1])
      throw ArgumentError("partition parts must be weakly decreasing");
  }
}

int Partition::boxes() const noexcept {
  return std::accumulate(parts_.begin(), parts_.end(), 0);
}

IntVector Partition::padded(int length) const {
  if (rows() > length)
    throw ArgumentError("partition " + label() + " has more than " +
                        std::to_string(length) + " rows");
  IntVector out(parts_.begin(), parts_.end());
  out.resize(static_cast<std::size_t>(length), 0);
  return out;
}

std::string Partition::label() const {
  std::string s;
  for (std::size_t j = 0; j < parts_.size(); ++j) {
    if (j) s += ',';
    s += std::to_string(parts_[j]);
  }
  return s;
}

CycleType::CycleType(std::vector<int> counts) : counts_(std::move(counts)) {
  std::size_t weight = 0;
  for (std::size_t r = 0; r < counts_.size(); ++r) {
    if (counts_[r] < 0) throw ArgumentError("cycle counts must be non-negative");
    weight += (r + 1) * static_cast<std::size_t>(counts_[r]);
  }
  // A nonzero count at slot r forces weight > r, so resizing only drops zeros.
  counts_.resize(weight, 0);
}

CycleType CycleType::with_total(std::vector<int> counts, int K) {
  CycleType c(std::move(counts));
  if (c.total() != K)
    throw ArgumentError("cycle counts " + c.label() + " do not sum to K = " + std::to_string(K));
  return c;
}

CycleType CycleType::from_cycle_lengths(std::span<const int> lengths) {
  int K = 0;
  for (int r : lengths) {
    if (r < 1) throw ArgumentError("cycle lengths must be positive");
    K += r;
  }
  std::vector<int> counts(static_cast<std::size_t>(K), 0);
  for (int r : lengths) ++counts[static_cast<std::size_t>(r - 1)];
  return CycleType(std::move(counts));
}

int CycleType::cycles() const noexcept {
  return std::accumulate(counts_.begin(), counts_.end(), 0);
}

int CycleType::count(int r) const noexcept {
  if (r < 1 || r > total()) return 0;
  return counts_[static_cast<std::size_t>(r - 1)];
}

std::vector<int> CycleType::cycle_lengths() const {
  std::vector<int> out;
  for (int r = total(); r >= 1; --r)
    for (int k = 0; k < count(r); ++k) out.push_back(r);
  return out;
}

std::vector<int> CycleType::stripped() const {
  std::vector<int> out = counts_;
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

std::string CycleType::label() const {
  std::string s = "(";
  bool first = true;
  for (int r = 1; r <= total(); ++r) {
    const int i = count(r);
    if (i == 0) continue;
    if (!first) s += ',';
    first = false;
    s += std::to_string(r);
    if (i > 1) s += "^" + std::to_string(i);
  }
  return s + ")";
}

namespace {

void partitions_rec(int remaining, int max_part, int rows_left, std::vector<int>& cur,
                    std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(cur);
    return;
  }
  if (rows_left == 0) return;
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions_rec(remaining - p, p, rows_left - 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Partition> enumerate_partitions(int K, int max_rows) {
  if (K < 0) throw ArgumentError("enumerate_partitions: K must be >= 0");
  if (max_rows < 1) throw ArgumentError("enumerate_partitions: max_rows must be >= 1");
  std::vector<Partition> out;
  std::vector<int> cur;
  partitions_rec(K, K, max_rows, cur, out);
  return out;
}

std::vector<CycleType> enumerate_cycle_types(int K) {
  if (K < 1) throw ArgumentError("enumerate_cycle_types: K must be >= 1");
  std::vector<CycleType> out;
  for (const Partition& p : enumerate_partitions(K, K))
    out.push_back(CycleType::from_cycle_lengths(p.parts()));
  std::sort(out.begin(), out.end(), [](const CycleType& a, const CycleType& b) {
    return a.counts() > b.counts();
  });
  return out;
}

BigInt class_order(const CycleType& c) {
  BigInt centralizer = 1;
  for (int r = 1; r <= c.total(); ++r) {
    const int i = c.count(r);
    centralizer *= pow_int(BigInt(r), static_cast<unsigned>(i)) * factorial(i);
  }
  return factorial(c.total()) / centralizer;
}

BigInt vandermonde(std::span<const int> v) {
  std::vector<BigInt> big(v.begin(), v.end());
  return vandermonde<BigInt>(std::span<const BigInt>(big));
}

BigInt super_factorial(int N) {
  if (N < 0) throw ArgumentError("super_factorial: N must be >= 0");
  BigInt result = 1;
  BigInt fact = 1;
  for (int j = 1; j <= N; ++j) {
    fact *= j;
    result *= fact;
  }
  return result;
}

long lower_triangle_count(int N) {
  if (N < 1) throw ArgumentError("lower_triangle_count: N must be >= 1");
  return static_cast<long>(N) * (N - 1) / 2;
}

}  // namespace rho
