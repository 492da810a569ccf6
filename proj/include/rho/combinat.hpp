#pragma once

// Partitions (Young diagrams), symmetric-group cycle types, Vandermonde
// products and the factorial constants shared by the rest of the library.

#include <compare>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "rho/bigrational.hpp"

namespace rho {

/// Integer vector with explicit length: exponent vectors, staircases, etc.
using IntVector = std::vector<int>;

/// A Young diagram: weakly decreasing row lengths, top row first.
/// Trailing zero rows are stripped on construction.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts);

  const std::vector<int>& parts() const noexcept { return parts_; }
  int boxes() const noexcept;
  int rows() const noexcept { return static_cast<int>(parts_.size()); }

  /// Row lengths padded with zeros to exactly `length` entries.
  /// Throws ArgumentError if the partition has more than `length` rows.
  IntVector padded(int length) const;

  /// "2,1" style label; the empty partition prints as "".
  std::string label() const;

  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
};

/// Conjugacy class of S_K by cycle multiplicities (i_1, ..., i_K).
/// Stores exactly K slots; equality and ordering ignore trailing zeros.
class CycleType {
 public:
  CycleType() = default;
  /// counts[r-1] is the number of cycles of length r; K is sum r*i_r.
  explicit CycleType(std::vector<int> counts);
  /// As above, but throws ArgumentError unless sum r*i_r == K.
  static CycleType with_total(std::vector<int> counts, int K);

  static CycleType from_cycle_lengths(std::span<const int> lengths);

  int total() const noexcept { return static_cast<int>(counts_.size()); }
  int cycles() const noexcept;
  /// Number of cycles of length r (r >= 1); zero past K.
  int count(int r) const noexcept;
  const std::vector<int>& counts() const noexcept { return counts_; }
  /// Cycle lengths in descending order.
  std::vector<int> cycle_lengths() const;
  /// Trailing-zero-stripped counts, used as a power-sum monomial exponent.
  std::vector<int> stripped() const;

  /// Paper-style label: "(1^2,2)", "(4)".
  std::string label() const;

  friend bool operator==(const CycleType& a, const CycleType& b) {
    return a.stripped() == b.stripped();
  }

 private:
  std::vector<int> counts_;
};

/// All partitions of K with at most max_rows rows, reverse-lexicographic
/// ((K) first). K = 0 yields the single empty partition.
std::vector<Partition> enumerate_partitions(int K, int max_rows);

/// All cycle types of S_K, ordered by descending count vector:
/// (1^K) first, (K) last.
std::vector<CycleType> enumerate_cycle_types(int K);

/// |C(i)| = K! / prod_r (r^{i_r} i_r!).
BigInt class_order(const CycleType& c);

/// prod_{i<j} (v_j - v_i); 1 for empty and singleton input.
template <class T>
T vandermonde(std::span<const T> v) {
  T result(1);
  for (std::size_t j = 0; j < v.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) result *= (v[j] - v[i]);
  return result;
}

BigInt vandermonde(std::span<const int> v);

/// F_N = prod_{j=1..N} j!.
BigInt super_factorial(int N);

/// L_N = N(N-1)/2.
long lower_triangle_count(int N);

}  // namespace rho

template <>
struct std::hash<rho::Partition> {
  std::size_t operator()(const rho::Partition& p) const noexcept {
    std::size_t h = 0;
    for (int x : p.parts()) h = h * 131 + static_cast<std::size_t>(x);
    return h;
  }
};
