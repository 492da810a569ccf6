#pragma once

// Sums over all permutations of S_K of N^{#cycles} times a product of
// per-cycle trace weights. Each kernel has a serial reference and an
// OpenMP version; the OpenMP version splits the permutation ranks into
// fixed-size chunks and reduces them in chunk order, so its result does not
// depend on the thread count.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "rho/characters.hpp"

namespace rho::kernels {

/// K! as a 64-bit integer; K must be <= 20.
std::uint64_t factorial_u64(int K);

/// The rank-th permutation of {0..K-1} in lexicographic order.
std::vector<int> unrank_permutation(int K, std::uint64_t rank);

/// Disjoint cycles of a permutation, each starting at its smallest element.
std::vector<std::vector<int>> cycles_of(std::span<const int> perm);

/// 0-based (row, column) of one matrix entry rho_{row, col}.
using EntryIndex = std::pair<int, int>;

/// counts[c] = number of permutations with c cycles whose Kronecker-chain
/// weight prod_k delta(row_{a_k}, col_{a_{k+1}}) (cyclically) is one.
std::vector<std::int64_t> entry_cycle_counts_serial(std::span<const EntryIndex> entries);
std::vector<std::int64_t> entry_cycle_counts_parallel(std::span<const EntryIndex> entries);

/// sum_pi N^{c(pi)} prod_{cycles (a_1..a_m)} tr(C_{a_1} ... C_{a_m}).
Complex trace_cycle_sum_serial(std::span<const ComplexMatrix> observables);
Complex trace_cycle_sum_parallel(std::span<const ComplexMatrix> observables);

/// Permutations per OpenMP work item.
inline constexpr std::uint64_t kPermutationChunk = 720;

}  // namespace rho::kernels
