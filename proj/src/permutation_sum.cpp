#include "rho/permutation_sum.hpp"

#include <algorithm>
#include <numeric>

#include <omp.h>

namespace rho::kernels {

std::uint64_t factorial_u64(int K) {
  if (K < 0 || K > 20) throw ArgumentError("factorial_u64: K out of range [0, 20]");
  std::uint64_t f = 1;
  for (int k = 2; k <= K; ++k) f *= static_cast<std::uint64_t>(k);
  return f;
}

std::vector<int> unrank_permutation(int K, std::uint64_t rank) {
  std::vector<int> pool(static_cast<std::size_t>(K));
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<int> perm;
  perm.reserve(pool.size());
  for (int k = K; k >= 1; --k) {
    const std::uint64_t block = factorial_u64(k - 1);
    const auto idx = static_cast<std::size_t>(rank / block);
    rank %= block;
    perm.push_back(pool[idx]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  return perm;
}

std::vector<std::vector<int>> cycles_of(std::span<const int> perm) {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(perm.size(), 0);
  for (std::size_t s = 0; s < perm.size(); ++s) {
    if (seen[s]) continue;
    std::vector<int> cycle;
    for (auto a = static_cast<int>(s); !seen[static_cast<std::size_t>(a)]; a = perm[static_cast<std::size_t>(a)]) {
      seen[static_cast<std::size_t>(a)] = 1;
      cycle.push_back(a);
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

namespace {

// Walks the cycles of `perm` and returns (#cycles, product of weights),
// stopping early once a weight vanishes.
template <class Weight, class Value>
std::pair<int, Value> cycle_product(const std::vector<int>& perm, std::vector<char>& seen,
                                    std::vector<int>& cycle, const Weight& weight) {
  std::fill(seen.begin(), seen.end(), 0);
  Value product(1);
  int count = 0;
  for (std::size_t s = 0; s < perm.size(); ++s) {
    if (seen[s]) continue;
    cycle.clear();
    for (auto a = static_cast<int>(s); !seen[static_cast<std::size_t>(a)]; a = perm[static_cast<std::size_t>(a)]) {
      seen[static_cast<std::size_t>(a)] = 1;
      cycle.push_back(a);
    }
    ++count;
    product *= weight(cycle);
    if (product == Value(0)) return {count, Value(0)};
  }
  return {count, product};
}

struct EntryWeight {
  std::span<const EntryIndex> entries;
  int operator()(const std::vector<int>& cycle) const {
    const std::size_t m = cycle.size();
    for (std::size_t k = 0; k < m; ++k) {
      const auto& here = entries[static_cast<std::size_t>(cycle[k])];
      const auto& next = entries[static_cast<std::size_t>(cycle[(k + 1) % m])];
      if (here.first != next.second) return 0;
    }
    return 1;
  }
};

struct TraceWeight {
  std::span<const ComplexMatrix> observables;
  Complex operator()(const std::vector<int>& cycle) const {
    ComplexMatrix product = observables[static_cast<std::size_t>(cycle.front())];
    for (std::size_t k = 1; k < cycle.size(); ++k)
      product = product * observables[static_cast<std::size_t>(cycle[k])];
    return product.trace();
  }
};

int checked_order(std::size_t K) {
  if (K < 1 || K > 20) throw ArgumentError("permutation sum needs 1 <= K <= 20");
  return static_cast<int>(K);
}

std::vector<double> powers_of(double N, int K) {
  std::vector<double> p(static_cast<std::size_t>(K) + 1, 1.0);
  for (int c = 1; c <= K; ++c) p[static_cast<std::size_t>(c)] = p[static_cast<std::size_t>(c) - 1] * N;
  return p;
}

}  // namespace

std::vector<std::int64_t> entry_cycle_counts_serial(std::span<const EntryIndex> entries) {
  const int K = checked_order(entries.size());
  std::vector<std::int64_t> counts(static_cast<std::size_t>(K) + 1, 0);
  std::vector<int> perm(static_cast<std::size_t>(K));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<char> seen(perm.size());
  std::vector<int> cycle;
  const EntryWeight weight{entries};
  do {
    auto [c, w] = cycle_product<EntryWeight, int>(perm, seen, cycle, weight);
    counts[static_cast<std::size_t>(c)] += w;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return counts;
}

std::vector<std::int64_t> entry_cycle_counts_parallel(std::span<const EntryIndex> entries) {
  const int K = checked_order(entries.size());
  const std::uint64_t total = factorial_u64(K);
  const auto chunks = static_cast<std::int64_t>((total + kPermutationChunk - 1) / kPermutationChunk);
  const std::size_t width = static_cast<std::size_t>(K) + 1;
  std::vector<std::int64_t> counts(width, 0);
  const EntryWeight weight{entries};

#pragma omp parallel
  {
    std::vector<std::int64_t> local(width, 0);
    std::vector<char> seen(static_cast<std::size_t>(K));
    std::vector<int> cycle;
#pragma omp for schedule(dynamic)
    for (std::int64_t chunk = 0; chunk < chunks; ++chunk) {
      const std::uint64_t begin = static_cast<std::uint64_t>(chunk) * kPermutationChunk;
      const std::uint64_t end = std::min(total, begin + kPermutationChunk);
      std::vector<int> perm = unrank_permutation(K, begin);
      for (std::uint64_t r = begin; r < end; ++r) {
        auto [c, w] = cycle_product<EntryWeight, int>(perm, seen, cycle, weight);
        local[static_cast<std::size_t>(c)] += w;
        std::next_permutation(perm.begin(), perm.end());
      }
    }
    // Integer addition is exact, so the merge order is irrelevant.
#pragma omp critical(rho_entry_counts)
    for (std::size_t c = 0; c < width; ++c) counts[c] += local[c];
  }
  return counts;
}

Complex trace_cycle_sum_serial(std::span<const ComplexMatrix> observables) {
  const int K = checked_order(observables.size());
  const auto Npow = powers_of(static_cast<double>(observables.front().rows()), K);
  std::vector<int> perm(static_cast<std::size_t>(K));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<char> seen(perm.size());
  std::vector<int> cycle;
  const TraceWeight weight{observables};
  Complex total = 0.0;
  do {
    auto [c, w] = cycle_product<TraceWeight, Complex>(perm, seen, cycle, weight);
    total += Npow[static_cast<std::size_t>(c)] * w;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

Complex trace_cycle_sum_parallel(std::span<const ComplexMatrix> observables) {
  const int K = checked_order(observables.size());
  const auto Npow = powers_of(static_cast<double>(observables.front().rows()), K);
  const std::uint64_t total = factorial_u64(K);
  const auto chunks = static_cast<std::int64_t>((total + kPermutationChunk - 1) / kPermutationChunk);
  std::vector<Complex> partial(static_cast<std::size_t>(chunks), 0.0);
  const TraceWeight weight{observables};

#pragma omp parallel
  {
    std::vector<char> seen(static_cast<std::size_t>(K));
    std::vector<int> cycle;
#pragma omp for schedule(dynamic)
    for (std::int64_t chunk = 0; chunk < chunks; ++chunk) {
      const std::uint64_t begin = static_cast<std::uint64_t>(chunk) * kPermutationChunk;
      const std::uint64_t end = std::min(total, begin + kPermutationChunk);
      std::vector<int> perm = unrank_permutation(K, begin);
      Complex sum = 0.0;
      for (std::uint64_t r = begin; r < end; ++r) {
        auto [c, w] = cycle_product<TraceWeight, Complex>(perm, seen, cycle, weight);
        sum += Npow[static_cast<std::size_t>(c)] * w;
        std::next_permutation(perm.begin(), perm.end());
      }
      partial[static_cast<std::size_t>(chunk)] = sum;
    }
  }
  Complex sum = 0.0;
  for (const Complex& p : partial) sum += p;
  return sum;
}

}  // namespace rho::kernels
