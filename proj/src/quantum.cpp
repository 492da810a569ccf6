#include "rho/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "rho/permutation_sum.hpp"

namespace rho {

// --- ScaledRational -------------------------------------------------------

ScaledRational::ScaledRational(BigRational r, int e)
    : rational(std::move(r)), twopi_exponent(rational == 0 ? 0 : e) {}

double ScaledRational::to_double() const {
  return rho::to_double(rational) * std::pow(2.0 * std::numbers::pi, twopi_exponent);
}

std::string ScaledRational::to_string() const {
  std::string s = rho::to_string(rational);
  if (twopi_exponent != 0) s += "*(2pi)^" + std::to_string(twopi_exponent);
  return s;
}

ScaledRational operator*(const ScaledRational& a, const ScaledRational& b) {
  return ScaledRational(a.rational * b.rational, a.twopi_exponent + b.twopi_exponent);
}

// --- specs ----------------------------------------------------------------

void EntryMomentSpec::validate() const {
  if (N < 1) throw ArgumentError("entry moment: N must be >= 1");
  if (pairs.empty()) throw ArgumentError("entry moment: need at least one index pair");
  for (const auto& [i, j] : pairs) {
    if (i < 1 || i > N || j < 1 || j > N)
      throw ArgumentError("entry moment: index pair (" + std::to_string(i) + "," +
                          std::to_string(j) + ") out of range for N = " + std::to_string(N));
  }
}

std::string EntryMomentSpec::label() const {
  std::string s = "E[";
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    if (p) s += ' ';
    s += "rho" + std::to_string(pairs[p].first) + std::to_string(pairs[p].second);
  }
  return s + "] N=" + std::to_string(N);
}

ComplexMatrix single_entry(int N, int i, int j) {
  ComplexMatrix C = ComplexMatrix::Zero(N, N);
  C(i, j) = 1.0;
  return C;
}

// --- TraceProductExpr -----------------------------------------------------

namespace {

TraceProductExpr::Cycle canonical_cycle(TraceProductExpr::Cycle c) {
  std::rotate(c.begin(), std::min_element(c.begin(), c.end()), c.end());
  return c;
}

}  // namespace

void TraceProductExpr::add(Term factors, const BigRational& coeff) {
  if (coeff == 0) return;
  for (auto& f : factors) f = canonical_cycle(std::move(f));
  std::sort(factors.begin(), factors.end());
  auto [it, inserted] = terms_.try_emplace(std::move(factors), coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

TraceProductExpr& TraceProductExpr::operator+=(const TraceProductExpr& other) {
  for (const auto& [t, c] : other.terms_) add(t, c);
  return *this;
}

TraceProductExpr& TraceProductExpr::operator*=(const BigRational& scale) {
  if (scale == 0) terms_.clear();
  for (auto& [t, c] : terms_) c *= scale;
  return *this;
}

int TraceProductExpr::order() const {
  if (terms_.empty()) return 0;
  int K = 0;
  for (const auto& f : terms_.begin()->first) K += static_cast<int>(f.size());
  return K;
}

Complex TraceProductExpr::evaluate(std::span<const ComplexMatrix> observables) const {
  if (!terms_.empty() && static_cast<int>(observables.size()) < order())
    throw ArgumentError("TraceProductExpr::evaluate: not enough observables");
  Complex total = 0.0;
  for (const auto& [term, coeff] : terms_) {
    Complex value = rho::to_double(coeff);
    for (const Cycle& cycle : term) {
      ComplexMatrix product = observables[static_cast<std::size_t>(cycle.front())];
      for (std::size_t k = 1; k < cycle.size(); ++k)
        product = product * observables[static_cast<std::size_t>(cycle[k])];
      value *= product.trace();
    }
    total += value;
  }
  return total;
}

BigRational TraceProductExpr::evaluate_entries(const EntryMomentSpec& spec) const {
  spec.validate();
  if (!terms_.empty() && spec.order() < order())
    throw ArgumentError("TraceProductExpr::evaluate_entries: not enough index pairs");
  // C_a = e_{i_a} e_{j_a}^T, so tr(C_{a_1} ... C_{a_m}) = prod delta(j_{a_k}, i_{a_{k+1}}).
  BigRational total = 0;
  for (const auto& [term, coeff] : terms_) {
    bool nonzero = true;
    for (const Cycle& cycle : term) {
      for (std::size_t k = 0; k < cycle.size() && nonzero; ++k) {
        const auto& here = spec.pairs[static_cast<std::size_t>(cycle[k])];
        const auto& next = spec.pairs[static_cast<std::size_t>(cycle[(k + 1) % cycle.size()])];
        nonzero = here.second == next.first;
      }
      if (!nonzero) break;
    }
    if (nonzero) total += coeff;
  }
  return total;
}

std::string TraceProductExpr::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [term, coeff] : terms_) {
    const BigRational mag = coeff < 0 ? BigRational(-coeff) : coeff;
    if (first) {
      if (coeff < 0) os << "-";
    } else {
      os << (coeff < 0 ? " - " : " + ");
    }
    first = false;
    if (mag != 1) os << rho::to_string(mag) << " ";
    for (std::size_t f = 0; f < term.size(); ++f) {
      if (f) os << " ";
      os << "tr(";
      for (std::size_t k = 0; k < term[f].size(); ++k) os << (k ? " " : "") << "C" << term[f][k] + 1;
      os << ")";
    }
  }
  return os.str();
}

// --- closed forms ---------------------------------------------------------

ScaledRational hs_volume(int N) {
  if (N < 1) throw ArgumentError("hs_volume: N must be >= 1");
  return ScaledRational(BigRational(super_factorial(N - 1), factorial(N * N - 1)),
                        static_cast<int>(lower_triangle_count(N)));
}

BigInt det_lemma_value(std::span<const int> beta) {
  BigInt product = 1;
  for (int b : beta) {
    if (b < 0) throw ArgumentError("det_lemma_value: entries must be non-negative");
    product *= factorial(b);
  }
  return product * vandermonde(beta);
}

BigRational int_lemma_value(std::span<const int> beta) {
  const int N = static_cast<int>(beta.size());
  if (N < 1) throw ArgumentError("int_lemma_value: beta must be non-empty");
  const int sum = std::accumulate(beta.begin(), beta.end(), 0);
  const long degree = sum + lower_triangle_count(N) + N - 1;
  return BigRational(det_lemma_value(beta), factorial(static_cast<int>(degree)));
}

BigRational moment_prefactor(int K, int N) {
  if (K < 0 || N < 1) throw ArgumentError("moment_prefactor: need K >= 0, N >= 1");
  return BigRational(1, factorial_ratio(K + N * N - 1, N * N - 1));
}

Complex mgf_coefficient(int K, int N, const ComplexMatrix& A) {
  if (K < 0) throw ArgumentError("mgf_coefficient: K must be >= 0");
  if (A.rows() != N || A.cols() != N)
    throw ArgumentError("mgf_coefficient: A must be " + std::to_string(N) + "x" + std::to_string(N));
  if (K == 0) return 1.0;
  Complex sum = 0.0;
  for (const Partition& eta : enumerate_partitions(K, N))
    sum += to_double(BigRational(weyl_dim(eta, N))) * unitary_char_eval(eta, A);
  return to_double(moment_prefactor(K, N)) * sum;
}

Complex mgf_series(const ComplexMatrix& A, int K_max) {
  if (K_max < 0) throw ArgumentError("mgf_series: K_max must be >= 0");
  const int N = static_cast<int>(A.rows());
  Complex total = 0.0;
  for (int K = 0; K <= K_max; ++K) total += mgf_coefficient(K, N, A);
  return total;
}

// --- derivative expansion -------------------------------------------------

TraceProductExpr omega_expand(const CycleType& monomial, int K) {
  if (monomial.total() != K)
    throw ArgumentError("omega_expand: monomial " + monomial.label() + " has box weight " +
                        std::to_string(monomial.total()) + ", expected " + std::to_string(K));
  TraceProductExpr expr;
  if (K == 0) {
    expr.add({}, 1);
    return expr;
  }
  const std::vector<int> lengths = monomial.cycle_lengths();
  std::vector<int> perm(static_cast<std::size_t>(K));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    TraceProductExpr::Term term;
    std::size_t pos = 0;
    for (int len : lengths) {
      term.emplace_back(perm.begin() + static_cast<std::ptrdiff_t>(pos),
                        perm.begin() + static_cast<std::ptrdiff_t>(pos + static_cast<std::size_t>(len)));
      pos += static_cast<std::size_t>(len);
    }
    expr.add(std::move(term), 1);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return expr;
}

TraceProductExpr omega_apply(const PowerSumPoly& poly, int K) {
  TraceProductExpr total;
  for (const auto& [m, coeff] : poly.terms()) {
    TraceProductExpr piece = omega_expand(CycleType(m), K);
    piece *= coeff;
    total += piece;
  }
  return total;
}

// --- moments --------------------------------------------------------------

namespace {

void check_cap(int K, const MomentOptions& options) {
  if (K > options.cap_k)
    throw ResourceLimitError("moment of order K = " + std::to_string(K) +
                             " exceeds the permutation-sum cap K <= " +
                             std::to_string(options.cap_k) + " (K! terms)");
}

bool all_equal(std::span<const ComplexMatrix> observables) {
  return std::all_of(observables.begin(), observables.end(),
                     [&](const ComplexMatrix& C) { return C == observables.front(); });
}

// With every C_j equal, each class contributes |C| N^{cycles} prod_r t_r^{i_r}.
Complex class_weighted_sum(const ComplexMatrix& C, int K) {
  const int N = static_cast<int>(C.rows());
  const auto t = eval_power_sums(C, K);
  Complex total = 0.0;
  for (const CycleType& c : enumerate_cycle_types(K)) {
    Complex term = to_double(BigRational(class_order(c))) * std::pow(static_cast<double>(N), c.cycles());
    for (int r = 1; r <= K; ++r)
      for (int e = 0; e < c.count(r); ++e) term *= t[static_cast<std::size_t>(r - 1)];
    total += term;
  }
  return total;
}

}  // namespace

Complex moment_traces(std::span<const ComplexMatrix> observables, const MomentOptions& options) {
  const int K = static_cast<int>(observables.size());
  if (K < 1) throw ArgumentError("moment_traces: need at least one observable");
  const auto N = observables.front().rows();
  if (N < 1) throw ArgumentError("moment_traces: observables must be non-empty");
  for (const auto& C : observables)
    if (C.rows() != N || C.cols() != N)
      throw ArgumentError("moment_traces: observables must all be square of the same size");
  check_cap(K, options);

  Complex sum;
  if (all_equal(observables)) {
    sum = class_weighted_sum(observables.front(), K);
  } else if (options.parallel) {
    sum = kernels::trace_cycle_sum_parallel(observables);
  } else {
    sum = kernels::trace_cycle_sum_serial(observables);
  }
  return to_double(moment_prefactor(K, static_cast<int>(N))) * sum;
}

BigRational entry_moment(const EntryMomentSpec& spec, const MomentOptions& options) {
  spec.validate();
  const int K = spec.order();
  check_cap(K, options);
  // The kernel's Kronecker chains use D_p = e_{j_p} e_{i_p}^T with
  // tr(D_p rho) = rho_{i_p j_p}; 0-based indices.
  std::vector<kernels::EntryIndex> entries;
  entries.reserve(spec.pairs.size());
  for (const auto& [i, j] : spec.pairs) entries.emplace_back(i - 1, j - 1);
  const auto counts = options.parallel ? kernels::entry_cycle_counts_parallel(entries)
                                       : kernels::entry_cycle_counts_serial(entries);
  BigInt sum = 0;
  BigInt Npow = 1;
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (c) Npow *= spec.N;
    sum += BigInt(counts[c]) * Npow;
  }
  return BigRational(sum) * moment_prefactor(K, spec.N);
}

ScaledRational entry_moment_unnormalized(const EntryMomentSpec& spec, const MomentOptions& options) {
  return hs_volume(spec.N) * ScaledRational(entry_moment(spec, options));
}

std::vector<EntryMomentSpec> entry_moment_orbits(int N, int K) {
  if (N < 1 || K < 1) throw ArgumentError("entry_moment_orbits: need N >= 1 and K >= 1");
  using Pairs = std::vector<std::pair<int, int>>;
  std::vector<int> sigma(static_cast<std::size_t>(N));
  const auto canonical = [&](const Pairs& pairs) {
    Pairs best;
    std::iota(sigma.begin(), sigma.end(), 1);
    do {
      for (bool transpose : {false, true}) {
        Pairs image;
        for (auto [i, j] : pairs) {
          int a = sigma[static_cast<std::size_t>(i - 1)], b = sigma[static_cast<std::size_t>(j - 1)];
          if (transpose) std::swap(a, b);
          image.emplace_back(a, b);
        }
        std::sort(image.begin(), image.end());
        if (best.empty() || image < best) best = std::move(image);
      }
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return best;
  };

  std::vector<Pairs> seen;
  Pairs current(static_cast<std::size_t>(K));
  // Non-decreasing sequences of flattened pair codes enumerate multisets.
  std::vector<int> codes(static_cast<std::size_t>(K), 0);
  const int M = N * N;
  while (true) {
    for (int p = 0; p < K; ++p)
      current[static_cast<std::size_t>(p)] = {codes[static_cast<std::size_t>(p)] / N + 1,
                                              codes[static_cast<std::size_t>(p)] % N + 1};
    Pairs rep = canonical(current);
    if (std::find(seen.begin(), seen.end(), rep) == seen.end()) seen.push_back(std::move(rep));
    int p = K - 1;
    while (p >= 0 && codes[static_cast<std::size_t>(p)] == M - 1) --p;
    if (p < 0) break;
    ++codes[static_cast<std::size_t>(p)];
    for (int q = p + 1; q < K; ++q) codes[static_cast<std::size_t>(q)] = codes[static_cast<std::size_t>(p)];
  }
  std::sort(seen.begin(), seen.end());
  std::vector<EntryMomentSpec> specs;
  for (auto& pairs : seen) specs.push_back({N, std::move(pairs)});
  return specs;
}

BigRational purity_mean(int N) {
  if (N < 1) throw ArgumentError("purity_mean: N must be >= 1");
  BigRational total = 0;
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j) total += entry_moment({N, {{i, j}, {j, i}}}, {.cap_k = 2, .parallel = false});
  return total;
}

}  // namespace rho
