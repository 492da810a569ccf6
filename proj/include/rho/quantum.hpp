#pragma once

// Exact moments of the flat (Hilbert-Schmidt) ensemble of N x N density
// matrices: ensemble volume, generating-function coefficients, the
// derivative expansion of power-sum monomials into trace products, and
// normalized moments E[prod_j (C_j . rho)].
//
// All user-facing moments are normalized by the ensemble volume, so they are
// exact rationals (entry moments) or plain complex numbers (general C_j).
// Unnormalized values carry their (2 pi)^{L_N} factor in ScaledRational.

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rho/bigrational.hpp"
#include "rho/characters.hpp"
#include "rho/combinat.hpp"

namespace rho {

/// rational * (2 pi)^twopi_exponent. Zero is stored with exponent 0.
struct ScaledRational {
  BigRational rational = 0;
  int twopi_exponent = 0;

  ScaledRational() = default;
  ScaledRational(BigRational r, int e = 0);

  double to_double() const;
  /// "p/q" or "p/q*(2pi)^e".
  std::string to_string() const;
  friend ScaledRational operator*(const ScaledRational& a, const ScaledRational& b);
  friend bool operator==(const ScaledRational&, const ScaledRational&) = default;
};

struct MomentOptions {
  int cap_k = 8;         // K! permutations are enumerated
  bool parallel = true;  // OpenMP kernel vs serial reference
};

/// Observables C_1..C_K, all N x N.
using ObservableList = std::vector<ComplexMatrix>;

/// Entry moment E[prod_p rho_{i_p j_p}] with 1-based index pairs.
struct EntryMomentSpec {
  int N = 1;
  std::vector<std::pair<int, int>> pairs;

  void validate() const;
  int order() const { return static_cast<int>(pairs.size()); }
  std::string label() const;
};

/// Formal sum of products of traces of observable cycles. Each cycle is a
/// list of 0-based observable indices rotated to start at its minimum;
/// factors within a term are sorted.
class TraceProductExpr {
 public:
  using Cycle = std::vector<int>;
  using Term = std::vector<Cycle>;

  void add(Term factors, const BigRational& coeff);
  TraceProductExpr& operator+=(const TraceProductExpr& other);
  TraceProductExpr& operator*=(const BigRational& scale);

  const std::map<Term, BigRational>& terms() const noexcept { return terms_; }
  /// Number of observables each term uses; 0 for an empty expression.
  int order() const;

  Complex evaluate(std::span<const ComplexMatrix> observables) const;
  /// Evaluate with single-entry observables; traces are Kronecker chains.
  BigRational evaluate_entries(const EntryMomentSpec& spec) const;

  std::string to_string() const;

 private:
  std::map<Term, BigRational> terms_;
};

/// Volume of the density-matrix body: (2 pi)^{L_N} F_{N-1} / (N^2 - 1)!.
ScaledRational hs_volume(int N);

/// prod beta_j! * Delta(beta).
BigInt det_lemma_value(std::span<const int> beta);

/// prod beta_j! Delta(beta) / (sum beta_j + L_N + N - 1)!.
BigRational int_lemma_value(std::span<const int> beta);

/// Normalized xi^K coefficient of the generating function:
/// (N^2-1)!/(K+N^2-1)! sum_{eta: K boxes, <= N rows} dim(eta^N) chi^{eta^N}(A).
Complex mgf_coefficient(int K, int N, const ComplexMatrix& A);

/// sum_{K=0}^{K_max} mgf_coefficient(K, N, A) -- truncated E[exp(tr(A rho))].
Complex mgf_series(const ComplexMatrix& A, int K_max);

/// Applies prod_j (C_j . d/dA) to the power-sum monomial t^monomial.
/// The result is sum over all permutations P of S_K of the product of
/// traces of C's grouped by the monomial's cycle pattern.
TraceProductExpr omega_expand(const CycleType& monomial, int K);

/// Term-by-term omega_expand of a homogeneous degree-K power-sum polynomial.
TraceProductExpr omega_apply(const PowerSumPoly& poly, int K);

/// (N^2-1)!/(K+N^2-1)! as an exact rational.
BigRational moment_prefactor(int K, int N);

/// E[prod_j (C_j . rho)] =
/// (N^2-1)!/(K+N^2-1)! sum_{pi in S_K} N^{c(pi)} prod_cycles tr(C_{j_1} ... C_{j_m}).
/// Throws ResourceLimitError when K > options.cap_k.
Complex moment_traces(std::span<const ComplexMatrix> observables, const MomentOptions& options = {});

/// Exact entry moment; equals moment_traces with single-entry observables.
BigRational entry_moment(const EntryMomentSpec& spec, const MomentOptions& options = {});

/// Unnormalized integral over the density-matrix body.
ScaledRational entry_moment_unnormalized(const EntryMomentSpec& spec,
                                         const MomentOptions& options = {});

/// One representative per orbit of K-pair entry moments under relabeling
/// of the basis, reordering of the factors, and transposing every pair.
/// Orbit members share one exact value.
std::vector<EntryMomentSpec> entry_moment_orbits(int N, int K);

/// E[tr rho^2] = 2N / (N^2 + 1), summed from entry moments.
BigRational purity_mean(int N);

/// Single-entry observable e_i e_j^T (0-based), so C . X = X_{ij}.
ComplexMatrix single_entry(int N, int i, int j);

}  // namespace rho
