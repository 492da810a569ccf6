#pragma once

// Symmetric-group characters, U(N) characters as power-sum polynomials and
// as determinant ratios, Weyl dimensions, and dimension-weighted sums.

#include <complex>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rho/bigrational.hpp"
#include "rho/combinat.hpp"

namespace rho {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// Exponent vector (e_1, e_2, ...) of t_1^{e_1} t_2^{e_2} ..., trailing zeros
/// stripped. The empty vector is the constant monomial.
using PowerSumMonomial = std::vector<int>;

/// Sum of r * e_r.
int monomial_weight(const PowerSumMonomial& m);
/// "t1^2 t2", or "1" for the constant monomial.
std::string monomial_label(const PowerSumMonomial& m);

/// Polynomial in the trace power sums t_r = tr(A^r) with exact coefficients.
/// Zero coefficients are never stored.
class PowerSumPoly {
 public:
  PowerSumPoly() = default;
  static PowerSumPoly constant(const BigRational& c);

  void add_term(PowerSumMonomial m, const BigRational& coeff);
  BigRational coefficient(const PowerSumMonomial& m) const;
  const std::map<PowerSumMonomial, BigRational>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  /// Largest r with a nonzero exponent anywhere (0 for constants).
  int max_power() const noexcept;
  /// True when every monomial has box weight K.
  bool is_homogeneous(int K) const;

  PowerSumPoly& operator+=(const PowerSumPoly& other);
  PowerSumPoly& operator*=(const BigRational& scale);
  friend PowerSumPoly operator*(const BigRational& s, PowerSumPoly p) { return p *= s; }
  friend bool operator==(const PowerSumPoly&, const PowerSumPoly&) = default;

  /// power_sums[r-1] holds t_r; must cover max_power().
  Complex evaluate(std::span<const Complex> power_sums) const;
  BigRational evaluate_exact(std::span<const BigRational> power_sums) const;

  std::string to_string() const;

 private:
  std::map<PowerSumMonomial, BigRational> terms_;
};

/// Character of S_K in irrep `irrep` on class `cls` (Murnaghan-Nakayama).
/// Throws ArgumentError when the box counts differ.
BigInt sym_character(const Partition& irrep, const CycleType& cls);

/// Thread-safe memo table behind sym_character.
class CharacterCache {
 public:
  static CharacterCache& instance();
  BigInt lookup(const Partition& irrep, const CycleType& cls);
  std::size_t size() const;
  void clear();

 private:
  mutable std::shared_mutex mutex_;
  std::map<std::pair<std::vector<int>, std::vector<int>>, BigInt> table_;
};

/// chi^{eta^N}(A) = sum_classes |C|/K! chi^eta(C) t^C. Independent of N.
PowerSumPoly unitary_char_poly(const Partition& irrep);

/// (t_1, ..., t_max_r) with t_r = tr(A^r) by repeated multiplication.
std::vector<Complex> eval_power_sums(const ComplexMatrix& A, int max_r);

/// Power-sum route to chi^{eta^N}(A). Rejects irreps with more rows than N.
Complex unitary_char_eval(const Partition& irrep, const ComplexMatrix& A);

/// Thrown when the Vandermonde denominator of the ratio formula vanishes
/// numerically.
class DegenerateSpectrumError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Determinant-ratio route to chi^{eta^N}(A) from the eigenvalues of A.
/// Throws DegenerateSpectrumError when
/// |Delta(alpha)| < 1e-12 * (max_{i,j} |alpha_i - alpha_j|)^{L_N}.
Complex unitary_char_ratio(const Partition& irrep, std::span<const Complex> eigenvalues);

/// Weyl dimension of eta^N; zero when eta has more than N rows.
BigInt weyl_dim(const Partition& irrep, int N);

/// sum over K-box irreps of dim(eta^N) chi^{eta^N}(A), as a power-sum
/// polynomial at fixed N. K = 0 gives the constant 1.
PowerSumPoly dim_char_sum(int K, int N);

}  // namespace rho
