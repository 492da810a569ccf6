#pragma once

// Exact moments over the probability simplex and the corner region
// {x >= 0, sum x < lambda}, plus a uniform simplex sampler.

#include <random>
#include <vector>

#include "rho/bigrational.hpp"

namespace rho {

/// Moment of prod x_b^{nu_b} under delta(sum x_b - lambda) on the positive orthant.
struct SimplexMomentSpec {
  std::vector<int> exponents;  // nu_b, length N_b >= 1
  BigRational scale = 1;       // lambda > 0

  void validate() const;
  int dimension() const { return static_cast<int>(exponents.size()); }
  /// nu = sum nu_b + N_b - 1.
  int total_degree() const;
};

/// Moment of prod x_B^{nu_B} f(sum x_B) over sum x_B < lambda, with
/// f(t) = sum_m f_coeffs[m] t^m.
struct DirichletSpec {
  std::vector<int> exponents;           // nu_B, length N_B >= 1
  BigRational scale = 1;                // lambda > 0
  std::vector<BigRational> f_coeffs{1};  // f(t) = 1 by default

  static DirichletSpec monomial(std::vector<int> exponents, BigRational scale, int power);
  void validate() const;
  /// nu = sum nu_B + N_B (the simplex degree with a trailing zero exponent).
  int total_degree() const;
};

/// (prod nu_b!) lambda^nu / nu!.
BigRational simplex_moment(const SimplexMomentSpec& spec);

/// (prod nu_B!) / nu! * g(lambda), g(lambda) = sum_m c_m nu lambda^{nu+m} / (nu+m).
BigRational dirichlet_moment(const DirichletSpec& spec);

/// Beta(m, n) = (m-1)! (n-1)! / (m+n-1)! for m, n >= 1.
BigRational beta_function(int m, int n);

/// Uniform point on the standard simplex of dimension N_b - 1, from
/// normalized exponential variates.
template <class Rng>
std::vector<double> sample_simplex(int N_b, Rng& rng) {
  if (N_b < 1) throw ArgumentError("sample_simplex: N_b must be >= 1");
  std::vector<double> p(static_cast<std::size_t>(N_b));
  if (N_b == 1) {
    p[0] = 1.0;
    return p;
  }
  std::exponential_distribution<double> expo(1.0);
  double total = 0.0;
  do {
    total = 0.0;
    for (double& x : p) {
      x = expo(rng);
      total += x;
    }
  } while (total <= 0.0);
  for (double& x : p) x /= total;
  return p;
}

}  // namespace rho
