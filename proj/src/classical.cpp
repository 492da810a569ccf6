#include "rho/classical.hpp"

#include <numeric>

namespace rho {

void SimplexMomentSpec::validate() const {
  if (exponents.empty()) throw ArgumentError("simplex moment needs at least one exponent");
  for (int nu : exponents)
    if (nu < 0) throw ArgumentError("simplex exponents must be non-negative");
  if (scale <= 0) throw ArgumentError("simplex scale lambda must be positive");
}

int SimplexMomentSpec::total_degree() const {
  return std::accumulate(exponents.begin(), exponents.end(), 0) + dimension() - 1;
}

DirichletSpec DirichletSpec::monomial(std::vector<int> exponents, BigRational scale, int power) {
  if (power < 0) throw ArgumentError("f(t) = t^m needs m >= 0");
  DirichletSpec spec{std::move(exponents), std::move(scale), {}};
  spec.f_coeffs.assign(static_cast<std::size_t>(power) + 1, BigRational(0));
  spec.f_coeffs.back() = 1;
  return spec;
}

void DirichletSpec::validate() const {
  if (exponents.empty()) throw ArgumentError("Dirichlet integral needs at least one exponent");
  for (int nu : exponents)
    if (nu < 0) throw ArgumentError("Dirichlet exponents must be non-negative");
  if (scale <= 0) throw ArgumentError("Dirichlet scale lambda must be positive");
  if (f_coeffs.empty()) throw ArgumentError("Dirichlet weight f needs at least one coefficient");
}

int DirichletSpec::total_degree() const {
  return std::accumulate(exponents.begin(), exponents.end(), 0) +
         static_cast<int>(exponents.size());
}

BigRational simplex_moment(const SimplexMomentSpec& spec) {
  spec.validate();
  BigInt numer = 1;
  for (int nu : spec.exponents) numer *= factorial(nu);
  const int nu = spec.total_degree();
  return BigRational(numer, factorial(nu)) * pow_rational(spec.scale, static_cast<unsigned>(nu));
}

BigRational dirichlet_moment(const DirichletSpec& spec) {
  spec.validate();
  BigInt numer = 1;
  for (int nu : spec.exponents) numer *= factorial(nu);
  const int nu = spec.total_degree();
  BigRational g = 0;
  for (std::size_t m = 0; m < spec.f_coeffs.size(); ++m) {
    if (spec.f_coeffs[m] == 0) continue;
    const int deg = nu + static_cast<int>(m);
    g += spec.f_coeffs[m] * BigRational(nu, deg) *
         pow_rational(spec.scale, static_cast<unsigned>(deg));
  }
  return BigRational(numer, factorial(nu)) * g;
}

BigRational beta_function(int m, int n) {
  if (m < 1 || n < 1) throw ArgumentError("beta_function: arguments must be >= 1");
  return BigRational(factorial(m - 1) * factorial(n - 1), factorial(m + n - 1));
}

}  // namespace rho
