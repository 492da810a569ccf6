#include "rho/tables.hpp"

#include <algorithm>

#include "rho/characters.hpp"
#include "rho/combinat.hpp"

namespace rho {

namespace {

void require_k(int K, int min_k) {
  if (K < min_k) throw ArgumentError("table needs K >= " + std::to_string(min_k));
}

// U(N) table columns: compare counts of t_K, then t_{K-1}, ... ascending
// (t1^4, t1^2 t2, t2^2, t1 t3, t4 at K = 4).
std::vector<PowerSumMonomial> unitary_column_order(int K) {
  std::vector<PowerSumMonomial> out;
  for (const auto& c : enumerate_cycle_types(K)) out.push_back(c.stripped());
  const auto count = [](const PowerSumMonomial& m, std::size_t r) { return r < m.size() ? m[r] : 0; };
  std::sort(out.begin(), out.end(), [&](const PowerSumMonomial& a, const PowerSumMonomial& b) {
    for (std::size_t r = static_cast<std::size_t>(K); r-- > 0;)
      if (count(a, r) != count(b, r)) return count(a, r) < count(b, r);
    return false;
  });
  return out;
}

}  // namespace

PolyInN dimension_polynomial(const Partition& irrep) {
  const int K = irrep.boxes();
  std::vector<BigRational> xs, ys;
  for (int N = 1; N <= K + 1; ++N) {
    xs.emplace_back(N);
    ys.emplace_back(weyl_dim(irrep, N));
  }
  return interpolate(xs, ys);
}

Table sym_char_table(int K) {
  require_k(K, 1);
  const auto classes = enumerate_cycle_types(K);
  Table t;
  t.title = "Characters of S_" + std::to_string(K);
  t.columns.push_back("irrep");
  std::vector<Cell> order_row{std::string("order")};
  for (const auto& c : classes) {
    t.columns.push_back(c.label());
    order_row.emplace_back(ScaledRational(BigRational(class_order(c))));
  }
  t.rows.push_back(std::move(order_row));
  for (const auto& eta : enumerate_partitions(K, K)) {
    std::vector<Cell> row{eta.label()};
    for (const auto& c : classes) row.emplace_back(ScaledRational(BigRational(sym_character(eta, c))));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table unitary_char_table(int K) {
  require_k(K, 1);
  const auto monomials = unitary_column_order(K);
  Table t;
  t.title = "U(N) characters in power sums, K = " + std::to_string(K);
  t.columns.push_back("irrep");
  for (const auto& m : monomials) t.columns.push_back(monomial_label(m));
  t.columns.push_back("dim(N)");
  for (const auto& eta : enumerate_partitions(K, K)) {
    const PowerSumPoly poly = unitary_char_poly(eta);
    std::vector<Cell> row{eta.label()};
    for (const auto& m : monomials) row.emplace_back(ScaledRational(poly.coefficient(m)));
    row.emplace_back(dimension_polynomial(eta));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table dims_table(int K, int max_n) {
  require_k(K, 1);
  Table t;
  t.title = "U(N) irrep dimensions, K = " + std::to_string(K);
  t.columns = {"irrep", "dim(N)"};
  for (int N = 1; N <= max_n; ++N) t.columns.push_back("N=" + std::to_string(N));
  for (const auto& eta : enumerate_partitions(K, K)) {
    std::vector<Cell> row{eta.label(), dimension_polynomial(eta)};
    for (int N = 1; N <= max_n; ++N) row.emplace_back(ScaledRational(BigRational(weyl_dim(eta, N))));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table dim_char_sum_table(int K, std::optional<int> N) {
  require_k(K, 0);
  std::vector<PowerSumMonomial> monomials;
  if (K == 0) monomials.push_back({});
  else
    for (const auto& c : enumerate_cycle_types(K)) monomials.push_back(c.stripped());

  Table t;
  t.title = "sum_eta dim(eta^N) chi^{eta^N}(A), K = " + std::to_string(K);
  if (N) {
    t.title += ", N = " + std::to_string(*N);
    t.columns = {"monomial", "coefficient"};
    const PowerSumPoly poly = dim_char_sum(K, *N);
    for (const auto& m : monomials)
      t.rows.push_back({monomial_label(m), ScaledRational(poly.coefficient(m))});
    return t;
  }
  t.columns = {"monomial", "coefficient(N)"};
  std::vector<BigRational> xs;
  std::vector<PowerSumPoly> samples;
  for (int n = 1; n <= K + 1; ++n) {
    xs.emplace_back(n);
    samples.push_back(dim_char_sum(K, n));
  }
  for (const auto& m : monomials) {
    std::vector<BigRational> ys;
    for (const auto& p : samples) ys.push_back(p.coefficient(m));
    t.rows.push_back({monomial_label(m), interpolate(xs, ys)});
  }
  return t;
}

}  // namespace rho
