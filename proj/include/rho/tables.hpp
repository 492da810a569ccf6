#pragma once

// Character and dimension tables in the row/column order used by the CLI:
// irreps reverse-lexicographic, classes from (1^K) down to (K).

#include <optional>

#include "rho/output.hpp"

namespace rho {

/// Order row followed by one row of S_K characters per irrep.
Table sym_char_table(int K);

/// Power-sum coefficients of each U(N) character plus its dimension polynomial.
Table unitary_char_table(int K);

/// Dimension polynomial of each K-box irrep and its values at N = 1..max_n.
Table dims_table(int K, int max_n = 8);

/// Coefficients of sum_eta dim(eta^N) chi^{eta^N}(A) per power-sum monomial,
/// as polynomials in N, or as exact numbers when N is given.
Table dim_char_sum_table(int K, std::optional<int> N = std::nullopt);

/// Dimension of eta^N as a polynomial in N, interpolated from weyl_dim.
PolyInN dimension_polynomial(const Partition& irrep);

}  // namespace rho
