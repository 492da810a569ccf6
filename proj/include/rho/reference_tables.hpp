#pragma once

// Published small-K tables, transcribed by hand. Used by the verify suite and
// the tests as golden data; nothing in the library computes from them.

#include <string>
#include <vector>

namespace rho::reference {

struct SymCharTable {
  int K;
  std::vector<std::vector<int>> classes;  // cycle counts (i_1, ..., i_K)
  std::vector<int> orders;
  std::vector<std::vector<int>> irreps;
  std::vector<std::vector<int>> characters;  // [irrep][class]
};

inline const std::vector<SymCharTable>& sym_char_tables() {
  static const std::vector<SymCharTable> tables{
      {1, {{1}}, {1}, {{1}}, {{1}}},
      {2, {{2, 0}, {0, 1}}, {1, 1}, {{2}, {1, 1}}, {{1, 1}, {1, -1}}},
      {3,
       {{3, 0, 0}, {1, 1, 0}, {0, 0, 1}},
       {1, 3, 2},
       {{3}, {2, 1}, {1, 1, 1}},
       {{1, 1, 1}, {2, 0, -1}, {1, -1, 1}}},
      {4,
       {{4, 0, 0, 0}, {2, 1, 0, 0}, {1, 0, 1, 0}, {0, 2, 0, 0}, {0, 0, 0, 1}},
       {1, 6, 8, 3, 6},
       {{4}, {3, 1}, {2, 2}, {2, 1, 1}, {1, 1, 1, 1}},
       {{1, 1, 1, 1, 1},
        {3, 1, 0, -1, -1},
        {2, 0, -1, 2, 0},
        {3, -1, 0, -1, 1},
        {1, -1, 1, 1, -1}}},
  };
  return tables;
}

struct PowerSumTerm {
  std::vector<int> monomial;  // exponents of t_1, t_2, ...
  std::string coefficient;    // "p" or "p/q"
};

struct UnitaryCharRow {
  std::vector<int> irrep;
  std::vector<PowerSumTerm> character;  // zero terms omitted
  std::string dim_scale;                // dim = scale * prod (N + shift)
  std::vector<int> dim_shifts;
};

inline const std::vector<UnitaryCharRow>& unitary_char_rows() {
  static const std::vector<UnitaryCharRow> rows{
      {{1}, {{{1}, "1"}}, "1", {0}},
      {{2}, {{{2}, "1/2"}, {{0, 1}, "1/2"}}, "1/2", {0, 1}},
      {{1, 1}, {{{2}, "1/2"}, {{0, 1}, "-1/2"}}, "1/2", {0, -1}},
      {{3}, {{{3}, "1/6"}, {{1, 1}, "1/2"}, {{0, 0, 1}, "1/3"}}, "1/6", {0, 1, 2}},
      {{2, 1}, {{{3}, "1/3"}, {{0, 0, 1}, "-1/3"}}, "1/3", {0, 1, -1}},
      {{1, 1, 1}, {{{3}, "1/6"}, {{1, 1}, "-1/2"}, {{0, 0, 1}, "1/3"}}, "1/6", {0, -1, -2}},
      {{4},
       {{{4}, "1/24"}, {{2, 1}, "1/4"}, {{0, 2}, "1/8"}, {{1, 0, 1}, "1/3"}, {{0, 0, 0, 1}, "1/4"}},
       "1/24",
       {0, 1, 2, 3}},
      {{3, 1},
       {{{4}, "1/8"}, {{2, 1}, "1/4"}, {{0, 2}, "-1/8"}, {{0, 0, 0, 1}, "-1/4"}},
       "1/8",
       {0, 1, 2, -1}},
      {{2, 2}, {{{4}, "1/12"}, {{0, 2}, "1/4"}, {{1, 0, 1}, "-1/3"}}, "1/12", {0, 0, 1, -1}},
      {{2, 1, 1},
       {{{4}, "1/8"}, {{2, 1}, "-1/4"}, {{0, 2}, "-1/8"}, {{0, 0, 0, 1}, "1/4"}},
       "1/8",
       {0, 1, -1, -2}},
      {{1, 1, 1, 1},
       {{{4}, "1/24"}, {{2, 1}, "-1/4"}, {{0, 2}, "1/8"}, {{1, 0, 1}, "1/3"}, {{0, 0, 0, 1}, "-1/4"}},
       "1/24",
       {0, -1, -2, -3}},
  };
  return rows;
}

struct DimCharTerm {
  std::vector<int> monomial;
  std::string coefficient;  // multiplies N^n_power
  int n_power;
};

/// sum over K-box irreps of dim * character, K = 0..4.
inline const std::vector<std::vector<DimCharTerm>>& dim_char_sums() {
  static const std::vector<std::vector<DimCharTerm>> sums{
      {{{}, "1", 0}},
      {{{1}, "1", 1}},
      {{{2}, "1/2", 2}, {{0, 1}, "1/2", 1}},
      {{{3}, "1/6", 3}, {{1, 1}, "1/2", 2}, {{0, 0, 1}, "1/3", 1}},
      {{{4}, "1/24", 4},
       {{2, 1}, "1/4", 3},
       {{1, 0, 1}, "1/3", 2},
       {{0, 2}, "1/8", 2},
       {{0, 0, 0, 1}, "1/4", 1}},
  };
  return sums;
}

}  // namespace rho::reference
