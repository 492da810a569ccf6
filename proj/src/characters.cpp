#include "rho/characters.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rho {

int monomial_weight(const PowerSumMonomial& m) {
  int w = 0;
  for (std::size_t r = 0; r < m.size(); ++r) w += static_cast<int>(r + 1) * m[r];
  return w;
}

std::string monomial_label(const PowerSumMonomial& m) {
  std::string s;
  for (std::size_t r = 0; r < m.size(); ++r) {
    if (m[r] == 0) continue;
    if (!s.empty()) s += ' ';
    s += "t" + std::to_string(r + 1);
    if (m[r] > 1) s += "^" + std::to_string(m[r]);
  }
  return s.empty() ? "1" : s;
}

namespace {

PowerSumMonomial strip(PowerSumMonomial m) {
  while (!m.empty() && m.back() == 0) m.pop_back();
  return m;
}

}  // namespace

PowerSumPoly PowerSumPoly::constant(const BigRational& c) {
  PowerSumPoly p;
  p.add_term({}, c);
  return p;
}

void PowerSumPoly::add_term(PowerSumMonomial m, const BigRational& coeff) {
  if (coeff == 0) return;
  m = strip(std::move(m));
  auto [it, inserted] = terms_.try_emplace(std::move(m), coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

BigRational PowerSumPoly::coefficient(const PowerSumMonomial& m) const {
  auto it = terms_.find(strip(m));
  return it == terms_.end() ? BigRational(0) : it->second;
}

int PowerSumPoly::max_power() const noexcept {
  int r = 0;
  for (const auto& [m, c] : terms_) r = std::max(r, static_cast<int>(m.size()));
  return r;
}

bool PowerSumPoly::is_homogeneous(int K) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [K](const auto& t) { return monomial_weight(t.first) == K; });
}

PowerSumPoly& PowerSumPoly::operator+=(const PowerSumPoly& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

PowerSumPoly& PowerSumPoly::operator*=(const BigRational& scale) {
  if (scale == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= scale;
  return *this;
}

Complex PowerSumPoly::evaluate(std::span<const Complex> power_sums) const {
  if (static_cast<int>(power_sums.size()) < max_power())
    throw ArgumentError("PowerSumPoly::evaluate: not enough power sums");
  Complex total = 0.0;
  for (const auto& [m, c] : terms_) {
    Complex term = to_double(c);
    for (std::size_t r = 0; r < m.size(); ++r)
      for (int e = 0; e < m[r]; ++e) term *= power_sums[r];
    total += term;
  }
  return total;
}

BigRational PowerSumPoly::evaluate_exact(std::span<const BigRational> power_sums) const {
  if (static_cast<int>(power_sums.size()) < max_power())
    throw ArgumentError("PowerSumPoly::evaluate_exact: not enough power sums");
  BigRational total = 0;
  for (const auto& [m, c] : terms_) {
    BigRational term = c;
    for (std::size_t r = 0; r < m.size(); ++r)
      term *= pow_rational(power_sums[r], static_cast<unsigned>(m[r]));
    total += term;
  }
  return total;
}

std::string PowerSumPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest t_1 power first, which puts t1^K at the front.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    BigRational mag = c < 0 ? BigRational(-c) : c;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit = mag == 1 && !m.empty();
    if (!unit) os << rho::to_string(mag);
    if (!m.empty()) os << (unit ? "" : " ") << monomial_label(m);
  }
  return os.str();
}

// --- symmetric group ------------------------------------------------------

namespace {

using BetaSet = std::vector<int>;  // ascending, distinct

BetaSet beta_set(const Partition& p) {
  const int L = p.rows();
  BetaSet beta(static_cast<std::size_t>(L));
  for (int i = 0; i < L; ++i) beta[static_cast<std::size_t>(L - 1 - i)] = p.parts()[i] + (L - 1 - i);
  return beta;
}

struct MnSolver {
  std::vector<int> lengths;
  std::map<std::pair<BetaSet, std::size_t>, BigInt> memo;

  BigInt solve(const BetaSet& beta, std::size_t idx) {
    if (idx == lengths.size()) return 1;
    auto key = std::make_pair(beta, idx);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const int r = lengths[idx];
    BigInt total = 0;
    for (std::size_t k = 0; k < beta.size(); ++k) {
      const int b = beta[k];
      const int target = b - r;
      if (target < 0 || std::binary_search(beta.begin(), beta.end(), target)) continue;
      // Beads strictly between target and b give the leg length of the strip.
      const auto lo = std::upper_bound(beta.begin(), beta.end(), target);
      const auto height = (beta.begin() + static_cast<std::ptrdiff_t>(k)) - lo;
      BetaSet next = beta;
      next[k] = target;
      std::sort(next.begin(), next.end());
      BigInt sub = solve(next, idx + 1);
      if (height % 2) total -= sub;
      else total += sub;
    }
    memo.emplace(std::move(key), total);
    return total;
  }
};

BigInt murnaghan_nakayama(const Partition& irrep, const CycleType& cls) {
  MnSolver solver{cls.cycle_lengths(), {}};
  return solver.solve(beta_set(irrep), 0);
}

}  // namespace

CharacterCache& CharacterCache::instance() {
  static CharacterCache cache;
  return cache;
}

BigInt CharacterCache::lookup(const Partition& irrep, const CycleType& cls) {
  auto key = std::make_pair(irrep.parts(), cls.stripped());
  {
    std::shared_lock lock(mutex_);
    if (auto it = table_.find(key); it != table_.end()) return it->second;
  }
  BigInt value = murnaghan_nakayama(irrep, cls);
  std::unique_lock lock(mutex_);
  table_.emplace(std::move(key), value);
  return value;
}

std::size_t CharacterCache::size() const {
  std::shared_lock lock(mutex_);
  return table_.size();
}

void CharacterCache::clear() {
  std::unique_lock lock(mutex_);
  table_.clear();
}

BigInt sym_character(const Partition& irrep, const CycleType& cls) {
  if (irrep.boxes() != cls.total())
    throw ArgumentError("sym_character: irrep " + irrep.label() + " has " +
                        std::to_string(irrep.boxes()) + " boxes but class " + cls.label() +
                        " permutes " + std::to_string(cls.total()) + " letters");
  return CharacterCache::instance().lookup(irrep, cls);
}

// --- unitary group --------------------------------------------------------

PowerSumPoly unitary_char_poly(const Partition& irrep) {
  const int K = irrep.boxes();
  if (K < 1) throw ArgumentError("unitary_char_poly: irrep must have at least one box");
  const BigInt k_fact = factorial(K);
  PowerSumPoly poly;
  for (const CycleType& c : enumerate_cycle_types(K)) {
    const BigInt chi = sym_character(irrep, c);
    if (chi == 0) continue;
    poly.add_term(c.stripped(), BigRational(class_order(c) * chi, k_fact));
  }
  return poly;
}

std::vector<Complex> eval_power_sums(const ComplexMatrix& A, int max_r) {
  if (max_r < 1) throw ArgumentError("eval_power_sums: max_r must be >= 1");
  if (A.rows() != A.cols()) throw ArgumentError("eval_power_sums: matrix must be square");
  std::vector<Complex> t;
  t.reserve(static_cast<std::size_t>(max_r));
  ComplexMatrix power = A;
  for (int r = 1; r <= max_r; ++r) {
    if (r > 1) power = power * A;
    t.push_back(power.trace());
  }
  return t;
}

Complex unitary_char_eval(const Partition& irrep, const ComplexMatrix& A) {
  const int N = static_cast<int>(A.rows());
  if (A.rows() != A.cols() || N < 1)
    throw ArgumentError("unitary_char_eval: matrix must be square and non-empty");
  if (irrep.rows() > N)
    throw ArgumentError("unitary_char_eval: irrep " + irrep.label() + " has more than N = " +
                        std::to_string(N) + " rows");
  if (irrep.boxes() == 0) return 1.0;
  const PowerSumPoly poly = unitary_char_poly(irrep);
  const auto t = eval_power_sums(A, irrep.boxes());
  return poly.evaluate(t);
}

Complex unitary_char_ratio(const Partition& irrep, std::span<const Complex> eigenvalues) {
  const int N = static_cast<int>(eigenvalues.size());
  if (N < 1) throw ArgumentError("unitary_char_ratio: need at least one eigenvalue");
  const IntVector eta = irrep.padded(N);

  if (N > 1) {
    double spread = 0.0;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < i; ++j) spread = std::max(spread, std::abs(eigenvalues[i] - eigenvalues[j]));
    const double delta = std::abs(vandermonde<Complex>(eigenvalues));
    const double floor = 1e-12 * std::pow(spread, static_cast<double>(lower_triangle_count(N)));
    if (spread == 0.0 || delta < floor)
      throw DegenerateSpectrumError("unitary_char_ratio: eigenvalues are (numerically) degenerate");
  }

  ComplexMatrix num(N, N), den(N, N);
  for (int j = 0; j < N; ++j) {
    for (int col = 0; col < N; ++col) {
      num(j, col) = std::pow(eigenvalues[j], eta[static_cast<std::size_t>(col)] + N - 1 - col);
      den(j, col) = std::pow(eigenvalues[j], N - 1 - col);
    }
  }
  return num.partialPivLu().determinant() / den.partialPivLu().determinant();
}

BigInt weyl_dim(const Partition& irrep, int N) {
  if (N < 1) throw ArgumentError("weyl_dim: N must be >= 1");
  if (irrep.rows() > N) return 0;
  const IntVector eta = irrep.padded(N);
  // eta + delta is strictly decreasing; its reversal gives the positive
  // difference product of the descending-power determinant.
  IntVector shifted(static_cast<std::size_t>(N));
  for (int j = 0; j < N; ++j) shifted[static_cast<std::size_t>(N - 1 - j)] = eta[static_cast<std::size_t>(j)] + (N - 1 - j);
  const BigInt det = vandermonde(std::span<const int>(shifted));
  const BigInt F = super_factorial(N - 1);
  if (det % F != 0) throw std::logic_error("weyl_dim: non-integral dimension");
  return det / F;
}

PowerSumPoly dim_char_sum(int K, int N) {
  if (K < 0) throw ArgumentError("dim_char_sum: K must be >= 0");
  if (N < 1) throw ArgumentError("dim_char_sum: N must be >= 1");
  if (K == 0) return PowerSumPoly::constant(1);
  PowerSumPoly total;
  for (const Partition& eta : enumerate_partitions(K, N)) {
    const BigInt dim = weyl_dim(eta, N);
    if (dim == 0) continue;
    total += BigRational(dim) * unitary_char_poly(eta);
  }
  return total;
}

}  // namespace rho
