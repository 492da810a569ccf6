#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/quadrature/gauss.hpp>

#include "rho/permutation_sum.hpp"
#include "rho/quantum.hpp"

using namespace rho;

namespace {

ComplexMatrix random_matrix(int N, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  ComplexMatrix C(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) C(i, j) = Complex(normal(rng), normal(rng));
  return C;
}

BigInt bareiss(std::vector<std::vector<BigInt>> m) {
  const std::size_t n = m.size();
  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t s = k + 1;
      while (s < n && m[s][k] == 0) ++s;
      if (s == n) return 0;
      std::swap(m[k], m[s]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return n == 0 ? BigInt(1) : sign * m[n - 1][n - 1];
}

// p(A) = prod_r tr(A^r)^{i_r}
Complex power_sum_monomial(const CycleType& c, const ComplexMatrix& A) {
  Complex value = 1.0;
  ComplexMatrix power = A;
  for (int r = 1; r <= c.total(); ++r) {
    value *= std::pow(power.trace(), c.count(r));
    power = power * A;
  }
  return value;
}

// Mixed derivative prod_j (C_j . d/dA) of a degree-K form, by polarization.
Complex polarization(const CycleType& c, const std::vector<ComplexMatrix>& C) {
  const int K = static_cast<int>(C.size());
  const int N = static_cast<int>(C.front().rows());
  Complex total = 0.0;
  for (unsigned mask = 0; mask < (1u << K); ++mask) {
    ComplexMatrix A = ComplexMatrix::Zero(N, N);
    int size = 0;
    for (int j = 0; j < K; ++j)
      if (mask & (1u << j)) {
        A += C[static_cast<std::size_t>(j)];
        ++size;
      }
    total += ((K - size) % 2 ? -1.0 : 1.0) * power_sum_monomial(c, A);
  }
  return total;
}

// Expectation of a polynomial in (rho11, rho12) over the N = 2 body: the
// ball (a - 1/2)^2 + x^2 + y^2 <= 1/4 with rho = [[a, x + iy], [x - iy, 1 - a]].
Complex bloch_average(const std::function<Complex(const ComplexMatrix&)>& f) {
  using boost::math::quadrature::gauss;
  const double R = 0.5;
  auto shell = [&](double r) {
    return gauss<double, 10>::integrate(
        [&](double u) {
          const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
          Complex sum = 0.0;
          const int M = 16;
          for (int k = 0; k < M; ++k) {
            const double phi = 2.0 * std::numbers::pi * k / M;
            const double x = r * s * std::cos(phi), y = r * s * std::sin(phi), z = r * u;
            ComplexMatrix rho(2, 2);
            rho << 0.5 + z, Complex(x, y), Complex(x, -y), 0.5 - z;
            sum += f(rho);
          }
          return (sum * (2.0 * std::numbers::pi / M)).real();
        },
        -1.0, 1.0);
  };
  const double num = gauss<double, 10>::integrate([&](double r) { return r * r * shell(r); }, 0.0, R);
  const double volume = 4.0 / 3.0 * std::numbers::pi * R * R * R;
  return num / volume;
}

}  // namespace

TEST_CASE("ScaledRational formatting") {
  CHECK(ScaledRational(BigRational(1, 6), 1).to_string() == "1/6*(2pi)^1");
  CHECK(ScaledRational(BigRational(3)).to_string() == "3");
  CHECK(ScaledRational(BigRational(0), 4).twopi_exponent == 0);
  CHECK(ScaledRational(BigRational(1, 6), 1).to_double() == doctest::Approx(std::numbers::pi / 3));
  CHECK(ScaledRational(BigRational(2), 1) * ScaledRational(BigRational(1, 4), 2) == ScaledRational(BigRational(1, 2), 3));
}

TEST_CASE("hs_volume") {
  CHECK(hs_volume(1) == ScaledRational(BigRational(1), 0));
  CHECK(hs_volume(2) == ScaledRational(BigRational(1, 6), 1));
  CHECK(hs_volume(3) == ScaledRational(BigRational(2) / BigRational(factorial(8)), 3));
  // d^2 z = 2 dRe dIm on the single off-diagonal pair doubles the Bloch ball volume.
  CHECK(hs_volume(2).to_double() == doctest::Approx(2.0 * 4.0 / 3.0 * std::numbers::pi / 8.0));
  CHECK_THROWS_AS(hs_volume(0), ArgumentError);
}

TEST_CASE("determinant lemma against an explicit determinant") {
  for (int N = 1; N <= 4; ++N) {
    const int total = static_cast<int>(std::pow(5, N));
    for (int code = 0; code < total; ++code) {
      std::vector<int> beta;
      for (int c = code, j = 0; j < N; ++j, c /= 5) beta.push_back(c % 5);
      std::vector<std::vector<BigInt>> M(static_cast<std::size_t>(N));
      for (int i = 0; i < N; ++i)
        for (int b : beta) M[static_cast<std::size_t>(i)].push_back(factorial(i + b));
      CHECK(det_lemma_value(beta) == bareiss(M));
      CHECK(int_lemma_value(beta) * BigRational(factorial(std::accumulate(beta.begin(), beta.end(), 0) +
                                                           static_cast<int>(lower_triangle_count(N)) + N - 1)) ==
            BigRational(det_lemma_value(beta)));
    }
  }
  CHECK(det_lemma_value(std::vector<int>{0, 1}) == 1);
  CHECK(det_lemma_value(std::vector<int>{0, 1, 2}) == 4);
}

TEST_CASE("integral lemma") {
  CHECK(int_lemma_value(std::vector<int>{0, 1}) == BigRational(1, 6));
  CHECK(int_lemma_value(std::vector<int>{1, 1}) == 0);
  CHECK(int_lemma_value(std::vector<int>{0, 0, 0}) == 0);
  const double quad = boost::math::quadrature::gauss<double, 8>::integrate(
      [](double x) { return (1.0 - 2.0 * x) * (1.0 - x); }, 0.0, 1.0);
  CHECK(std::abs(quad - to_double(int_lemma_value(std::vector<int>{0, 1}))) <= 1e-10);
}

TEST_CASE("omega_expand matches the polarization identity") {
  std::mt19937_64 rng(11);
  for (int K = 1; K <= 5; ++K)
    for (const auto& c : enumerate_cycle_types(K)) {
      const TraceProductExpr expr = omega_expand(c, K);
      CHECK(expr.order() == K);
      for (int N = 1; N <= 3; ++N) {
        std::vector<ComplexMatrix> C;
        for (int j = 0; j < K; ++j) C.push_back(random_matrix(N, rng));
        const Complex expected = polarization(c, C);
        CHECK(std::abs(expr.evaluate(C) - expected) <= 1e-9 * std::max(1.0, std::abs(expected)));
      }
    }
  CHECK(omega_expand(CycleType({0, 1}), 2).to_string() == "2 tr(C1 C2)");
  CHECK_THROWS_AS(omega_expand(CycleType({0, 1}), 3), ArgumentError);
}

TEST_CASE("moment_traces: normalization and closed forms") {
  for (int N = 1; N <= 4; ++N)
    for (int K = 1; K <= 6; ++K) {
      const ObservableList I(static_cast<std::size_t>(K), ComplexMatrix::Identity(N, N));
      CHECK(std::abs(moment_traces(I) - 1.0) <= 1e-12);
    }
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const int N = 1 + trial % 4;
    const double n = N;
    ObservableList C{random_matrix(N, rng), random_matrix(N, rng)};
    CHECK(std::abs(moment_traces(std::span(C.data(), 1)) - C[0].trace() / n) <= 1e-10);
    const Complex second = (n * C[0].trace() * C[1].trace() + (C[0] * C[1]).trace()) / (n * (n * n + 1.0));
    CHECK(std::abs(moment_traces(C) - second) <= 1e-10);
  }
}

TEST_CASE("moment_traces is symmetric in its observables") {
  std::mt19937_64 rng(31);
  for (int K = 2; K <= 5; ++K) {
    ObservableList C;
    for (int j = 0; j < K; ++j) C.push_back(random_matrix(3, rng));
    const Complex base = moment_traces(C);
    for (int s = 0; s < 5; ++s) {
      std::shuffle(C.begin(), C.end(), rng);
      CHECK(std::abs(moment_traces(C) - base) <= 1e-10 * std::abs(base));
    }
  }
}

TEST_CASE("equal observables: permutation sum equals the character route") {
  std::mt19937_64 rng(41);
  for (int N = 1; N <= 3; ++N)
    for (int K = 0; K <= 6; ++K) {
      ComplexMatrix A = random_matrix(N, rng);
      A = (A + A.adjoint()) * 0.25;
      const Complex via_characters = mgf_coefficient(K, N, A) * to_double(BigRational(factorial(K)));
      if (K == 0) {
        CHECK(via_characters == Complex(1.0));
        continue;
      }
      const ObservableList C(static_cast<std::size_t>(K), A);
      const Complex fast = moment_traces(C);
      const Complex generic =
          to_double(moment_prefactor(K, N)) * kernels::trace_cycle_sum_serial(C);
      CHECK(std::abs(fast - via_characters) <= 1e-10 * std::max(1.0, std::abs(fast)));
      CHECK(std::abs(generic - via_characters) <= 1e-10 * std::max(1.0, std::abs(fast)));
    }
}

TEST_CASE("mgf_series approaches the sampled exponential for tiny A") {
  ComplexMatrix A = ComplexMatrix::Zero(2, 2);
  CHECK(mgf_series(A, 5) == Complex(1.0));
  A(0, 0) = 1e-3;
  // first order: E[tr(A rho)] = tr(A)/N
  CHECK(std::abs(mgf_series(A, 1) - (1.0 + 0.5e-3)) <= 1e-15);
}

TEST_CASE("moment cap") {
  const ObservableList C(9, ComplexMatrix::Identity(2, 2));
  ObservableList distinct = C;
  distinct[0](0, 1) = 1.0;
  CHECK_THROWS_AS(moment_traces(distinct), ResourceLimitError);
  EntryMomentSpec spec{2, std::vector<std::pair<int, int>>(9, {1, 1})};
  CHECK_THROWS_AS(entry_moment(spec), ResourceLimitError);
  spec.pairs.resize(3);
  CHECK_NOTHROW(entry_moment(spec, {.cap_k = 3}));
}

TEST_CASE("entry moment goldens") {
  CHECK(entry_moment({2, {{1, 1}}}) == BigRational(1, 2));
  CHECK(entry_moment({2, {{1, 2}, {2, 1}}}) == BigRational(1, 10));
  CHECK(entry_moment({2, {{1, 1}, {1, 1}}}) == BigRational(3, 10));
  CHECK(entry_moment({2, {{1, 1}, {1, 1}, {1, 2}}}) == 0);
  CHECK(entry_moment({3, {{2, 2}}}) == BigRational(1, 3));
  CHECK(entry_moment_unnormalized({2, {{1, 2}, {2, 1}}}) == ScaledRational(BigRational(1, 60), 1));
}

TEST_CASE("entry moments: index validation names the pair") {
  try {
    entry_moment({2, {{1, 1}, {1, 3}}});
    FAIL("expected ArgumentError");
  } catch (const ArgumentError& e) {
    CHECK(std::string(e.what()).find("(1,3)") != std::string::npos);
  }
  CHECK_THROWS_AS(entry_moment({2, {}}), ArgumentError);
}

TEST_CASE("N = 2 entry moments agree with Bloch-ball quadrature") {
  for (int K = 1; K <= 3; ++K)
    for (const auto& spec : entry_moment_orbits(2, K)) {
      const Complex quad = bloch_average([&](const ComplexMatrix& rho) {
        Complex v = 1.0;
        for (auto [i, j] : spec.pairs) v *= rho(i - 1, j - 1);
        return v;
      });
      CHECK(std::abs(quad - to_double(entry_moment(spec))) <= 1e-12);
    }
}

TEST_CASE("entry moments agree with moment_traces on single-entry observables") {
  for (int N = 2; N <= 3; ++N)
    for (int K = 1; K <= 4; ++K)
      for (const auto& spec : entry_moment_orbits(N, K)) {
        ObservableList C;
        for (auto [i, j] : spec.pairs) C.push_back(single_entry(N, i - 1, j - 1));
        CHECK(std::abs(moment_traces(C) - to_double(entry_moment(spec))) <= 1e-14);
      }
}

TEST_CASE("entry moment orbits share one value") {
  for (int N = 2; N <= 3; ++N)
    for (int K = 1; K <= 3; ++K) {
      const auto reps = entry_moment_orbits(N, K);
      std::map<std::vector<std::pair<int, int>>, BigRational> rep_values;
      for (const auto& r : reps) rep_values[r.pairs] = entry_moment(r);
      // Every K-tuple of pairs reaches some representative's value.
      std::vector<int> codes(static_cast<std::size_t>(K), 0);
      const int M = N * N;
      std::size_t visited = 0;
      while (true) {
        EntryMomentSpec spec{N, {}};
        for (int c : codes) spec.pairs.emplace_back(c / N + 1, c % N + 1);
        const BigRational v = entry_moment(spec);
        bool found = false;
        for (const auto& [pairs, value] : rep_values) found = found || value == v;
        CHECK(found);
        ++visited;
        int p = K - 1;
        while (p >= 0 && codes[static_cast<std::size_t>(p)] == M - 1) codes[static_cast<std::size_t>(p--)] = 0;
        if (p < 0) break;
        ++codes[static_cast<std::size_t>(p)];
      }
      CHECK(visited == static_cast<std::size_t>(std::pow(M, K)));
    }
  CHECK(entry_moment_orbits(2, 1).size() == 2);
}

TEST_CASE("purity") {
  for (int N = 1; N <= 6; ++N) CHECK(purity_mean(N) == BigRational(2 * N, N * N + 1));
  CHECK(purity_mean(2) == BigRational(4, 5));
}

TEST_CASE("serial and parallel entry kernels give the same rationals") {
  for (int N = 2; N <= 3; ++N)
    for (const auto& spec : entry_moment_orbits(N, 4))
      CHECK(entry_moment(spec, {.cap_k = 8, .parallel = false}) == entry_moment(spec, {.cap_k = 8, .parallel = true}));
}

TEST_CASE("TraceProductExpr bookkeeping") {
  TraceProductExpr e;
  e.add({{1, 0}}, 2);
  e.add({{0, 1}}, 1);
  CHECK(e.terms().size() == 1);
  CHECK(e.to_string() == "3 tr(C1 C2)");
  e *= BigRational(1, 3);
  CHECK(e.to_string() == "tr(C1 C2)");
  const EntryMomentSpec spec{2, {{1, 2}, {2, 1}}};
  CHECK(e.evaluate_entries(spec) == 1);
}
