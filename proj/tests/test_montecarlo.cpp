#include "doctest.h"

#include <cmath>
#include <cstdlib>

#include "rho/montecarlo.hpp"
#include "rho/parallel.hpp"

using namespace rho;

TEST_CASE("streams are reproducible and distinct") {
  Rng a = make_stream(1, 0), b = make_stream(1, 0), c = make_stream(1, 1), d = make_stream(2, 0);
  const auto x = a();
  CHECK(x == b());
  CHECK(x != c());
  CHECK(x != d());
}

TEST_CASE("density samples satisfy the body constraints") {
  Rng rng = make_stream(5, 0);
  for (int N = 1; N <= 7; ++N)
    for (int s = 0; s < 300; ++s) {
      const DensityMatrixSample sample = sample_density(N, rng);
      CHECK(sample.dimension() == N);
      const SampleInvariants inv = check_invariants(sample);
      CHECK(inv.ok());
      CHECK(inv.hermiticity_error == 0.0);
    }
  CHECK_THROWS_AS(sample_density(0, rng), ArgumentError);
}

TEST_CASE("random_unitary is unitary") {
  Rng rng = make_stream(6, 0);
  for (int N = 1; N <= 5; ++N) {
    const ComplexMatrix U = random_unitary(N, rng);
    CHECK((U.adjoint() * U - ComplexMatrix::Identity(N, N)).norm() <= 1e-12);
  }
}

TEST_CASE("accumulator statistics") {
  MomentAccumulator acc(1);
  for (double v : {1.0, 2.0, 3.0, 4.0}) {
    const Complex z(v, 0.0);
    acc.add(std::span(&z, 1));
  }
  CHECK(acc.mean(0) == Complex(2.5, 0.0));
  CHECK(acc.standard_error(0).real() == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
  CHECK(acc.standard_error(0).imag() == 0.0);

  const EstimateReport exact_hit = make_report("x", acc, 0, Complex(2.5, 0.0), 0);
  CHECK(exact_hit.z_score == 0.0);
  // zero-spread imaginary part must match exactly
  const EstimateReport off = make_report("x", acc, 0, Complex(2.5, 0.1), 0);
  CHECK(std::isinf(off.z_score));
  CHECK_FALSE(off.within(4.0));
}

TEST_CASE("serial, parallel and any thread count give identical reports") {
  const int saved = current_thread_count();
  const auto serial = estimate_purity(3, 30000, 9, {.parallel = false});
  for (int threads : {1, 2, 3, 7}) {
    set_thread_count(threads);
    const auto parallel = estimate_purity(3, 30000, 9, {.parallel = true});
    CHECK(parallel.estimate == serial.estimate);
    CHECK(parallel.std_error == serial.std_error);
    const auto ks_s = ks_eigenvalue_check(2, 10000, 4, EigenvalueLaw::hilbert_schmidt, {.parallel = false});
    const auto ks_p = ks_eigenvalue_check(2, 10000, 4, EigenvalueLaw::hilbert_schmidt, {.parallel = true});
    CHECK(ks_s.statistic == ks_p.statistic);
  }
  set_thread_count(saved);
}

TEST_CASE("thread count resolution") {
  CHECK(resolve_thread_count(3) == 3);
  CHECK_THROWS_AS(resolve_thread_count(0), ArgumentError);
  setenv("RHO_MOMENTS_THREADS", "5", 1);
  CHECK(resolve_thread_count(std::nullopt) == 5);
  CHECK(resolve_thread_count(2) == 2);
  setenv("RHO_MOMENTS_THREADS", "bogus", 1);
  CHECK_THROWS_AS(resolve_thread_count(std::nullopt), ArgumentError);
  unsetenv("RHO_MOMENTS_THREADS");
  CHECK(resolve_thread_count(std::nullopt) >= 1);
}

TEST_CASE("purity and entry moment estimates") {
  CHECK(estimate_purity(2, 100000, 3).within(4.0));
  const std::vector<EntryMomentSpec> specs{{2, {{1, 2}, {2, 1}}}, {2, {{1, 1}, {1, 1}}}, {2, {{1, 2}}}};
  for (const auto& r : estimate_entry_moments(2, specs, 100000, 4)) CHECK(r.within(4.0));
  CHECK_THROWS_AS(estimate_entry_moment({2, {{1, 1}}}, 99, 1), ArgumentError);
  const std::vector<EntryMomentSpec> mixed{{2, {{1, 1}}}, {3, {{1, 1}}}};
  CHECK_THROWS_AS(estimate_entry_moments(2, mixed, 1000, 1), ArgumentError);
}

TEST_CASE("unitary invariance") {
  Rng rng = make_stream(8, 0);
  CHECK(unitary_invariance_check(random_unitary(3, rng), 50000, 2).within(4.0));
}

TEST_CASE("MGF estimator") {
  ComplexMatrix A(2, 2);
  A << 0.2, Complex(0.1, 0.05), Complex(0.1, -0.05), -0.1;
  CHECK(estimate_mgf(A, 6, 100000, 5).within(4.0));

  ComplexMatrix big = 3.0 * ComplexMatrix::Identity(2, 2);
  CHECK_THROWS_AS(estimate_mgf(big, 6, 1000, 5), ArgumentError);
  ComplexMatrix skew(2, 2);
  skew << 0.0, 0.1, -0.1, 0.0;
  CHECK_THROWS_AS(estimate_mgf(skew, 6, 1000, 5), ArgumentError);
}

TEST_CASE("simplex and Dirichlet estimators") {
  const auto r = estimate_simplex_moment({{2, 0, 1}, 1}, 1000000, 1);
  CHECK(r.exact_value.real() == doctest::Approx(1.0 / 60.0));
  CHECK(r.within(3.0));
  // point simplex: deterministic
  const auto point = estimate_simplex_moment({{1}, 3}, 1000, 1);
  CHECK(point.z_score == 0.0);
  CHECK(point.estimate.real() == doctest::Approx(3.0));
  CHECK(estimate_dirichlet_moment(DirichletSpec::monomial({1, 2}, 2, 1), 200000, 2).within(4.0));
}

TEST_CASE("Kolmogorov p-value") {
  // lambda = 1.36 is the classic 5% point; 1.63 the 1% point
  CHECK(kolmogorov_p_value(1.36 / std::sqrt(1e8), 100000000) == doctest::Approx(0.0494).epsilon(0.01));
  CHECK(kolmogorov_p_value(1.63 / std::sqrt(1e8), 100000000) == doctest::Approx(0.0098).epsilon(0.02));
  CHECK(kolmogorov_p_value(0.0, 10) == 1.0);
  CHECK(kolmogorov_p_value(1.0, 1000) < 1e-12);
}

TEST_CASE("eigenvalue law: sampler passes, negative control fails") {
  const KsReport good = ks_eigenvalue_check(2, 200000, 13);
  CHECK(good.p_value > 1e-3);
  const KsReport control = ks_eigenvalue_check(2, 200000, 14, EigenvalueLaw::uniform);
  CHECK(control.p_value < 1e-3);
  CHECK_THROWS_AS(ks_eigenvalue_check(3, 1000, 1), ArgumentError);
  CHECK(ks_simplex_marginal(100000, 3).p_value > 1e-3);
}
