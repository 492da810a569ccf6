#include "rho/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "rho/characters.hpp"
#include "rho/classical.hpp"
#include "rho/combinat.hpp"
#include "rho/montecarlo.hpp"
#include "rho/quantum.hpp"
#include "rho/reference_tables.hpp"

namespace rho {

Suite parse_suite(std::string_view name) {
  if (name == "classical") return Suite::classical;
  if (name == "quantum") return Suite::quantum;
  if (name == "sampler") return Suite::sampler;
  if (name == "all") return Suite::all;
  throw ArgumentError("unknown suite '" + std::string(name) + "'");
}

std::string suite_name(Suite suite) {
  switch (suite) {
    case Suite::classical: return "classical";
    case Suite::quantum: return "quantum";
    case Suite::sampler: return "sampler";
    case Suite::all: return "all";
  }
  return "?";
}

namespace {

std::string fmt(const char* pattern, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, x);
  return buf;
}

class Recorder {
 public:
  Recorder(std::string suite, const VerifyOptions& options, std::vector<CheckResult>& out)
      : suite_(std::move(suite)), options_(options), out_(out) {}

  const VerifyOptions& options() const { return options_; }

  void exact(std::string name, bool ok, std::string detail = {}) {
    out_.push_back({suite_, std::move(name), ok, ok ? "delta=0" : "mismatch", std::move(detail)});
  }

  void tolerance(std::string name, double error, double tol) {
    out_.push_back({suite_, std::move(name), error <= tol, fmt("err=%.2e", error),
                    "tolerance " + fmt("%.0e", tol)});
  }

  void estimate(const EstimateReport& r) {
    out_.push_back({suite_, r.label, r.within(options_.z_limit), fmt("z=%.2f", r.z_score),
                    "estimate " + fmt("%.6g", r.estimate.real()) + " exact " +
                        fmt("%.6g", r.exact_value.real()) + " n=" + std::to_string(r.sample_count)});
  }

  /// Worst z over a family of estimates, recorded as one check.
  void estimates(std::string name, const std::vector<EstimateReport>& reports) {
    double worst = 0.0;
    std::string worst_label;
    for (const auto& r : reports)
      if (r.z_score >= worst) {
        worst = r.z_score;
        worst_label = r.label;
      }
    out_.push_back({suite_, std::move(name), worst <= options_.z_limit, fmt("max z=%.2f", worst),
                    std::to_string(reports.size()) + " moments, worst " + worst_label});
  }

  void ks(std::string name, const KsReport& r, bool expect_reject) {
    const bool rejected = r.p_value < options_.ks_alpha;
    out_.push_back({suite_, std::move(name), rejected == expect_reject, fmt("p=%.3g", r.p_value),
                    "D=" + fmt("%.4g", r.statistic) + " n=" + std::to_string(r.sample_count) +
                        " seed=" + std::to_string(r.seed)});
  }

  void error(std::string name, const std::exception& e) {
    out_.push_back({suite_, std::move(name), false, "error", e.what()});
  }

 private:
  std::string suite_;
  const VerifyOptions& options_;
  std::vector<CheckResult>& out_;
};

/// Runs one check body; an escaping exception becomes a failed check.
template <class F>
void guarded(Recorder& rec, const std::string& name, F&& body) {
  try {
    body();
  } catch (const std::exception& e) {
    rec.error(name, e);
  }
}

BigInt order_of(const CycleType& c, const VerifyOptions& options) {
  BigInt v = class_order(c);
  if (options.perturb_class_order) v += 1;
  return v;
}

/// Fraction-free (Bareiss) determinant.
BigInt bareiss_determinant(std::vector<std::vector<BigInt>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  BigInt sign = 1, previous = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(m[k], m[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / previous;
    previous = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

std::vector<int> unrank_exponents(int index, int N_b, int base) {
  std::vector<int> nu(static_cast<std::size_t>(N_b));
  for (int b = 0; b < N_b; ++b) {
    nu[static_cast<std::size_t>(b)] = index % base;
    index /= base;
  }
  return nu;
}

// --- classical --------------------------------------------------------------

void classical_suite(Recorder& rec) {
  const VerifyOptions& opt = rec.options();

  guarded(rec, "simplex golden nu=2,0,1", [&] {
    const BigRational v = simplex_moment({{2, 0, 1}, 1});
    rec.exact("simplex golden nu=2,0,1", v == BigRational(1, 60), to_string(v));
  });

  guarded(rec, "simplex normalization", [&] {
    bool ok = true;
    for (int N_b = 1; N_b <= 8; ++N_b)
      ok = ok && simplex_moment({std::vector<int>(static_cast<std::size_t>(N_b), 0), 1}) ==
                     BigRational(1) / BigRational(factorial(N_b - 1));
    rec.exact("simplex normalization", ok, "N_b = 1..8");
  });

  guarded(rec, "simplex permutation symmetry", [&] {
    bool ok = true;
    for (int code = 0; code < 5 * 5 * 5; ++code) {
      std::vector<int> nu = unrank_exponents(code, 3, 5);
      const BigRational base = simplex_moment({nu, BigRational(2, 3)});
      std::sort(nu.begin(), nu.end());
      do ok = ok && simplex_moment({nu, BigRational(2, 3)}) == base;
      while (std::next_permutation(nu.begin(), nu.end()));
    }
    rec.exact("simplex permutation symmetry", ok, "N_b = 3, nu_b <= 4");
  });

  guarded(rec, "simplex scaling", [&] {
    bool ok = true;
    const BigRational lambda(7, 5);
    for (int code = 0; code < 4 * 4 * 4; ++code) {
      SimplexMomentSpec spec{unrank_exponents(code, 3, 4), 1};
      const BigRational unit = simplex_moment(spec);
      spec.scale = lambda;
      ok = ok && simplex_moment(spec) ==
                     unit * pow_rational(lambda, static_cast<unsigned>(spec.total_degree()));
    }
    rec.exact("simplex scaling", ok, "lambda^nu homogeneity");
  });

  guarded(rec, "dirichlet equals simplex with extra slack variable", [&] {
    bool ok = true;
    int count = 0;
    for (int N_B = 1; N_B <= 4; ++N_B)
      for (int code = 0; code < static_cast<int>(std::pow(4, N_B)); ++code) {
        std::vector<int> nu = unrank_exponents(code, N_B, 4);
        const BigRational lambda(code % 5 + 1, 3);
        const BigRational d = dirichlet_moment({nu, lambda, {1}});
        nu.push_back(0);
        ok = ok && d == simplex_moment({nu, lambda});
        ++count;
      }
    rec.exact("dirichlet equals simplex with extra slack variable", ok,
              std::to_string(count) + " specs");
  });

  guarded(rec, "beta function", [&] {
    bool ok = true;
    for (int m = 1; m <= 6; ++m)
      for (int n = 1; n <= 6; ++n) ok = ok && simplex_moment({{m - 1, n - 1}, 1}) == beta_function(m, n);
    rec.exact("beta function", ok, "m, n = 1..6");
  });

  guarded(rec, "simplex MC", [&] {
    std::vector<EstimateReport> reports;
    for (int N_b = 1; N_b <= 4; ++N_b) {
      std::vector<SimplexMomentSpec> specs;
      for (int code = 0; code < static_cast<int>(std::pow(5, N_b)); ++code) {
        std::vector<int> nu = unrank_exponents(code, N_b, 5);
        if (std::accumulate(nu.begin(), nu.end(), 0) <= 4) specs.push_back({nu, 1});
      }
      auto batch = estimate_simplex_moments(N_b, specs, opt.samples, opt.seed + static_cast<unsigned>(N_b));
      reports.insert(reports.end(), batch.begin(), batch.end());
    }
    rec.estimates("simplex MC, all nu with sum <= 4, N_b <= 4", reports);
  });

  guarded(rec, "dirichlet MC", [&] {
    rec.estimate(estimate_dirichlet_moment(DirichletSpec::monomial({1, 2}, BigRational(3, 2), 1),
                                           opt.samples, opt.seed + 11));
  });

  guarded(rec, "simplex marginal KS", [&] {
    rec.ks("simplex marginal KS", ks_simplex_marginal(opt.samples, opt.seed + 12), false);
  });
}

// --- quantum ----------------------------------------------------------------

void quantum_suite(Recorder& rec) {
  const VerifyOptions& opt = rec.options();

  for (const auto& table : reference::sym_char_tables()) {
    const std::string k = std::to_string(table.K);
    guarded(rec, "S_" + k + " characters", [&] {
      const auto classes = enumerate_cycle_types(table.K);
      const auto irreps = enumerate_partitions(table.K, table.K);
      bool ok = classes.size() == table.classes.size() && irreps.size() == table.irreps.size();
      for (std::size_t c = 0; ok && c < classes.size(); ++c)
        ok = classes[c] == CycleType(table.classes[c]);
      for (std::size_t e = 0; ok && e < irreps.size(); ++e) {
        ok = irreps[e] == Partition(table.irreps[e]);
        for (std::size_t c = 0; ok && c < classes.size(); ++c)
          ok = sym_character(irreps[e], classes[c]) == table.characters[e][c];
      }
      rec.exact("S_" + k + " characters", ok);
    });
    guarded(rec, "S_" + k + " class orders", [&] {
      bool ok = true;
      for (std::size_t c = 0; c < table.classes.size(); ++c)
        ok = ok && order_of(CycleType(table.classes[c]), opt) == table.orders[c];
      rec.exact("S_" + k + " class orders", ok);
    });
  }

  guarded(rec, "class orders sum to K!", [&] {
    bool ok = true;
    for (int K = 1; K <= 10; ++K) {
      BigInt total = 0;
      for (const auto& c : enumerate_cycle_types(K)) total += order_of(c, opt);
      ok = ok && total == factorial(K);
    }
    rec.exact("class orders sum to K!", ok, "K = 1..10");
  });

  guarded(rec, "character orthogonality", [&] {
    bool ok = true;
    for (int K = 1; K <= 6; ++K) {
      const auto classes = enumerate_cycle_types(K);
      const auto irreps = enumerate_partitions(K, K);
      for (std::size_t a = 0; a < irreps.size(); ++a)
        for (std::size_t b = a; b < irreps.size(); ++b) {
          BigInt s = 0;
          for (const auto& c : classes)
            s += order_of(c, opt) * sym_character(irreps[a], c) * sym_character(irreps[b], c);
          ok = ok && s == (a == b ? factorial(K) : BigInt(0));
        }
    }
    rec.exact("character orthogonality", ok, "K = 1..6");
  });

  guarded(rec, "U(N) characters in power sums", [&] {
    bool ok = true;
    for (const auto& row : reference::unitary_char_rows()) {
      const PowerSumPoly poly = unitary_char_poly(Partition(row.irrep));
      ok = ok && poly.terms().size() == row.character.size();
      for (const auto& term : row.character)
        ok = ok && poly.coefficient(term.monomial) == parse_rational(term.coefficient);
    }
    rec.exact("U(N) characters in power sums", ok, "K = 1..4");
  });

  guarded(rec, "Weyl dimensions", [&] {
    bool ok = true;
    for (const auto& row : reference::unitary_char_rows())
      for (int N = 1; N <= 8; ++N) {
        BigRational expected = parse_rational(row.dim_scale);
        for (int shift : row.dim_shifts) expected *= BigRational(N + shift);
        ok = ok && BigRational(weyl_dim(Partition(row.irrep), N)) == expected;
      }
    rec.exact("Weyl dimensions", ok, "K = 1..4, N = 1..8");
  });

  guarded(rec, "dimension-weighted character sums", [&] {
    bool ok = true;
    const auto& sums = reference::dim_char_sums();
    for (int K = 0; K < static_cast<int>(sums.size()); ++K)
      for (int N = 1; N <= 6; ++N) {
        const PowerSumPoly poly = dim_char_sum(K, N);
        const auto& terms = sums[static_cast<std::size_t>(K)];
        ok = ok && poly.terms().size() == terms.size();
        for (const auto& t : terms)
          ok = ok && poly.coefficient(t.monomial) ==
                         parse_rational(t.coefficient) *
                             BigRational(pow_int(BigInt(N), static_cast<unsigned>(t.n_power)));
      }
    rec.exact("dimension-weighted character sums", ok, "K = 0..4, N = 1..6");
  });

  guarded(rec, "dimension-weighted sums vs class sums", [&] {
    bool ok = true;
    for (int K = 1; K <= 6; ++K)
      for (int N = 1; N <= 5; ++N) {
        PowerSumPoly expected;
        for (const auto& c : enumerate_cycle_types(K))
          expected.add_term(c.stripped(), BigRational(order_of(c, opt) *
                                                      pow_int(BigInt(N), static_cast<unsigned>(c.cycles()))) /
                                              BigRational(factorial(K)));
        ok = ok && dim_char_sum(K, N) == expected;
      }
    rec.exact("dimension-weighted sums vs class sums", ok, "K = 1..6, N = 1..5");
  });

  guarded(rec, "power-sum vs determinant-ratio characters", [&] {
    Rng rng = make_stream(opt.seed, 0x51);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    double worst = 0.0;
    int trials = 0;
    while (trials < 100) {
      const int N = 1 + trials % 5;
      const int K = 1 + (trials / 5) % 5;
      std::vector<Complex> alpha;
      for (int i = 0; i < N; ++i) alpha.emplace_back(unit(rng), unit(rng));
      const ComplexMatrix U = random_unitary(N, rng);
      Eigen::VectorXcd diag(N);
      for (int i = 0; i < N; ++i) diag(i) = alpha[static_cast<std::size_t>(i)];
      const ComplexMatrix A = U * diag.asDiagonal() * U.adjoint();
      for (const auto& eta : enumerate_partitions(K, N)) {
        Complex ratio;
        try {
          ratio = unitary_char_ratio(eta, alpha);
        } catch (const DegenerateSpectrumError&) {
          continue;
        }
        const Complex direct = unitary_char_eval(eta, A);
        worst = std::max(worst, std::abs(direct - ratio) / std::max(1.0, std::abs(ratio)));
      }
      ++trials;
    }
    rec.tolerance("power-sum vs determinant-ratio characters", worst, 1e-8);
  });

  guarded(rec, "trace normalization", [&] {
    double worst = 0.0;
    for (int N = 1; N <= 4; ++N)
      for (int K = 1; K <= 6; ++K) {
        const ObservableList identity(static_cast<std::size_t>(K), ComplexMatrix::Identity(N, N));
        worst = std::max(worst, std::abs(moment_traces(identity) - 1.0));
      }
    rec.tolerance("trace normalization", worst, 1e-12);
  });

  guarded(rec, "first and second moment closed forms", [&] {
    Rng rng = make_stream(opt.seed, 0x52);
    std::normal_distribution<double> normal;
    double worst = 0.0;
    for (int trial = 0; trial < 30; ++trial) {
      const int N = 1 + trial % 4;
      ObservableList C(2, ComplexMatrix(N, N));
      for (auto& m : C)
        for (int i = 0; i < N; ++i)
          for (int j = 0; j < N; ++j) m(i, j) = Complex(normal(rng), normal(rng));
      const double n = N;
      const Complex first = C[0].trace() / n;
      const Complex second =
          (n * C[0].trace() * C[1].trace() + (C[0] * C[1]).trace()) / (n * (n * n + 1.0));
      worst = std::max(worst, std::abs(moment_traces(std::span(C.data(), 1)) - first));
      worst = std::max(worst, std::abs(moment_traces(C) - second));
    }
    rec.tolerance("first and second moment closed forms", worst, 1e-10);
  });

  guarded(rec, "determinant lemma", [&] {
    bool ok = true;
    for (int N = 1; N <= 4; ++N) {
      const int total = static_cast<int>(std::pow(5, N));
      for (int code = 0; code < total; ++code) {
        const std::vector<int> beta = unrank_exponents(code, N, 5);
        std::vector<std::vector<BigInt>> M(static_cast<std::size_t>(N));
        for (int i = 0; i < N; ++i)
          for (int j = 0; j < N; ++j) M[static_cast<std::size_t>(i)].push_back(factorial(i + beta[static_cast<std::size_t>(j)]));
        ok = ok && det_lemma_value(beta) == bareiss_determinant(M);
      }
    }
    rec.exact("determinant lemma", ok, "beta_j <= 4, N <= 4");
  });

  guarded(rec, "integral lemma quadrature", [&] {
    const std::vector<int> beta{0, 1};
    const double exact = to_double(int_lemma_value(beta));
    const double quad = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        [](double x) { return (1.0 - 2.0 * x) * (1.0 - x); }, 0.0, 1.0);
    rec.tolerance("integral lemma quadrature", std::abs(exact - quad) + std::abs(exact - 1.0 / 6.0), 1e-10);
  });

  guarded(rec, "purity closed form", [&] {
    bool ok = true;
    for (int N = 1; N <= 6; ++N) ok = ok && purity_mean(N) == BigRational(2 * N, N * N + 1);
    rec.exact("purity closed form", ok, "N = 1..6");
  });

  guarded(rec, "entry moment goldens", [&] {
    const bool ok = entry_moment({2, {{1, 2}, {2, 1}}}) == BigRational(1, 10) &&
                    entry_moment({2, {{1, 1}, {1, 1}}}) == BigRational(3, 10) &&
                    entry_moment({2, {{1, 1}}}) == BigRational(1, 2);
    rec.exact("entry moment goldens", ok, "N = 2");
  });
}

// --- sampler ----------------------------------------------------------------

void sampler_suite(Recorder& rec) {
  const VerifyOptions& opt = rec.options();

  guarded(rec, "sample invariants", [&] {
    bool ok = true;
    for (int N = 1; N <= 6; ++N) {
      Rng rng = make_stream(opt.seed, 0x60 + static_cast<unsigned>(N));
      for (int s = 0; s < 500; ++s) ok = ok && check_invariants(sample_density(N, rng)).ok();
    }
    rec.exact("sample invariants", ok, "hermitian, unit trace, PSD; N = 1..6");
  });

  for (int N = 2; N <= 4; ++N)
    guarded(rec, "purity MC", [&] { rec.estimate(estimate_purity(N, opt.samples, opt.seed + static_cast<unsigned>(N))); });

  for (int N = 2; N <= 3; ++N)
    guarded(rec, "entry moment MC", [&] {
      std::vector<EntryMomentSpec> specs;
      for (int K = 1; K <= 3; ++K) {
        const auto orbit = entry_moment_orbits(N, K);
        specs.insert(specs.end(), orbit.begin(), orbit.end());
      }
      rec.estimates("entry moments K <= 3, N = " + std::to_string(N),
                    estimate_entry_moments(N, specs, opt.samples, opt.seed + 20 + static_cast<unsigned>(N)));
    });

  guarded(rec, "eigenvalue law KS", [&] {
    rec.ks("eigenvalue law KS, N = 2", ks_eigenvalue_check(2, opt.samples, opt.seed + 30), false);
  });
  guarded(rec, "eigenvalue law KS negative control", [&] {
    rec.ks("eigenvalue law KS negative control",
           ks_eigenvalue_check(2, opt.samples, opt.seed + 31, EigenvalueLaw::uniform), true);
  });

  guarded(rec, "unitary invariance", [&] {
    Rng rng = make_stream(opt.seed, 0x70);
    rec.estimate(unitary_invariance_check(random_unitary(3, rng), opt.samples, opt.seed + 32));
  });

  guarded(rec, "MGF", [&] {
    Rng rng = make_stream(opt.seed, 0x71);
    std::normal_distribution<double> normal;
    for (int N = 2; N <= 3; ++N) {
      ComplexMatrix G(N, N);
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) G(i, j) = Complex(normal(rng), normal(rng));
      ComplexMatrix A = (G + G.adjoint()) / 2.0;
      const double norm = Eigen::SelfAdjointEigenSolver<ComplexMatrix>(A).eigenvalues().cwiseAbs().maxCoeff();
      A *= 0.4 / norm;
      rec.estimate(estimate_mgf(A, 6, opt.samples, opt.seed + 40 + static_cast<unsigned>(N)));
    }
  });

  guarded(rec, "serial and parallel MC agree", [&] {
    const std::int64_t n = std::min<std::int64_t>(opt.samples, 20000);
    const auto serial = estimate_purity(3, n, opt.seed, {.parallel = false});
    const auto parallel = estimate_purity(3, n, opt.seed, {.parallel = true});
    rec.exact("serial and parallel MC agree",
              serial.estimate == parallel.estimate && serial.std_error == parallel.std_error,
              "bit-identical purity estimate, N = 3");
  });
}

}  // namespace

std::vector<CheckResult> run_suite(Suite suite, const VerifyOptions& options) {
  std::vector<CheckResult> out;
  if (suite == Suite::classical || suite == Suite::all) {
    Recorder rec("classical", options, out);
    classical_suite(rec);
  }
  if (suite == Suite::quantum || suite == Suite::all) {
    Recorder rec("quantum", options, out);
    quantum_suite(rec);
  }
  if (suite == Suite::sampler || suite == Suite::all) {
    Recorder rec("sampler", options, out);
    sampler_suite(rec);
  }
  return out;
}

bool all_passed(const std::vector<CheckResult>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

Table check_table(const std::vector<CheckResult>& checks) {
  Table t;
  t.title = std::string("verify: ") + (all_passed(checks) ? "PASS" : "FAIL");
  t.columns = {"suite", "check", "status", "metric", "detail"};
  for (const auto& c : checks)
    t.rows.push_back({c.suite, c.name, std::string(c.passed ? "PASS" : "FAIL"), c.metric, c.detail});
  return t;
}

std::string render(const std::vector<CheckResult>& checks, Format format) {
  if (format != Format::json) return render(check_table(checks), format);
  nlohmann::json doc;
  doc["passed"] = all_passed(checks);
  doc["checks"] = nlohmann::json::array();
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& c : checks) {
    doc["checks"].push_back(
        {{"suite", c.suite}, {"name", c.name}, {"passed", c.passed}, {"metric", c.metric}, {"detail", c.detail}});
    if (!c.passed) failures.push_back(c.suite + "/" + c.name);
  }
  doc["failures"] = failures;
  return doc.dump(2) + "\n";
}

}  // namespace rho
