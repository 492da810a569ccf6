// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances, sample counts and seeds are fixed here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <boost/math/quadrature/gauss.hpp>

#include "rho/characters.hpp"
#include "rho/classical.hpp"
#include "rho/montecarlo.hpp"
#include "rho/quantum.hpp"
#include "rho/reference_tables.hpp"

using namespace rho;

namespace {

constexpr double kSigmas = 4.0;
constexpr double kRatioTolerance = 1e-8;
constexpr double kClosedFormTolerance = 1e-10;
constexpr double kQuadratureTolerance = 1e-10;
constexpr double kKsAlpha = 1e-3;
constexpr std::int64_t kMcSamples = 1000000;

struct Outcome {
  bool passed;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& title, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > budget_s) {
    o.passed = false;
    o.detail += " [over time budget " + std::to_string(budget_s) + " s]";
  }
  if (!o.passed) ++failures;
  std::printf("%s  %2d  %-44s %7.2fs  %s\n", o.passed ? "PASS" : "FAIL", id, title.c_str(), secs, o.detail.c_str());
  std::fflush(stdout);
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
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

ComplexMatrix gaussian_matrix(int N, Rng& rng) {
  std::normal_distribution<double> normal;
  ComplexMatrix C(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) C(i, j) = Complex(normal(rng), normal(rng));
  return C;
}

double worst_z(const std::vector<EstimateReport>& reports, std::string* label = nullptr) {
  double worst = 0.0;
  for (const auto& r : reports)
    if (r.z_score >= worst) {
      worst = r.z_score;
      if (label) *label = r.label;
    }
  return worst;
}

int run_shell(const std::string& cmd, std::string* out) {
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return -1;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out->append(buf, n);
  const int status = pclose(pipe);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

int main() {
  criterion(1, "S_K character tables K = 1..4 with orders", 1.0, [] {
    int cells = 0;
    for (const auto& t : reference::sym_char_tables()) {
      const auto classes = enumerate_cycle_types(t.K);
      const auto irreps = enumerate_partitions(t.K, t.K);
      if (classes.size() != t.classes.size() || irreps.size() != t.irreps.size()) return Outcome{false, "shape"};
      for (std::size_t c = 0; c < classes.size(); ++c) {
        if (!(classes[c] == CycleType(t.classes[c])) || class_order(classes[c]) != t.orders[c])
          return Outcome{false, "class " + classes[c].label()};
        ++cells;
      }
      for (std::size_t e = 0; e < irreps.size(); ++e)
        for (std::size_t c = 0; c < classes.size(); ++c) {
          if (sym_character(irreps[e], classes[c]) != t.characters[e][c])
            return Outcome{false, irreps[e].label() + " on " + classes[c].label()};
          ++cells;
        }
    }
    return Outcome{true, std::to_string(cells) + " entries exact"};
  });

  criterion(2, "U(N) characters as power-sum polynomials", 1.0, [] {
    int terms = 0;
    for (const auto& row : reference::unitary_char_rows()) {
      const PowerSumPoly poly = unitary_char_poly(Partition(row.irrep));
      if (poly.terms().size() != row.character.size()) return Outcome{false, Partition(row.irrep).label()};
      for (const auto& t : row.character) {
        if (poly.coefficient(t.monomial) != parse_rational(t.coefficient))
          return Outcome{false, Partition(row.irrep).label() + " " + monomial_label(t.monomial)};
        ++terms;
      }
    }
    // one row per partition of K = 1..4
    std::size_t irreps = 0;
    for (int K = 1; K <= 4; ++K) irreps += enumerate_partitions(K, K).size();
    return Outcome{reference::unitary_char_rows().size() == irreps,
                   std::to_string(reference::unitary_char_rows().size()) + " expansions, " + std::to_string(terms) +
                       " coefficients exact"};
  });

  criterion(3, "Weyl dimensions vs dimension polynomials", 60.0, [] {
    for (const auto& row : reference::unitary_char_rows())
      for (int N = 1; N <= 8; ++N) {
        BigRational expected = parse_rational(row.dim_scale);
        for (int s : row.dim_shifts) expected *= BigRational(N + s);
        if (BigRational(weyl_dim(Partition(row.irrep), N)) != expected)
          return Outcome{false, Partition(row.irrep).label() + " at N=" + std::to_string(N)};
      }
    return Outcome{true, std::to_string(reference::unitary_char_rows().size()) + " irreps x N = 1..8 exact"};
  });

  criterion(4, "dimension-weighted character sums K = 0..4", 60.0, [] {
    const auto& sums = reference::dim_char_sums();
    for (int K = 0; K <= 4; ++K)
      for (int N = 1; N <= 6; ++N) {
        const PowerSumPoly poly = dim_char_sum(K, N);
        const auto& terms = sums[static_cast<std::size_t>(K)];
        if (poly.terms().size() != terms.size()) return Outcome{false, "K=" + std::to_string(K)};
        for (const auto& t : terms)
          if (poly.coefficient(t.monomial) !=
              parse_rational(t.coefficient) * BigRational(pow_int(BigInt(N), static_cast<unsigned>(t.n_power))))
            return Outcome{false, "K=" + std::to_string(K) + " N=" + std::to_string(N) + " " + monomial_label(t.monomial)};
      }
    return Outcome{true, "polynomials agree at N = 1..6"};
  });

  criterion(5, "power-sum route == determinant-ratio route", 60.0, [] {
    Rng rng = make_stream(5, 0);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    int pairs = 0;
    for (int m = 0; m < 100; ++m) {
      const int N = 1 + m % 5;
      std::vector<Complex> alpha;
      for (int i = 0; i < N; ++i) alpha.emplace_back(u(rng), u(rng));
      const ComplexMatrix U = random_unitary(N, rng);
      Eigen::VectorXcd d(N);
      for (int i = 0; i < N; ++i) d(i) = alpha[static_cast<std::size_t>(i)];
      const ComplexMatrix A = U * d.asDiagonal() * U.adjoint();
      for (int K = 1; K <= 5; ++K)
        for (const auto& eta : enumerate_partitions(K, N)) {
          const Complex ratio = unitary_char_ratio(eta, alpha);
          const Complex direct = unitary_char_eval(eta, A);
          worst = std::max(worst, std::abs(direct - ratio) / std::max(std::abs(ratio), 1e-300));
          ++pairs;
        }
    }
    return Outcome{worst <= kRatioTolerance,
                   "100 matrices, " + std::to_string(pairs) + " characters, max rel err " + num(worst)};
  });

  criterion(6, "simplex golden, MC, Dirichlet identity", 30.0, [] {
    if (simplex_moment({{2, 0, 1}, 1}) != BigRational(1, 60)) return Outcome{false, "golden 1/60"};
    std::mt19937_64 rng(6);
    std::vector<EstimateReport> reports;
    for (int s = 0; s < 20; ++s) {
      const int N_b = 1 + s % 4;
      std::vector<int> nu(static_cast<std::size_t>(N_b), 0);
      const int total = std::uniform_int_distribution<int>(0, 4)(rng);
      for (int k = 0; k < total; ++k) ++nu[std::uniform_int_distribution<std::size_t>(0, nu.size() - 1)(rng)];
      reports.push_back(estimate_simplex_moment({nu, 1}, kMcSamples, 600 + static_cast<unsigned>(s)));
    }
    std::string worst_label;
    const double z = worst_z(reports, &worst_label);
    for (int s = 0; s < 50; ++s) {
      const int N_B = 1 + s % 4;
      std::vector<int> nu(static_cast<std::size_t>(N_B));
      for (int& x : nu) x = std::uniform_int_distribution<int>(0, 5)(rng);
      const BigRational lambda(std::uniform_int_distribution<int>(1, 9)(rng), std::uniform_int_distribution<int>(1, 4)(rng));
      const BigRational d = dirichlet_moment({nu, lambda, {1}});
      nu.push_back(0);
      if (d != simplex_moment({nu, lambda})) return Outcome{false, "Dirichlet identity"};
    }
    return Outcome{z <= kSigmas, "1/60 exact; 20 specs max z " + num(z) + " (" + worst_label + "); 50 identities exact"};
  });

  criterion(7, "determinant and integral lemmas", 60.0, [] {
    int count = 0;
    for (int N = 1; N <= 4; ++N) {
      const int total = static_cast<int>(std::pow(5, N));
      for (int code = 0; code < total; ++code) {
        std::vector<int> beta;
        for (int c = code, j = 0; j < N; ++j, c /= 5) beta.push_back(c % 5);
        std::vector<std::vector<BigInt>> M(static_cast<std::size_t>(N));
        for (int i = 0; i < N; ++i)
          for (int b : beta) M[static_cast<std::size_t>(i)].push_back(factorial(i + b));
        if (det_lemma_value(beta) != bareiss(M)) return Outcome{false, "det lemma"};
        ++count;
      }
    }
    const std::vector<int> beta{0, 1};
    const BigRational v = int_lemma_value(beta);
    const double quad = boost::math::quadrature::gauss<double, 10>::integrate(
        [](double x) { return (1.0 - 2.0 * x) * (1.0 - x); }, 0.0, 1.0);
    const double err = std::abs(quad - to_double(v));
    return Outcome{v == BigRational(1, 6) && err <= kQuadratureTolerance,
                   std::to_string(count) + " determinants exact; int lemma 1/6, quadrature err " + num(err)};
  });

  criterion(8, "E[(tr rho)^K] = 1 for K <= 6, N <= 4", 60.0, [] {
    double worst = 0.0;
    for (int N = 1; N <= 4; ++N)
      for (int K = 1; K <= 6; ++K) {
        // exact: expand (sum_i rho_ii)^K over multisets of diagonal indices
        BigRational total = 0;
        std::vector<int> idx(static_cast<std::size_t>(K), 1);
        while (true) {
          EntryMomentSpec spec{N, {}};
          std::vector<int> mult(static_cast<std::size_t>(N) + 1, 0);
          for (int i : idx) {
            spec.pairs.emplace_back(i, i);
            ++mult[static_cast<std::size_t>(i)];
          }
          BigInt ways = factorial(K);
          for (int m : mult) ways /= factorial(m);
          total += BigRational(ways) * entry_moment(spec);
          int p = K - 1;
          while (p >= 0 && idx[static_cast<std::size_t>(p)] == N) --p;
          if (p < 0) break;
          ++idx[static_cast<std::size_t>(p)];
          for (int q = p + 1; q < K; ++q) idx[static_cast<std::size_t>(q)] = idx[static_cast<std::size_t>(p)];
        }
        if (total != 1) return Outcome{false, "exact sum N=" + std::to_string(N) + " K=" + std::to_string(K)};
        const ObservableList I(static_cast<std::size_t>(K), ComplexMatrix::Identity(N, N));
        worst = std::max(worst, std::abs(moment_traces(I) - 1.0));
      }
    return Outcome{worst <= 1e-12, "exact via entry moments; moment_traces err " + num(worst)};
  });

  criterion(9, "K = 1, 2 closed forms on random C", 60.0, [] {
    Rng rng = make_stream(9, 0);
    double worst = 0.0;
    for (int t = 0; t < 30; ++t) {
      const int N = 1 + t % 4;
      const double n = N;
      const ObservableList C{gaussian_matrix(N, rng), gaussian_matrix(N, rng)};
      const Complex one = C[0].trace() / n;
      const Complex two = (n * C[0].trace() * C[1].trace() + (C[0] * C[1]).trace()) / (n * (n * n + 1.0));
      worst = std::max(worst, std::abs(moment_traces(std::span(C.data(), 1)) - one));
      worst = std::max(worst, std::abs(moment_traces(C) - two));
    }
    return Outcome{worst <= kClosedFormTolerance, "30 draws, max abs err " + num(worst)};
  });

  criterion(10, "purity: exact and MC", 60.0, [] {
    for (int N = 1; N <= 6; ++N)
      if (purity_mean(N) != BigRational(2 * N, N * N + 1)) return Outcome{false, "N=" + std::to_string(N)};
    std::vector<EstimateReport> reports;
    for (int N = 2; N <= 4; ++N) reports.push_back(estimate_purity(N, kMcSamples, 1000 + static_cast<unsigned>(N)));
    const double z = worst_z(reports);
    return Outcome{z <= kSigmas, "2N/(N^2+1) exact N=1..6; MC N=2,3,4 max z " + num(z)};
  });

  criterion(11, "entry moments K <= 3, N = 2,3 vs MC", 120.0, [] {
    if (entry_moment({2, {{1, 2}, {2, 1}}}) != BigRational(1, 10) || entry_moment({2, {{1, 1}, {1, 1}}}) != BigRational(3, 10))
      return Outcome{false, "goldens"};
    std::vector<EstimateReport> reports;
    for (int N = 2; N <= 3; ++N) {
      std::vector<EntryMomentSpec> specs;
      for (int K = 1; K <= 3; ++K) {
        const auto orbit = entry_moment_orbits(N, K);
        specs.insert(specs.end(), orbit.begin(), orbit.end());
      }
      const auto batch = estimate_entry_moments(N, specs, kMcSamples, 1100 + static_cast<unsigned>(N));
      reports.insert(reports.end(), batch.begin(), batch.end());
    }
    std::string label;
    const double z = worst_z(reports, &label);
    return Outcome{z <= kSigmas,
                   "1/10, 3/10 exact; " + std::to_string(reports.size()) + " orbits max z " + num(z) + " (" + label + ")"};
  });

  criterion(12, "MGF vs truncated series, K_max = 6", 60.0, [] {
    Rng rng = make_stream(12, 0);
    std::vector<EstimateReport> reports;
    for (int N = 2; N <= 3; ++N)
      for (int a = 0; a < 5; ++a) {
        const ComplexMatrix G = gaussian_matrix(N, rng);
        ComplexMatrix A = (G + G.adjoint()) / 2.0;
        const double norm = Eigen::SelfAdjointEigenSolver<ComplexMatrix>(A).eigenvalues().cwiseAbs().maxCoeff();
        A *= (0.2 + 0.04 * a) / norm;
        reports.push_back(estimate_mgf(A, 6, kMcSamples, 1200 + static_cast<unsigned>(5 * N + a)));
      }
    const double z = worst_z(reports);
    return Outcome{z <= kSigmas, "10 matrices, max z " + num(z)};
  });

  criterion(13, "N = 2 eigenvalue law KS and negative control", 60.0, [] {
    const std::uint64_t seed = 1301, control_seed = 1302;
    const KsReport good = ks_eigenvalue_check(2, kMcSamples, seed);
    const KsReport control = ks_eigenvalue_check(2, kMcSamples, control_seed, EigenvalueLaw::uniform);
    return Outcome{good.p_value > kKsAlpha && control.p_value < kKsAlpha,
                   "p=" + num(good.p_value) + " (seed " + std::to_string(seed) + "), control p=" + num(control.p_value) +
                       " (seed " + std::to_string(control_seed) + ")"};
  });

  criterion(14, "CLI verify run and table fixtures", 180.0, [] {
    std::string out;
    const int code = run_shell(std::string(RHO_CLI_PATH) + " verify --suite all --samples 200000 --seed 1 --format json", &out);
    if (code != 0) return Outcome{false, "verify exit " + std::to_string(code)};
    int fixtures = 0;
    auto compare = [&](const std::string& which, int k) {
      std::string table;
      run_shell(std::string(RHO_CLI_PATH) + " tables " + which + " --k " + std::to_string(k) + " --format csv", &table);
      ++fixtures;
      return table == read_file(std::string(RHO_FIXTURE_DIR) + "/" + which + "-" + std::to_string(k) + ".csv");
    };
    for (int k = 1; k <= 4; ++k)
      if (!compare("sym-chars", k) || !compare("unitary-chars", k))
        return Outcome{false, "fixture K=" + std::to_string(k)};
    for (int k = 0; k <= 4; ++k)
      if (!compare("dim-char-sum", k)) return Outcome{false, "dim-char-sum fixture K=" + std::to_string(k)};
    return Outcome{true, "verify exit 0; " + std::to_string(fixtures) + " fixtures byte-identical"};
  });

  std::printf("%s: %d of 14 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
