#include "rho/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <omp.h>

namespace rho {

Rng make_stream(std::uint64_t seed, std::uint64_t block) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32),
                    0x5eedu};
  return Rng(seq);
}

namespace {

ComplexMatrix ginibre(int N, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix G(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      G(i, j) = Complex(re, im);
    }
  return G;
}

}  // namespace

DensityMatrixSample sample_density(int N, Rng& rng) {
  if (N < 1) throw ArgumentError("sample_density: N must be >= 1");
  for (;;) {
    const ComplexMatrix G = ginibre(N, rng);
    ComplexMatrix W(N, N);
    for (int i = 0; i < N; ++i) {
      W(i, i) = G.row(i).squaredNorm();
      for (int j = i + 1; j < N; ++j) {
        W(i, j) = (G.row(i).array() * G.row(j).array().conjugate()).sum();
        W(j, i) = std::conj(W(i, j));
      }
    }
    const double trace = W.trace().real();
    if (trace < 1e-300) continue;
    return DensityMatrixSample{W / trace};
  }
}

SampleInvariants check_invariants(const DensityMatrixSample& sample) {
  const ComplexMatrix& rho = sample.rho;
  SampleInvariants inv;
  for (int i = 0; i < rho.rows(); ++i)
    for (int j = 0; j < rho.cols(); ++j)
      inv.hermiticity_error = std::max(inv.hermiticity_error, std::abs(rho(i, j) - std::conj(rho(j, i))));
  inv.trace_error = std::abs(rho.trace() - Complex(1.0));
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho, Eigen::EigenvaluesOnly);
  inv.min_eigenvalue = solver.eigenvalues().minCoeff();
  return inv;
}

// --- accumulation ---------------------------------------------------------

MomentAccumulator::MomentAccumulator(std::size_t width)
    : sum_re(width, 0.0), sum_im(width, 0.0), sumsq_re(width, 0.0), sumsq_im(width, 0.0) {}

void MomentAccumulator::add(std::span<const Complex> values) {
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double re = values[k].real();
    const double im = values[k].imag();
    sum_re[k] += re;
    sum_im[k] += im;
    sumsq_re[k] += re * re;
    sumsq_im[k] += im * im;
  }
  ++count;
}

void MomentAccumulator::merge(const MomentAccumulator& other) {
  for (std::size_t k = 0; k < sum_re.size(); ++k) {
    sum_re[k] += other.sum_re[k];
    sum_im[k] += other.sum_im[k];
    sumsq_re[k] += other.sumsq_re[k];
    sumsq_im[k] += other.sumsq_im[k];
  }
  count += other.count;
}

Complex MomentAccumulator::mean(std::size_t k) const {
  const auto n = static_cast<double>(count);
  return {sum_re[k] / n, sum_im[k] / n};
}

Complex MomentAccumulator::standard_error(std::size_t k) const {
  const auto n = static_cast<double>(count);
  auto se = [n](double s, double ss) {
    if (n < 2) return 0.0;
    const double m = s / n;
    const double var = std::max(0.0, (ss - n * m * m) / (n - 1.0));
    return std::sqrt(var / n);
  };
  return {se(sum_re[k], sumsq_re[k]), se(sum_im[k], sumsq_im[k])};
}

namespace {

std::int64_t block_count(std::int64_t samples, std::int64_t block_size) {
  if (samples < 1) throw ArgumentError("Monte Carlo needs at least one sample");
  if (block_size < 1) throw ArgumentError("Monte Carlo block size must be >= 1");
  return (samples + block_size - 1) / block_size;
}

MomentAccumulator run_block(std::int64_t block, std::int64_t samples, std::uint64_t seed,
                            std::size_t width, const SampleFn& fn, std::int64_t block_size) {
  MomentAccumulator acc(width);
  Rng rng = make_stream(seed, static_cast<std::uint64_t>(block));
  std::vector<Complex> values(width);
  const std::int64_t begin = block * block_size;
  const std::int64_t end = std::min(samples, begin + block_size);
  for (std::int64_t s = begin; s < end; ++s) {
    fn(rng, values);
    acc.add(values);
  }
  return acc;
}

}  // namespace

namespace kernels {

MomentAccumulator accumulate_serial(std::int64_t samples, std::uint64_t seed, std::size_t width,
                                    const SampleFn& fn, std::int64_t block_size) {
  const std::int64_t blocks = block_count(samples, block_size);
  MomentAccumulator total(width);
  for (std::int64_t b = 0; b < blocks; ++b)
    total.merge(run_block(b, samples, seed, width, fn, block_size));
  return total;
}

MomentAccumulator accumulate_parallel(std::int64_t samples, std::uint64_t seed, std::size_t width,
                                      const SampleFn& fn, std::int64_t block_size) {
  const std::int64_t blocks = block_count(samples, block_size);
  std::vector<MomentAccumulator> partial(static_cast<std::size_t>(blocks));
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t b = 0; b < blocks; ++b)
    partial[static_cast<std::size_t>(b)] = run_block(b, samples, seed, width, fn, block_size);
  MomentAccumulator total(width);
  for (const auto& p : partial) total.merge(p);
  return total;
}

}  // namespace kernels

MomentAccumulator accumulate(std::int64_t samples, std::uint64_t seed, std::size_t width,
                             const SampleFn& fn, const McOptions& options) {
  return options.parallel
             ? kernels::accumulate_parallel(samples, seed, width, fn, options.block_size)
             : kernels::accumulate_serial(samples, seed, width, fn, options.block_size);
}

EstimateReport make_report(std::string label, const MomentAccumulator& acc, std::size_t k,
                           Complex exact, std::uint64_t seed) {
  EstimateReport r;
  r.label = std::move(label);
  r.estimate = acc.mean(k);
  r.component_errors = acc.standard_error(k);
  r.std_error = std::max(r.component_errors.real(), r.component_errors.imag());
  r.exact_value = exact;
  r.sample_count = acc.count;
  r.seed = seed;
  auto z = [](double diff, double se) {
    diff = std::abs(diff);
    if (se > 0.0) return diff / se;
    // A component with zero spread is deterministic; it must match exactly
    // up to rounding.
    return diff <= 1e-12 ? 0.0 : std::numeric_limits<double>::infinity();
  };
  r.z_score = std::max(z(r.estimate.real() - exact.real(), r.component_errors.real()),
                       z(r.estimate.imag() - exact.imag(), r.component_errors.imag()));
  return r;
}

// --- quantum estimators ---------------------------------------------------

std::vector<EstimateReport> estimate_entry_moments(int N, std::span<const EntryMomentSpec> specs,
                                                   std::int64_t samples, std::uint64_t seed,
                                                   const McOptions& options) {
  if (samples < 100) throw ArgumentError("entry-moment estimation needs at least 100 samples");
  for (const auto& spec : specs) {
    spec.validate();
    if (spec.N != N) throw ArgumentError("estimate_entry_moments: specs must share N");
  }
  std::vector<EntryMomentSpec> local(specs.begin(), specs.end());
  const SampleFn fn = [N, &local](Rng& rng, std::span<Complex> out) {
    const DensityMatrixSample s = sample_density(N, rng);
    for (std::size_t k = 0; k < local.size(); ++k) {
      Complex prod = 1.0;
      for (const auto& [i, j] : local[k].pairs) prod *= s.rho(i - 1, j - 1);
      out[k] = prod;
    }
  };
  const MomentAccumulator acc = accumulate(samples, seed, local.size(), fn, options);
  std::vector<EstimateReport> reports;
  reports.reserve(local.size());
  for (std::size_t k = 0; k < local.size(); ++k) {
    const Complex exact = to_double(entry_moment(local[k]));
    reports.push_back(make_report(local[k].label(), acc, k, exact, seed));
  }
  return reports;
}

EstimateReport estimate_entry_moment(const EntryMomentSpec& spec, std::int64_t samples,
                                     std::uint64_t seed, const McOptions& options) {
  return estimate_entry_moments(spec.N, std::span(&spec, 1), samples, seed, options).front();
}

EstimateReport estimate_purity(int N, std::int64_t samples, std::uint64_t seed,
                               const McOptions& options) {
  const SampleFn fn = [N](Rng& rng, std::span<Complex> out) {
    const DensityMatrixSample s = sample_density(N, rng);
    out[0] = s.rho.cwiseAbs2().sum();
  };
  const MomentAccumulator acc = accumulate(samples, seed, 1, fn, options);
  return make_report("E[tr rho^2] N=" + std::to_string(N), acc, 0, to_double(purity_mean(N)), seed);
}

EstimateReport estimate_mgf(const ComplexMatrix& A, int K_max, std::int64_t samples,
                            std::uint64_t seed, double tolerance, const McOptions& options) {
  const int N = static_cast<int>(A.rows());
  if (N < 1 || A.cols() != N) throw ArgumentError("estimate_mgf: A must be square");
  if ((A - A.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    throw ArgumentError("estimate_mgf: A must be Hermitian");
  if (K_max < 0) throw ArgumentError("estimate_mgf: K_max must be >= 0");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(A, Eigen::EigenvaluesOnly);
  const double norm = solver.eigenvalues().cwiseAbs().maxCoeff();
  // |tr(A rho)| <= |A| on the density-matrix body, so this bounds the tail.
  const double bound = std::exp(norm) * std::pow(norm, K_max + 1) / std::tgamma(K_max + 2.0);
  if (bound >= tolerance)
    throw ArgumentError("estimate_mgf: truncation remainder bound " + std::to_string(bound) +
                        " is not below tolerance " + std::to_string(tolerance));
  const SampleFn fn = [N, &A](Rng& rng, std::span<Complex> out) {
    const DensityMatrixSample s = sample_density(N, rng);
    out[0] = std::exp((A * s.rho).trace());
  };
  const MomentAccumulator acc = accumulate(samples, seed, 1, fn, options);
  return make_report("E[exp(tr(A rho))] N=" + std::to_string(N) + " K_max=" + std::to_string(K_max),
                     acc, 0, mgf_series(A, K_max), seed);
}

ComplexMatrix random_unitary(int N, Rng& rng) {
  const ComplexMatrix G = ginibre(N, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(G);
  ComplexMatrix Q = qr.householderQ();
  const ComplexMatrix R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < N; ++j) {
    const Complex d = R(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) Q.col(j) *= d / mag;
  }
  return Q;
}

EstimateReport unitary_invariance_check(const ComplexMatrix& U, std::int64_t samples,
                                        std::uint64_t seed, const McOptions& options) {
  const SampleFn fn = [&U](Rng& rng, std::span<Complex> out) {
    const DensityMatrixSample s = sample_density(static_cast<int>(U.rows()), rng);
    const ComplexMatrix rotated = U * s.rho * U.adjoint();
    out[0] = s.rho(0, 0) - rotated(0, 0);
  };
  const MomentAccumulator acc = accumulate(samples, seed, 1, fn, options);
  return make_report("E[rho11] - E[(U rho U^+)11] N=" + std::to_string(U.rows()), acc, 0, 0.0, seed);
}

// --- classical estimators -------------------------------------------------

namespace {

std::string exponent_label(const char* kind, const std::vector<int>& nu, const BigRational& scale) {
  std::string label = std::string(kind) + " nu=";
  for (std::size_t b = 0; b < nu.size(); ++b) label += (b ? "," : "") + std::to_string(nu[b]);
  return label + " lambda=" + to_string(scale);
}

}  // namespace

std::vector<EstimateReport> estimate_simplex_moments(int N_b, std::span<const SimplexMomentSpec> specs,
                                                     std::int64_t samples, std::uint64_t seed,
                                                     const McOptions& options) {
  struct Prepared {
    std::vector<int> nu;
    double lambda;
    double volume;  // area of {x >= 0, sum x = lambda} under the delta measure
  };
  std::vector<Prepared> prepared;
  for (const auto& spec : specs) {
    spec.validate();
    if (spec.dimension() != N_b) throw ArgumentError("estimate_simplex_moments: specs must share N_b");
    const double lambda = to_double(spec.scale);
    prepared.push_back({spec.exponents, lambda,
                        std::pow(lambda, N_b - 1) / std::tgamma(static_cast<double>(N_b))});
  }
  const SampleFn fn = [N_b, &prepared](Rng& rng, std::span<Complex> out) {
    const auto p = sample_simplex(N_b, rng);
    for (std::size_t k = 0; k < prepared.size(); ++k) {
      const Prepared& q = prepared[k];
      double prod = q.volume;
      for (int b = 0; b < N_b; ++b)
        prod *= std::pow(q.lambda * p[static_cast<std::size_t>(b)], q.nu[static_cast<std::size_t>(b)]);
      out[k] = prod;
    }
  };
  const MomentAccumulator acc = accumulate(samples, seed, prepared.size(), fn, options);
  std::vector<EstimateReport> reports;
  for (std::size_t k = 0; k < specs.size(); ++k)
    reports.push_back(make_report(exponent_label("simplex", specs[k].exponents, specs[k].scale), acc, k,
                                  to_double(simplex_moment(specs[k])), seed));
  return reports;
}

EstimateReport estimate_simplex_moment(const SimplexMomentSpec& spec, std::int64_t samples,
                                       std::uint64_t seed, const McOptions& options) {
  spec.validate();
  return estimate_simplex_moments(spec.dimension(), std::span(&spec, 1), samples, seed, options).front();
}

EstimateReport estimate_dirichlet_moment(const DirichletSpec& spec, std::int64_t samples,
                                         std::uint64_t seed, const McOptions& options) {
  spec.validate();
  const int NB = static_cast<int>(spec.exponents.size());
  const double lambda = to_double(spec.scale);
  // Points lambda * (P_1..P_NB) with P uniform on the NB-simplex are uniform
  // on the corner region of volume lambda^NB / NB!.
  const double volume = std::pow(lambda, NB) / std::tgamma(NB + 1.0);
  std::vector<double> coeffs;
  for (const auto& c : spec.f_coeffs) coeffs.push_back(to_double(c));
  const std::vector<int> nu = spec.exponents;
  const SampleFn fn = [NB, lambda, volume, &nu, &coeffs](Rng& rng, std::span<Complex> out) {
    const auto p = sample_simplex(NB + 1, rng);
    double prod = volume;
    double s = 0.0;
    for (int b = 0; b < NB; ++b) {
      const double x = lambda * p[static_cast<std::size_t>(b)];
      s += x;
      prod *= std::pow(x, nu[static_cast<std::size_t>(b)]);
    }
    double f = 0.0;
    for (std::size_t m = coeffs.size(); m-- > 0;) f = f * s + coeffs[m];
    out[0] = prod * f;
  };
  const MomentAccumulator acc = accumulate(samples, seed, 1, fn, options);
  return make_report(exponent_label("dirichlet", nu, spec.scale), acc, 0,
                     to_double(dirichlet_moment(spec)), seed);
}

// --- Kolmogorov-Smirnov ---------------------------------------------------

double kolmogorov_p_value(double statistic, std::int64_t n) {
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  const double lambda = (sqrt_n + 0.12 + 0.11 / sqrt_n) * statistic;
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 200; ++k) {
    const double term = sign * std::exp(-2.0 * k * k * lambda * lambda);
    sum += term;
    if (std::abs(term) <= 1e-12 * std::abs(sum) || std::abs(term) <= 1e-300) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsReport ks_test(std::vector<double>& values, const std::function<double(double)>& cdf) {
  if (values.empty()) throw ArgumentError("ks_test: no samples");
  std::sort(values.begin(), values.end());
  const auto n = static_cast<double>(values.size());
  double d = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double F = cdf(values[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - F, F - static_cast<double>(i) / n});
  }
  KsReport r;
  r.statistic = d;
  r.sample_count = static_cast<std::int64_t>(values.size());
  r.p_value = kolmogorov_p_value(d, r.sample_count);
  return r;
}

namespace {

// One scalar per sample, written to its own slot so thread count is irrelevant.
std::vector<double> collect(std::int64_t samples, std::uint64_t seed,
                            const std::function<double(Rng&)>& draw, const McOptions& options) {
  const std::int64_t blocks = block_count(samples, options.block_size);
  std::vector<double> out(static_cast<std::size_t>(samples));
  auto fill = [&](std::int64_t b) {
    Rng rng = make_stream(seed, static_cast<std::uint64_t>(b));
    const std::int64_t begin = b * options.block_size;
    const std::int64_t end = std::min(samples, begin + options.block_size);
    for (std::int64_t s = begin; s < end; ++s) out[static_cast<std::size_t>(s)] = draw(rng);
  };
  if (options.parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t b = 0; b < blocks; ++b) fill(b);
  } else {
    for (std::int64_t b = 0; b < blocks; ++b) fill(b);
  }
  return out;
}

}  // namespace

KsReport ks_eigenvalue_check(int N, std::int64_t samples, std::uint64_t seed, EigenvalueLaw law,
                             const McOptions& options) {
  if (N != 2) throw ArgumentError("ks_eigenvalue_check: only N = 2 has a closed-form marginal");
  std::function<double(Rng&)> draw;
  if (law == EigenvalueLaw::hilbert_schmidt) {
    draw = [](Rng& rng) {
      const DensityMatrixSample s = sample_density(2, rng);
      const double a = s.rho(0, 0).real();
      const double d = s.rho(1, 1).real();
      const double half_gap = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(s.rho(0, 1)));
      return 0.5 * (a + d) + half_gap;
    };
  } else {
    draw = [](Rng& rng) { return std::uniform_real_distribution<double>(0.5, 1.0)(rng); };
  }
  std::vector<double> values = collect(samples, seed, draw, options);
  KsReport r = ks_test(values, [](double x) {
    if (x <= 0.5) return 0.0;
    if (x >= 1.0) return 1.0;
    const double u = 2.0 * x - 1.0;
    return u * u * u;
  });
  r.label = law == EigenvalueLaw::hilbert_schmidt ? "KS larger eigenvalue N=2"
                                                  : "KS larger eigenvalue N=2 (uniform control)";
  r.seed = seed;
  return r;
}

KsReport ks_simplex_marginal(std::int64_t samples, std::uint64_t seed, const McOptions& options) {
  std::vector<double> values =
      collect(samples, seed, [](Rng& rng) { return sample_simplex(2, rng)[0]; }, options);
  KsReport r = ks_test(values, [](double x) { return std::clamp(x, 0.0, 1.0); });
  r.label = "KS simplex marginal N_b=2";
  r.seed = seed;
  return r;
}

}  // namespace rho
