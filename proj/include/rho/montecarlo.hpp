#pragma once

// Monte Carlo oracle for the exact modules: flat-measure density matrices
// and simplex points, moment estimators with plug-in standard errors, and a
// Kolmogorov-Smirnov check of the N = 2 eigenvalue law.
//
// Samples are drawn in fixed-size blocks; block b uses its own generator
// seeded from (seed, b), and block sums are merged in block order. Serial and
// OpenMP runs therefore produce bit-identical reports for any thread count.

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "rho/characters.hpp"
#include "rho/classical.hpp"
#include "rho/quantum.hpp"

namespace rho {

using Rng = std::mt19937_64;

/// Generator for one block of a seeded run.
Rng make_stream(std::uint64_t seed, std::uint64_t block);

struct DensityMatrixSample {
  ComplexMatrix rho;
  int dimension() const { return static_cast<int>(rho.rows()); }
};

/// rho = G G^dagger / tr(G G^dagger) with G complex Ginibre (re, im ~ N(0, 1/2)).
DensityMatrixSample sample_density(int N, Rng& rng);

struct SampleInvariants {
  double hermiticity_error = 0.0;  // max |rho_ij - conj(rho_ji)|
  double trace_error = 0.0;        // |tr rho - 1|
  double min_eigenvalue = 0.0;
  bool ok() const {
    return hermiticity_error <= 1e-12 && trace_error <= 1e-12 && min_eigenvalue >= -1e-10;
  }
};

SampleInvariants check_invariants(const DensityMatrixSample& sample);

struct EstimateReport {
  std::string label;
  Complex estimate;
  double std_error = 0.0;       // max of the component standard errors
  Complex component_errors;     // (SE of real part, SE of imaginary part)
  Complex exact_value;
  double z_score = 0.0;         // max over components of |estimate - exact| / SE
  std::int64_t sample_count = 0;
  std::uint64_t seed = 0;

  bool within(double sigmas) const { return z_score <= sigmas; }
};

struct McOptions {
  bool parallel = true;
  std::int64_t block_size = 4096;
};

/// Running sums for `width` complex observables.
struct MomentAccumulator {
  std::vector<double> sum_re, sum_im, sumsq_re, sumsq_im;
  std::int64_t count = 0;

  explicit MomentAccumulator(std::size_t width = 0);
  void add(std::span<const Complex> values);
  void merge(const MomentAccumulator& other);
  Complex mean(std::size_t k) const;
  Complex standard_error(std::size_t k) const;
};

/// Fills one sample's observable values; must be callable concurrently.
using SampleFn = std::function<void(Rng&, std::span<Complex>)>;

namespace kernels {
MomentAccumulator accumulate_serial(std::int64_t samples, std::uint64_t seed, std::size_t width,
                                    const SampleFn& fn, std::int64_t block_size);
MomentAccumulator accumulate_parallel(std::int64_t samples, std::uint64_t seed, std::size_t width,
                                      const SampleFn& fn, std::int64_t block_size);
}  // namespace kernels

MomentAccumulator accumulate(std::int64_t samples, std::uint64_t seed, std::size_t width,
                             const SampleFn& fn, const McOptions& options = {});

/// Fills estimate, errors, and z-score against `exact`.
EstimateReport make_report(std::string label, const MomentAccumulator& acc, std::size_t k,
                           Complex exact, std::uint64_t seed);

EstimateReport estimate_entry_moment(const EntryMomentSpec& spec, std::int64_t samples,
                                     std::uint64_t seed, const McOptions& options = {});

/// All specs (same N) from one shared sample stream.
std::vector<EstimateReport> estimate_entry_moments(int N, std::span<const EntryMomentSpec> specs,
                                                   std::int64_t samples, std::uint64_t seed,
                                                   const McOptions& options = {});

EstimateReport estimate_purity(int N, std::int64_t samples, std::uint64_t seed,
                               const McOptions& options = {});

/// E[exp(tr(A rho))] against the series truncated at K_max. A must be
/// Hermitian and satisfy e^{|A|} |A|^{K_max+1} / (K_max+1)! < tolerance,
/// |A| the spectral norm; otherwise ArgumentError.
EstimateReport estimate_mgf(const ComplexMatrix& A, int K_max, std::int64_t samples,
                            std::uint64_t seed, double tolerance = 1e-6,
                            const McOptions& options = {});

/// Paired check of E[rho_11] - E[(U rho U^dagger)_11] = 0.
EstimateReport unitary_invariance_check(const ComplexMatrix& U, std::int64_t samples,
                                        std::uint64_t seed, const McOptions& options = {});

/// Haar-distributed unitary: QR of a Ginibre matrix with the phases of R's
/// diagonal divided out.
ComplexMatrix random_unitary(int N, Rng& rng);

/// delta-measure simplex integral estimated as volume * uniform mean.
EstimateReport estimate_simplex_moment(const SimplexMomentSpec& spec, std::int64_t samples,
                                       std::uint64_t seed, const McOptions& options = {});

/// Several same-dimension simplex moments from one shared sample stream.
std::vector<EstimateReport> estimate_simplex_moments(int N_b, std::span<const SimplexMomentSpec> specs,
                                                     std::int64_t samples, std::uint64_t seed,
                                                     const McOptions& options = {});

/// Corner-region integral estimated as volume * uniform mean.
EstimateReport estimate_dirichlet_moment(const DirichletSpec& spec, std::int64_t samples,
                                         std::uint64_t seed, const McOptions& options = {});

struct KsReport {
  std::string label;
  double statistic = 0.0;  // sup |F_n - F|
  double p_value = 0.0;
  std::int64_t sample_count = 0;
  std::uint64_t seed = 0;
};

/// Asymptotic Kolmogorov p-value with the Stephens small-sample correction.
double kolmogorov_p_value(double statistic, std::int64_t n);

/// KS statistic of `values` (sorted in place) against `cdf`.
KsReport ks_test(std::vector<double>& values, const std::function<double(double)>& cdf);

enum class EigenvalueLaw {
  hilbert_schmidt,  // the sampler under test
  uniform,          // negative control: larger eigenvalue uniform on [1/2, 1]
};

/// Larger eigenvalue x of 2 x 2 samples against F(x) = (2x - 1)^3 on [1/2, 1],
/// the normalized (x0 - x1)^2 weight on x0 + x1 = 1. N != 2 is unsupported.
KsReport ks_eigenvalue_check(int N, std::int64_t samples, std::uint64_t seed,
                             EigenvalueLaw law = EigenvalueLaw::hilbert_schmidt,
                             const McOptions& options = {});

/// First coordinate of uniform 1-simplex points against U[0, 1].
KsReport ks_simplex_marginal(std::int64_t samples, std::uint64_t seed,
                             const McOptions& options = {});

}  // namespace rho
