#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mmspectra/common.hpp"
#include "mmspectra/signatures.hpp"
#include "mmspectra/spectrum.hpp"

namespace mmspectra {

// A sample of spectral curves evaluated on a shared grid and truncated to a
// shared k'. values[i](g, k) is the k-th smallest eigenvalue of curve i at
// grid point g.
struct SpectrumSample {
  QuantileGrid grid;
  std::size_t k_prime = 0;
  std::vector<Matrix> values;

  std::size_t size() const { return values.size(); }
};

SpectrumSample make_sample(const std::vector<SpectralCurve>& curves, const QuantileGrid& grid,
                           std::size_t k_prime);

struct MeanSpectrumEstimate {
  QuantileGrid grid;
  std::size_t n = 0;
  Matrix mean;               // G x k'
  std::optional<Matrix> sd;  // unbiased, only for n >= 2
};

MeanSpectrumEstimate mean_spectrum(const SpectrumSample& sample);

struct ConfidenceBand {
  std::size_t eigen_index = 0;  // 1-based
  double level = 0.0;
  std::vector<double> rho;
  std::vector<double> mean;
  std::vector<double> lower;  // clamped at 0
  std::vector<double> upper;
};

// Pointwise Student-t band mean +/- t_{n-1,(1+level)/2} sd / sqrt(n) for
// eigenvalue `eigen_index` (1-based: 2 is the Fiedler value, k' the largest
// kept).
ConfidenceBand confidence_bands(const MeanSpectrumEstimate& est, double level,
                                std::size_t eigen_index);

// Upper (1+level)/2 quantile of Student's t with df degrees of freedom.
double student_quantile(double level, std::size_t df);

// T = max over grid of || mean_1(rho) - mean_2(rho) ||_inf.
double test_statistic(const SpectrumSample& a, const SpectrumSample& b);

enum class Scaling {
  // Observed statistic multiplied by sqrt(2 n m / (n + m)) before comparison
  // with the bootstrap replicates.
  kCalibrated,
  // Unscaled statistic compared directly with the replicates.
  kRaw,
};

const char* to_string(Scaling scaling);

struct BootstrapOptions {
  std::size_t replicates = 500;
  std::uint64_t seed = 0;
  Scaling scaling = Scaling::kCalibrated;
  // (1 + #{theta >= T}) / (B + 1) instead of #{theta > T} / B.
  bool plus_one = false;
  std::size_t threads = 0;
};

struct TestResult {
  double statistic = 0.0;           // raw T
  double compared_statistic = 0.0;  // T after scaling
  double p_value = 1.0;
  std::size_t replicates = 0;
  std::uint64_t seed = 0;
  Scaling scaling = Scaling::kCalibrated;
  bool plus_one = false;
  std::vector<double> theta;
  std::vector<std::string> warnings;
};

// Two-sample bootstrap test of equal mean spectra. Replicate b resamples
// whole curves with replacement within each sample and records
// theta_b = max_rho || sqrt(n)(mean*_1 - mean_1) - sqrt(m)(mean*_2 - mean_2) ||_inf.
// Replicate b draws from substream (seed, b), so results do not depend on
// the thread count.
TestResult bootstrap_test(const SpectrumSample& a, const SpectrumSample& b,
                          const BootstrapOptions& options);

struct ConcentrationParams {
  double mass_bound = 1.0;  // upper bound on the total mass of every space
  std::size_t k = 2;        // node count
  std::size_t n = 1;
  std::size_t m = 1;
  double kappa = 1.0;  // constant of the bracketing-entropy bound (user supplied)
  double t = 1.0;
};

// Terms of the tail bound on P(T > t): for j = 2..K and xi in {n, m},
//   exp(-(t/2 - EZ_xi)^2 / (2 nu_xi + 2 M^2 t / 3))
// with EZ_xi = 4 kappa M^2 sqrt(2/xi log(max(K/M, e^2 M))) and
// nu_xi = 16 M^4 kappa sqrt(2/xi log(max(K/M, e^2 M))) + 4 xi M^4.
// Returns the unclamped sum, or +inf when t/2 <= EZ for some xi.
double concentration_bound_sum(const ConcentrationParams& params);

// concentration_bound_sum clamped to [0, 1].
double concentration_bound(const ConcentrationParams& params);

}  // namespace mmspectra
