#include "mmspectra/inference.hpp"

#include <algorithm>
#include <limits>

#include <boost/math/distributions/students_t.hpp>

#include "mmspectra/parallel.hpp"
#include "mmspectra/random.hpp"

namespace mmspectra {

SpectrumSample make_sample(const std::vector<SpectralCurve>& curves, const QuantileGrid& grid,
                           std::size_t k_prime) {
  if (curves.empty()) throw InputError("a spectrum sample needs at least one curve");
  if (grid.values.empty()) throw InputError("empty evaluation grid");
  SpectrumSample s;
  s.grid = grid;
  s.k_prime = k_prime;
  const auto g = static_cast<Eigen::Index>(grid.size());
  const auto kp = static_cast<Eigen::Index>(k_prime);
  for (const auto& c : curves) {
    if (k_prime < 1 || k_prime > c.node_count()) {
      throw InputError("k_prime " + std::to_string(k_prime) + " exceeds a curve with " +
                       std::to_string(c.node_count()) + " nodes");
    }
    Matrix v(g, kp);
    for (Eigen::Index r = 0; r < g; ++r) {
      v.row(r) = spectrum_at(c, grid.values[static_cast<std::size_t>(r)]).values.head(kp).transpose();
    }
    s.values.push_back(std::move(v));
  }
  return s;
}

MeanSpectrumEstimate mean_spectrum(const SpectrumSample& sample) {
  if (sample.values.empty()) throw InputError("empty spectrum sample");
  MeanSpectrumEstimate est;
  est.grid = sample.grid;
  est.n = sample.size();
  est.mean = Matrix::Zero(sample.values.front().rows(), sample.values.front().cols());
  for (const auto& v : sample.values) est.mean += v;
  est.mean /= static_cast<double>(est.n);
  if (est.n >= 2) {
    Matrix ss = Matrix::Zero(est.mean.rows(), est.mean.cols());
    for (const auto& v : sample.values) ss += (v - est.mean).array().square().matrix();
    est.sd = (ss / static_cast<double>(est.n - 1)).array().sqrt().matrix();
  }
  return est;
}

double student_quantile(double level, std::size_t df) {
  if (!(level > 0.0 && level < 1.0)) throw InputError("confidence level must lie in (0, 1)");
  if (df < 1) throw InputError("Student quantile needs at least one degree of freedom");
  boost::math::students_t dist(static_cast<double>(df));
  return boost::math::quantile(dist, 0.5 * (1.0 + level));
}

ConfidenceBand confidence_bands(const MeanSpectrumEstimate& est, double level,
                                std::size_t eigen_index) {
  if (est.n < 2 || !est.sd) throw InputError("confidence bands need at least two curves");
  if (eigen_index < 1 || eigen_index > static_cast<std::size_t>(est.mean.cols())) {
    throw InputError("eigenvalue index " + std::to_string(eigen_index) + " outside [1, " +
                     std::to_string(est.mean.cols()) + "]");
  }
  const double tq = student_quantile(level, est.n - 1);
  const auto col = static_cast<Eigen::Index>(eigen_index - 1);
  ConfidenceBand band;
  band.eigen_index = eigen_index;
  band.level = level;
  band.rho = est.grid.values;
  for (Eigen::Index g = 0; g < est.mean.rows(); ++g) {
    const double mu = est.mean(g, col);
    const double half = tq * (*est.sd)(g, col) / std::sqrt(static_cast<double>(est.n));
    band.mean.push_back(mu);
    band.lower.push_back(std::max(0.0, mu - half));
    band.upper.push_back(mu + half);
  }
  return band;
}

namespace {

void check_compatible(const SpectrumSample& a, const SpectrumSample& b) {
  if (a.k_prime != b.k_prime) throw InputError("samples are truncated to different k'");
  if (a.grid.values != b.grid.values) throw InputError("samples are evaluated on different grids");
  if (a.values.empty() || b.values.empty()) throw InputError("empty spectrum sample");
}

Matrix sample_mean(const SpectrumSample& s) {
  Matrix mean = Matrix::Zero(s.values.front().rows(), s.values.front().cols());
  for (const auto& v : s.values) mean += v;
  return mean / static_cast<double>(s.size());
}

Matrix resampled_mean(const SpectrumSample& s, Rng& rng) {
  Matrix mean = Matrix::Zero(s.values.front().rows(), s.values.front().cols());
  for (std::size_t i = 0; i < s.size(); ++i) mean += s.values[uniform_index(rng, s.size())];
  return mean / static_cast<double>(s.size());
}

}  // namespace

double test_statistic(const SpectrumSample& a, const SpectrumSample& b) {
  check_compatible(a, b);
  return (sample_mean(a) - sample_mean(b)).cwiseAbs().maxCoeff();
}

const char* to_string(Scaling scaling) {
  return scaling == Scaling::kCalibrated ? "calibrated" : "raw";
}

TestResult bootstrap_test(const SpectrumSample& a, const SpectrumSample& b,
                          const BootstrapOptions& options) {
  check_compatible(a, b);
  if (options.replicates < 1) throw InputError("bootstrap needs at least one replicate");
  if (a.size() < 2 || b.size() < 2) throw InputError("bootstrap test needs n, m >= 2");

  const double n = static_cast<double>(a.size());
  const double m = static_cast<double>(b.size());
  const Matrix mean_a = sample_mean(a);
  const Matrix mean_b = sample_mean(b);

  TestResult r;
  r.replicates = options.replicates;
  r.seed = options.seed;
  r.scaling = options.scaling;
  r.plus_one = options.plus_one;
  r.statistic = (mean_a - mean_b).cwiseAbs().maxCoeff();
  r.compared_statistic = options.scaling == Scaling::kCalibrated
                             ? std::sqrt(2.0 * n * m / (n + m)) * r.statistic
                             : r.statistic;

  r.theta.assign(options.replicates, 0.0);
  parallel_for(options.replicates, options.threads, [&](std::size_t rep) {
    Rng rng = substream(options.seed, rep);
    const Matrix boot_a = std::sqrt(n) * (resampled_mean(a, rng) - mean_a);
    const Matrix boot_b = std::sqrt(m) * (resampled_mean(b, rng) - mean_b);
    r.theta[rep] = (boot_a - boot_b).cwiseAbs().maxCoeff();
  });

  const bool degenerate =
      r.statistic == 0.0 &&
      std::all_of(r.theta.begin(), r.theta.end(), [](double t) { return t == 0.0; });
  if (degenerate) {
    r.p_value = 1.0;
    r.warnings.push_back("degenerate samples: every curve coincides, the test has no information");
    return r;
  }

  std::size_t exceed = 0;
  for (double t : r.theta) {
    if (options.plus_one ? t >= r.compared_statistic : t > r.compared_statistic) ++exceed;
  }
  const double b_count = static_cast<double>(options.replicates);
  r.p_value = options.plus_one ? (1.0 + static_cast<double>(exceed)) / (b_count + 1.0)
                               : static_cast<double>(exceed) / b_count;
  return r;
}

double concentration_bound_sum(const ConcentrationParams& p) {
  if (!(p.mass_bound > 0.0) || !(p.kappa > 0.0) || !(p.t > 0.0) || p.k < 2 || p.n < 1 || p.m < 1) {
    throw InputError("concentration bound parameters must be positive (and K >= 2)");
  }
  const double mass = p.mass_bound;
  const double k = static_cast<double>(p.k);
  const double log_term = std::log(std::max(k / mass, std::exp(2.0) * mass));
  double sum = 0.0;
  for (const std::size_t xi_count : {p.n, p.m}) {
    const double xi = static_cast<double>(xi_count);
    const double root = std::sqrt(2.0 / xi * log_term);
    const double expected_sup = 4.0 * p.kappa * mass * mass * root;
    const double variance = 16.0 * std::pow(mass, 4) * p.kappa * root + 4.0 * xi * std::pow(mass, 4);
    const double margin = p.t / 2.0 - expected_sup;
    if (margin <= 0.0) return std::numeric_limits<double>::infinity();
    sum += std::exp(-margin * margin / (2.0 * variance + 2.0 * mass * mass * p.t / 3.0));
  }
  return (k - 1.0) * sum;
}

double concentration_bound(const ConcentrationParams& params) {
  return std::clamp(concentration_bound_sum(params), 0.0, 1.0);
}

}  // namespace mmspectra
