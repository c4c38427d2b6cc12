#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mmspectra/common.hpp"
#include "mmspectra/laplacian.hpp"
#include "mmspectra/mmspace.hpp"

namespace mmspectra {

// Ascending eigenvalues of a rho-Laplacian, optionally with the aligned
// orthonormal eigenvectors as columns.
struct Spectrum {
  Vector values;
  std::optional<Matrix> vectors;

  std::size_t size() const { return static_cast<std::size_t>(values.size()); }
  double max() const { return values.size() ? values(values.size() - 1) : 0.0; }
  // Descending view, matching listings that put the largest eigenvalue first.
  Vector descending() const { return values.reverse(); }
};

// Piecewise-constant rho -> spectrum map. spectra[m] holds on
// (breakpoints[m-1], breakpoints[m]] with breakpoints[-1] = 0 and
// breakpoints[M] = +inf; spectra.size() == breakpoints.size() + 1.
struct SpectralCurve {
  std::vector<double> breakpoints;
  std::vector<Spectrum> spectra;

  std::size_t node_count() const { return spectra.empty() ? 0 : spectra.front().size(); }
  std::size_t interval_count() const { return spectra.size(); }
};

// Empirical spectral distribution: atom at each eigenvalue with weight 1/K.
class SpectralCdf {
 public:
  explicit SpectralCdf(const Spectrum& spectrum);

  // Fraction of eigenvalues <= t (right-continuous).
  double operator()(double t) const;
  const std::vector<double>& atoms() const { return atoms_; }

 private:
  std::vector<double> atoms_;
};

// Zero threshold for a spectrum: kZeroTolerance * max(1, lambda_max).
double zero_threshold(const Vector& values);
std::size_t zero_count(const Spectrum& spectrum);

// Dense symmetric eigensolve. Eigenvalues within the zero threshold are set
// to exactly 0.
Spectrum eig(const RhoLaplacian& lap, bool want_vectors);
Spectrum eig(const Matrix& symmetric, bool want_vectors);

struct SweepOptions {
  bool want_vectors = false;
  std::size_t threads = 0;  // 0 = default_threads()
};

// Full rho-sweep: one exact eigensolve per breakpoint interval, on the
// Laplacian accumulated from the sorted edge events.
SpectralCurve sweep(const MmSpace& space, const SweepOptions& options = {});
inline SpectralCurve sweep(const MmSpace& space, bool want_vectors) {
  return sweep(space, SweepOptions{want_vectors, 0});
}

// Index of the interval containing rho (a breakpoint belongs to the interval
// below it).
std::size_t interval_index(const SpectralCurve& curve, double rho);
const Spectrum& spectrum_at(const SpectralCurve& curve, double rho);

SpectralCdf spectral_cdf(const Spectrum& spectrum);

struct BoundsReport {
  double max_degree = 0.0;
  std::size_t max_degree_node = 0;
  double lambda_max = 0.0;
  double lower_margin = 0.0;  // lambda_max - max_degree
  double upper_margin = 0.0;  // 2 max_degree - lambda_max
  // Same bounds through the local distribution of distances,
  // max_j mu_j (h(x_j, rho-) - mu_j); only set by the space overload.
  std::optional<double> local_max_degree;
  bool ok = true;
  std::vector<std::string> violations;
};

// Checks max_degree <= lambda_max <= 2 max_degree.
BoundsReport check_bounds(const AuxiliaryGraph& graph, const Spectrum& spectrum);
// Also cross-checks the degrees through the local distribution of distances.
BoundsReport check_bounds(const MmSpace& space, const AuxiliaryGraph& graph,
                          const Spectrum& spectrum);

// Matrix-tree count (1/K) prod_{j>=2} lambda_j for the spectrum of a connected
// unweighted graph. Throws DisconnectedError on more than one zero eigenvalue.
double spanning_tree_count(const Spectrum& spectrum, std::size_t k);

// First k_prime ascending eigenvalues (and eigenvector columns).
Spectrum truncate(const Spectrum& spectrum, std::size_t k_prime);

}  // namespace mmspectra
