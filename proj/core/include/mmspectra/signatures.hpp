#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mmspectra/common.hpp"
#include "mmspectra/mmspace.hpp"
#include "mmspectra/spectrum.hpp"

namespace mmspectra {

// Evaluation points for sup-over-rho comparisons.
//
// `quantiles` are the raw empirical quantiles of the pooled pairwise
// distances. `values` are the points actually evaluated: any quantile that
// sits on a pooled distance is moved to the midpoint of the interval above
// it, so that no evaluation lands on a breakpoint. `values` is sorted.
struct QuantileGrid {
  std::vector<double> values;
  std::vector<double> quantiles;

  std::size_t size() const { return values.size(); }
};

inline constexpr std::size_t kDefaultGridSize = 200;

// Quantiles of the pooled lower-triangle distances at levels l / (G - 1),
// l = 0..G-1, with linear interpolation between order statistics.
QuantileGrid build_grid(const std::vector<MmSpace>& spaces, std::size_t grid_size = kDefaultGridSize);

// Exact-supremum grid: one point inside every interval of the merged
// breakpoint set of the given curves (and one past the last breakpoint).
QuantileGrid breakpoint_grid(const std::vector<const SpectralCurve*>& curves);

// max over grid points of || lambda_a(rho)[:k'] - lambda_b(rho)[:k'] ||_2.
double spectral_distance(const SpectralCurve& a, const SpectralCurve& b, const QuantileGrid& grid,
                         std::size_t k_prime);

struct SignatureDistanceMatrix {
  Matrix distances;
  std::size_t size() const { return static_cast<std::size_t>(distances.rows()); }
};

SignatureDistanceMatrix pairwise_distances(const std::vector<SpectralCurve>& curves,
                                           const QuantileGrid& grid, std::size_t k_prime,
                                           std::size_t threads = 0);

// Smallest node count among the spaces behind the curves.
std::size_t common_k_prime(const std::vector<SpectralCurve>& curves);

// Distribution of distances t -> (mu x mu){(x, x') : d(x, x') <= t}, both
// orders and the diagonal included. Unreachable pairs never enter.
class DistanceDistribution {
 public:
  explicit DistanceDistribution(const MmSpace& space);

  double operator()(double t) const;
  // Distinct distances (ascending) and the cumulative mass reached at each.
  const std::vector<double>& support() const { return support_; }
  const std::vector<double>& cumulative() const { return cumulative_; }

 private:
  std::vector<double> support_;
  std::vector<double> cumulative_;
};

DistanceDistribution dod(const MmSpace& space);

// Kolmogorov distance sup_t |F_a(t) - F_b(t)| between two DoD curves.
double dod_distance(const DistanceDistribution& a, const DistanceDistribution& b);

// Local distribution of distances h(x_j, t) = mu{x' : d(x_j, x') <= t}.
class LocalDistanceDistribution {
 public:
  explicit LocalDistanceDistribution(const MmSpace& space);

  std::size_t size() const { return radii_.size(); }
  // Closed-ball mass h(x_j, t).
  double operator()(std::size_t j, double t) const;
  // Open-ball mass h(x_j, t-), i.e. only d < t.
  double open(std::size_t j, double t) const;
  const std::vector<double>& radii(std::size_t j) const { return radii_[j]; }
  const std::vector<double>& cumulative(std::size_t j) const { return cumulative_[j]; }

 private:
  std::vector<std::vector<double>> radii_;
  std::vector<std::vector<double>> cumulative_;
};

LocalDistanceDistribution local_dod(const MmSpace& space);

struct MdsResult {
  Matrix coordinates;          // n x dims, centred
  Vector eigenvalues;          // all eigenvalues of -1/2 J D^2 J, descending
  std::size_t positive = 0;    // number of eigenvalues above tolerance
  std::vector<std::string> warnings;
};

// Classical (Torgerson) scaling. Axes with non-positive eigenvalues are
// zero. Each axis is oriented so its largest-magnitude loading is positive.
MdsResult classical_mds(const Matrix& distances, std::size_t dims);
inline MdsResult classical_mds(const SignatureDistanceMatrix& d, std::size_t dims) {
  return classical_mds(d.distances, dims);
}

// Mean silhouette of a labelled point set under Euclidean distance.
double silhouette(const Matrix& points, const std::vector<int>& labels);

}  // namespace mmspectra
