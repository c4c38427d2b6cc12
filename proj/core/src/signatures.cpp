#include "mmspectra/signatures.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include <Eigen/Eigenvalues>

#include "mmspectra/laplacian.hpp"
#include "mmspectra/parallel.hpp"

namespace mmspectra {

namespace {

std::vector<double> distinct_sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::vector<double> out;
  for (double x : v) {
    if (out.empty() || !same_distance(out.back(), x)) out.push_back(x);
  }
  return out;
}

bool on_breakpoint(const std::vector<double>& distinct, double x) {
  auto it = std::lower_bound(distinct.begin(), distinct.end(), x);
  if (it != distinct.end() && same_distance(*it, x)) return true;
  return it != distinct.begin() && same_distance(*std::prev(it), x);
}

// Step-function accumulation: sort (key, weight) pairs, merge tied keys.
void accumulate_steps(std::vector<std::pair<double, double>>& atoms, std::vector<double>& support,
                      std::vector<double>& cumulative) {
  std::sort(atoms.begin(), atoms.end());
  double running = 0.0;
  for (const auto& [x, w] : atoms) {
    running += w;
    if (!support.empty() && same_distance(support.back(), x)) {
      cumulative.back() = running;
    } else {
      support.push_back(x);
      cumulative.push_back(running);
    }
  }
}

double step_value(const std::vector<double>& support, const std::vector<double>& cumulative,
                  double t) {
  const auto idx = std::upper_bound(support.begin(), support.end(), t) - support.begin();
  return idx == 0 ? 0.0 : cumulative[static_cast<std::size_t>(idx - 1)];
}

}  // namespace

QuantileGrid build_grid(const std::vector<MmSpace>& spaces, std::size_t grid_size) {
  if (grid_size < 2) throw InputError("grid size must be at least 2");
  std::vector<double> pooled;
  for (const auto& s : spaces) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (std::isfinite(s.dist(i, j))) pooled.push_back(s.dist(i, j));
      }
    }
  }
  if (pooled.empty()) throw InputError("no finite pairwise distances to build a grid from");
  std::sort(pooled.begin(), pooled.end());
  const std::vector<double> distinct = distinct_sorted(pooled);

  QuantileGrid grid;
  const double last = static_cast<double>(pooled.size() - 1);
  for (std::size_t l = 0; l < grid_size; ++l) {
    const double h = last * static_cast<double>(l) / static_cast<double>(grid_size - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, pooled.size() - 1);
    const double q = pooled[lo] + (h - static_cast<double>(lo)) * (pooled[hi] - pooled[lo]);
    grid.quantiles.push_back(q);
    grid.values.push_back(on_breakpoint(distinct, q) ? rho_above(distinct, q) : q);
  }
  std::sort(grid.values.begin(), grid.values.end());
  return grid;
}

QuantileGrid breakpoint_grid(const std::vector<const SpectralCurve*>& curves) {
  std::vector<double> all;
  for (const auto* c : curves) all.insert(all.end(), c->breakpoints.begin(), c->breakpoints.end());
  const std::vector<double> merged = distinct_sorted(std::move(all));
  QuantileGrid grid;
  grid.quantiles = merged;
  if (merged.empty()) {
    grid.values = {1.0};
    return grid;
  }
  for (double d : merged) grid.values.push_back(rho_above(merged, d));
  return grid;
}

double spectral_distance(const SpectralCurve& a, const SpectralCurve& b, const QuantileGrid& grid,
                         std::size_t k_prime) {
  if (k_prime < 1 || k_prime > a.node_count() || k_prime > b.node_count()) {
    throw InputError("k_prime " + std::to_string(k_prime) + " exceeds a curve's node count (" +
                     std::to_string(a.node_count()) + ", " + std::to_string(b.node_count()) + ")");
  }
  const auto kp = static_cast<Eigen::Index>(k_prime);
  double best = 0.0;
  for (double rho : grid.values) {
    const Vector& va = spectrum_at(a, rho).values;
    const Vector& vb = spectrum_at(b, rho).values;
    best = std::max(best, (va.head(kp) - vb.head(kp)).norm());
  }
  return best;
}

SignatureDistanceMatrix pairwise_distances(const std::vector<SpectralCurve>& curves,
                                           const QuantileGrid& grid, std::size_t k_prime,
                                           std::size_t threads) {
  const std::size_t n = curves.size();
  SignatureDistanceMatrix out{Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n))};
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  parallel_for(pairs.size(), threads, [&](std::size_t p) {
    const auto [i, j] = pairs[p];
    const double d = spectral_distance(curves[i], curves[j], grid, k_prime);
    out.distances(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = d;
    out.distances(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = d;
  });
  return out;
}

std::size_t common_k_prime(const std::vector<SpectralCurve>& curves) {
  if (curves.empty()) throw InputError("no curves given");
  std::size_t k = std::numeric_limits<std::size_t>::max();
  for (const auto& c : curves) k = std::min(k, c.node_count());
  return k;
}

DistanceDistribution::DistanceDistribution(const MmSpace& space) {
  std::vector<std::pair<double, double>> atoms;
  const std::size_t k = space.size();
  atoms.reserve(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const double d = i == j ? 0.0 : space.dist(i, j);
      if (std::isfinite(d)) atoms.emplace_back(d, space.mass(i) * space.mass(j));
    }
  }
  accumulate_steps(atoms, support_, cumulative_);
}

double DistanceDistribution::operator()(double t) const { return step_value(support_, cumulative_, t); }

DistanceDistribution dod(const MmSpace& space) { return DistanceDistribution(space); }

double dod_distance(const DistanceDistribution& a, const DistanceDistribution& b) {
  std::vector<double> points = a.support();
  points.insert(points.end(), b.support().begin(), b.support().end());
  double best = 0.0;
  for (double t : points) best = std::max(best, std::abs(a(t) - b(t)));
  return best;
}

LocalDistanceDistribution::LocalDistanceDistribution(const MmSpace& space) {
  const std::size_t k = space.size();
  radii_.resize(k);
  cumulative_.resize(k);
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<std::pair<double, double>> atoms;
    for (std::size_t l = 0; l < k; ++l) {
      const double d = l == j ? 0.0 : space.dist(j, l);
      if (std::isfinite(d)) atoms.emplace_back(d, space.mass(l));
    }
    accumulate_steps(atoms, radii_[j], cumulative_[j]);
  }
}

double LocalDistanceDistribution::operator()(std::size_t j, double t) const {
  return step_value(radii_.at(j), cumulative_.at(j), t);
}

double LocalDistanceDistribution::open(std::size_t j, double t) const {
  const auto& r = radii_.at(j);
  const auto idx = std::lower_bound(r.begin(), r.end(), t) - r.begin();
  return idx == 0 ? 0.0 : cumulative_[j][static_cast<std::size_t>(idx - 1)];
}

LocalDistanceDistribution local_dod(const MmSpace& space) { return LocalDistanceDistribution(space); }

MdsResult classical_mds(const Matrix& distances, std::size_t dims) {
  if (dims < 1) throw InputError("MDS needs at least one dimension");
  if (distances.rows() != distances.cols()) throw InputError("distance matrix must be square");
  const Eigen::Index n = distances.rows();
  MdsResult out;
  out.coordinates = Matrix::Zero(n, static_cast<Eigen::Index>(dims));
  if (n == 0) return out;
  if (!distances.allFinite()) throw InputError("MDS input has non-finite distances");

  const Matrix sq = distances.array().square().matrix();
  const Matrix centring = Matrix::Identity(n, n) - Matrix::Constant(n, n, 1.0 / static_cast<double>(n));
  const Matrix gram = -0.5 * centring * sq * centring;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (gram + gram.transpose()));
  if (solver.info() != Eigen::Success) throw NumericalError("MDS eigensolver did not converge");

  out.eigenvalues = solver.eigenvalues().reverse();
  const Matrix vectors = solver.eigenvectors().rowwise().reverse();
  const double tol = 1e-10 * std::max(1.0, out.eigenvalues.cwiseAbs().maxCoeff());
  for (Eigen::Index a = 0; a < n; ++a) {
    if (out.eigenvalues(a) > tol) ++out.positive;
  }
  if (out.eigenvalues.minCoeff() < -tol) {
    out.warnings.push_back("input is not Euclidean: most negative eigenvalue " +
                           std::to_string(out.eigenvalues.minCoeff()));
  }
  if (dims > out.positive) {
    out.warnings.push_back("requested " + std::to_string(dims) + " dimensions but only " +
                           std::to_string(out.positive) + " eigenvalues are positive; padding with zeros");
  }
  for (Eigen::Index a = 0; a < static_cast<Eigen::Index>(std::min(dims, out.positive)); ++a) {
    Vector axis = vectors.col(a) * std::sqrt(out.eigenvalues(a));
    Eigen::Index arg = 0;
    axis.cwiseAbs().maxCoeff(&arg);
    if (axis(arg) < 0.0) axis = -axis;
    out.coordinates.col(a) = axis.array() - axis.mean();
  }
  return out;
}

double silhouette(const Matrix& points, const std::vector<int>& labels) {
  const Eigen::Index n = points.rows();
  if (static_cast<std::size_t>(n) != labels.size()) throw InputError("label count mismatch");
  if (n < 2) return 0.0;
  double total = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    std::map<int, std::pair<double, int>> by_cluster;  // sum, count
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      auto& acc = by_cluster[labels[static_cast<std::size_t>(j)]];
      acc.first += (points.row(i) - points.row(j)).norm();
      acc.second += 1;
    }
    const int own = labels[static_cast<std::size_t>(i)];
    auto it = by_cluster.find(own);
    if (it == by_cluster.end()) continue;  // singleton cluster scores 0
    const double a = it->second.first / it->second.second;
    double b = std::numeric_limits<double>::infinity();
    for (const auto& [label, acc] : by_cluster) {
      if (label != own) b = std::min(b, acc.first / acc.second);
    }
    if (!std::isfinite(b)) continue;
    const double denom = std::max(a, b);
    total += denom > 0.0 ? (b - a) / denom : 0.0;
  }
  return total / static_cast<double>(n);
}

}  // namespace mmspectra
