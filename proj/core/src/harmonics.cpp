#include "mmspectra/harmonics.hpp"

#include <algorithm>
#include <numeric>

#include "mmspectra/laplacian.hpp"
#include "mmspectra/spectrum.hpp"

namespace mmspectra {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), count_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    --count_;
    return true;
  }
  std::size_t count() const { return count_; }

 private:
  std::vector<std::size_t> parent_;
  std::size_t count_;
};

void orient(Eigen::Ref<Vector> v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-12) {
      if (v(i) < 0.0) v = -v;
      return;
    }
  }
}

void require_connected(const MmSpace& space, double rho) {
  const std::size_t c = component_count(space, rho);
  if (c > 1) {
    throw DisconnectedError("auxiliary graph at rho=" + std::to_string(rho) + " has " +
                                std::to_string(c) + " connected components; increase rho",
                            c);
  }
}

}  // namespace

std::size_t component_count(const MmSpace& space, double rho) {
  DisjointSets sets(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) {
    for (std::size_t j = i + 1; j < space.size(); ++j) {
      if (space.dist(i, j) < rho) sets.unite(i, j);
    }
  }
  return sets.count();
}

double min_connected_rho(const MmSpace& space) {
  DisjointSets sets(space.size());
  if (sets.count() <= 1) return 0.0;
  for (const auto& e : edge_events(space)) {
    if (sets.unite(e.i, e.j) && sets.count() == 1) return e.distance;
  }
  throw DisconnectedError("mm-space stays disconnected at every finite rho (" +
                              std::to_string(sets.count()) + " components)",
                          sets.count());
}

double auto_rho(const MmSpace& space) {
  const double d = min_connected_rho(space);
  const std::vector<double> bps = breakpoints(edge_events(space));
  if (bps.empty()) return 1.0;
  return rho_above(bps, d);
}

HarmonicReport fiedler(const MmSpace& space, double rho, double q) {
  if (!(q > 0.0 && q < 1.0)) throw InputError("q must lie in (0, 1)");
  const std::size_t k = space.size();
  if (k < 2) throw InputError("Fiedler vector needs at least two nodes");
  require_connected(space, rho);

  const AuxiliaryGraph graph = build_auxiliary(space, rho);
  const Spectrum spec = eig(laplacian(graph), true);

  HarmonicReport r;
  r.rho = rho;
  r.fiedler_value = spec.values(1);
  r.fiedler_vector = spec.vectors->col(1);
  orient(r.fiedler_vector);

  const double tie = 1e-9 * std::max(1.0, spec.max());
  r.multiplicity = 0;
  for (Eigen::Index i = 1; i < spec.values.size(); ++i) {
    if (std::abs(spec.values(i) - r.fiedler_value) <= tie) ++r.multiplicity;
  }
  r.canonical = r.multiplicity == 1;

  for (std::size_t j = 0; j < k; ++j) {
    (r.fiedler_vector(static_cast<Eigen::Index>(j)) >= 0.0 ? r.positive_side : r.negative_side).push_back(j);
  }

  r.requested_region_size =
      static_cast<std::size_t>(std::ceil(q * static_cast<double>(k) - 1e-12));
  r.requested_region_size = std::clamp<std::size_t>(r.requested_region_size, 1, k);
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto magnitude = [&](std::size_t j) { return std::abs(r.fiedler_vector(static_cast<Eigen::Index>(j))); };
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return magnitude(a) < magnitude(b); });
  const double cutoff = magnitude(order[r.requested_region_size - 1]);
  for (std::size_t j : order) {
    if (r.sign_region.size() < r.requested_region_size || magnitude(j) <= cutoff + 1e-12) {
      r.sign_region.push_back(j);
    } else {
      break;
    }
  }
  std::sort(r.sign_region.begin(), r.sign_region.end());
  return r;
}

Embedding embed(const MmSpace& space, double rho) {
  const std::size_t k = space.size();
  if (k < 2) throw InputError("embedding needs at least two nodes");
  require_connected(space, rho);
  const Spectrum spec = eig(laplacian(space, rho), true);
  const auto rows = static_cast<Eigen::Index>(k - 1);
  Embedding out;
  out.rho = rho;
  out.eigenvalues = spec.values.tail(rows);
  if (out.eigenvalues.minCoeff() <= 0.0) {
    throw NumericalError("numerically zero eigenvalue among lambda_2..lambda_K; cannot embed");
  }
  out.coordinates.resize(rows, static_cast<Eigen::Index>(k));
  for (Eigen::Index r = 0; r < rows; ++r) {
    Vector u = spec.vectors->col(r + 1);
    orient(u);
    out.coordinates.row(r) = u.transpose() / std::sqrt(out.eigenvalues(r));
  }
  return out;
}

}  // namespace mmspectra
