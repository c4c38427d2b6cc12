#include "mmspectra/mmspace.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>
#include <utility>

#include "mmspectra/parallel.hpp"
#include "mmspectra/random.hpp"

namespace mmspectra {

MmSpace::MmSpace(Matrix dist, Vector mass, std::vector<std::string> labels)
    : dist_(std::move(dist)), mass_(std::move(mass)), labels_(std::move(labels)) {
  if (dist_.rows() != dist_.cols()) {
    throw InputError("distance matrix must be square");
  }
  if (dist_.rows() != mass_.size()) {
    std::ostringstream os;
    os << "distance matrix is " << dist_.rows() << "x" << dist_.cols() << " but mass vector has "
       << mass_.size() << " entries";
    throw InputError(os.str());
  }
  if (mass_.size() == 0) throw InputError("mm-space must have at least one node");
  if (!labels_.empty() && labels_.size() != size()) {
    throw InputError("label count does not match node count");
  }
}

MmSpace MmSpace::permuted(const std::vector<std::size_t>& order) const {
  const auto k = static_cast<Eigen::Index>(size());
  if (order.size() != size()) throw InputError("permutation has wrong length");
  std::vector<bool> seen(size(), false);
  for (std::size_t o : order) {
    if (o >= size() || seen[o]) throw InputError("order is not a permutation");
    seen[o] = true;
  }
  Matrix d(k, k);
  Vector m(k);
  std::vector<std::string> labels;
  for (Eigen::Index a = 0; a < k; ++a) {
    const auto oa = static_cast<Eigen::Index>(order[a]);
    m(a) = mass_(oa);
    for (Eigen::Index b = 0; b < k; ++b) d(a, b) = dist_(oa, static_cast<Eigen::Index>(order[b]));
    if (!labels_.empty()) labels.push_back(labels_[order[a]]);
  }
  return MmSpace(std::move(d), std::move(m), std::move(labels));
}

MmSpace MmSpace::with_scaled_mass(double factor) const {
  return MmSpace(dist_, mass_ * factor, labels_);
}

const char* to_string(Rule rule) {
  switch (rule) {
    case Rule::kShape: return "shape";
    case Rule::kNonFinite: return "non-finite";
    case Rule::kNegative: return "negative";
    case Rule::kNonzeroDiagonal: return "nonzero-diagonal";
    case Rule::kAsymmetric: return "asymmetry";
    case Rule::kNonPositiveMass: return "non-positive-mass";
    case Rule::kZeroDistance: return "zero-distance";
    case Rule::kTriangle: return "triangle";
  }
  return "unknown";
}

namespace {

std::string at(std::initializer_list<std::size_t> idx) {
  std::ostringstream os;
  os << "(";
  bool first = true;
  for (auto i : idx) {
    if (!first) os << ",";
    os << i;
    first = false;
  }
  os << ")";
  return os.str();
}

}  // namespace

std::vector<Violation> validate(const MmSpace& space, const ValidateOptions& options) {
  std::vector<Violation> out;
  const std::size_t k = space.size();
  const Matrix& d = space.dist();

  for (std::size_t j = 0; j < k; ++j) {
    const double m = space.mass(j);
    if (!(m > 0.0) || !std::isfinite(m)) {
      out.push_back({Rule::kNonPositiveMass, {j}, "mass at " + at({j}) + " is not strictly positive"});
    }
  }

  for (std::size_t i = 0; i < k; ++i) {
    const double dii = space.dist(i, i);
    if (dii != 0.0) {
      out.push_back({Rule::kNonzeroDiagonal, {i, i}, "diagonal entry at " + at({i, i}) + " is not zero"});
    }
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j) continue;
      const double dij = space.dist(i, j);
      if (std::isnan(dij) || dij == -kUnreachable) {
        out.push_back({Rule::kNonFinite, {i, j}, "distance at " + at({i, j}) + " is NaN or -inf"});
        continue;
      }
      if (dij < 0.0) {
        out.push_back({Rule::kNegative, {i, j}, "distance at " + at({i, j}) + " is negative"});
      }
      if (i < j) {
        const double dji = space.dist(j, i);
        if (!(dij == dji || same_distance(dij, dji))) {
          out.push_back({Rule::kAsymmetric, {i, j}, "asymmetry at " + at({i, j})});
        }
        if (options.strict_metric && dij == 0.0) {
          out.push_back({Rule::kZeroDistance, {i, j}, "coincident points at " + at({i, j})});
        }
      }
    }
  }

  if (options.check_triangle) {
    // Each violated pair (i, k) is reported once, with the first witness j.
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t l = i + 1; l < k; ++l) {
        const double direct = d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(l));
        for (std::size_t j = 0; j < k; ++j) {
          if (j == i || j == l) continue;
          const double via = space.dist(i, j) + space.dist(j, l);
          if (std::isfinite(via) && direct > via + options.triangle_tolerance) {
            out.push_back({Rule::kTriangle, {i, j, l},
                           "triangle violation at " + at({i, j, l}) + ": d" + at({i, l}) +
                               " exceeds the path through " + std::to_string(j)});
            break;
          }
        }
      }
    }
  }
  return out;
}

std::vector<Violation> validate(const MmSpace& space, bool check_triangle) {
  ValidateOptions options;
  options.check_triangle = check_triangle;
  return validate(space, options);
}

namespace {

void check_total(double total) {
  if (!(total > 0.0) || !std::isfinite(total)) throw InputError("total_mass must be positive");
}

Vector explicit_or_uniform(const MassPolicy& policy, std::size_t n) {
  const auto k = static_cast<Eigen::Index>(n);
  switch (policy.kind) {
    case MassPolicy::Kind::kUniform:
      check_total(policy.total_mass);
      return Vector::Constant(k, policy.total_mass / static_cast<double>(n));
    case MassPolicy::Kind::kExplicit: {
      if (policy.explicit_masses.size() != n) {
        throw InputError("explicit mass vector has " + std::to_string(policy.explicit_masses.size()) +
                         " entries for " + std::to_string(n) + " nodes");
      }
      Vector m(k);
      for (Eigen::Index i = 0; i < k; ++i) {
        m(i) = policy.explicit_masses[static_cast<std::size_t>(i)];
        if (!(m(i) > 0.0) || !std::isfinite(m(i))) {
          throw InputError("explicit mass at node " + std::to_string(i) + " is not positive");
        }
      }
      return m;
    }
    case MassPolicy::Kind::kDegreeProportional:
      break;
  }
  throw InputError("degree-proportional masses need graph neighbourhoods");
}

}  // namespace

MmSpace from_points(const Matrix& coords, const MassPolicy& policy) {
  const Eigen::Index n = coords.rows();
  if (n < 1) throw InputError("point cloud is empty");
  if (!coords.allFinite()) throw InputError("point cloud has a non-finite coordinate");
  Matrix d = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      d(i, j) = d(j, i) = (coords.row(i) - coords.row(j)).norm();
    }
  }
  return MmSpace(std::move(d), explicit_or_uniform(policy, static_cast<std::size_t>(n)));
}

MmSpace from_graph(const std::vector<GraphEdge>& edges, std::size_t n_nodes,
                   const MassPolicy& policy) {
  if (n_nodes < 1) throw InputError("graph has no nodes");
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(n_nodes);
  for (const auto& e : edges) {
    if (e.i >= n_nodes || e.j >= n_nodes) {
      throw InputError("edge (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                       ") has an index out of range for " + std::to_string(n_nodes) + " nodes");
    }
    if (!(e.length > 0.0) || !std::isfinite(e.length)) {
      throw InputError("edge (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                       ") has a non-positive length");
    }
    if (e.i == e.j) throw InputError("self-loop at node " + std::to_string(e.i));
    adj[e.i].emplace_back(e.j, e.length);
    adj[e.j].emplace_back(e.i, e.length);
  }

  const auto k = static_cast<Eigen::Index>(n_nodes);
  Matrix d = Matrix::Constant(k, k, kUnreachable);
  // Dijkstra from every source; each row is written by one worker only.
  parallel_for(n_nodes, 0, [&](std::size_t source) {
    std::vector<double> best(n_nodes, kUnreachable);
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    best[source] = 0.0;
    heap.emplace(0.0, source);
    while (!heap.empty()) {
      const auto [du, u] = heap.top();
      heap.pop();
      if (du > best[u]) continue;
      for (const auto& [v, w] : adj[u]) {
        const double cand = du + w;
        if (cand < best[v]) {
          best[v] = cand;
          heap.emplace(cand, v);
        }
      }
    }
    for (std::size_t v = 0; v < n_nodes; ++v) {
      d(static_cast<Eigen::Index>(source), static_cast<Eigen::Index>(v)) = best[v];
    }
  });
  // Dijkstra sums in different orders per direction; keep the matrix exactly symmetric.
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i + 1; j < k; ++j) d(i, j) = d(j, i) = std::min(d(i, j), d(j, i));
  }

  if (policy.kind != MassPolicy::Kind::kDegreeProportional) {
    return MmSpace(std::move(d), explicit_or_uniform(policy, n_nodes));
  }

  check_total(policy.total_mass);
  Vector raw = Vector::Zero(k);
  for (std::size_t j = 0; j < n_nodes; ++j) {
    std::vector<std::size_t> neighbours;
    for (const auto& nb : adj[j]) neighbours.push_back(nb.first);
    std::sort(neighbours.begin(), neighbours.end());
    neighbours.erase(std::unique(neighbours.begin(), neighbours.end()), neighbours.end());
    for (std::size_t l : neighbours) {
      raw(static_cast<Eigen::Index>(j)) += d(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(l));
    }
  }
  double min_positive = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < k; ++j) {
    if (raw(j) > 0.0) min_positive = std::min(min_positive, raw(j));
  }
  if (!std::isfinite(min_positive)) min_positive = 1.0;  // edgeless graph: uniform
  for (Eigen::Index j = 0; j < k; ++j) {
    if (!(raw(j) > 0.0)) raw(j) = min_positive;
  }
  raw *= policy.total_mass / raw.sum();
  return MmSpace(std::move(d), std::move(raw));
}

MmSpace subsample(const MmSpace& space, std::size_t size, std::uint64_t seed, bool renormalize) {
  const std::size_t k = space.size();
  if (size < 1 || size > k) {
    throw InputError("subsample size " + std::to_string(size) + " outside [1, " + std::to_string(k) + "]");
  }
  // Partial Fisher-Yates: the first `size` slots are the draw.
  std::vector<std::size_t> pool(k);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  Rng rng(seed);
  for (std::size_t i = 0; i < size; ++i) {
    const std::size_t pick = i + static_cast<std::size_t>(uniform_index(rng, k - i));
    std::swap(pool[i], pool[pick]);
  }
  pool.resize(size);

  const auto n = static_cast<Eigen::Index>(size);
  Matrix d(n, n);
  Vector m(n);
  std::vector<std::string> labels;
  for (Eigen::Index a = 0; a < n; ++a) {
    m(a) = space.mass(pool[static_cast<std::size_t>(a)]);
    for (Eigen::Index b = 0; b < n; ++b) {
      d(a, b) = space.dist(pool[static_cast<std::size_t>(a)], pool[static_cast<std::size_t>(b)]);
    }
    if (space.has_labels()) labels.push_back(space.labels()[pool[static_cast<std::size_t>(a)]]);
  }
  if (renormalize) m *= space.total_mass() / m.sum();
  return MmSpace(std::move(d), std::move(m), std::move(labels));
}

}  // namespace mmspectra
