#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mmspectra/common.hpp"

namespace mmspectra {

// A finite metric measure space: K nodes, a symmetric K x K dissimilarity
// matrix and a strictly positive mass per node.
//
// The constructor only checks shapes. Use validate() for the value-level
// invariants (symmetry, zero diagonal, positive masses, triangle inequality).
// Unreachable pairs carry kUnreachable.
class MmSpace {
 public:
  MmSpace(Matrix dist, Vector mass, std::vector<std::string> labels = {});

  std::size_t size() const { return static_cast<std::size_t>(mass_.size()); }
  const Matrix& dist() const { return dist_; }
  const Vector& mass() const { return mass_; }
  double dist(std::size_t i, std::size_t j) const {
    return dist_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  double mass(std::size_t i) const { return mass_(static_cast<Eigen::Index>(i)); }
  double total_mass() const { return mass_.sum(); }
  const std::vector<std::string>& labels() const { return labels_; }
  bool has_labels() const { return !labels_.empty(); }

  // Relabels nodes: node i of the result is node order[i] of this space.
  MmSpace permuted(const std::vector<std::size_t>& order) const;

  // Same distances, masses multiplied by factor.
  MmSpace with_scaled_mass(double factor) const;

 private:
  Matrix dist_;
  Vector mass_;
  std::vector<std::string> labels_;
};

struct MassPolicy {
  enum class Kind { kUniform, kExplicit, kDegreeProportional };

  Kind kind = Kind::kUniform;
  std::vector<double> explicit_masses;
  double total_mass = 1.0;

  static MassPolicy uniform(double total = 1.0) { return {Kind::kUniform, {}, total}; }
  static MassPolicy explicit_masses_of(std::vector<double> masses) {
    MassPolicy p{Kind::kExplicit, std::move(masses), 0.0};
    for (double m : p.explicit_masses) p.total_mass += m;
    return p;
  }
  static MassPolicy degree_proportional(double total = 1.0) {
    return {Kind::kDegreeProportional, {}, total};
  }
};

enum class Rule {
  kShape,
  kNonFinite,
  kNegative,
  kNonzeroDiagonal,
  kAsymmetric,
  kNonPositiveMass,
  kZeroDistance,
  kTriangle,
};

const char* to_string(Rule rule);

struct Violation {
  Rule rule;
  std::vector<std::size_t> indices;
  std::string message;
};

struct ValidateOptions {
  bool check_triangle = false;
  // Also reject zero off-diagonal distances (coincident points).
  bool strict_metric = false;
  double triangle_tolerance = 1e-9;
};

// Reports every broken invariant; never throws. An empty result means the
// space is usable downstream.
std::vector<Violation> validate(const MmSpace& space, const ValidateOptions& options);
std::vector<Violation> validate(const MmSpace& space, bool check_triangle);

// Euclidean distances between the rows of coords (N x D).
MmSpace from_points(const Matrix& coords, const MassPolicy& policy);

struct GraphEdge {
  std::size_t i = 0;
  std::size_t j = 0;
  double length = 0.0;
};

// Shortest-path mm-space of a weighted undirected graph. Pairs in different
// components get kUnreachable. Degree-proportional masses are proportional to
// the summed distance to graph neighbours; isolated nodes receive the smallest
// positive mass among non-isolated ones before normalisation.
MmSpace from_graph(const std::vector<GraphEdge>& edges, std::size_t n_nodes,
                   const MassPolicy& policy);

// Uniform draw of `size` distinct nodes without replacement, in draw order.
// With renormalize, masses are rescaled to the original total.
MmSpace subsample(const MmSpace& space, std::size_t size, std::uint64_t seed,
                  bool renormalize = false);

}  // namespace mmspectra
