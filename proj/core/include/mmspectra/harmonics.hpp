#pragma once

#include <cstddef>
#include <vector>

#include "mmspectra/common.hpp"
#include "mmspectra/mmspace.hpp"

namespace mmspectra {

inline constexpr double kDefaultSignRegionFraction = 0.05;

struct HarmonicReport {
  double rho = 0.0;
  double fiedler_value = 0.0;
  Vector fiedler_vector;  // unit norm, first nonzero entry positive
  std::vector<std::size_t> positive_side;  // entries >= 0
  std::vector<std::size_t> negative_side;
  // Nodes nearest the sign change: the ceil(q K) smallest |entries|, plus any
  // entries tied with the cutoff.
  std::vector<std::size_t> sign_region;
  std::size_t requested_region_size = 0;
  // Multiplicity of the Fiedler eigenvalue. Above 1 the vector is one
  // representative of the eigenspace and the split is not canonical.
  std::size_t multiplicity = 1;
  bool canonical = true;
};

// Second eigenpair of the rho-Laplacian with its sign split and sign-change
// region. Throws DisconnectedError if the auxiliary graph is disconnected.
HarmonicReport fiedler(const MmSpace& space, double rho, double q = kDefaultSignRegionFraction);

// Number of connected components of the auxiliary graph at rho (union-find).
std::size_t component_count(const MmSpace& space, double rho);

// Largest edge of a minimum spanning tree: the smallest breakpoint d* such
// that the auxiliary graph is connected for every rho > d*. Zero for K = 1.
double min_connected_rho(const MmSpace& space);

// A rho strictly inside the first interval where the graph is connected.
double auto_rho(const MmSpace& space);

struct Embedding {
  double rho = 0.0;
  // (K-1) x K: diag(lambda_2..lambda_K)^{-1/2} U^T, rows ascending by eigenvalue.
  Matrix coordinates;
  Vector eigenvalues;  // lambda_2..lambda_K
};

Embedding embed(const MmSpace& space, double rho);

}  // namespace mmspectra
