#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mmspectra/common.hpp"
#include "mmspectra/mmspace.hpp"

namespace mmspectra {

// Thresholded "gravitational" graph of an mm-space at scale rho:
// weights(j, l) = mass_j * mass_l when dist(j, l) < rho (strict), zero
// diagonal, degree = row sums.
struct AuxiliaryGraph {
  double rho = 0.0;
  Matrix weights;
  Vector degree;
};

struct RhoLaplacian {
  double rho = 0.0;
  Matrix matrix;  // Deg - W
};

// One pair entering the auxiliary graph once rho passes `distance`.
struct EdgeEvent {
  std::size_t i = 0;
  std::size_t j = 0;
  double distance = 0.0;
  double weight = 0.0;
};

AuxiliaryGraph build_auxiliary(const MmSpace& space, double rho);

RhoLaplacian laplacian(const AuxiliaryGraph& graph);

inline RhoLaplacian laplacian(const MmSpace& space, double rho) {
  return laplacian(build_auxiliary(space, rho));
}

// Every finite-distance pair i < j, ascending by distance, ties broken by
// (i, j).
std::vector<EdgeEvent> edge_events(const MmSpace& space);

// Adds weight * b b^T with b = e_i - e_j to lap.
void add_edge(Matrix& lap, const EdgeEvent& event);

// Distinct distances among the events (tie tolerance applied), ascending.
// These are the points where the rho-spectrum can change.
std::vector<double> breakpoints(const std::vector<EdgeEvent>& events);

// A rho strictly inside the interval just above `d`: the midpoint to the next
// breakpoint, or d plus half the last gap (at least half of d) past the end.
double rho_above(std::span<const double> sorted_breakpoints, double d);

// Discrete rho-Laplace operator applied to u:
//   (Delta u)_j = 1 / (rho^2 mu(B_j)) * sum_{l : d(j,l) < rho} (u_j - u_l) mu_l
// where B_j is the open ball around x_j (which contains x_j itself).
Vector apply_operator(const MmSpace& space, double rho, const Vector& u);

}  // namespace mmspectra
