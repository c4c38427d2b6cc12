#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "mmspectra/common.hpp"
#include "mmspectra/mmspace.hpp"

namespace mmspectra {

// Binary label propagation on the rho-auxiliary graph. Labels are +1 / -1.
struct SslProblem {
  MmSpace space;
  double rho = 0.0;
  double tau = 1.0;
  std::map<std::size_t, int> labeled;
};

struct SslSolution {
  Vector scores;
  std::vector<int> predictions;  // sign(score), 0 -> +1
  // Isolated at rho: no graph evidence, score is the node's own label (or 0).
  std::vector<bool> no_evidence;
  double objective = 0.0;
};

// Throws InputError on an empty label set, labels outside {+1, -1},
// out-of-range indices, or tau <= 0.
void check_problem(const SslProblem& problem);

// Label vector Y: the label on labelled nodes, 0 elsewhere.
Vector label_vector(const SslProblem& problem);

// ||Y - f||^2 + tau * sum_{j<l} W_jl (f_j / sqrt(D_j) - f_l / sqrt(D_l))^2,
// the penalty taken over non-isolated nodes only.
double objective(const SslProblem& problem, const Vector& f);

// Analytic gradient of objective(): 2 (f - Y) + 2 tau L_sym f.
Vector objective_gradient(const SslProblem& problem, const Vector& f);

// Unique minimiser of objective(): (I + tau L_sym) f = Y on the non-isolated
// nodes, f_j = Y_j on isolated ones.
SslSolution solve(const SslProblem& problem);

// Symmetric normalised Laplacian I - D^{-1/2} W D^{-1/2}, with zero rows and
// columns for isolated nodes.
Matrix normalized_laplacian(const MmSpace& space, double rho);

}  // namespace mmspectra
