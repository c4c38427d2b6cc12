#include "mmspectra/ssl.hpp"

#include <Eigen/Cholesky>

#include "mmspectra/laplacian.hpp"

namespace mmspectra {

void check_problem(const SslProblem& p) {
  if (p.labeled.empty()) throw InputError("at least one labelled node is required");
  if (!(p.tau > 0.0) || !std::isfinite(p.tau)) throw InputError("tau must be positive");
  for (const auto& [node, label] : p.labeled) {
    if (node >= p.space.size()) {
      throw InputError("labelled node " + std::to_string(node) + " out of range");
    }
    if (label != 1 && label != -1) {
      throw InputError("label of node " + std::to_string(node) + " must be +1 or -1");
    }
  }
}

Vector label_vector(const SslProblem& p) {
  Vector y = Vector::Zero(static_cast<Eigen::Index>(p.space.size()));
  for (const auto& [node, label] : p.labeled) y(static_cast<Eigen::Index>(node)) = label;
  return y;
}

Matrix normalized_laplacian(const MmSpace& space, double rho) {
  const AuxiliaryGraph g = build_auxiliary(space, rho);
  const Eigen::Index k = g.weights.rows();
  Vector inv_sqrt = Vector::Zero(k);
  for (Eigen::Index j = 0; j < k; ++j) {
    if (g.degree(j) > 0.0) inv_sqrt(j) = 1.0 / std::sqrt(g.degree(j));
  }
  Matrix lsym = -(inv_sqrt.asDiagonal() * g.weights * inv_sqrt.asDiagonal());
  for (Eigen::Index j = 0; j < k; ++j) lsym(j, j) = g.degree(j) > 0.0 ? 1.0 : 0.0;
  return lsym;
}

double objective(const SslProblem& p, const Vector& f) {
  const Vector y = label_vector(p);
  if (f.size() != y.size()) throw InputError("score vector length does not match node count");
  const AuxiliaryGraph g = build_auxiliary(p.space, p.rho);
  double penalty = 0.0;
  const Eigen::Index k = y.size();
  for (Eigen::Index j = 0; j < k; ++j) {
    if (g.degree(j) <= 0.0) continue;
    for (Eigen::Index l = j + 1; l < k; ++l) {
      if (g.weights(j, l) <= 0.0) continue;
      const double diff = f(j) / std::sqrt(g.degree(j)) - f(l) / std::sqrt(g.degree(l));
      penalty += g.weights(j, l) * diff * diff;
    }
  }
  return (y - f).squaredNorm() + p.tau * penalty;
}

Vector objective_gradient(const SslProblem& p, const Vector& f) {
  return 2.0 * (f - label_vector(p)) + 2.0 * p.tau * normalized_laplacian(p.space, p.rho) * f;
}

SslSolution solve(const SslProblem& p) {
  check_problem(p);
  const Vector y = label_vector(p);
  const Matrix lsym = normalized_laplacian(p.space, p.rho);
  const Eigen::Index k = y.size();

  // Isolated nodes have zero rows in L_sym, so the system reduces to f_j = Y_j
  // there and can be solved on the whole index set at once.
  const Matrix system = Matrix::Identity(k, k) + p.tau * lsym;
  Eigen::LLT<Matrix> llt(system);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("label propagation system is not positive definite");
  }
  SslSolution s;
  s.scores = llt.solve(y);
  if (!s.scores.allFinite()) throw NumericalError("label propagation produced non-finite scores");

  s.predictions.resize(static_cast<std::size_t>(k));
  s.no_evidence.resize(static_cast<std::size_t>(k));
  for (Eigen::Index j = 0; j < k; ++j) {
    s.predictions[static_cast<std::size_t>(j)] = s.scores(j) >= 0.0 ? 1 : -1;
    s.no_evidence[static_cast<std::size_t>(j)] = lsym(j, j) == 0.0;
  }
  s.objective = objective(p, s.scores);
  return s;
}

}  // namespace mmspectra
