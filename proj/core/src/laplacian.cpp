#include "mmspectra/laplacian.hpp"

#include <algorithm>
#include <string>

namespace mmspectra {

namespace {

void check_rho(double rho) {
  if (!(rho > 0.0) || std::isnan(rho)) {
    throw InputError("rho must be positive, got " + std::to_string(rho));
  }
}

}  // namespace

AuxiliaryGraph build_auxiliary(const MmSpace& space, double rho) {
  check_rho(rho);
  const auto k = static_cast<Eigen::Index>(space.size());
  const Matrix& d = space.dist();
  const Vector& mu = space.mass();
  AuxiliaryGraph g;
  g.rho = rho;
  g.weights = Matrix::Zero(k, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    for (Eigen::Index l = j + 1; l < k; ++l) {
      if (d(j, l) < rho) g.weights(j, l) = g.weights(l, j) = mu(j) * mu(l);
    }
  }
  g.degree = g.weights.rowwise().sum();
  return g;
}

RhoLaplacian laplacian(const AuxiliaryGraph& graph) {
  RhoLaplacian lap;
  lap.rho = graph.rho;
  lap.matrix = -graph.weights;
  lap.matrix.diagonal() = graph.degree;
  return lap;
}

std::vector<EdgeEvent> edge_events(const MmSpace& space) {
  const std::size_t k = space.size();
  std::vector<EdgeEvent> events;
  events.reserve(k * (k - 1) / 2);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const double d = space.dist(i, j);
      if (std::isfinite(d)) events.push_back({i, j, d, space.mass(i) * space.mass(j)});
    }
  }
  std::stable_sort(events.begin(), events.end(),
                   [](const EdgeEvent& a, const EdgeEvent& b) { return a.distance < b.distance; });
  return events;
}

void add_edge(Matrix& lap, const EdgeEvent& e) {
  const auto i = static_cast<Eigen::Index>(e.i);
  const auto j = static_cast<Eigen::Index>(e.j);
  lap(i, i) += e.weight;
  lap(j, j) += e.weight;
  lap(i, j) -= e.weight;
  lap(j, i) -= e.weight;
}

std::vector<double> breakpoints(const std::vector<EdgeEvent>& events) {
  std::vector<double> out;
  for (const auto& e : events) {
    if (out.empty() || !same_distance(out.back(), e.distance)) out.push_back(e.distance);
  }
  return out;
}

double rho_above(std::span<const double> bps, double d) {
  auto it = std::upper_bound(bps.begin(), bps.end(), d, [](double value, double bp) {
    return value < bp && !same_distance(value, bp);
  });
  if (it != bps.end()) return 0.5 * (d + *it);
  double gap = 0.5 * std::abs(d);
  if (bps.size() >= 2) gap = std::max(gap, 0.5 * (bps.back() - bps[bps.size() - 2]));
  if (gap <= 0.0) gap = 0.5;
  return d + gap;
}

Vector apply_operator(const MmSpace& space, double rho, const Vector& u) {
  check_rho(rho);
  const auto k = static_cast<Eigen::Index>(space.size());
  if (u.size() != k) throw InputError("vector length does not match node count");
  const Matrix& d = space.dist();
  const Vector& mu = space.mass();
  Vector out = Vector::Zero(k);
  for (Eigen::Index j = 0; j < k; ++j) {
    double ball_mass = 0.0;
    double acc = 0.0;
    for (Eigen::Index l = 0; l < k; ++l) {
      if (l == j || d(j, l) < rho) {
        ball_mass += mu(l);
        acc += (u(j) - u(l)) * mu(l);
      }
    }
    out(j) = acc / (rho * rho * ball_mass);
  }
  return out;
}

}  // namespace mmspectra
