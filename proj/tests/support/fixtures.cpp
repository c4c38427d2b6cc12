#include "fixtures.hpp"

#include <cmath>
#include <numeric>

namespace fixtures {

using mmspectra::MassPolicy;
using mmspectra::Rng;

MmSpace two_point(double a, double b, double r) {
  Matrix d(2, 2);
  d << 0, r, r, 0;
  Vector m(2);
  m << a, b;
  return MmSpace(d, m);
}

MmSpace delta(std::size_t n) {
  const auto k = static_cast<Eigen::Index>(n);
  Matrix d = Matrix::Ones(k, k);
  d.diagonal().setZero();
  return MmSpace(d, Vector::Constant(k, 1.0 / static_cast<double>(n)));
}

MmSpace from_matrix(const std::vector<std::vector<double>>& d, const std::vector<double>& mass) {
  const auto k = static_cast<Eigen::Index>(mass.size());
  Matrix m(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) m(i, j) = d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return MmSpace(m, Eigen::Map<const Vector>(mass.data(), k));
}

MmSpace triangle_space() {
  // Nodes A, B, C, D.
  const double s2 = std::sqrt(2.0), s10 = std::sqrt(10.0);
  return from_matrix({{0, s10, 4, s10}, {s10, 0, s2, 2}, {4, s2, 0, s2}, {s10, 2, s2, 0}},
                     {0.25, 0.25, 0.25, 0.25});
}

MmSpace path_space() {
  // Nodes A', B', C', D'.
  const double s2 = std::sqrt(2.0), s10 = std::sqrt(10.0);
  return from_matrix({{0, 2, s10, s2}, {2, 0, s2, s10}, {s10, s2, 0, 4}, {s2, s10, 4, 0}},
                     {0.25, 0.25, 0.25, 0.25});
}

namespace {

MmSpace on_line(const std::vector<double>& xs) {
  Matrix c(static_cast<Eigen::Index>(xs.size()), 1);
  for (std::size_t i = 0; i < xs.size(); ++i) c(static_cast<Eigen::Index>(i), 0) = xs[i];
  return mmspectra::from_points(c, MassPolicy::uniform());
}

}  // namespace

MmSpace line_x() { return on_line({0, 1, 4, 10, 12, 17}); }
MmSpace line_y() { return on_line({0, 1, 8, 11, 13, 17}); }

MmSpace barbell() {
  std::vector<mmspectra::GraphEdge> edges = {{0, 1, 1}, {0, 2, 1}, {1, 2, 1},
                                             {3, 4, 1}, {3, 5, 1}, {4, 5, 1}, {2, 3, 3}};
  return mmspectra::from_graph(edges, 6, MassPolicy::uniform());
}

oracle::Dense to_dense(const Matrix& m) {
  oracle::Dense out(static_cast<std::size_t>(m.rows()), std::vector<double>(static_cast<std::size_t>(m.cols())));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j);
  }
  return out;
}

std::vector<double> to_std(const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * mmspectra::uniform_unit(rng); }

MmSpace random_space(Rng& rng, std::size_t max_k, RandomKind kind) {
  const std::size_t k = 2 + static_cast<std::size_t>(mmspectra::uniform_index(rng, max_k - 1));
  const auto n = static_cast<Eigen::Index>(k);
  Vector mass(n);
  for (Eigen::Index i = 0; i < n; ++i) mass(i) = uniform(rng, 0.1, 1.0);

  switch (kind) {
    case RandomKind::kPoints: {
      Matrix c(n, 2);
      for (Eigen::Index i = 0; i < n; ++i) c.row(i) << uniform(rng, 0, 10), uniform(rng, 0, 10);
      auto s = mmspectra::from_points(c, MassPolicy::uniform());
      return MmSpace(s.dist(), mass);
    }
    case RandomKind::kIntegerDistances: {
      Matrix d = Matrix::Zero(n, n);
      for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
          d(i, j) = d(j, i) = 1.0 + static_cast<double>(mmspectra::uniform_index(rng, 4));
        }
      }
      return MmSpace(d, mass);
    }
    case RandomKind::kDisconnectedGraph: {
      std::vector<mmspectra::GraphEdge> edges;
      const std::size_t groups = 1 + static_cast<std::size_t>(mmspectra::uniform_index(rng, 3));
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
          if (i % groups == j % groups && mmspectra::uniform_unit(rng) < 0.6) {
            edges.push_back({i, j, uniform(rng, 0.5, 3.0)});
          }
        }
      }
      auto s = mmspectra::from_graph(edges, k, MassPolicy::uniform());
      return MmSpace(s.dist(), mass);
    }
  }
  return delta(k);
}

MmSpace random_space(Rng& rng, std::size_t max_k) {
  return random_space(rng, max_k, static_cast<RandomKind>(mmspectra::uniform_index(rng, 3)));
}

std::vector<std::size_t> random_permutation(Rng& rng, std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[mmspectra::uniform_index(rng, i)]);
  return p;
}

MmSpace family_space(Rng& rng, int family, std::size_t k) {
  const auto n = static_cast<Eigen::Index>(k);
  Matrix c(n, 2);
  constexpr double kPi = 3.14159265358979323846;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double noise_x = uniform(rng, -0.05, 0.05), noise_y = uniform(rng, -0.05, 0.05);
    switch (family) {
      case 0: {
        const double t = uniform(rng, 0.0, 2.0 * kPi);
        c.row(i) << std::cos(t) + noise_x, std::sin(t) + noise_y;
        break;
      }
      case 1: {
        const double cx = (i % 2 == 0) ? -1.0 : 1.0;
        c.row(i) << cx + uniform(rng, -0.3, 0.3), uniform(rng, -0.3, 0.3);
        break;
      }
      default:
        c.row(i) << uniform(rng, -1.0, 1.0), noise_y;
        break;
    }
  }
  return mmspectra::from_points(c, MassPolicy::uniform());
}

MmSpace jittered_two_point(Rng& rng, double split, double jitter) {
  const double a = split + uniform(rng, -jitter, jitter);
  return two_point(a, 1.0 - a, 1.0);
}

}  // namespace fixtures
