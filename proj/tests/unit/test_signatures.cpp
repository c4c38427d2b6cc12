#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "mmspectra/signatures.hpp"
#include "oracles.hpp"

using namespace mmspectra;

namespace {

double max_pairwise_error(const Matrix& coords, const Matrix& d) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < d.rows(); ++i) {
    for (Eigen::Index j = 0; j < d.rows(); ++j) {
      worst = std::max(worst, std::abs((coords.row(i) - coords.row(j)).norm() - d(i, j)));
    }
  }
  return worst;
}

// Spectral distance recomputed from scratch with the Jacobi oracle.
double oracle_distance(const MmSpace& a, const MmSpace& b, const std::vector<double>& rhos, std::size_t kp) {
  double best = 0.0;
  for (double rho : rhos) {
    const auto ea = oracle::jacobi_eigenvalues(
        oracle::rho_laplacian(fixtures::to_dense(a.dist()), fixtures::to_std(a.mass()), rho));
    const auto eb = oracle::jacobi_eigenvalues(
        oracle::rho_laplacian(fixtures::to_dense(b.dist()), fixtures::to_std(b.mass()), rho));
    double sq = 0.0;
    for (std::size_t i = 0; i < kp; ++i) sq += (ea[i] - eb[i]) * (ea[i] - eb[i]);
    best = std::max(best, std::sqrt(sq));
  }
  return best;
}

}  // namespace

TEST(Grid, QuantilesAndShiftOffBreakpoints) {
  const double s2 = std::sqrt(2.0), s10 = std::sqrt(10.0);
  const auto grid = build_grid({fixtures::triangle_space(), fixtures::path_space()}, 5);
  // pooled: sqrt2 x4, 2 x2, sqrt10 x4, 4 x2; type-7 positions 0, 2.75, 5.5, 8.25, 11
  const std::vector<double> q{s2, s2, 2 + 0.5 * (s10 - 2), s10, 4};
  ASSERT_EQ(grid.quantiles.size(), 5u);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(grid.quantiles[i], q[i], 1e-15);
  const std::vector<double> v{(s2 + 2) / 2, (s2 + 2) / 2, 2 + 0.5 * (s10 - 2), (s10 + 4) / 2, 6};
  for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(grid.values[i], v[i], 1e-15);
  EXPECT_THROW(build_grid({fixtures::delta(3)}, 1), InputError);
}

TEST(Grid, DefaultSizeIsSorted) {
  const auto grid = build_grid({fixtures::line_x(), fixtures::line_y()});
  EXPECT_EQ(grid.size(), kDefaultGridSize);
  EXPECT_TRUE(std::is_sorted(grid.values.begin(), grid.values.end()));
}

TEST(Grid, BreakpointGridHitsEveryInterval) {
  const auto a = sweep(fixtures::triangle_space()), b = sweep(fixtures::path_space());
  const auto grid = breakpoint_grid({&a, &b});
  EXPECT_EQ(grid.size(), 4u);  // sqrt2, 2, sqrt10, 4
  for (double rho : grid.values) {
    for (double bp : grid.quantiles) EXPECT_FALSE(same_distance(rho, bp));
  }
}

TEST(SpectralDistance, SeparatesTheEqualDistanceDistributionPair) {
  const auto x = fixtures::triangle_space(), y = fixtures::path_space();
  EXPECT_EQ(dod_distance(dod(x), dod(y)), 0.0);
  const auto a = sweep(x), b = sweep(y);
  const auto grid = build_grid({x, y});
  const double d = spectral_distance(a, b, grid, 4);
  EXPECT_GT(d, 0.05);
  EXPECT_NEAR(d, oracle_distance(x, y, grid.values, 4), 1e-12);
  EXPECT_GE(spectral_distance(a, b, breakpoint_grid({&a, &b}), 4), d - 1e-15);
  EXPECT_EQ(spectral_distance(a, a, grid, 4), 0.0);
  EXPECT_DOUBLE_EQ(spectral_distance(b, a, grid, 4), d);
}

TEST(SpectralDistance, SeparatesTheLinePair) {
  const auto x = fixtures::line_x(), y = fixtures::line_y();
  EXPECT_EQ(dod_distance(dod(x), dod(y)), 0.0);
  const auto a = sweep(x), b = sweep(y);
  const auto grid = build_grid({x, y});
  const double d = spectral_distance(a, b, grid, 6);
  EXPECT_GT(d, 0.01);
  EXPECT_NEAR(d, oracle_distance(x, y, grid.values, 6), 1e-12);
  EXPECT_THROW(spectral_distance(a, b, grid, 7), InputError);
}

TEST(SpectralDistance, PairwiseMatrixIsSymmetricWithZeroDiagonal) {
  std::vector<MmSpace> spaces{fixtures::triangle_space(), fixtures::path_space(), fixtures::delta(4),
                              fixtures::triangle_space()};
  std::vector<SpectralCurve> curves;
  for (const auto& s : spaces) curves.push_back(sweep(s));
  const auto grid = build_grid(spaces, 50);
  const auto m = pairwise_distances(curves, grid, common_k_prime(curves), 3);
  EXPECT_EQ(m.size(), 4u);
  EXPECT_EQ((m.distances - m.distances.transpose()).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(m.distances.diagonal().cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(m.distances(0, 3), 0.0);
  EXPECT_GT(m.distances(0, 1), 0.0);
}

TEST(Dod, StepsIncludeDiagonalAndBothOrders) {
  const auto f = dod(fixtures::two_point(0.75, 0.25, 2.0));
  EXPECT_DOUBLE_EQ(f(-0.1), 0.0);
  EXPECT_DOUBLE_EQ(f(0.0), 0.5625 + 0.0625);
  EXPECT_DOUBLE_EQ(f(2.0), 1.0);
  EXPECT_EQ(f.support(), (std::vector<double>{0.0, 2.0}));
}

TEST(Dod, UnreachablePairsNeverEnter) {
  Matrix d(2, 2);
  d << 0, kUnreachable, kUnreachable, 0;
  const auto f = dod(MmSpace(d, Vector::Constant(2, 0.5)));
  EXPECT_DOUBLE_EQ(f(1e300), 0.5);
}

TEST(LocalDod, ClosedAndOpenBalls) {
  const auto h = local_dod(fixtures::line_x());
  const double w = 1.0 / 6;
  EXPECT_NEAR(h(0, 0.0), w, 1e-15);
  EXPECT_NEAR(h(0, 1.0), 2 * w, 1e-15);
  EXPECT_NEAR(h.open(0, 1.0), w, 1e-15);
  EXPECT_NEAR(h(3, 2.0), 2 * w, 1e-15);  // node at 10: itself and 12
  EXPECT_NEAR(h(5, 17.0), 1.0, 1e-15);
}

TEST(Mds, UnitSquareAndTriangle) {
  Matrix sq(4, 4);
  const double r2 = std::sqrt(2.0);
  sq << 0, 1, r2, 1, 1, 0, 1, r2, r2, 1, 0, 1, 1, r2, 1, 0;
  const auto a = classical_mds(sq, 2);
  EXPECT_LE(max_pairwise_error(a.coordinates, sq), 1e-8);
  EXPECT_EQ(a.positive, 2u);
  EXPECT_TRUE(a.warnings.empty());
  EXPECT_NEAR(a.coordinates.colwise().sum().cwiseAbs().maxCoeff(), 0.0, 1e-12);

  Matrix tri = Matrix::Ones(3, 3) - Matrix::Identity(3, 3);
  EXPECT_LE(max_pairwise_error(classical_mds(tri, 2).coordinates, tri), 1e-8);
}

TEST(Mds, RandomPlanarPointsAreRecovered) {
  Rng rng(31);
  for (int t = 0; t < 50; ++t) {
    const auto n = static_cast<Eigen::Index>(3 + uniform_index(rng, 18));
    Matrix c(n, 2);
    for (Eigen::Index i = 0; i < n; ++i) c.row(i) << fixtures::uniform(rng, -5, 5), fixtures::uniform(rng, -5, 5);
    const auto d = from_points(c, MassPolicy::uniform()).dist();
    EXPECT_LE(max_pairwise_error(classical_mds(d, 2).coordinates, d), 1e-8);
  }
}

TEST(Mds, OrientationAndNonEuclideanWarning) {
  Matrix d(3, 3);
  d << 0, 1, 3, 1, 0, 1, 3, 1, 0;  // violates the triangle inequality
  const auto r = classical_mds(d, 3);
  EXPECT_FALSE(r.warnings.empty());
  for (Eigen::Index a = 0; a < r.coordinates.cols(); ++a) {
    Eigen::Index arg = 0;
    r.coordinates.col(a).cwiseAbs().maxCoeff(&arg);
    EXPECT_GE(r.coordinates(arg, a), 0.0);
  }
  EXPECT_THROW(classical_mds(d, 0), InputError);
}

TEST(Silhouette, HandComputed) {
  Matrix p(4, 1);
  p << 0, 1, 10, 11;
  // a = 1 everywhere; b = 10.5 for the outer points, 9.5 for the inner ones
  const double s0 = (10.5 - 1) / 10.5, s1 = (9.5 - 1) / 9.5;
  EXPECT_NEAR(silhouette(p, {0, 0, 1, 1}), (2 * s0 + 2 * s1) / 4, 1e-15);
  EXPECT_LT(silhouette(p, {0, 1, 0, 1}), 0.0);
}
