#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mmspectra/mmspace.hpp"
#include "mmspectra/random.hpp"
#include "oracles.hpp"

namespace fixtures {

using mmspectra::Matrix;
using mmspectra::MmSpace;
using mmspectra::Vector;

// Two points at distance r with masses (a, b).
MmSpace two_point(double a, double b, double r = 1.0);

// n points, all pairwise distances 1, mass 1/n each.
MmSpace delta(std::size_t n);

// The pair with equal distance distributions: four points whose three
// shortest links form a triangle plus an isolated far point, and four points
// whose links form a path. Uniform mass 1/4.
MmSpace triangle_space();
MmSpace path_space();

// X = (0,1,4,10,12,17) and Y = (0,1,8,11,13,17) on the line, uniform mass.
MmSpace line_x();
MmSpace line_y();

// Two 3-cliques (edges of length 1) joined by a single edge of length 3
// between nodes 2 and 3, shortest-path metric, uniform mass.
MmSpace barbell();

MmSpace from_matrix(const std::vector<std::vector<double>>& d, const std::vector<double>& mass);

oracle::Dense to_dense(const Matrix& m);
std::vector<double> to_std(const Vector& v);

enum class RandomKind { kPoints, kIntegerDistances, kDisconnectedGraph };

// Small random mm-space: K in [2, max_k], masses in [0.1, 1]. Integer
// distances produce ties; disconnected graphs produce unreachable pairs.
MmSpace random_space(mmspectra::Rng& rng, std::size_t max_k, RandomKind kind);
MmSpace random_space(mmspectra::Rng& rng, std::size_t max_k);

std::vector<std::size_t> random_permutation(mmspectra::Rng& rng, std::size_t n);

double uniform(mmspectra::Rng& rng, double lo, double hi);

// Synthetic shape families for clustering tests: family 0 a noisy circle,
// family 1 two separated blobs, family 2 a noisy segment, each with `k`
// points and uniform mass.
MmSpace family_space(mmspectra::Rng& rng, int family, std::size_t k);

// Two-point space whose heavier mass is drawn around `split`, distance 1.
MmSpace jittered_two_point(mmspectra::Rng& rng, double split, double jitter);

}  // namespace fixtures
