#include "properties.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fixtures.hpp"
#include "mmspectra/harmonics.hpp"
#include "mmspectra/laplacian.hpp"
#include "mmspectra/spectrum.hpp"
#include "oracles.hpp"

namespace properties {

using namespace mmspectra;

namespace {

// One rho strictly inside each interval of the curve.
std::vector<double> interior_rhos(const SpectralCurve& curve) {
  std::vector<double> out;
  const auto& bp = curve.breakpoints;
  out.push_back(bp.empty() ? 1.0 : bp.front() / 2.0);
  for (double b : bp) out.push_back(rho_above(bp, b));
  return out;
}

double rel(double err, double scale) { return err / std::max(1.0, std::abs(scale)); }

void fail(Outcome& o, std::size_t trial, const std::string& what) {
  if (o.failures++ == 0) {
    std::ostringstream os;
    os << "case " << trial << ": " << what;
    o.first_failure = os.str();
  }
}

template <typename Check>
Outcome run(const char* name, std::size_t cases, std::uint64_t seed, Check check) {
  Outcome o;
  o.name = name;
  Rng rng(seed);
  for (std::size_t t = 0; t < cases; ++t) {
    const auto space = fixtures::random_space(rng, kMaxNodes);
    check(o, t, space, rng);
    ++o.cases;
  }
  return o;
}

}  // namespace

Outcome trace_identity(std::size_t cases, std::uint64_t seed) {
  return run("trace identity", cases, seed, [](Outcome& o, std::size_t t, const MmSpace& s, Rng&) {
    const auto curve = sweep(s);
    const auto rhos = interior_rhos(curve);
    const auto dense = fixtures::to_dense(s.dist());
    for (std::size_t m = 0; m < rhos.size(); ++m) {
      double w = 0.0;
      for (std::size_t j = 0; j < s.size(); ++j) {
        for (std::size_t l = j + 1; l < s.size(); ++l) {
          if (dense[j][l] < rhos[m]) w += s.mass(j) * s.mass(l);
        }
      }
      const double sum = curve.spectra[m].values.sum();
      const double err = rel(std::abs(sum - 2.0 * w), 2.0 * w);
      o.worst = std::max(o.worst, err);
      if (err > 1e-10) fail(o, t, "interval " + std::to_string(m));
    }
  });
}

Outcome row_sums(std::size_t cases, std::uint64_t seed) {
  return run("row sums", cases, seed, [](Outcome& o, std::size_t t, const MmSpace& s, Rng& rng) {
    const double rho = fixtures::uniform(rng, 0.1, 12.0);
    const auto lap = laplacian(s, rho);
    const double scale = lap.matrix.diagonal().maxCoeff();
    const double err = rel(lap.matrix.rowwise().sum().cwiseAbs().maxCoeff(), scale);
    o.worst = std::max(o.worst, err);
    if (err > 1e-14) fail(o, t, "rho " + std::to_string(rho));
  });
}

Outcome zero_multiplicity(std::size_t cases, std::uint64_t seed) {
  return run("zero multiplicity", cases, seed, [](Outcome& o, std::size_t t, const MmSpace& s, Rng&) {
    const auto curve = sweep(s);
    const auto rhos = interior_rhos(curve);
    const auto dense = fixtures::to_dense(s.dist());
    for (std::size_t m = 0; m < rhos.size(); ++m) {
      const std::size_t zeros = zero_count(curve.spectra[m]);
      const std::size_t uf = component_count(s, rhos[m]);
      const std::size_t flood = oracle::components(dense, rhos[m]);
      if (zeros != uf || uf != flood) {
        fail(o, t, "interval " + std::to_string(m) + ": zeros " + std::to_string(zeros) + ", union-find " +
                       std::to_string(uf) + ", flood fill " + std::to_string(flood));
      }
    }
  });
}

Outcome permutation_invariance(std::size_t cases, std::uint64_t seed) {
  return run("permutation invariance", cases, seed, [](Outcome& o, std::size_t t, const MmSpace& s, Rng& rng) {
    const auto a = sweep(s);
    const auto b = sweep(s.permuted(fixtures::random_permutation(rng, s.size())));
    if (a.breakpoints != b.breakpoints || a.spectra.size() != b.spectra.size()) {
      fail(o, t, "breakpoints differ");
      return;
    }
    for (std::size_t m = 0; m < a.spectra.size(); ++m) {
      const double err =
          rel((a.spectra[m].values - b.spectra[m].values).cwiseAbs().maxCoeff(), a.spectra[m].max());
      o.worst = std::max(o.worst, err);
      if (err > 1e-10) fail(o, t, "interval " + std::to_string(m));
    }
  });
}

Outcome mass_scaling(std::size_t cases, std::uint64_t seed) {
  return run("mass scaling", cases, seed, [](Outcome& o, std::size_t t, const MmSpace& s, Rng& rng) {
    const double c = fixtures::uniform(rng, 0.2, 5.0);
    const auto a = sweep(s);
    const auto b = sweep(s.with_scaled_mass(c));
    for (std::size_t m = 0; m < a.spectra.size(); ++m) {
      const Vector expected = a.spectra[m].values * (c * c);
      const double err = rel((b.spectra[m].values - expected).cwiseAbs().maxCoeff(), expected.maxCoeff());
      o.worst = std::max(o.worst, err);
      if (err > 1e-10) fail(o, t, "interval " + std::to_string(m) + ", c = " + std::to_string(c));
    }
  });
}

Outcome gershgorin(std::size_t cases, std::uint64_t seed) {
  return run("Gershgorin sandwich", cases, seed, [](Outcome& o, std::size_t t, const MmSpace& s, Rng&) {
    const auto curve = sweep(s);
    const auto rhos = interior_rhos(curve);
    for (std::size_t m = 0; m < rhos.size(); ++m) {
      const auto graph = build_auxiliary(s, rhos[m]);
      const auto report = check_bounds(s, graph, curve.spectra[m]);
      const double dmax = graph.degree.maxCoeff();
      const double lmax = curve.spectra[m].max();
      const double slack = 1e-12 * std::max(1.0, lmax);
      if (!report.ok || lmax < dmax - slack || lmax > 2.0 * dmax + slack) {
        fail(o, t, "interval " + std::to_string(m) + (report.violations.empty() ? "" : ": " + report.violations[0]));
      }
    }
  });
}

Outcome event_monotonicity(std::size_t cases, std::uint64_t seed) {
  return run("event monotonicity", cases, seed, [](Outcome& o, std::size_t t, const MmSpace& s, Rng&) {
    const auto k = static_cast<Eigen::Index>(s.size());
    Matrix lap = Matrix::Zero(k, k);
    Vector before = Vector::Zero(k);
    for (const auto& e : edge_events(s)) {
      add_edge(lap, e);
      const Vector after = eig(lap, false).values;
      const double slack = 1e-12 * std::max(1.0, after.maxCoeff());
      const Vector jump = after - before;
      o.worst = std::max(o.worst, (jump.array() - 2.0 * e.weight).maxCoeff());
      if (jump.minCoeff() < -slack || jump.maxCoeff() > 2.0 * e.weight + slack) {
        fail(o, t, "event (" + std::to_string(e.i) + "," + std::to_string(e.j) + ")");
      }
      before = after;
    }
  });
}

Outcome oracle_agreement(std::size_t cases, std::uint64_t seed) {
  return run("Jacobi oracle", cases, seed, [](Outcome& o, std::size_t t, const MmSpace& s, Rng& rng) {
    const double rho = fixtures::uniform(rng, 0.5, 12.0);
    const auto expected = oracle::jacobi_eigenvalues(
        oracle::rho_laplacian(fixtures::to_dense(s.dist()), fixtures::to_std(s.mass()), rho));
    const auto got = eig(laplacian(s, rho), false);
    double err = 0.0;
    for (std::size_t i = 0; i < expected.size(); ++i) {
      err = std::max(err, std::abs(got.values(static_cast<Eigen::Index>(i)) - expected[i]));
    }
    err = rel(err, expected.back());
    o.worst = std::max(o.worst, err);
    if (err > 1e-10) fail(o, t, "rho " + std::to_string(rho));
  });
}

Outcome spanning_trees(std::size_t max_k) {
  Outcome o;
  o.name = "spanning trees";
  for (std::size_t k = 2; k <= max_k; ++k) {
    std::vector<std::pair<std::size_t, std::size_t>> all;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) all.emplace_back(i, j);
    }
    const auto n = static_cast<Eigen::Index>(k);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << all.size()); ++mask) {
      // Unit masses; edges at distance 1, non-edges at 2, so rho = 1.5 gives
      // exactly this unweighted graph.
      Matrix d = Matrix::Constant(n, n, 2.0);
      d.diagonal().setZero();
      std::vector<std::pair<std::size_t, std::size_t>> edges;
      for (std::size_t e = 0; e < all.size(); ++e) {
        if (mask >> e & 1) {
          edges.push_back(all[e]);
          d(static_cast<Eigen::Index>(all[e].first), static_cast<Eigen::Index>(all[e].second)) = 1.0;
          d(static_cast<Eigen::Index>(all[e].second), static_cast<Eigen::Index>(all[e].first)) = 1.0;
        }
      }
      const MmSpace space(d, Vector::Ones(n));
      const auto spec = eig(laplacian(space, 1.5), false);
      if (oracle::components(fixtures::to_dense(d), 1.5) > 1) {
        try {
          spanning_tree_count(spec, k);
          fail(o, mask, "disconnected graph on " + std::to_string(k) + " nodes accepted");
        } catch (const DisconnectedError&) {
        }
        continue;
      }
      const double brute = static_cast<double>(oracle::count_spanning_trees(k, edges));
      const double got = spanning_tree_count(spec, k);
      const double err = std::abs(got - brute) / brute;
      o.worst = std::max(o.worst, err);
      if (err > 1e-8) fail(o, mask, "K = " + std::to_string(k) + ": " + std::to_string(got) + " vs " + std::to_string(brute));
      ++o.cases;
    }
  }
  return o;
}

}  // namespace properties
