#include "mmspectra/spectrum.hpp"

#include <algorithm>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "mmspectra/parallel.hpp"

namespace mmspectra {

double zero_threshold(const Vector& values) {
  const double top = values.size() ? values.cwiseAbs().maxCoeff() : 0.0;
  return kZeroTolerance * std::max(1.0, top);
}

std::size_t zero_count(const Spectrum& spectrum) {
  const double thr = zero_threshold(spectrum.values);
  std::size_t n = 0;
  for (Eigen::Index i = 0; i < spectrum.values.size(); ++i) {
    if (std::abs(spectrum.values(i)) <= thr) ++n;
  }
  return n;
}

Spectrum eig(const Matrix& symmetric, bool want_vectors) {
  Spectrum out;
  if (symmetric.rows() == 0) {
    out.values = Vector();
    return out;
  }
  if (!symmetric.allFinite()) throw NumericalError("matrix passed to the eigensolver has non-finite entries");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(
      symmetric, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    std::ostringstream os;
    os << "symmetric eigensolver did not converge on a " << symmetric.rows() << "x"
       << symmetric.cols() << " matrix (max |entry| " << symmetric.cwiseAbs().maxCoeff()
       << ", asymmetry " << (symmetric - symmetric.transpose()).cwiseAbs().maxCoeff() << ")";
    throw NumericalError(os.str());
  }
  out.values = solver.eigenvalues();
  const double thr = zero_threshold(out.values);
  for (Eigen::Index i = 0; i < out.values.size(); ++i) {
    if (std::abs(out.values(i)) <= thr) out.values(i) = 0.0;
  }
  if (want_vectors) out.vectors = solver.eigenvectors();
  return out;
}

Spectrum eig(const RhoLaplacian& lap, bool want_vectors) { return eig(lap.matrix, want_vectors); }

SpectralCurve sweep(const MmSpace& space, const SweepOptions& options) {
  const std::vector<EdgeEvent> events = edge_events(space);
  const auto k = static_cast<Eigen::Index>(space.size());

  // group_end[m] = number of events present on interval m + 1.
  SpectralCurve curve;
  std::vector<std::size_t> group_end;
  for (std::size_t e = 0; e < events.size(); ++e) {
    if (curve.breakpoints.empty() || !same_distance(curve.breakpoints.back(), events[e].distance)) {
      if (!curve.breakpoints.empty()) group_end.push_back(e);
      curve.breakpoints.push_back(events[e].distance);
    }
  }
  if (!curve.breakpoints.empty()) group_end.push_back(events.size());

  const std::size_t intervals = curve.breakpoints.size() + 1;
  curve.spectra.resize(intervals);

  // Each chunk rebuilds its starting Laplacian from scratch, adding events in
  // the same order, so results do not depend on the thread count.
  parallel_chunks(intervals, options.threads, [&](std::size_t begin, std::size_t end) {
    Matrix lap = Matrix::Zero(k, k);
    std::size_t applied = 0;
    for (std::size_t m = begin; m < end; ++m) {
      const std::size_t present = m == 0 ? 0 : group_end[m - 1];
      for (; applied < present; ++applied) add_edge(lap, events[applied]);
      try {
        curve.spectra[m] = eig(lap, options.want_vectors);
      } catch (const NumericalError& err) {
        throw NumericalError("sweep interval " + std::to_string(m) + ": " + err.what());
      }
    }
  });
  return curve;
}

std::size_t interval_index(const SpectralCurve& curve, double rho) {
  const auto& bps = curve.breakpoints;
  return static_cast<std::size_t>(std::lower_bound(bps.begin(), bps.end(), rho) - bps.begin());
}

const Spectrum& spectrum_at(const SpectralCurve& curve, double rho) {
  if (curve.spectra.empty()) throw InputError("empty spectral curve");
  return curve.spectra[interval_index(curve, rho)];
}

SpectralCdf::SpectralCdf(const Spectrum& spectrum)
    : atoms_(spectrum.values.data(), spectrum.values.data() + spectrum.values.size()) {
  std::sort(atoms_.begin(), atoms_.end());
}

double SpectralCdf::operator()(double t) const {
  if (atoms_.empty()) return 0.0;
  const auto below = std::upper_bound(atoms_.begin(), atoms_.end(), t) - atoms_.begin();
  return static_cast<double>(below) / static_cast<double>(atoms_.size());
}

SpectralCdf spectral_cdf(const Spectrum& spectrum) { return SpectralCdf(spectrum); }

BoundsReport check_bounds(const AuxiliaryGraph& graph, const Spectrum& spectrum) {
  BoundsReport r;
  if (graph.degree.size() > 0) {
    Eigen::Index arg = 0;
    r.max_degree = graph.degree.maxCoeff(&arg);
    r.max_degree_node = static_cast<std::size_t>(arg);
  }
  r.lambda_max = spectrum.max();
  r.lower_margin = r.lambda_max - r.max_degree;
  r.upper_margin = 2.0 * r.max_degree - r.lambda_max;
  const double tol = 1e-9 * std::max(1.0, r.lambda_max);
  if (r.lower_margin < -tol) {
    r.ok = false;
    r.violations.push_back("lambda_max below max degree at node " + std::to_string(r.max_degree_node));
  }
  if (r.upper_margin < -tol) {
    r.ok = false;
    r.violations.push_back("lambda_max above twice the max degree at node " +
                           std::to_string(r.max_degree_node));
  }
  return r;
}

BoundsReport check_bounds(const MmSpace& space, const AuxiliaryGraph& graph,
                          const Spectrum& spectrum) {
  BoundsReport r = check_bounds(graph, spectrum);
  const std::size_t k = space.size();
  double local_max = 0.0;
  const double tol = 1e-9 * std::max(1.0, r.lambda_max);
  for (std::size_t j = 0; j < k; ++j) {
    double ball = 0.0;  // h(x_j, rho-): mass of the open ball, centre included
    for (std::size_t l = 0; l < k; ++l) {
      if (l == j || space.dist(j, l) < graph.rho) ball += space.mass(l);
    }
    const double via_local = space.mass(j) * (ball - space.mass(j));
    local_max = std::max(local_max, via_local);
    if (std::abs(via_local - graph.degree(static_cast<Eigen::Index>(j))) > tol) {
      r.ok = false;
      r.violations.push_back("degree of node " + std::to_string(j) +
                             " disagrees with its local distance distribution");
    }
  }
  r.local_max_degree = local_max;
  return r;
}

double spanning_tree_count(const Spectrum& spectrum, std::size_t k) {
  if (k != spectrum.size() || k == 0) {
    throw InputError("spectrum has " + std::to_string(spectrum.size()) + " values, expected " +
                     std::to_string(k));
  }
  const std::size_t zeros = zero_count(spectrum);
  if (zeros > 1) {
    throw DisconnectedError("graph is disconnected (" + std::to_string(zeros) +
                                " zero eigenvalues); spanning-tree count is zero",
                            zeros);
  }
  double log_count = -std::log(static_cast<double>(k));
  for (Eigen::Index j = 1; j < spectrum.values.size(); ++j) log_count += std::log(spectrum.values(j));
  return std::exp(log_count);
}

Spectrum truncate(const Spectrum& spectrum, std::size_t k_prime) {
  if (k_prime < 1 || k_prime > spectrum.size()) {
    throw InputError("k_prime " + std::to_string(k_prime) + " outside [1, " +
                     std::to_string(spectrum.size()) + "]");
  }
  Spectrum out;
  const auto kp = static_cast<Eigen::Index>(k_prime);
  out.values = spectrum.values.head(kp);
  if (spectrum.vectors) out.vectors = spectrum.vectors->leftCols(kp);
  return out;
}

}  // namespace mmspectra
