#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace mmspectra {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Distance assigned to node pairs with no connecting path. Such pairs never
// enter an auxiliary graph at finite rho.
inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

// Distances closer than this (relative to max(1, |d|)) are one breakpoint.
inline constexpr double kTieTolerance = 1e-12;

// Eigenvalues below kZeroTolerance * max(1, lambda_max) count as zero.
inline constexpr double kZeroTolerance = 1e-10;

inline bool same_distance(double a, double b) {
  if (a == b) return true;
  if (!std::isfinite(a) || !std::isfinite(b)) return false;
  return std::abs(a - b) <= kTieTolerance * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

// Malformed or out-of-contract input. The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Eigensolver failure, singular system, or a violated numerical check.
// The CLI maps this to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an operation needs a connected auxiliary graph.
class DisconnectedError : public NumericalError {
 public:
  DisconnectedError(const std::string& what, std::size_t components)
      : NumericalError(what), components_(components) {}

  std::size_t components() const { return components_; }

 private:
  std::size_t components_;
};

}  // namespace mmspectra
