#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace sqc {

using Cx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

inline constexpr double pi = 3.14159265358979323846;

/// Harmonic trap parameters in hbar = 1 units. The characteristic length
/// x0 = sqrt(1/(2 M nu)) is always derived, never stored; M = nu = 1 gives
/// x0 = 1/sqrt(2).
struct TrapSpec {
  double mass = 1.0;
  double nu = 1.0;

  double x0() const { return std::sqrt(1.0 / (2.0 * mass * nu)); }
};

inline void validate(const TrapSpec& trap) {
  if (!(trap.mass > 0.0) || !(trap.nu > 0.0)) {
    throw std::invalid_argument("trap mass and frequency must be positive");
  }
}

/// A wave packet (or density matrix support) reached the edge of its grid.
class BoundaryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A time stepper or truncation failed its convergence gate.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fock-space truncation too small for the requested state.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sqc
