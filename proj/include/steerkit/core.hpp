#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace steerkit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Vector3 = Eigen::Vector3d;
using Matrix3 = Eigen::Matrix3d;

/// Uniform numerical tolerances shared across the library.
namespace tol {
inline constexpr double hermitian_residue = 1e-6;  // anti-Hermitian part rejected above this
inline constexpr double psd = 1e-9;                // smallest eigenvalue allowed below zero
inline constexpr double povm_completeness = 1e-8;  // effects must sum to identity this tightly
inline constexpr double no_signalling = 1e-8;      // assemblage marginals must agree this tightly
inline constexpr double verdict = 1e-7;            // default steerability decision band
inline constexpr double bisection = 1e-4;          // default noise-parameter bisection width
}  // namespace tol

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands have incompatible or non-factorizable dimensions.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Input violates a domain invariant (not Hermitian, not PSD, bad range, ...).
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// The conic backend failed to converge or reported an inconsistent solution.
class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace steerkit
