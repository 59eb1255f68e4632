#pragma once

#include <vector>

#include "steerkit/core.hpp"

namespace steerkit {

/// Which tensor factor of a bipartite operator an operation acts on.
enum class Subsystem { A, B };

/// Kronecker (tensor) product, dims multiply.
template <typename DerivedA, typename DerivedB>
Matrix kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = Complex(a(i, j)) * b;
  return out;
}

template <typename Derived>
Matrix dag(const Eigen::MatrixBase<Derived>& m) {
  return m.adjoint();
}

/// Hermitian part (M + M†)/2.
template <typename Derived>
Matrix hermitize(const Eigen::MatrixBase<Derived>& m) {
  return (m + m.adjoint()) / 2.0;
}

/// Frobenius norm of the anti-Hermitian part.
template <typename Derived>
double hermiticity_residue(const Eigen::MatrixBase<Derived>& m) {
  return ((m - m.adjoint()) / 2.0).norm();
}

inline void check_bipartite(Eigen::Index rows, Eigen::Index cols, int da, int db) {
  if (da < 1 || db < 1 || rows != cols || rows != Eigen::Index(da) * db)
    throw DimensionError("operator of dimension " + std::to_string(rows) +
                         " does not factorize as " + std::to_string(da) + "x" + std::to_string(db));
}

/// Partial trace of a bipartite operator over the chosen subsystem.
template <typename Derived>
Matrix partial_trace(const Eigen::MatrixBase<Derived>& m, int da, int db, Subsystem over) {
  check_bipartite(m.rows(), m.cols(), da, db);
  if (over == Subsystem::A) {
    Matrix out = Matrix::Zero(db, db);
    for (int i = 0; i < da; ++i) out += m.block(i * db, i * db, db, db);
    return out;
  }
  Matrix out = Matrix::Zero(da, da);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j) {
      Complex t = 0;
      for (int k = 0; k < db; ++k) t += m(i * db + k, j * db + k);
      out(i, j) = t;
    }
  return out;
}

/// Transposition of the B factor.
template <typename Derived>
Matrix partial_transpose(const Eigen::MatrixBase<Derived>& m, int da, int db) {
  check_bipartite(m.rows(), m.cols(), da, db);
  Matrix out(m.rows(), m.cols());
  for (int ia = 0; ia < da; ++ia)
    for (int ja = 0; ja < da; ++ja)
      out.block(ia * db, ja * db, db, db) =
          m.block(ia * db, ja * db, db, db).transpose();
  return out;
}

template <typename Derived>
double min_eigenvalue(const Eigen::MatrixBase<Derived>& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

template <typename Derived>
bool is_psd(const Eigen::MatrixBase<Derived>& m, double eps = tol::psd) {
  return min_eigenvalue(m) >= -eps;
}

/// Moore-Penrose inverse square root on the support of a PSD matrix.
/// Singular values below cutoff are treated as exactly zero.
Matrix pseudo_inverse_sqrt(const Matrix& psd, double cutoff = 1e-10);

/// Square root of a PSD matrix (eigenvalues clamped at zero).
Matrix psd_sqrt(const Matrix& psd);

/// Pauli matrices and friends.
const Matrix& pauli_x();
const Matrix& pauli_y();
const Matrix& pauli_z();
/// n·σ for a real 3-vector (not necessarily unit).
Matrix pauli_dot(const Vector3& n);
/// Qubit state (I + n·σ)/2.
Matrix qubit_state(const Vector3& n);

/// Orthonormal Hermitian basis of d×d operators: d diagonal units, then
/// (e_ij+e_ji)/√2 and i(e_ij−e_ji)/√2 for i<j. ⟨H_p, H_q⟩ = δ_pq.
std::vector<Matrix> hermitian_basis(int d);

/// Haar-random unitary via QR of a complex Gaussian matrix.
Matrix random_unitary(int d, std::uint64_t seed);

/// Normalized Haar-random pure state.
Vector random_pure_state(int d, std::uint64_t seed);

}  // namespace steerkit
