#include "steerkit/linalg.hpp"

#include <random>

namespace steerkit {

Matrix pseudo_inverse_sqrt(const Matrix& psd, double cutoff) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(psd));
  Vector d = Vector::Zero(psd.rows());
  for (Eigen::Index i = 0; i < psd.rows(); ++i) {
    const double ev = es.eigenvalues()(i);
    d(i) = ev > cutoff ? 1.0 / std::sqrt(ev) : 0.0;
  }
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix psd_sqrt(const Matrix& psd) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(psd));
  Vector d = Vector::Zero(psd.rows());
  for (Eigen::Index i = 0; i < psd.rows(); ++i)
    d(i) = std::sqrt(std::max(0.0, es.eigenvalues()(i)));
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

const Matrix& pauli_x() {
  static const Matrix m = (Matrix(2, 2) << 0, 1, 1, 0).finished();
  return m;
}

const Matrix& pauli_y() {
  static const Matrix m =
      (Matrix(2, 2) << 0, Complex(0, -1), Complex(0, 1), 0).finished();
  return m;
}

const Matrix& pauli_z() {
  static const Matrix m = (Matrix(2, 2) << 1, 0, 0, -1).finished();
  return m;
}

Matrix pauli_dot(const Vector3& n) {
  return n(0) * pauli_x() + n(1) * pauli_y() + n(2) * pauli_z();
}

Matrix qubit_state(const Vector3& n) {
  return (Matrix::Identity(2, 2) + pauli_dot(n)) / 2.0;
}

std::vector<Matrix> hermitian_basis(int d) {
  std::vector<Matrix> basis;
  basis.reserve(static_cast<std::size_t>(d) * d);
  for (int i = 0; i < d; ++i) {
    Matrix m = Matrix::Zero(d, d);
    m(i, i) = 1.0;
    basis.push_back(m);
  }
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      Matrix re = Matrix::Zero(d, d);
      re(i, j) = s;
      re(j, i) = s;
      basis.push_back(re);
      Matrix im = Matrix::Zero(d, d);
      im(i, j) = Complex(0, s);
      im(j, i) = Complex(0, -s);
      basis.push_back(im);
    }
  return basis;
}

Matrix random_unitary(int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // fix the phase ambiguity so the distribution is Haar
  for (int i = 0; i < d; ++i) {
    Complex rii = r(i, i);
    q.col(i) *= rii / std::abs(rii);
  }
  return q;
}

Vector random_pure_state(int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(d);
  for (int i = 0; i < d; ++i) v(i) = Complex(gauss(rng), gauss(rng));
  v.normalize();
  return v;
}

}  // namespace steerkit
