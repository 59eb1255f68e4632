#pragma once

// Deterministic random generators for quantum test inputs.

#include <random>
#include <vector>

#include "steerkit/linalg.hpp"
#include "steerkit/operators.hpp"

namespace steerkit::testing {

inline Matrix random_density_matrix(int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Matrix m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = Complex(g(rng), g(rng));
  Matrix rho = m * m.adjoint();
  return rho / rho.trace().real();
}

inline Vector3 random_axis(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Vector3 n(g(rng), g(rng), g(rng));
  while (n.norm() < 1e-6) n = Vector3(g(rng), g(rng), g(rng));
  return n.normalized();
}

inline MeasurementSet random_projective_qubit_set(int settings, std::uint64_t seed) {
  std::vector<Povm> povms;
  for (int x = 0; x < settings; ++x) povms.push_back(projective_qubit(random_axis(seed * 97 + x)));
  return MeasurementSet(std::move(povms));
}

/// Random dichotomic qubit POVM {E, I-E} with 0 ⪯ E ⪯ I.
inline Povm random_dichotomic_povm(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Matrix v = random_unitary(2, seed * 131 + 7);
  Vector d(2);
  d << u(rng), u(rng);
  Matrix e = v * d.asDiagonal() * v.adjoint();
  return Povm({e, Matrix::Identity(2, 2) - e});
}

inline MeasurementSet random_projective_set(int d, int settings, std::uint64_t seed) {
  std::vector<Povm> povms;
  for (int x = 0; x < settings; ++x) {
    Matrix u = random_unitary(d, seed * 59 + x);
    std::vector<Matrix> effects;
    for (int a = 0; a < d; ++a) {
      Vector col = u.col(a);
      effects.push_back(col * col.adjoint());
    }
    povms.emplace_back(std::move(effects));
  }
  return MeasurementSet(std::move(povms));
}

inline double trace_distance(const Matrix& a, const Matrix& b) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(a - b), Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace steerkit::testing
