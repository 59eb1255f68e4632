#include <cmath>

#include "doctest.h"
#include "steerkit/operators.hpp"
#include "support/random_quantum.hpp"

using namespace steerkit;
using steerkit::testing::random_density_matrix;
using steerkit::testing::random_projective_qubit_set;

TEST_CASE("hermitian constructor symmetrizes and rejects") {
  Matrix m(2, 2);
  m << 1.0, Complex(0.5, 1e-8), Complex(0.5, -1e-8), 2.0;
  HermitianOperator h(m);
  CHECK(hermiticity_residue(h.matrix()) == doctest::Approx(0));

  Matrix bad(2, 2);
  bad << 0, 1, -1, 0;  // purely anti-Hermitian off-diagonal
  CHECK_THROWS_AS(HermitianOperator{bad}, InvariantError);
}

TEST_CASE("density matrix invariants") {
  CHECK_THROWS_AS(DensityMatrix{Matrix(-Matrix::Identity(2, 2))}, InvariantError);
  CHECK_THROWS_AS(DensityMatrix{Matrix(2.0 * Matrix::Identity(2, 2))}, InvariantError);
  CHECK_NOTHROW(DensityMatrix{Matrix(Matrix::Identity(2, 2) / 2.0)});
  // padded outcomes produce zero members; allowed only via the subnormalized factory
  CHECK_NOTHROW(DensityMatrix::subnormalized(Matrix::Zero(2, 2)));
  CHECK_THROWS_AS(DensityMatrix{Matrix(Matrix::Zero(2, 2))}, InvariantError);
}

TEST_CASE("povm invariants and padding") {
  Matrix id = Matrix::Identity(2, 2);
  CHECK_THROWS_AS(Povm({id, id}), InvariantError);  // sums to 2I
  Povm p({id / 2.0, id / 2.0});
  p.pad_to(3);
  CHECK(p.outcomes() == 3);
  CHECK(p.effect(2).norm() == doctest::Approx(0));

  // measurement set pads to a rectangular outcome count
  Povm three({id / 3.0, id / 3.0, id / 3.0});
  MeasurementSet ms({Povm({id / 2.0, id / 2.0}), three});
  CHECK(ms.outcomes() == 3);
  CHECK(ms.effect(0, 2).norm() == doctest::Approx(0));
}

TEST_CASE("partial trace of the singlet is maximally mixed") {
  Matrix rb = partial_trace(singlet().matrix(), 2, 2, Subsystem::A);
  CHECK((rb - Matrix::Identity(2, 2) / 2.0).norm() == doctest::Approx(0).epsilon(1e-12));
}

TEST_CASE("partial transpose of the singlet has eigenvalue -1/2") {
  CHECK(min_eig_partial_transpose(singlet(), 2, 2) == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("partial transpose of product states stays positive") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Matrix rho = kron(random_density_matrix(2, seed), random_density_matrix(2, seed + 100));
    CHECK(min_eig_partial_transpose(DensityMatrix(rho), 2, 2) >= -1e-10);
  }
}

TEST_CASE("bloch decomposition of the singlet") {
  BlochDecomposition bd = bloch_decompose(singlet());
  CHECK(bd.a.norm() == doctest::Approx(0).epsilon(1e-12));
  CHECK(bd.b.norm() == doctest::Approx(0).epsilon(1e-12));
  CHECK((bd.T + Matrix3::Identity()).norm() == doctest::Approx(0).epsilon(1e-12));
}

TEST_CASE("bloch decomposition of the maximally mixed state is zero") {
  BlochDecomposition bd = bloch_decompose(DensityMatrix(Matrix(Matrix::Identity(4, 4) / 4.0)));
  CHECK(bd.a.norm() == doctest::Approx(0));
  CHECK(bd.b.norm() == doctest::Approx(0));
  CHECK(bd.T.norm() == doctest::Approx(0));
}

TEST_CASE("bloch round trip is exact") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    DensityMatrix rho{random_density_matrix(4, seed)};
    Matrix back = bloch_reconstruct(bloch_decompose(rho));
    CHECK((back - rho.matrix()).norm() <= 1e-10);
  }
}

TEST_CASE("operator Schmidt coefficients of Bell and product states") {
  auto bell = operator_schmidt_coefficients(singlet(), 2);
  REQUIRE(bell.size() == 4);
  for (double c : bell) CHECK(c == doctest::Approx(0.5).epsilon(1e-12));

  Vector e0(2);
  e0 << 1, 0;
  Matrix prod = kron(Matrix(e0 * e0.adjoint()), Matrix(e0 * e0.adjoint()));
  auto coeffs = operator_schmidt_coefficients(DensityMatrix(prod), 2);
  CHECK(coeffs[0] == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t i = 1; i < coeffs.size(); ++i) CHECK(coeffs[i] == doctest::Approx(0));
}

TEST_CASE("operator Schmidt coefficients: sum of squares is purity, local unitary invariant") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Matrix rho = random_density_matrix(4, seed);
    auto coeffs = operator_schmidt_coefficients(DensityMatrix(rho), 2);
    double sq = 0;
    for (double c : coeffs) sq += c * c;
    CHECK(sq == doctest::Approx((rho * rho).trace().real()).epsilon(1e-10));

    Matrix u = kron(random_unitary(2, seed + 31), random_unitary(2, seed + 57));
    auto rotated = operator_schmidt_coefficients(DensityMatrix(Matrix(u * rho * u.adjoint())), 2);
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      CHECK(rotated[i] == doctest::Approx(coeffs[i]).epsilon(1e-9));
  }
}

TEST_CASE("assemblage from the singlet and sigma_z") {
  Assemblage asm_z = assemblage_from_state(singlet(), MeasurementSet({projective_qubit({0, 0, 1})}));
  Matrix e0 = Matrix::Zero(2, 2), e1 = Matrix::Zero(2, 2);
  e0(0, 0) = 1;
  e1(1, 1) = 1;
  // measuring +z on Alice leaves Bob in |1><1|/2 (anticorrelation)
  CHECK((asm_z.member(0, 0) - e1 / 2.0).norm() == doctest::Approx(0).epsilon(1e-12));
  CHECK((asm_z.member(0, 1) - e0 / 2.0).norm() == doctest::Approx(0).epsilon(1e-12));
}

TEST_CASE("product states give uncorrelated assemblages") {
  Matrix rho_a = random_density_matrix(2, 5);
  Matrix rho_b = random_density_matrix(2, 6);
  DensityMatrix rho{kron(rho_a, rho_b)};
  MeasurementSet ms = random_projective_qubit_set(2, 17);
  Assemblage asm_p = assemblage_from_state(rho, ms);
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 2; ++a) {
      double pax = (ms.effect(x, a) * rho_a).trace().real();
      CHECK((asm_p.member(x, a) - pax * rho_b).norm() == doctest::Approx(0).epsilon(1e-10));
    }
}

TEST_CASE("assemblages always satisfy no-signalling") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    DensityMatrix rho{random_density_matrix(4, seed)};
    MeasurementSet ms = random_projective_qubit_set(2 + seed % 2, seed);
    Assemblage a = assemblage_from_state(rho, ms);  // constructor enforces the invariant
    Matrix rb = partial_trace(rho.matrix(), 2, 2, Subsystem::A);
    CHECK((a.reduced() - rb).norm() <= 1e-10);
  }
}

TEST_CASE("assemblage rejects signalling members") {
  Matrix id = Matrix::Identity(2, 2);
  Matrix e0 = Matrix::Zero(2, 2);
  e0(0, 0) = 1;
  // setting 0 sums to I/2, setting 1 sums to something else
  CHECK_THROWS_AS(Assemblage({{id / 4.0, id / 4.0}, {e0 / 2.0, e0 / 2.0}}), InvariantError);
}
