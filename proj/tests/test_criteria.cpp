#include <cmath>

#include "doctest.h"
#include "steerkit/criteria.hpp"
#include "steerkit/states.hpp"
#include "steerkit/steering.hpp"
#include "support/random_quantum.hpp"

using namespace steerkit;
using steerkit::testing::random_density_matrix;

namespace {

std::vector<Matrix> paulis() { return {pauli_x(), pauli_y(), pauli_z()}; }

JointDistribution joint_table(const DensityMatrix& rho, const Matrix& a_obs, const Matrix& b_obs) {
  Povm pa = projective_from_observable(a_obs);
  Povm pb = projective_from_observable(b_obs);
  JointDistribution joint;
  joint.p = RealMatrix(pa.outcomes(), pb.outcomes());
  for (int i = 0; i < pa.outcomes(); ++i)
    for (int j = 0; j < pb.outcomes(); ++j)
      joint.p(i, j) = (kron(pa.effect(i), pb.effect(j)) * rho.matrix()).trace().real();
  return joint;
}

}  // namespace

TEST_CASE("linear criterion on the singlet and product states") {
  CorrelationRecord singlet_rec = record_from_state(singlet(), paulis(), paulis());
  std::vector<double> matched = {singlet_rec.full(0, 0), singlet_rec.full(1, 1),
                                 singlet_rec.full(2, 2)};
  CriterionResult res = linear_criterion(matched, paulis());
  CHECK(res.value == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(res.bound == doctest::Approx(std::sqrt(3.0)).epsilon(1e-10));
  CHECK(res.violated);

  DensityMatrix product{kron(random_density_matrix(2, 1), random_density_matrix(2, 2))};
  CorrelationRecord prod_rec = record_from_state(product, paulis(), paulis());
  CriterionResult res2 = linear_criterion(
      {prod_rec.full(0, 0), prod_rec.full(1, 1), prod_rec.full(2, 2)}, paulis());
  CHECK_FALSE(res2.violated);
  CHECK(res2.value <= 1.0 + 1e-10);  // Cauchy-Schwarz on product states

  // single observable: bound reduces to the top eigenvalue
  CriterionResult res3 = linear_criterion({0.5}, {pauli_z()});
  CHECK(res3.bound == doctest::Approx(1.0));
  CHECK_FALSE(res3.violated);

  CHECK_THROWS_AS(linear_criterion(std::vector<double>(25, 0.0),
                                   std::vector<Matrix>(25, pauli_z())),
                  InvariantError);
}

TEST_CASE("three-Pauli criterion values") {
  CorrelationRecord singlet_rec = record_from_state(singlet(), paulis(), paulis());
  CriterionResult s = three_pauli_criterion(singlet_rec);
  CHECK(s.value == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(s.violated);

  // Werner value is exactly 3η², violated iff η > 1/sqrt(3)
  for (double eta : {0.0, 0.3, 0.5, 0.577, 0.6, 0.9}) {
    CriterionResult w =
        three_pauli_criterion(record_from_state(werner(2, eta), paulis(), paulis()));
    CHECK(w.value == doctest::Approx(3 * eta * eta).epsilon(1e-10));
    CHECK(w.violated == (3 * eta * eta > 1.0 + 1e-10));
  }

  CriterionResult mixed = three_pauli_criterion(
      record_from_state(DensityMatrix{Matrix(Matrix::Identity(4, 4) / 4.0)}, paulis(), paulis()));
  CHECK(mixed.value == doctest::Approx(0.0));
}

TEST_CASE("chsh-type criterion") {
  std::vector<Matrix> xz = {pauli_x(), pauli_z()};
  for (double eta : {0.0, 0.5, 0.70, 0.72, 1.0}) {
    CorrelationRecord rec = record_from_state(werner(2, eta), xz, xz);
    CriterionResult res = chsh_steering(rec);
    CHECK(res.value == doctest::Approx(2 * std::sqrt(2.0) * eta).epsilon(1e-9));
    CHECK(res.violated == (2 * std::sqrt(2.0) * eta > 2.0 + 1e-10));
    CHECK_FALSE(res.assumption.empty());
  }

  CorrelationRecord uncorrelated;
  uncorrelated.full = RealMatrix::Zero(2, 2);
  CHECK(chsh_steering(uncorrelated).value == doctest::Approx(0.0));
}

TEST_CASE("chsh criterion symmetry under relabelings") {
  CorrelationRecord rec = record_from_state(werner(2, 0.9), {pauli_x(), pauli_z()},
                                            {pauli_x(), pauli_z()});
  CorrelationRecord swapped = rec;
  swapped.full.row(0).swap(swapped.full.row(1));
  CHECK(chsh_steering(rec).value == doctest::Approx(chsh_steering(swapped).value).epsilon(1e-12));
  CorrelationRecord flipped = rec;
  flipped.full.col(1) *= -1.0;
  CHECK(chsh_steering(rec).value == doctest::Approx(chsh_steering(flipped).value).epsilon(1e-12));
}

TEST_CASE("entropic criterion") {
  // singlet with matched Paulis: zero conditional entropy beats the MUB bound ln 2
  CriterionResult s = entropic_criterion(joint_table(singlet(), pauli_x(), pauli_x()),
                                         joint_table(singlet(), pauli_z(), pauli_z()),
                                         pauli_x(), pauli_z());
  CHECK(s.value == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(s.bound == doctest::Approx(std::log(2.0)).epsilon(1e-10));
  CHECK(s.violated);
  CHECK(nats_to_bits(s.bound) == doctest::Approx(1.0));

  // uniform uncorrelated tables: 2 ln 2 on the left, no violation
  DensityMatrix mixed{Matrix(Matrix::Identity(4, 4) / 4.0)};
  CriterionResult u = entropic_criterion(joint_table(mixed, pauli_x(), pauli_x()),
                                         joint_table(mixed, pauli_z(), pauli_z()),
                                         pauli_x(), pauli_z());
  CHECK(u.value == doctest::Approx(2 * std::log(2.0)).epsilon(1e-10));
  CHECK_FALSE(u.violated);
}

TEST_CASE("entropic criterion threshold on the werner family") {
  // regression: locate the flip by sweep; frozen from a fine bisection run
  auto violated_at = [](double eta) {
    DensityMatrix w = werner(2, eta);
    return entropic_criterion(joint_table(w, pauli_x(), pauli_x()),
                              joint_table(w, pauli_z(), pauli_z()), pauli_x(), pauli_z())
        .violated;
  };
  double lo = 0.5, hi = 1.0;
  for (int i = 0; i < 30; ++i) {
    const double mid = (lo + hi) / 2;
    (violated_at(mid) ? hi : lo) = mid;
  }
  CHECK((lo + hi) / 2 == doctest::Approx(0.7799443).epsilon(1e-4));
  CHECK_FALSE(violated_at(0.75));
  CHECK(violated_at(0.80));
}

TEST_CASE("ccnr steering criterion") {
  CriterionResult s = ccnr_steering(singlet(), 2);
  CHECK(s.value == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(s.bound == doctest::Approx(std::sqrt(2.0)));
  CHECK(s.violated);

  Vector e0(2);
  e0 << 1, 0;
  Matrix prod = kron(Matrix(e0 * e0.adjoint()), Matrix(e0 * e0.adjoint()));
  CriterionResult p = ccnr_steering(DensityMatrix{prod}, 2);
  CHECK(p.value == doctest::Approx(1.0).epsilon(1e-10));
  CHECK_FALSE(p.violated);

  // Werner: Σλ = (1+3p)/2, violated iff p > (2√2−1)/3
  const double pc = (2 * std::sqrt(2.0) - 1) / 3;
  for (double pw : {0.3, 0.6, 0.62, 0.9}) {
    CriterionResult w = ccnr_steering(werner(2, pw), 2);
    CHECK(w.value == doctest::Approx((1 + 3 * pw) / 2).epsilon(1e-9));
    CHECK(w.violated == (pw > pc));
  }
}

TEST_CASE("local uncertainty criterion") {
  // singlet: M_k = σ_k⊗I + I⊗σ_k all have zero variance
  std::vector<double> vars;
  for (const Matrix& s : paulis()) {
    Matrix m = kron(s, Matrix::Identity(2, 2)) + kron(Matrix::Identity(2, 2), s);
    vars.push_back(variance(m, singlet().matrix()));
  }
  CriterionResult res = lur_criterion(vars, 2.0);
  CHECK(res.value == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(res.violated);

  // product of maximally mixed states: variances add up to 6
  Matrix mixed = Matrix::Identity(4, 4) / 4.0;
  std::vector<double> vars2;
  for (const Matrix& s : paulis()) {
    Matrix m = kron(s, Matrix::Identity(2, 2)) + kron(Matrix::Identity(2, 2), s);
    vars2.push_back(variance(m, mixed));
  }
  CriterionResult res2 = lur_criterion(vars2, 2.0);
  CHECK(res2.value == doctest::Approx(6.0).epsilon(1e-10));
  CHECK_FALSE(res2.violated);

  CHECK_FALSE(lur_criterion(vars, 0.0).violated);  // C_B = 0 can never be violated
}

TEST_CASE("gaussian steering criterion") {
  GaussianCovariance vacuum;
  vacuum.modes_a = vacuum.modes_b = 1;
  vacuum.v = RealMatrix::Identity(4, 4);
  CHECK_FALSE(gaussian_steering(vacuum, SteeringDirection::a_to_b));
  CHECK_FALSE(gaussian_steering(vacuum, SteeringDirection::b_to_a));

  for (double r : {0.1, 0.5, 1.0}) {
    GaussianCovariance tmsv = two_mode_squeezed_vacuum(r);
    CHECK(gaussian_steering(tmsv, SteeringDirection::a_to_b));
    CHECK(gaussian_steering(tmsv, SteeringDirection::b_to_a));
    // symmetric state: verdicts agree after swapping the parties
    CHECK(gaussian_steering(tmsv.swapped(), SteeringDirection::a_to_b) ==
          gaussian_steering(tmsv, SteeringDirection::b_to_a));
  }

  // r → 0 continuity: barely squeezed states sit at the boundary
  GaussianCovariance tiny = two_mode_squeezed_vacuum(1e-6);
  RealMatrix omega_b = RealMatrix::Zero(4, 4);
  omega_b(2, 3) = 1;
  omega_b(3, 2) = -1;
  Matrix h = tiny.v.cast<Complex>() + Complex(0, 1) * omega_b.cast<Complex>();
  CHECK(min_eigenvalue(h) >= -1e-4);

  GaussianCovariance invalid;
  invalid.modes_a = invalid.modes_b = 1;
  invalid.v = 0.1 * RealMatrix::Identity(4, 4);  // violates the uncertainty relation
  CHECK_THROWS_AS(gaussian_steering(invalid, SteeringDirection::a_to_b), InvariantError);
}

TEST_CASE("criteria never over-detect against the SDP on matching scenarios") {
  std::vector<Matrix> xz = {pauli_x(), pauli_z()};
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    DensityMatrix rho{random_density_matrix(4, 5000 + seed)};
    CorrelationRecord rec3 = record_from_state(rho, paulis(), paulis());

    const bool sdp_xyz = lhs_feasibility(assemblage_from_state(rho, paulis_xyz())).steerable;
    if (!sdp_xyz) {
      CHECK_FALSE(three_pauli_criterion(rec3).violated);
      CHECK_FALSE(linear_criterion({rec3.full(0, 0), rec3.full(1, 1), rec3.full(2, 2)}, paulis())
                      .violated);
    }
    const bool sdp_xz = lhs_feasibility(assemblage_from_state(rho, paulis_xz())).steerable;
    if (!sdp_xz) CHECK_FALSE(chsh_steering(record_from_state(rho, xz, xz)).violated);
  }
}
