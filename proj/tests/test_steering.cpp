#include <cmath>

#include "doctest.h"
#include "steerkit/states.hpp"
#include "steerkit/steering.hpp"
#include "support/lp_grid_oracle.hpp"
#include "support/random_quantum.hpp"

using namespace steerkit;
using steerkit::testing::random_density_matrix;
using steerkit::testing::random_projective_qubit_set;

namespace {

Assemblage random_unsteerable_assemblage(int m, int q, int d, std::uint64_t seed) {
  // members built from an explicit LHS model are unsteerable by construction
  auto strategies = enumerate_strategies(m, q);
  std::vector<Matrix> hidden;
  double total = 0;
  for (long l = 0; l < strategies.count(); ++l) {
    Matrix s = random_density_matrix(d, seed * 1000 + l);
    hidden.push_back(s);
    total += s.trace().real();
  }
  for (auto& s : hidden) s /= total;
  std::vector<std::vector<Matrix>> members(m, std::vector<Matrix>(q, Matrix::Zero(d, d)));
  for (long l = 0; l < strategies.count(); ++l)
    for (int x = 0; x < m; ++x) members[x][strategies.outcome(l, x)] += hidden[l];
  return Assemblage(std::move(members));
}

Assemblage singlet_xz() { return assemblage_from_state(singlet(), paulis_xz()); }

}  // namespace

TEST_CASE("deterministic strategy enumeration") {
  auto s22 = enumerate_strategies(2, 2);
  CHECK(s22.count() == 4);
  // strategy 0 = (+,+): it responds with the first outcome on both settings
  CHECK(s22.responds(0, 0, 0));
  CHECK(s22.responds(0, 1, 0));
  // lexicographic order: strategy 1 = (+,-)
  CHECK(s22.outcome(1, 0) == 0);
  CHECK(s22.outcome(1, 1) == 1);

  auto s13 = enumerate_strategies(1, 3);
  CHECK(s13.count() == 3);
  for (int a = 0; a < 3; ++a) CHECK(s13.outcome(a, 0) == a);

  auto s32 = enumerate_strategies(3, 2);
  CHECK(s32.count() == 8);
  for (int x = 0; x < 3; ++x) {
    int zeros = 0;
    for (long l = 0; l < 8; ++l) zeros += s32.outcome(l, x) == 0;
    CHECK(zeros == 4);
  }

  CHECK_THROWS_AS(enumerate_strategies(21, 2), InvariantError);  // 2^21 > 1e6
}

TEST_CASE("singlet with two Paulis is steerable with a certified dual") {
  SteerVerdict v = lhs_feasibility(singlet_xz());
  CHECK(v.steerable);
  CHECK(v.verdict == Steerability::steerable);
  CHECK(v.optimum < -1e-3);
  REQUIRE(v.inequality.has_value());
  const double value = v.inequality->evaluate(singlet_xz());
  CHECK(value < 0);
  CHECK(std::abs(value - v.optimum) <= 1e-6);  // strong duality
  CHECK(v.inequality->constraint_floor(enumerate_strategies(2, 2)) >= -1e-8);
  CHECK(v.diagnostics.duality_error <= 1e-6);
}

TEST_CASE("product assemblages are unsteerable with a reproducing model") {
  DensityMatrix rho{kron(random_density_matrix(2, 3), random_density_matrix(2, 4))};
  Assemblage a = assemblage_from_state(rho, paulis_xz());
  SteerVerdict v = lhs_feasibility(a);
  CHECK_FALSE(v.steerable);
  CHECK(v.verdict == Steerability::unsteerable);
  REQUIRE(v.model.has_value());
  CHECK(v.model->reproduction_error(a) <= 1e-7);
  for (const auto& s : v.model->hidden_states) CHECK(min_eigenvalue(s) >= -1e-8);
}

TEST_CASE("werner thresholds under two and three Pauli measurements") {
  // three Paulis detect steering exactly above 1/sqrt(3)
  CHECK_FALSE(lhs_feasibility(assemblage_from_state(werner(2, 0.5), paulis_xyz())).steerable);
  CHECK(lhs_feasibility(assemblage_from_state(werner(2, 0.6), paulis_xyz())).steerable);
  // two Paulis detect steering exactly above 1/sqrt(2)
  CHECK_FALSE(lhs_feasibility(assemblage_from_state(werner(2, 0.70), paulis_xz())).steerable);
  CHECK(lhs_feasibility(assemblage_from_state(werner(2, 0.72), paulis_xz())).steerable);
}

TEST_CASE("exact thresholds sit on the boundary band") {
  SteerVerdict v =
      lhs_feasibility(assemblage_from_state(werner(2, 1.0 / std::sqrt(2.0)), paulis_xz()));
  CHECK(v.verdict == Steerability::boundary);
}

TEST_CASE("steering weight of unsteerable assemblages vanishes") {
  WeightResult w = steering_weight(random_unsteerable_assemblage(2, 2, 2, 11));
  CHECK(w.weight <= 1e-6);
}

TEST_CASE("steering weight of the singlet with two Paulis is one") {
  WeightResult w = steering_weight(singlet_xz());
  CHECK(w.weight == doctest::Approx(1.0).epsilon(1e-6));
  REQUIRE(w.steerable_part.has_value());
}

TEST_CASE("werner steering weight is monotone and vanishes below 1/sqrt(2)") {
  double last = 0;
  for (double eta : {0.5, 0.7, 0.8, 0.9, 1.0}) {
    WeightResult w = steering_weight(assemblage_from_state(werner(2, eta), paulis_xz()));
    CHECK(w.weight >= last - 1e-7);
    if (eta <= 1.0 / std::sqrt(2.0)) CHECK(w.weight <= 1e-6);
    last = w.weight;
  }
}

TEST_CASE("steering robustness basics and remixing") {
  CHECK(steering_robustness(random_unsteerable_assemblage(2, 2, 2, 21)).robustness <= 1e-6);

  Assemblage a = singlet_xz();
  RobustnessResult r = steering_robustness(a);
  CHECK(r.robustness > 1e-3);
  REQUIRE(r.noise.has_value());
  // mixing the assemblage with its optimal noise at ratio t/(1+t) kills steerability
  Assemblage mixed = a.mixed_with(*r.noise, 1.0 / (1.0 + r.robustness));
  CHECK(steering_robustness(mixed).robustness <= 1e-6);
}

TEST_CASE("weight, robustness and feasibility verdicts agree") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    DensityMatrix rho{random_density_matrix(4, seed)};
    Assemblage a = assemblage_from_state(rho, random_projective_qubit_set(2, seed));
    const bool steerable = lhs_feasibility(a).steerable;
    CHECK(steerable == (steering_weight(a).weight > 1e-7));
    CHECK(steerable == (steering_robustness(a).robustness > 1e-7));
  }
}

TEST_CASE("weight and robustness are convex under assemblage mixing") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Assemblage a1 = assemblage_from_state(DensityMatrix{random_density_matrix(4, seed)},
                                          paulis_xz());
    Assemblage a2 = assemblage_from_state(DensityMatrix{random_density_matrix(4, seed + 50)},
                                          paulis_xz());
    const double p = 0.3;
    Assemblage mix = a1.mixed_with(a2, p);
    CHECK(steering_weight(mix).weight <=
          p * steering_weight(a1).weight + (1 - p) * steering_weight(a2).weight + 1e-6);
    CHECK(steering_robustness(mix).robustness <=
          p * steering_robustness(a1).robustness +
              (1 - p) * steering_robustness(a2).robustness + 1e-6);
  }
}

TEST_CASE("relabeling outcomes and settings leaves the quantities invariant") {
  Assemblage a = assemblage_from_state(werner(2, 0.85), paulis_xz());
  Assemblage flipped = a.relabel_outcomes(0, {1, 0}).permute_settings({1, 0});
  CHECK(lhs_feasibility(a).optimum ==
        doctest::Approx(lhs_feasibility(flipped).optimum).epsilon(1e-8));
  CHECK(steering_weight(a).weight ==
        doctest::Approx(steering_weight(flipped).weight).epsilon(1e-8));
  CHECK(steering_robustness(a).robustness ==
        doctest::Approx(steering_robustness(flipped).robustness).epsilon(1e-8));
}

TEST_CASE("dual inequality value matches the primal and stays valid") {
  Assemblage a = singlet_xz();
  SteeringInequality f = dual_inequality(a);
  const double mu = lhs_feasibility(a).optimum;
  CHECK(std::abs(f.evaluate(a) - mu) <= 1e-6);

  // a valid inequality can never go negative on unsteerable assemblages
  for (std::uint64_t seed = 1; seed <= 50; ++seed)
    CHECK(f.evaluate(random_unsteerable_assemblage(2, 2, 2, seed)) >= -1e-8);

  SteeringInequality g = dual_inequality(random_unsteerable_assemblage(2, 2, 2, 77));
  CHECK(g.evaluate(random_unsteerable_assemblage(2, 2, 2, 77)) >= -1e-8);
}

TEST_CASE("critical alpha of the singlet under Pauli sets") {
  CriticalAlphaResult xz = critical_alpha(singlet(), paulis_xz());
  CHECK(xz.alpha == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(2e-5));
  CriticalAlphaResult xyz = critical_alpha(singlet(), paulis_xyz());
  CHECK(xyz.alpha == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(2e-5));

  CriticalAlphaResult bis = critical_alpha_bisect(singlet(), paulis_xz(), 1e-5);
  CHECK(bis.alpha == doctest::Approx(xz.alpha).epsilon(1e-4));
}

TEST_CASE("critical alpha clips separable states at one") {
  DensityMatrix rho{kron(random_density_matrix(2, 5), random_density_matrix(2, 6))};
  CriticalAlphaResult r = critical_alpha(rho, paulis_xz());
  CHECK(r.alpha == doctest::Approx(1.0));
  CHECK(r.raw_alpha >= 1.0);
  CHECK(critical_alpha_bisect(rho, paulis_xz()).alpha == doctest::Approx(1.0));
}

TEST_CASE("critical alpha is invariant under Bob filtering with Alice rotation") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    DensityMatrix rho{random_density_matrix(4, 400 + seed)};
    MeasurementSet ms = random_projective_qubit_set(2, 300 + seed);
    const double base = critical_alpha(rho, ms).raw_alpha;

    Matrix ua = random_unitary(2, 500 + seed);
    Matrix fb = Matrix::Identity(2, 2) + 0.4 * random_density_matrix(2, 600 + seed);
    Matrix t = kron(ua, fb);
    Matrix filtered = t * rho.matrix() * t.adjoint();
    filtered /= filtered.trace().real();

    std::vector<Povm> rotated;
    for (int x = 0; x < ms.settings(); ++x) {
      std::vector<Matrix> effects;
      for (int a = 0; a < ms.outcomes(); ++a)
        effects.push_back(ua * ms.effect(x, a) * ua.adjoint());
      rotated.emplace_back(std::move(effects));
    }
    const double transformed =
        critical_alpha(DensityMatrix{filtered}, MeasurementSet(std::move(rotated))).raw_alpha;
    CHECK(transformed == doctest::Approx(base).epsilon(1e-6));
  }
}

TEST_CASE("LP-grid oracle pins the singlet weight and robustness") {
  // smaller grid here; the acceptance suite runs the 1e4-point grid
  auto sw = steerkit::testing::lp_grid_steering_weight(singlet_xz(), 512);
  CHECK(sw.value == doctest::Approx(1.0).epsilon(1e-4));
  auto sr = steerkit::testing::lp_grid_steering_robustness(singlet_xz(), 512);
  CHECK(sr.value == doctest::Approx(steering_robustness(singlet_xz()).robustness).epsilon(1e-3));
}
