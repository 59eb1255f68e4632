#pragma once

#include <optional>

#include "steerkit/steering.hpp"

namespace steerkit {

/// Parent POVM whose deterministic post-processing reproduces a measurement set:
/// A_{a|x} = Σ_λ D(a|x,λ) G_λ.
struct JointObservable {
  DeterministicStrategySet strategies;
  std::vector<Matrix> effects;  // G_λ

  std::vector<std::vector<Matrix>> reproduce() const;
  double reproduction_error(const MeasurementSet& ms) const;
};

/// Dual certificate of incompatibility; same structure as a steering inequality
/// acting on the measurement effects instead of conditional states.
using IncompatibilityWitness = SteeringInequality;

struct JmVerdict {
  bool jointly_measurable = false;
  double optimum = 0;  // μ* of the max-μ program; negative iff incompatible
  std::optional<JointObservable> joint;          // carried when μ* ≥ −tol
  std::optional<IncompatibilityWitness> witness; // always carried
  SolverDiagnostics diagnostics;
};

/// Existence SDP for a joint observable with deterministic post-processing
/// (probabilistic post-processings are convex mixtures of deterministic ones,
/// so nothing is lost).
JmVerdict is_jointly_measurable(const MeasurementSet& ms, double tolerance = tol::verdict);

/// Generalized incompatibility robustness: minimal t with POVM noise making
/// (A + tN)/(1+t) jointly measurable; 0 iff the set is jointly measurable.
struct IncompatibilityRobustnessResult {
  double robustness = 0;
  SolverDiagnostics diagnostics;
};
IncompatibilityRobustnessResult incompatibility_robustness(const MeasurementSet& ms);

/// Pair of dichotomic qubit measurements with effects ½((1±α_x)·I ± a_x·σ).
struct QubitDichotomicPair {
  double bias1 = 0;
  double bias2 = 0;
  Vector3 a1{0, 0, 0};
  Vector3 a2{0, 0, 0};

  MeasurementSet to_measurements() const;
  /// Noisy orthogonal pair μσ_x, μσ_z.
  static QubitDichotomicPair noisy_orthogonal(double mu);
};

/// Closed-form joint-measurability decision; unbiased branch when both biases
/// vanish, the biased closed form otherwise.
bool qubit_pair_criterion(const QubitDichotomicPair& pair);

/// Abstract POVMs B̃_{a|x} = ρ_B^{−1/2} ρ_{a|x} ρ_B^{−1/2} on the support of
/// ρ_B; the assemblage is steerable iff these are incompatible.
MeasurementSet normalize_assemblage(const Assemblage& asm_);

/// Heisenberg-picture channel image of Alice's POVMs:
/// B̃_{a|x} = ρ_B^{−1/2} Tr_A[(A_{a|x} ⊗ I) ρ]^T ρ_B^{−1/2}, the transpose taken
/// in the eigenbasis of ρ_B (support-restricted when ρ_B is singular).
MeasurementSet heisenberg_povm_map(const DensityMatrix& rho_ab, const MeasurementSet& alice);

}  // namespace steerkit
