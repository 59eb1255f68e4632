#pragma once

#include <optional>
#include <string>
#include <vector>

#include "steerkit/operators.hpp"

namespace steerkit {

struct CriterionResult {
  double value = 0;
  double bound = 0;
  bool violated = false;
  std::string assumption;  // caller-asserted preconditions recorded verbatim
};

/// Dichotomic correlation data: full table ⟨A_x ⊗ B_y⟩, optional marginals and
/// an optional conditional-mean table for the nonlinear criteria.
struct CorrelationRecord {
  RealMatrix full;  // rows: Alice settings, columns: Bob settings
  std::optional<RealVector> alice_marginals;
  std::optional<RealVector> bob_marginals;

  struct Conditional {
    double probability = 0;  // p(a|x)
    double mean = 0;         // ⟨B_x⟩ conditioned on Alice's outcome a
  };
  std::vector<std::vector<Conditional>> conditionals;  // [setting][outcome]

  void validate() const;
};

/// Correlation data of a two-qubit state for matched observable pairs
/// (A_k, B_k); conditionals are filled from Alice's projective outcomes.
CorrelationRecord record_from_state(const DensityMatrix& rho,
                                    const std::vector<Matrix>& alice_observables,
                                    const std::vector<Matrix>& bob_observables);

/// Σ_k |⟨A_k ⊗ B_k⟩| against max over sign vectors of λ_max(Σ_k a_k B_k).
CriterionResult linear_criterion(const std::vector<double>& matched_correlations,
                                 const std::vector<Matrix>& bob_observables);

/// Conditional-variance criterion Σ_k Σ_a p(a|k) ⟨σ_k⟩|_a² ≤ 1 for three
/// Pauli settings.
CriterionResult three_pauli_criterion(const CorrelationRecord& record);

/// Full-correlation CHSH-type inequality for two dichotomic settings per side;
/// exact iff Bob's two measurements are mutually unbiased qubit projective
/// (asserted by the caller, recorded in the result).
CriterionResult chsh_steering(const CorrelationRecord& record);

/// Entropic criterion S(B₁|A₁) + S(B₂|A₂) ≥ −ln Ω_B in nats.
struct JointDistribution {
  RealMatrix p;  // p(a, b), rows Alice, columns Bob
  void validate() const;
};
CriterionResult entropic_criterion(const JointDistribution& joint1,
                                   const JointDistribution& joint2, const Matrix& bob1,
                                   const Matrix& bob2);

double nats_to_bits(double nats);
double bits_to_nats(double bits);

/// Operator-Schmidt (CCNR-type) test: Σ_k λ_k > √d certifies A→B steerability.
CriterionResult ccnr_steering(const DensityMatrix& rho, int d);

/// Local-uncertainty test: unsteerable states obey Σ_k δ²(M_k) ≥ C_B for
/// M_k = A_k⊗I + I⊗B_k and any variance bound C_B valid on Bob's side.
CriterionResult lur_criterion(const std::vector<double>& variances, double c_b);

/// Variance ⟨M²⟩ − ⟨M⟩² of an observable in a state.
double variance(const Matrix& observable, const Matrix& rho);

/// Gaussian covariance matrix in the convention V_ij = ⟨{R_i−r_i, R_j−r_j}⟩,
/// so the vacuum has V = I and validity reads V + iΩ ⪰ 0.
struct GaussianCovariance {
  int modes_a = 0;
  int modes_b = 0;
  RealMatrix v;

  void validate() const;
  GaussianCovariance swapped() const;  // exchange the two parties
};

enum class SteeringDirection { a_to_b, b_to_a };

/// Steerable with Gaussian measurements iff V + i(0 ⊕ Ω_steered) ⊁ 0.
bool gaussian_steering(const GaussianCovariance& gc, SteeringDirection direction);

GaussianCovariance two_mode_squeezed_vacuum(double r);

}  // namespace steerkit
