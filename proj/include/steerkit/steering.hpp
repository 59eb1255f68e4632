#pragma once

#include <optional>
#include <string>
#include <vector>

#include "steerkit/conic.hpp"
#include "steerkit/operators.hpp"

namespace steerkit {

/// Complete enumeration of the q^m deterministic response strategies; the
/// string λ assigns one outcome per setting, D(a|x,λ) = δ_{a,λ(x)}.
class DeterministicStrategySet {
 public:
  static DeterministicStrategySet enumerate(int settings, int outcomes);

  int settings() const { return settings_; }
  int outcomes() const { return outcomes_; }
  long count() const { return count_; }
  /// λ(x): strategies ordered lexicographically, x = 0 most significant.
  int outcome(long lambda, int x) const;
  bool responds(int a, int x, long lambda) const { return outcome(lambda, x) == a; }

 private:
  DeterministicStrategySet(int m, int q, long count)
      : settings_(m), outcomes_(q), count_(count) {}
  int settings_;
  int outcomes_;
  long count_;
};

DeterministicStrategySet enumerate_strategies(int settings, int outcomes);

/// Hidden-state side of an unsteerable assemblage: Σ_λ D(a|x,λ) σ_λ = ρ_{a|x}.
struct LhsModel {
  DeterministicStrategySet strategies;
  std::vector<Matrix> hidden_states;  // σ_λ, PSD and subnormalized

  std::vector<std::vector<Matrix>> reproduce() const;
  /// max over (x,a) of ‖Σ_λ D σ_λ − ρ_{a|x}‖.
  double reproduction_error(const Assemblage& asm_) const;
};

/// Dual certificate {F_{a|x}} with Σ_{a,x} F_{a|x} D(a|x,λ) ⪰ 0 for all λ and
/// Tr Σ_{a,x,λ} F_{a|x} D(a|x,λ) = 1; a negative value on an assemblage
/// certifies steering.
struct SteeringInequality {
  std::vector<std::vector<Matrix>> coefficients;  // F[x][a]
  double normalization = 1.0;

  double evaluate(const Assemblage& asm_) const;
  /// Smallest eigenvalue over λ of Σ F D (≥ −1e-8 for a valid certificate).
  double constraint_floor(const DeterministicStrategySet& strategies) const;
};

struct SolverDiagnostics {
  std::string backend;
  conic::Status status = conic::Status::numerical_failure;
  int iterations = 0;
  double gap = 0;
  double primal_residual = 0;
  double dual_residual = 0;
  double duality_error = 0;  // |primal optimum − dual certificate value|
  double tolerance = tol::verdict;
};

enum class Steerability { steerable, unsteerable, boundary };

struct SteerVerdict {
  Steerability verdict = Steerability::boundary;
  bool steerable = false;
  double optimum = 0;  // μ*: negative iff steerable
  std::optional<LhsModel> model;               // carried when μ* ≥ −tol
  std::optional<SteeringInequality> inequality;  // always carried
  SolverDiagnostics diagnostics;
};

/// Decides steerability of a finite assemblage by the max-μ feasibility SDP.
SteerVerdict lhs_feasibility(const Assemblage& asm_, double tolerance = tol::verdict);

/// Minimal steerable fraction in a convex split of the assemblage.
struct WeightResult {
  double weight = 0;  // ∈ [0, 1], 0 iff unsteerable
  LhsModel lhs_part;
  std::optional<Assemblage> steerable_part;  // present when weight > tolerance
  SolverDiagnostics diagnostics;
};
WeightResult steering_weight(const Assemblage& asm_, double tolerance = tol::verdict);

/// Minimal mixing ratio t with arbitrary noise rendering the assemblage unsteerable.
struct RobustnessResult {
  double robustness = 0;  // ≥ 0, 0 iff unsteerable
  std::optional<Assemblage> noise;  // optimal noise assemblage when t > tolerance
  SolverDiagnostics diagnostics;
};
RobustnessResult steering_robustness(const Assemblage& asm_, double tolerance = tol::verdict);

/// The optimal dual steering inequality of the feasibility SDP.
SteeringInequality dual_inequality(const Assemblage& asm_);

/// Largest α keeping assemblage_from_state(αρ + (1−α)(I⊗ρ_B)/d_A, ms) unsteerable.
struct CriticalAlphaResult {
  double alpha = 0;      // clipped to [0, 1]
  double raw_alpha = 0;  // unclipped optimum (may exceed 1; capped at 16)
  bool capped = false;
  SolverDiagnostics diagnostics;
};
CriticalAlphaResult critical_alpha(const DensityMatrix& rho_ab, const MeasurementSet& alice,
                                   double tolerance = tol::bisection);
/// Same threshold located by bisection over α ∈ [0, 1].
CriticalAlphaResult critical_alpha_bisect(const DensityMatrix& rho_ab,
                                          const MeasurementSet& alice,
                                          double tolerance = tol::bisection);

}  // namespace steerkit
