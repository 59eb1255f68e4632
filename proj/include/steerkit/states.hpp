#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "steerkit/operators.hpp"

namespace steerkit {

/// Werner state of dimension d×d, product at η=0, maximally anticorrelated at η=1.
DensityMatrix werner(int d, double eta);

/// Isotropic state of dimension d×d, product at η=0, |ψ₊⟩⟨ψ₊| at η=1.
DensityMatrix isotropic(int d, double eta);

/// Two-qubit family α|ψ_θ⟩⟨ψ_θ| + (1−α)·I/2 ⊗ ρ_B with |ψ_θ⟩ = cosθ|00⟩ + sinθ|11⟩;
/// steerable A→B iff α > 1/2, admits a B→A model in a known parameter region.
DensityMatrix one_way_state(double alpha, double theta);

enum class StateFamily { werner, isotropic };
enum class MeasurementClass { projective, dichotomic, povm_barrett };

struct ThresholdQuery {
  StateFamily family;
  MeasurementClass measurement_class;
  int d = 2;
};

/// Closed-form unsteerability threshold η*: the family member is unsteerable
/// for η ≤ η* under the queried class of Alice measurements. The dichotomic
/// forms are evaluated for any d ≥ 2; they are conjectural for very large d.
double threshold(const ThresholdQuery& query);

/// Ensemble of hidden pure states with weights, used to discretize an LHS model.
class LhsEnsembleGrid {
 public:
  /// Deterministic Fibonacci lattice on the Bloch sphere (qubits only).
  static LhsEnsembleGrid fibonacci_sphere(int n);
  /// Haar-distributed pure states in dimension d.
  static LhsEnsembleGrid haar_monte_carlo(int d, int n, std::uint64_t seed);

  int size() const { return static_cast<int>(points_.size()); }
  int dim() const { return static_cast<int>(points_.front().size()); }
  const Vector& point(int i) const { return points_.at(i); }
  double weight(int i) const { return weights_.at(i); }
  const std::string& scheme() const { return scheme_; }

 private:
  LhsEnsembleGrid(std::vector<Vector> points, std::vector<double> weights, std::string scheme);
  std::vector<Vector> points_;
  std::vector<double> weights_;
  std::string scheme_;
};

enum class LhsModelKind { werner_projective, isotropic_projective, barrett_werner, barrett_isotropic };

struct LhsSimulation {
  Assemblage assemblage;
  double threshold = 0;         // matching closed-form η*
  bool above_threshold = false; // η exceeded η*; reconstruction is not expected to converge
};

/// Reconstructs the conditional-state assemblage of the chosen benchmark family
/// from an explicit hidden-state ensemble and response function. For η ≤ η* the
/// result converges to assemblage_from_state as the grid grows. The Barrett
/// models accept arbitrary POVMs through a rank-1 eigendecomposition of each
/// effect; the projective models require complete rank-1 projective settings.
LhsSimulation lhs_simulate(LhsModelKind model, int d, double eta,
                           const MeasurementSet& measurements, const LhsEnsembleGrid& grid);

}  // namespace steerkit
