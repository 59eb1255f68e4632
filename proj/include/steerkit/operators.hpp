#pragma once

#include <optional>
#include <vector>

#include "steerkit/core.hpp"
#include "steerkit/linalg.hpp"

namespace steerkit {

/// Dense Hermitian operator. Input is symmetrized to (M+M†)/2 on construction
/// and rejected if the anti-Hermitian residue exceeds tol::hermitian_residue.
class HermitianOperator {
 public:
  explicit HermitianOperator(const Matrix& m);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& matrix() const { return entries_; }
  double trace() const { return entries_.trace().real(); }

 private:
  Matrix entries_;
};

/// Positive semidefinite operator with trace in (0, 1]. Conditional states in
/// an assemblage are subnormalized and may have trace 0 (padded outcomes).
class DensityMatrix {
 public:
  /// Normalized or subnormalized state; trace must be positive.
  explicit DensityMatrix(const Matrix& m);
  /// Subnormalized conditional state; trace 0 allowed.
  static DensityMatrix subnormalized(const Matrix& m);

  int dim() const { return base_.dim(); }
  const Matrix& matrix() const { return base_.matrix(); }
  double trace() const { return trace_; }

 private:
  DensityMatrix(HermitianOperator base, double trace) : base_(std::move(base)), trace_(trace) {}
  HermitianOperator base_;
  double trace_;
};

/// Positive operator-valued measure: PSD effects summing to the identity.
class Povm {
 public:
  explicit Povm(std::vector<Matrix> effects);

  int dim() const { return static_cast<int>(effects_.front().rows()); }
  int outcomes() const { return static_cast<int>(effects_.size()); }
  const Matrix& effect(int a) const { return effects_.at(a); }
  const std::vector<Matrix>& effects() const { return effects_; }

  /// Appends zero effects until the POVM has q outcomes.
  void pad_to(int q);

 private:
  std::vector<Matrix> effects_;
};

/// Family of POVMs indexed by the measurement setting. All POVMs share one
/// dimension and, after zero-effect padding, one outcome count.
class MeasurementSet {
 public:
  explicit MeasurementSet(std::vector<Povm> povms);

  int dim() const { return povms_.front().dim(); }
  int settings() const { return static_cast<int>(povms_.size()); }
  int outcomes() const { return povms_.front().outcomes(); }
  const Povm& povm(int x) const { return povms_.at(x); }
  const Matrix& effect(int x, int a) const { return povms_.at(x).effect(a); }

 private:
  std::vector<Povm> povms_;
};

/// Projective qubit measurement along Bloch direction n: effects (I ± n·σ)/2.
Povm projective_qubit(const Vector3& axis);
/// Projective measurement in the eigenbasis of a Hermitian observable.
Povm projective_from_observable(const Matrix& observable);
/// {σ_x, σ_z} and {σ_x, σ_y, σ_z} measurement sets.
MeasurementSet paulis_xz();
MeasurementSet paulis_xyz();

/// Family {ρ_{a|x}} of subnormalized conditional states with a common
/// reduced state (the no-signalling condition Σ_a ρ_{a|x} = ρ_B).
class Assemblage {
 public:
  Assemblage(std::vector<std::vector<Matrix>> members);

  int dim() const { return static_cast<int>(reduced_.rows()); }
  int settings() const { return static_cast<int>(members_.size()); }
  int outcomes() const { return static_cast<int>(members_.front().size()); }
  const Matrix& member(int x, int a) const { return members_.at(x).at(a); }
  const Matrix& reduced() const { return reduced_; }

  /// Convex mixture p·this + (1−p)·other (shapes must match).
  Assemblage mixed_with(const Assemblage& other, double p) const;
  /// Same members with outcome labels permuted per setting / settings permuted.
  Assemblage relabel_outcomes(int x, const std::vector<int>& perm) const;
  Assemblage permute_settings(const std::vector<int>& perm) const;

 private:
  std::vector<std::vector<Matrix>> members_;
  Matrix reduced_;
};

/// Bloch-Fano form of a two-qubit state:
/// ρ = ¼(I⊗I + a·σ⊗I + I⊗b·σ + Σ_ij T_ij σ_i⊗σ_j).
struct BlochDecomposition {
  Vector3 a;
  Vector3 b;
  Matrix3 T;
};

BlochDecomposition bloch_decompose(const DensityMatrix& rho);
Matrix bloch_reconstruct(const BlochDecomposition& bd);

/// Smallest eigenvalue of ρ^{T_B}; negative values certify entanglement.
double min_eig_partial_transpose(const DensityMatrix& rho, int da, int db);

/// Nonincreasing operator Schmidt coefficients of a d×d bipartite operator;
/// Σ λ_k² = Tr(ρ²).
std::vector<double> operator_schmidt_coefficients(const DensityMatrix& rho, int d);

/// Conditional-state assemblage ρ_{a|x} = Tr_A[(E_{a|x} ⊗ I) ρ_AB].
Assemblage assemblage_from_state(const DensityMatrix& rho_ab, const MeasurementSet& alice);

/// |ψ⁻⟩⟨ψ⁻| as a density matrix.
DensityMatrix singlet();

}  // namespace steerkit
