#pragma once

#include <string>
#include <vector>

#include "steerkit/steering.hpp"

namespace steerkit {

/// Finite set of measurement axes on the Bloch sphere (antipodes implied).
class DirectionSet {
 public:
  /// The 6 axes of the icosahedron.
  static DirectionSet icosahedral();
  /// The 15 axes of the icosidodecahedron (icosahedron edge midpoints).
  static DirectionSet dodeca_icosa();
  /// Fibonacci-lattice axes (n points on the upper hemisphere).
  static DirectionSet fibonacci(int n);
  static DirectionSet from_axes(std::vector<Vector3> axes, std::string scheme = "custom");

  int size() const { return static_cast<int>(axes_.size()); }
  const Vector3& axis(int i) const { return axes_.at(i); }
  const std::string& scheme() const { return scheme_; }

  /// Projective qubit measurements along the axes.
  MeasurementSet measurements() const;

  /// Inradius of the convex hull of {±n_i}: the depolarizing factor that maps
  /// an arbitrary projective qubit measurement into the hull of this set.
  /// Zero when the axes are coplanar.
  double shrink_factor() const;

 private:
  DirectionSet(std::vector<Vector3> axes, std::string scheme);
  std::vector<Vector3> axes_;
  std::string scheme_;
};

/// Local form with ρ̃_B = I/2: ρ̃ = (U_A ⊗ F_B) ρ (U_A ⊗ F_B)†/N,
/// F_B = (2ρ_B)^{−1/2}; such transformations do not change steerability.
struct FilterRecord {
  Matrix alice_unitary;
  Matrix bob_filter;
  double normalization = 1;
};
std::pair<DensityMatrix, FilterRecord> canonical_filter_form(const DensityMatrix& rho);

/// Closed-form critical radius of a two-qubit state with vanishing local Bloch
/// vectors: R = 2π·N_T·|det T| with N_T^{−1} = ∫ dS(n) [nᵀ T^{−2} n]^{−2},
/// evaluated on a Fibonacci quadrature. Singular T has no finite closed form
/// and is flagged instead of silently returning a number.
struct TstateRadius {
  double value = 0;
  bool singular = false;      // |det T| ≈ 0: formula inapplicable, value = +inf
  double error_estimate = 0;  // |R_N − R_{4N}| quadrature comparison
};
TstateRadius tstate_critical_radius(const Matrix3& t, int quad_points = 10000);

/// Rigorous two-sided bracket of the critical radius from a finite axis set:
/// the finite-set critical α from above, its shrink-scaled value from below.
struct RadiusBracket {
  double lower = 0;
  double upper = 0;
  std::string scheme;
  double tolerance = 0;
  bool degenerate_hull = false;  // axes coplanar: the lower bound collapses to 0
  double width() const { return upper - lower; }
};

double radius_upper(const DensityMatrix& rho, const DirectionSet& dirs,
                    double tolerance = tol::bisection);
double radius_lower(const DensityMatrix& rho, const DirectionSet& dirs,
                    double tolerance = tol::bisection);
RadiusBracket radius_bracket(const DensityMatrix& rho, const DirectionSet& dirs,
                             double tolerance = tol::bisection);

}  // namespace steerkit
