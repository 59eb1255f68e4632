#include "steerkit/radius.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace steerkit {

namespace {

constexpr double kGolden = 1.6180339887498948482;

std::vector<Vector3> dedupe_axes(std::vector<Vector3> axes) {
  std::vector<Vector3> out;
  for (auto& a : axes) {
    const double n = a.norm();
    if (n < 1e-12) throw InvariantError("direction axes must be nonzero");
    Vector3 u = a / n;
    for (const auto& b : out)
      if (std::min((u - b).norm(), (u + b).norm()) < 1e-9)
        throw InvariantError("duplicate measurement axis");
    out.push_back(u);
  }
  return out;
}

}  // namespace

DirectionSet::DirectionSet(std::vector<Vector3> axes, std::string scheme)
    : axes_(dedupe_axes(std::move(axes))), scheme_(std::move(scheme)) {}

DirectionSet DirectionSet::icosahedral() {
  const double p = kGolden;
  std::vector<Vector3> axes = {{0, 1, p}, {0, -1, p}, {1, p, 0}, {-1, p, 0}, {p, 0, 1}, {p, 0, -1}};
  return DirectionSet(std::move(axes), "icosa6");
}

DirectionSet DirectionSet::dodeca_icosa() {
  const double p = kGolden;
  std::vector<Vector3> axes = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  // one representative per antipodal pair of (±1, ±p, p²) and cyclic shifts
  for (double s1 : {1.0, -1.0})
    for (double s2 : {1.0, -1.0}) {
      axes.push_back({s1, s2 * p, p * p});
      axes.push_back({p * p, s1, s2 * p});
      axes.push_back({s2 * p, p * p, s1});
    }
  return DirectionSet(std::move(axes), "dodecaicosa15");
}

DirectionSet DirectionSet::fibonacci(int n) {
  if (n < 1) throw InvariantError("fibonacci direction sets need n >= 1");
  std::vector<Vector3> axes;
  const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int k = 0; k < n; ++k) {
    const double z = 1.0 - (2.0 * k + 1.0) / (2.0 * n);  // upper hemisphere only
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden_angle * k;
    axes.push_back({r * std::cos(phi), r * std::sin(phi), z});
  }
  return DirectionSet(std::move(axes), "fib:" + std::to_string(n));
}

DirectionSet DirectionSet::from_axes(std::vector<Vector3> axes, std::string scheme) {
  return DirectionSet(std::move(axes), std::move(scheme));
}

MeasurementSet DirectionSet::measurements() const {
  std::vector<Povm> povms;
  for (const auto& a : axes_) povms.push_back(projective_qubit(a));
  return MeasurementSet(std::move(povms));
}

double DirectionSet::shrink_factor() const {
  std::vector<Vector3> pts;
  for (const auto& a : axes_) {
    pts.push_back(a);
    pts.push_back(-a);
  }
  const int n = static_cast<int>(pts.size());
  double inradius = std::numeric_limits<double>::infinity();
  bool found = false;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        Vector3 normal = (pts[j] - pts[i]).cross(pts[k] - pts[i]);
        if (normal.norm() < 1e-12) continue;
        normal.normalize();
        const double offset = normal.dot(pts[i]);
        double lo = 0, hi = 0;
        for (const auto& q : pts) {
          const double v = normal.dot(q) - offset;
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
        // supporting plane: all points on one side within tolerance
        if (lo >= -1e-9 || hi <= 1e-9) {
          inradius = std::min(inradius, std::abs(offset));
          found = true;
        }
      }
  if (!found || inradius == std::numeric_limits<double>::infinity()) return 0.0;
  return inradius < 1e-9 ? 0.0 : inradius;
}

std::pair<DensityMatrix, FilterRecord> canonical_filter_form(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw DimensionError("canonical filter form requires a two-qubit state");
  Matrix rho_b = partial_trace(rho.matrix(), 2, 2, Subsystem::A);
  if (min_eigenvalue(rho_b) < 1e-10) throw InvariantError("Bob's reduced state is singular");

  FilterRecord record;
  record.alice_unitary = Matrix::Identity(2, 2);
  record.bob_filter = pseudo_inverse_sqrt(Matrix(2.0 * rho_b));
  Matrix t = kron(record.alice_unitary, record.bob_filter);
  Matrix filtered = t * rho.matrix() * t.adjoint();
  record.normalization = filtered.trace().real();
  filtered /= record.normalization;
  return {DensityMatrix(filtered), record};
}

namespace {

double tstate_quadrature(const Matrix3& tinv2, int n) {
  // ∫ dS(n) [nᵀ T^{−2} n]^{−2} over the sphere of area 4π
  const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
  double sum = 0;
  for (int k = 0; k < n; ++k) {
    const double z = 1.0 - (2.0 * k + 1.0) / n;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden_angle * k;
    Vector3 u(r * std::cos(phi), r * std::sin(phi), z);
    const double q = u.dot(tinv2 * u);
    sum += 1.0 / (q * q);
  }
  return 4.0 * std::numbers::pi * sum / n;
}

}  // namespace

TstateRadius tstate_critical_radius(const Matrix3& t, int quad_points) {
  if (quad_points < 16) throw InvariantError("quadrature needs at least 16 points");
  TstateRadius out;
  const double det = t.determinant();
  if (std::abs(det) < 1e-12) {
    out.singular = true;
    out.value = std::numeric_limits<double>::infinity();
    return out;
  }
  const Matrix3 tinv = t.inverse();
  const Matrix3 tinv2 = tinv * tinv.transpose();  // symmetric T^{-2} for symmetric T
  auto radius_at = [&](int n) {
    const double nt_inv = tstate_quadrature(tinv2, n);
    return 2.0 * std::numbers::pi * std::abs(det) / nt_inv;
  };
  out.value = radius_at(quad_points);
  out.error_estimate = std::abs(out.value - radius_at(4 * quad_points));
  return out;
}

double radius_upper(const DensityMatrix& rho, const DirectionSet& dirs, double tolerance) {
  if (rho.dim() != 4) throw DimensionError("radius bounds require a two-qubit state");
  Matrix rho_b = partial_trace(rho.matrix(), 2, 2, Subsystem::A);
  if (min_eigenvalue(rho_b) < 1e-10) throw InvariantError("Bob's reduced state is singular");
  return critical_alpha(rho, dirs.measurements(), tolerance).raw_alpha;
}

double radius_lower(const DensityMatrix& rho, const DirectionSet& dirs, double tolerance) {
  const double s = dirs.shrink_factor();
  if (s == 0.0) return 0.0;
  return s * radius_upper(rho, dirs, tolerance);
}

RadiusBracket radius_bracket(const DensityMatrix& rho, const DirectionSet& dirs,
                             double tolerance) {
  RadiusBracket bracket;
  bracket.scheme = dirs.scheme();
  bracket.tolerance = tolerance;
  bracket.upper = radius_upper(rho, dirs, tolerance);
  const double s = dirs.shrink_factor();
  bracket.degenerate_hull = s == 0.0;
  bracket.lower = std::min(s * bracket.upper, bracket.upper);
  return bracket;
}

}  // namespace steerkit
