#include "steerkit/states.hpp"

#include <cmath>
#include <numbers>

namespace steerkit {

namespace {

Matrix flip_operator(int d) {
  Matrix v = Matrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) v(i * d + j, j * d + i) = 1.0;
  return v;
}

void check_mixing(double eta) {
  if (eta < 0.0 || eta > 1.0) throw InvariantError("mixing parameter must lie in [0, 1]");
}

double harmonic(int d) {
  double h = 0;
  for (int n = 1; n <= d; ++n) h += 1.0 / n;
  return h;
}

}  // namespace

DensityMatrix werner(int d, double eta) {
  if (d < 2) throw InvariantError("Werner states need d >= 2");
  check_mixing(eta);
  const double dd = d;
  Matrix w = ((dd - 1 + eta) / (dd - 1)) * Matrix::Identity(d * d, d * d) / (dd * dd) -
             (eta / (dd - 1)) * flip_operator(d) / dd;
  return DensityMatrix(w);
}

DensityMatrix isotropic(int d, double eta) {
  if (d < 2) throw InvariantError("isotropic states need d >= 2");
  check_mixing(eta);
  Vector psi = Vector::Zero(d * d);
  for (int i = 0; i < d; ++i) psi(i * d + i) = 1.0 / std::sqrt(double(d));
  Matrix s = (1 - eta) * Matrix::Identity(d * d, d * d) / double(d * d) +
             eta * (psi * psi.adjoint());
  return DensityMatrix(s);
}

DensityMatrix one_way_state(double alpha, double theta) {
  if (alpha < 0.0 || alpha > 1.0) throw InvariantError("alpha must lie in [0, 1]");
  if (theta <= 0.0 || theta > std::numbers::pi / 4)
    throw InvariantError("theta must lie in (0, pi/4]");
  Vector psi = Vector::Zero(4);
  psi(0) = std::cos(theta);
  psi(3) = std::sin(theta);
  Matrix pure = psi * psi.adjoint();
  Matrix rho_b = partial_trace(pure, 2, 2, Subsystem::A);
  Matrix rho = alpha * pure + (1 - alpha) * kron(Matrix(Matrix::Identity(2, 2) / 2.0), rho_b);
  return DensityMatrix(rho);
}

double threshold(const ThresholdQuery& q) {
  if (q.d < 2) throw InvariantError("threshold queries need d >= 2");
  const double d = q.d;
  switch (q.family) {
    case StateFamily::werner:
      switch (q.measurement_class) {
        case MeasurementClass::projective:
          return 1.0 - 1.0 / d;
        case MeasurementClass::dichotomic:
          return (d - 1) * (d - 1) * (1.0 - std::pow(1.0 - 1.0 / d, 1.0 / (d - 1)));
        case MeasurementClass::povm_barrett:
          return (1.0 + std::pow(d - 1, d + 1) * std::pow(d, -d)) / (d + 1);
      }
      break;
    case StateFamily::isotropic:
      switch (q.measurement_class) {
        case MeasurementClass::projective:
          return (harmonic(q.d) - 1.0) / (d - 1);
        case MeasurementClass::dichotomic:
          return 1.0 - std::pow(d, -1.0 / (d - 1));
        case MeasurementClass::povm_barrett:
          return (3 * d - 1) / (d + 1) * std::pow(d - 1, d - 1) * std::pow(d, -d);
      }
      break;
  }
  throw InvariantError("unsupported threshold query");
}

LhsEnsembleGrid::LhsEnsembleGrid(std::vector<Vector> points, std::vector<double> weights,
                                 std::string scheme)
    : points_(std::move(points)), weights_(std::move(weights)), scheme_(std::move(scheme)) {
  if (points_.empty() || points_.size() != weights_.size())
    throw InvariantError("ensemble grid needs matching nonempty points and weights");
  double total = 0;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (weights_[i] < 0) throw InvariantError("ensemble weights must be nonnegative");
    if (std::abs(points_[i].norm() - 1.0) > 1e-12)
      throw InvariantError("ensemble points must be normalized");
    total += weights_[i];
  }
  if (std::abs(total - 1.0) > 1e-12) throw InvariantError("ensemble weights must sum to one");
}

LhsEnsembleGrid LhsEnsembleGrid::fibonacci_sphere(int n) {
  if (n < 1) throw InvariantError("grid size must be positive");
  std::vector<Vector> points;
  std::vector<double> weights(n, 0.0);
  points.reserve(n);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int k = 0; k < n; ++k) {
    const double z = 1.0 - (2.0 * k + 1.0) / n;
    const double phi = golden * k;
    const double half = std::acos(z) / 2.0;
    Vector v(2);
    v(0) = std::cos(half);
    v(1) = std::sin(half) * Complex(std::cos(phi), std::sin(phi));
    points.push_back(v);
  }
  // exact uniform weights; renormalize to kill rounding in the sum
  double w = 1.0 / n;
  for (auto& x : weights) x = w;
  double total = 0;
  for (double x : weights) total += x;
  for (auto& x : weights) x /= total;
  return LhsEnsembleGrid(std::move(points), std::move(weights),
                         "fibonacci:" + std::to_string(n));
}

LhsEnsembleGrid LhsEnsembleGrid::haar_monte_carlo(int d, int n, std::uint64_t seed) {
  if (n < 1 || d < 2) throw InvariantError("grid needs d >= 2 and positive size");
  std::vector<Vector> points;
  std::vector<double> weights(n, 1.0 / n);
  points.reserve(n);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  for (int k = 0; k < n; ++k) {
    Vector v(d);
    for (int i = 0; i < d; ++i) v(i) = Complex(g(rng), g(rng));
    v.normalize();
    points.push_back(v);
  }
  double total = 0;
  for (double x : weights) total += x;
  for (auto& x : weights) x /= total;
  return LhsEnsembleGrid(std::move(points), std::move(weights),
                         "haar:" + std::to_string(d) + ":" + std::to_string(n) + ":" +
                             std::to_string(seed));
}

namespace {

struct RankOnePiece {
  double alpha = 0;  // weight of the rank-1 effect
  Vector direction;  // unit vector of the effect
  int outcome = 0;   // parent outcome in the original POVM
};

// Rank-1 refinement of one POVM; pieces with negligible weight are dropped.
std::vector<RankOnePiece> rank_one_pieces(const Povm& povm) {
  std::vector<RankOnePiece> pieces;
  for (int a = 0; a < povm.outcomes(); ++a) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(povm.effect(a));
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
      const double w = es.eigenvalues()(k);
      if (w > 1e-12) pieces.push_back({w, es.eigenvectors().col(k), a});
    }
  }
  return pieces;
}

// Eigenvectors of a complete projective measurement, indexed by outcome.
// Padded zero effects are tolerated and never selected by the response.
std::vector<std::pair<int, Vector>> projective_directions(const Povm& povm, int d) {
  std::vector<std::pair<int, Vector>> dirs;
  for (int a = 0; a < povm.outcomes(); ++a) {
    const Matrix& e = povm.effect(a);
    if (e.norm() < 1e-12) continue;
    if ((e * e - e).norm() > 1e-8 || std::abs(e.trace().real() - 1.0) > 1e-8)
      throw InvariantError("projective LHS models need complete rank-1 projective measurements");
    Eigen::SelfAdjointEigenSolver<Matrix> es(e);
    dirs.emplace_back(a, es.eigenvectors().col(d - 1));
  }
  if (static_cast<int>(dirs.size()) != d)
    throw InvariantError("projective LHS models need d rank-1 outcomes per setting");
  return dirs;
}

ThresholdQuery matching_query(LhsModelKind model, int d) {
  switch (model) {
    case LhsModelKind::werner_projective:
      return {StateFamily::werner, MeasurementClass::projective, d};
    case LhsModelKind::isotropic_projective:
      return {StateFamily::isotropic, MeasurementClass::projective, d};
    case LhsModelKind::barrett_werner:
      return {StateFamily::werner, MeasurementClass::povm_barrett, d};
    case LhsModelKind::barrett_isotropic:
      return {StateFamily::isotropic, MeasurementClass::povm_barrett, d};
  }
  throw InvariantError("unknown LHS model");
}

}  // namespace

LhsSimulation lhs_simulate(LhsModelKind model, int d, double eta,
                           const MeasurementSet& measurements, const LhsEnsembleGrid& grid) {
  if (measurements.dim() != d || grid.dim() != d)
    throw DimensionError("LHS model, measurements and grid must share one dimension");
  check_mixing(eta);
  const ThresholdQuery query = matching_query(model, d);
  const double eta_star = threshold(query);
  const double mix = std::min(eta / eta_star, 1.0);
  const bool above = eta > eta_star + 1e-12;

  const int m = measurements.settings();
  const int q = measurements.outcomes();
  const bool barrett =
      model == LhsModelKind::barrett_werner || model == LhsModelKind::barrett_isotropic;
  const bool isotropic_like =
      model == LhsModelKind::isotropic_projective || model == LhsModelKind::barrett_isotropic;

  std::vector<std::vector<RankOnePiece>> pieces(m);
  std::vector<std::vector<std::pair<int, Vector>>> dirs(m);
  for (int x = 0; x < m; ++x) {
    if (barrett)
      pieces[x] = rank_one_pieces(measurements.povm(x));
    else
      dirs[x] = projective_directions(measurements.povm(x), d);
  }

  std::vector<double> flat(m * q, 0.0);
  for (int x = 0; x < m; ++x)
    for (int a = 0; a < q; ++a) flat[x * q + a] = measurements.effect(x, a).trace().real() / d;

  std::vector<std::vector<Matrix>> members(m, std::vector<Matrix>(q, Matrix::Zero(d, d)));
  std::vector<double> p_star(q);
  for (int g = 0; g < grid.size(); ++g) {
    const Vector& lam = grid.point(g);
    const Vector lam_conj = lam.conjugate();
    const Matrix proj = grid.weight(g) * (lam * lam.adjoint());
    for (int x = 0; x < m; ++x) {
      std::fill(p_star.begin(), p_star.end(), 0.0);
      if (!barrett) {
        // deterministic response: pick the least-overlap outcome for the
        // anticorrelated family, the largest-conjugate-overlap outcome for
        // the correlated one; ties break toward the lowest outcome index
        int pick = -1;
        double best = 0;
        for (const auto& [a, v] : dirs[x]) {
          const double ov = isotropic_like ? std::norm(lam_conj.dot(v)) : std::norm(lam.dot(v));
          const bool better = pick < 0 || (isotropic_like ? ov > best : ov < best);
          if (better) {
            best = ov;
            pick = a;
          }
        }
        p_star[pick] = 1.0;
      } else {
        double total = 0;  // Σ over rank-1 pieces of the first response term
        for (const auto& piece : pieces[x]) {
          const double ov = isotropic_like ? std::norm(lam_conj.dot(piece.direction))
                                           : std::norm(lam.dot(piece.direction));
          double first = 0;
          if (isotropic_like) {
            if (ov > 1.0 / d) first = piece.alpha * ov;
          } else {
            if (ov < 1.0 / d) first = piece.alpha / (d - 1) * (1.0 - ov);
          }
          p_star[piece.outcome] += first;
          total += first;
        }
        for (const auto& piece : pieces[x])
          p_star[piece.outcome] += piece.alpha / d * (1.0 - total);
      }
      for (int a = 0; a < q; ++a) {
        const double p = mix * p_star[a] + (1.0 - mix) * flat[x * q + a];
        if (p != 0.0) members[x][a] += p * proj;
      }
    }
  }

  return LhsSimulation{Assemblage(std::move(members)), eta_star, above};
}

}  // namespace steerkit
