#include "steerkit/criteria.hpp"

#include <cmath>

namespace steerkit {

namespace {
constexpr double kDecision = 1e-10;
}

void CorrelationRecord::validate() const {
  for (Eigen::Index i = 0; i < full.rows(); ++i)
    for (Eigen::Index j = 0; j < full.cols(); ++j)
      if (std::abs(full(i, j)) > 1.0 + kDecision)
        throw InvariantError("dichotomic correlations must lie in [-1, 1]");
  for (const auto& setting : conditionals) {
    double total = 0;
    for (const auto& c : setting) {
      if (std::abs(c.mean) > 1.0 + kDecision)
        throw InvariantError("conditional means must lie in [-1, 1]");
      if (c.probability < -kDecision) throw InvariantError("probabilities must be nonnegative");
      total += c.probability;
    }
    if (std::abs(total - 1.0) > 1e-10)
      throw InvariantError("conditional probabilities must be normalized");
  }
}

CorrelationRecord record_from_state(const DensityMatrix& rho,
                                    const std::vector<Matrix>& alice_observables,
                                    const std::vector<Matrix>& bob_observables) {
  if (rho.dim() != 4) throw DimensionError("correlation records are built from two-qubit states");
  if (alice_observables.empty() || alice_observables.size() != bob_observables.size())
    throw DimensionError("need matched nonempty observable lists");
  const int m = static_cast<int>(alice_observables.size());
  CorrelationRecord rec;
  rec.full = RealMatrix(m, m);
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      rec.full(x, y) =
          (kron(alice_observables[x], bob_observables[y]) * rho.matrix()).trace().real();

  rec.conditionals.resize(m);
  for (int x = 0; x < m; ++x) {
    Povm povm = projective_from_observable(alice_observables[x]);
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(alice_observables[x]),
                                             Eigen::EigenvaluesOnly);
    for (int a = 0; a < povm.outcomes(); ++a) {
      const double p =
          (kron(povm.effect(a), Matrix::Identity(2, 2)) * rho.matrix()).trace().real();
      const double corr =
          (kron(povm.effect(a), bob_observables[x]) * rho.matrix()).trace().real();
      rec.conditionals[x].push_back({p, p > 1e-12 ? corr / p : 0.0});
    }
  }
  rec.validate();
  return rec;
}

CriterionResult linear_criterion(const std::vector<double>& matched_correlations,
                                 const std::vector<Matrix>& bob_observables) {
  const int n = static_cast<int>(matched_correlations.size());
  if (n < 1 || bob_observables.size() != matched_correlations.size())
    throw DimensionError("need matched correlation and observable lists");
  if (n > 24) throw InvariantError("sign enumeration guard: at most 24 observables");

  CriterionResult out;
  for (double c : matched_correlations) out.value += std::abs(c);

  const Eigen::Index d = bob_observables.front().rows();
  double bound = -std::numeric_limits<double>::infinity();
  for (long signs = 0; signs < (1L << n); ++signs) {
    Matrix sum = Matrix::Zero(d, d);
    for (int k = 0; k < n; ++k)
      sum += ((signs >> k) & 1 ? 1.0 : -1.0) * bob_observables[k];
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(sum), Eigen::EigenvaluesOnly);
    bound = std::max(bound, es.eigenvalues().maxCoeff());
  }
  out.bound = bound;
  out.violated = out.value > out.bound + kDecision;
  return out;
}

CriterionResult three_pauli_criterion(const CorrelationRecord& record) {
  record.validate();
  if (record.conditionals.size() != 3)
    throw DimensionError("the three-Pauli criterion needs conditionals for three settings");
  CriterionResult out;
  for (const auto& setting : record.conditionals)
    for (const auto& c : setting) out.value += c.probability * c.mean * c.mean;
  out.bound = 1.0;
  out.violated = out.value > out.bound + kDecision;
  return out;
}

CriterionResult chsh_steering(const CorrelationRecord& record) {
  record.validate();
  if (record.full.rows() != 2 || record.full.cols() != 2)
    throw DimensionError("the CHSH-type criterion needs a full 2x2 correlation table");
  const RealMatrix& c = record.full;
  CriterionResult out;
  out.value = std::sqrt(std::pow(c(0, 0) + c(1, 0), 2) + std::pow(c(0, 1) + c(1, 1), 2)) +
              std::sqrt(std::pow(c(0, 0) - c(1, 0), 2) + std::pow(c(0, 1) - c(1, 1), 2));
  out.bound = 2.0;
  out.violated = out.value > out.bound + kDecision;
  out.assumption = "bob measurements are mutually unbiased qubit projective";
  return out;
}

void JointDistribution::validate() const {
  double total = 0;
  for (Eigen::Index i = 0; i < p.rows(); ++i)
    for (Eigen::Index j = 0; j < p.cols(); ++j) {
      if (p(i, j) < -kDecision) throw InvariantError("probabilities must be nonnegative");
      total += p(i, j);
    }
  if (std::abs(total - 1.0) > 1e-10) throw InvariantError("joint distribution must sum to one");
}

namespace {

double shannon_nats(const std::vector<double>& p) {
  double s = 0;
  for (double v : p)
    if (v > 1e-15) s -= v * std::log(v);
  return s;
}

double conditional_entropy(const JointDistribution& joint) {
  // S(B|A) = S(A,B) − S(A)
  std::vector<double> flat, alice;
  for (Eigen::Index i = 0; i < joint.p.rows(); ++i) {
    double row = 0;
    for (Eigen::Index j = 0; j < joint.p.cols(); ++j) {
      flat.push_back(std::max(joint.p(i, j), 0.0));
      row += std::max(joint.p(i, j), 0.0);
    }
    alice.push_back(row);
  }
  return shannon_nats(flat) - shannon_nats(alice);
}

}  // namespace

CriterionResult entropic_criterion(const JointDistribution& joint1,
                                   const JointDistribution& joint2, const Matrix& bob1,
                                   const Matrix& bob2) {
  joint1.validate();
  joint2.validate();
  Eigen::SelfAdjointEigenSolver<Matrix> es1(hermitize(bob1));
  Eigen::SelfAdjointEigenSolver<Matrix> es2(hermitize(bob2));
  double omega = 0;
  for (Eigen::Index i = 0; i < bob1.rows(); ++i)
    for (Eigen::Index j = 0; j < bob2.rows(); ++j)
      omega = std::max(omega,
                       std::norm(es1.eigenvectors().col(i).dot(es2.eigenvectors().col(j))));

  CriterionResult out;
  out.value = conditional_entropy(joint1) + conditional_entropy(joint2);
  out.bound = -std::log(omega);
  out.violated = out.value < out.bound - kDecision;
  return out;
}

double nats_to_bits(double nats) { return nats / std::log(2.0); }
double bits_to_nats(double bits) { return bits * std::log(2.0); }

CriterionResult ccnr_steering(const DensityMatrix& rho, int d) {
  auto coeffs = operator_schmidt_coefficients(rho, d);
  CriterionResult out;
  for (double c : coeffs) out.value += c;
  out.bound = std::sqrt(double(d));
  out.violated = out.value > out.bound + kDecision;
  return out;
}

CriterionResult lur_criterion(const std::vector<double>& variances, double c_b) {
  CriterionResult out;
  for (double v : variances) {
    if (v < -kDecision) throw InvariantError("variances must be nonnegative");
    out.value += v;
  }
  out.bound = c_b;
  out.violated = out.value < out.bound - kDecision;
  return out;
}

double variance(const Matrix& observable, const Matrix& rho) {
  const Matrix h = hermitize(observable);
  const double mean = (h * rho).trace().real();
  const double second = (h * h * rho).trace().real();
  return second - mean * mean;
}

namespace {

RealMatrix symplectic_form(int modes) {
  RealMatrix omega = RealMatrix::Zero(2 * modes, 2 * modes);
  for (int j = 0; j < modes; ++j) {
    omega(2 * j, 2 * j + 1) = 1;
    omega(2 * j + 1, 2 * j) = -1;
  }
  return omega;
}

double min_eig_with_form(const RealMatrix& v, const RealMatrix& omega) {
  Matrix h = v.cast<Complex>() + Complex(0, 1) * omega.cast<Complex>();
  return min_eigenvalue(h);
}

}  // namespace

void GaussianCovariance::validate() const {
  const int n = 2 * (modes_a + modes_b);
  if (modes_a < 1 || modes_b < 1 || v.rows() != n || v.cols() != n)
    throw DimensionError("covariance matrix size must match the mode counts");
  if ((v - v.transpose()).norm() > 1e-10)
    throw InvariantError("covariance matrix must be symmetric");
  if (min_eig_with_form(v, symplectic_form(modes_a + modes_b)) < -1e-9)
    throw InvariantError("covariance matrix violates V + iΩ ⪰ 0");
}

GaussianCovariance GaussianCovariance::swapped() const {
  const int na = 2 * modes_a, nb = 2 * modes_b;
  GaussianCovariance out;
  out.modes_a = modes_b;
  out.modes_b = modes_a;
  out.v = RealMatrix(na + nb, na + nb);
  out.v.topLeftCorner(nb, nb) = v.bottomRightCorner(nb, nb);
  out.v.bottomRightCorner(na, na) = v.topLeftCorner(na, na);
  out.v.topRightCorner(nb, na) = v.bottomLeftCorner(nb, na);
  out.v.bottomLeftCorner(na, nb) = v.topRightCorner(na, nb);
  return out;
}

bool gaussian_steering(const GaussianCovariance& gc, SteeringDirection direction) {
  gc.validate();
  const int na = 2 * gc.modes_a, nb = 2 * gc.modes_b;
  RealMatrix omega = RealMatrix::Zero(na + nb, na + nb);
  if (direction == SteeringDirection::a_to_b)
    omega.bottomRightCorner(nb, nb) = symplectic_form(gc.modes_b);
  else
    omega.topLeftCorner(na, na) = symplectic_form(gc.modes_a);
  return min_eig_with_form(gc.v, omega) < -1e-9;
}

GaussianCovariance two_mode_squeezed_vacuum(double r) {
  GaussianCovariance gc;
  gc.modes_a = gc.modes_b = 1;
  gc.v = RealMatrix::Zero(4, 4);
  const double c = std::cosh(2 * r), s = std::sinh(2 * r);
  gc.v(0, 0) = gc.v(1, 1) = gc.v(2, 2) = gc.v(3, 3) = c;
  gc.v(0, 2) = gc.v(2, 0) = s;
  gc.v(1, 3) = gc.v(3, 1) = -s;
  return gc;
}

}  // namespace steerkit
