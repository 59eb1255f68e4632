#include "steerkit/incompatibility.hpp"

#include <cmath>

#include "sdp_common.hpp"

namespace steerkit {

namespace {

std::vector<std::vector<Matrix>> effects_of(const MeasurementSet& ms) {
  std::vector<std::vector<Matrix>> members(ms.settings());
  for (int x = 0; x < ms.settings(); ++x)
    for (int a = 0; a < ms.outcomes(); ++a) members[x].push_back(ms.effect(x, a));
  return members;
}

SolverDiagnostics diag_from(const conic::Result& res, double tolerance, double duality_error = 0) {
  SolverDiagnostics d;
  d.backend = conic::backend().name();
  d.status = res.status;
  d.iterations = res.iterations;
  d.gap = res.gap;
  d.primal_residual = res.primal_residual;
  d.dual_residual = res.dual_residual;
  d.duality_error = duality_error;
  d.tolerance = tolerance;
  return d;
}

}  // namespace

std::vector<std::vector<Matrix>> JointObservable::reproduce() const {
  const int m = strategies.settings();
  const int q = strategies.outcomes();
  const int d = static_cast<int>(effects.front().rows());
  std::vector<std::vector<Matrix>> members(m, std::vector<Matrix>(q, Matrix::Zero(d, d)));
  for (long l = 0; l < strategies.count(); ++l)
    for (int x = 0; x < m; ++x) members[x][strategies.outcome(l, x)] += effects[l];
  return members;
}

double JointObservable::reproduction_error(const MeasurementSet& ms) const {
  auto members = reproduce();
  double err = 0;
  for (int x = 0; x < ms.settings(); ++x)
    for (int a = 0; a < ms.outcomes(); ++a)
      err = std::max(err, (members[x][a] - ms.effect(x, a)).norm());
  return err;
}

JmVerdict is_jointly_measurable(const MeasurementSet& ms, double tolerance) {
  conic::Options opt;
  auto outcome = detail::solve_max_mu(effects_of(ms), ms.dim(), opt);

  JmVerdict verdict;
  verdict.optimum = outcome.mu;
  verdict.jointly_measurable = outcome.mu >= -tolerance;
  auto strategies = enumerate_strategies(ms.settings(), ms.outcomes());
  if (verdict.jointly_measurable)
    verdict.joint = JointObservable{strategies, std::move(outcome.sigma)};
  IncompatibilityWitness witness;
  witness.coefficients = outcome.certificate;
  witness.normalization = 1.0;
  verdict.witness = std::move(witness);
  verdict.diagnostics =
      diag_from(outcome.raw, tolerance, std::abs(outcome.certificate_value - outcome.mu));
  return verdict;
}

IncompatibilityRobustnessResult incompatibility_robustness(const MeasurementSet& ms) {
  const int d = ms.dim();
  const int m = ms.settings();
  const int q = ms.outcomes();
  auto strategies = enumerate_strategies(m, q);
  const long nstrat = strategies.count();

  conic::Problem p;
  for (long l = 0; l < nstrat; ++l) p.add_block(2 * d);
  std::vector<int> slack(m * q);
  for (int i = 0; i < m * q; ++i) slack[i] = p.add_block(2 * d);
  detail::EmbeddedBasis basis = detail::add_embedded_basis(p, d);

  // covering rows: Σ_λ D G_λ − Y_{a|x} = A_{a|x}
  for (int x = 0; x < m; ++x)
    for (int a = 0; a < q; ++a)
      for (int pc = 0; pc < d * d; ++pc) {
        const int row = p.add_row(2.0 * detail::herm_component(basis.herm[pc], ms.effect(x, a)));
        for (long l = 0; l < nstrat; ++l)
          if (strategies.responds(a, x, l))
            p.add_entry(row, static_cast<int>(l), basis.pool_ids[pc], 1.0);
        p.add_entry(row, slack[x * q + a], basis.pool_ids[pc], -1.0);
      }

  // consistency rows: the traceless part of Σ_λ G_λ vanishes, so the noise
  // effects (Σ_λ D G_λ − A)/t recombine into genuine POVMs
  for (int pc = d; pc < d * d; ++pc) {  // off-diagonal basis elements are traceless
    const int row = p.add_row(0.0);
    for (long l = 0; l < nstrat; ++l)
      p.add_entry(row, static_cast<int>(l), basis.pool_ids[pc], 1.0);
  }
  for (int i = 0; i + 1 < d; ++i) {  // diagonal: e_ii − I/d, d−1 independent rows
    Matrix h = basis.herm[i] - Matrix::Identity(d, d) / double(d);
    const int mat = p.add_pool(detail::embed_hermitian(h));
    const int row = p.add_row(0.0);
    for (long l = 0; l < nstrat; ++l) p.add_entry(row, static_cast<int>(l), mat, 1.0);
  }

  for (long l = 0; l < nstrat; ++l)
    p.set_objective(static_cast<int>(l),
                    RealMatrix(RealMatrix::Identity(2 * d, 2 * d) / (2.0 * d)));

  conic::Result res = conic::backend().solve(p, conic::Options{});
  if (res.status == conic::Status::numerical_failure)
    throw SolverError("conic backend failed on the incompatibility robustness program");

  IncompatibilityRobustnessResult out;
  out.robustness = std::max(res.primal_objective - 1.0, 0.0);
  out.diagnostics = diag_from(res, tol::verdict);
  return out;
}

MeasurementSet QubitDichotomicPair::to_measurements() const {
  auto povm = [](double alpha, const Vector3& a) {
    Matrix plus = ((1 + alpha) * Matrix::Identity(2, 2) + pauli_dot(a)) / 2.0;
    Matrix minus = ((1 - alpha) * Matrix::Identity(2, 2) - pauli_dot(a)) / 2.0;
    return Povm({plus, minus});
  };
  return MeasurementSet({povm(bias1, a1), povm(bias2, a2)});
}

QubitDichotomicPair QubitDichotomicPair::noisy_orthogonal(double mu) {
  QubitDichotomicPair pair;
  pair.a1 = Vector3(mu, 0, 0);
  pair.a2 = Vector3(0, 0, mu);
  return pair;
}

bool qubit_pair_criterion(const QubitDichotomicPair& pair) {
  pair.to_measurements();  // validates that all four effects are PSD
  const double n1 = pair.a1.norm(), n2 = pair.a2.norm();
  if (pair.bias1 == 0.0 && pair.bias2 == 0.0)
    return (pair.a1 + pair.a2).norm() + (pair.a1 - pair.a2).norm() <= 2.0 + 1e-12;

  auto fterm = [](double alpha, double norm) {
    auto radicand = [](double v) {
      if (v < -1e-12) throw InvariantError("dichotomic pair violates effect positivity");
      return std::max(v, 0.0);
    };
    return (std::sqrt(radicand((1 + alpha) * (1 + alpha) - norm * norm)) +
            std::sqrt(radicand((1 - alpha) * (1 - alpha) - norm * norm))) /
           2.0;
  };
  const double f1 = fterm(pair.bias1, n1);
  const double f2 = fterm(pair.bias2, n2);
  // F_i = 0 forces α_i = 0, where the bias term drops out
  const double bias_term1 = pair.bias1 == 0.0 ? 0.0 : pair.bias1 * pair.bias1 / (f1 * f1);
  const double bias_term2 = pair.bias2 == 0.0 ? 0.0 : pair.bias2 * pair.bias2 / (f2 * f2);
  const double lhs = (1 - f1 * f1 - f2 * f2) * (1 - bias_term1 - bias_term2);
  const double rhs = std::pow(pair.a1.dot(pair.a2) - pair.bias1 * pair.bias2, 2);
  return lhs <= rhs + 1e-12;
}

MeasurementSet normalize_assemblage(const Assemblage& asm_) {
  auto support = detail::support_of(asm_.reduced());
  const Matrix w = pseudo_inverse_sqrt(asm_.reduced());
  std::vector<Povm> povms;
  for (int x = 0; x < asm_.settings(); ++x) {
    std::vector<Matrix> effects;
    for (int a = 0; a < asm_.outcomes(); ++a) {
      Matrix b = w * asm_.member(x, a) * w;
      if (!support.full()) b = support.isometry.adjoint() * b * support.isometry;
      effects.push_back(b);
    }
    povms.emplace_back(std::move(effects));
  }
  return MeasurementSet(std::move(povms));
}

MeasurementSet heisenberg_povm_map(const DensityMatrix& rho_ab, const MeasurementSet& alice) {
  const int da = alice.dim();
  if (rho_ab.dim() % da != 0)
    throw DimensionError("state dimension is not a multiple of Alice's dimension");
  const int db = rho_ab.dim() / da;
  const Matrix rho_b = partial_trace(rho_ab.matrix(), da, db, Subsystem::A);
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho_b);
  const Matrix u = es.eigenvectors();
  const Matrix w = pseudo_inverse_sqrt(rho_b);
  auto support = detail::support_of(rho_b);

  std::vector<Povm> povms;
  for (int x = 0; x < alice.settings(); ++x) {
    std::vector<Matrix> effects;
    for (int a = 0; a < alice.outcomes(); ++a) {
      Matrix member = partial_trace(
          Matrix(kron(alice.effect(x, a), Matrix::Identity(db, db)) * rho_ab.matrix()), da, db,
          Subsystem::A);
      Matrix transposed = u * (u.adjoint() * member * u).transpose() * u.adjoint();
      Matrix b = w * transposed * w;
      if (!support.full()) b = support.isometry.adjoint() * b * support.isometry;
      effects.push_back(b);
    }
    povms.emplace_back(std::move(effects));
  }
  return MeasurementSet(std::move(povms));
}

}  // namespace steerkit
