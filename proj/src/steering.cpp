#include "steerkit/steering.hpp"

#include <cmath>

#include "sdp_common.hpp"

namespace steerkit {

namespace detail {

namespace {

long checked_strategy_count(int m, int q) {
  if (m < 1 || q < 2) throw InvariantError("strategy enumeration needs m >= 1, q >= 2");
  long count = 1;
  for (int x = 0; x < m; ++x) {
    count *= q;
    if (count > 1000000) throw InvariantError("strategy count q^m exceeds the 10^6 guard");
  }
  return count;
}

conic::Options default_options() {
  conic::Options opt;
  return opt;
}

}  // namespace

MaxMuOutcome solve_max_mu(const std::vector<std::vector<Matrix>>& members, int d,
                          const conic::Options& options) {
  const int m = static_cast<int>(members.size());
  const int q = static_cast<int>(members.front().size());
  const long nstrat = checked_strategy_count(m, q);
  const long per_outcome = nstrat / q;  // #{λ : λ(x) = a}
  auto strategies = DeterministicStrategySet::enumerate(m, q);

  conic::Problem p;
  for (long l = 0; l < nstrat; ++l) p.add_block(2 * d);
  const int v_block = p.add_block(1);
  const int scalar_one = p.add_pool(RealMatrix::Identity(1, 1));
  EmbeddedBasis basis = add_embedded_basis(p, d);

  // rows: all outcomes for x=0, all but the last outcome for x >= 1
  // (those are linear combinations of the kept rows by no-signalling)
  const double shift = double(m) / q;
  std::vector<std::vector<int>> row_of(m, std::vector<int>(q, -1));
  for (int x = 0; x < m; ++x)
    for (int a = 0; a < q; ++a) {
      if (x > 0 && a == q - 1) continue;
      for (int pc = 0; pc < d * d; ++pc) {
        const double rhs = 2.0 * herm_component(basis.herm[pc], members[x][a]) +
                           2.0 * shift * basis.herm[pc].trace().real();
        const int row = p.add_row(rhs);
        if (pc == 0) row_of[x][a] = row;
        for (long l = 0; l < nstrat; ++l)
          if (strategies.responds(a, x, l))
            p.add_entry(row, static_cast<int>(l), basis.pool_ids[pc], 1.0);
        const double tr = basis.herm[pc].trace().real();
        if (tr != 0.0) p.add_entry(row, v_block, scalar_one, 2.0 * tr);
      }
    }
  p.set_objective(v_block, RealMatrix(-RealMatrix::Identity(1, 1)));

  conic::Result res = conic::backend().solve(p, options);
  if (res.status == conic::Status::numerical_failure)
    throw SolverError("conic backend failed on the feasibility program");

  MaxMuOutcome out;
  out.raw = res;
  const double v = res.x[v_block](0, 0);
  out.mu = (v - shift) / double(per_outcome);

  out.sigma.reserve(nstrat);
  for (long l = 0; l < nstrat; ++l)
    out.sigma.push_back(decode_hermitian(res.x[static_cast<int>(l)]) +
                        out.mu * Matrix::Identity(d, d));

  // dual certificate: F = −2Y/n on kept rows, zero on dropped ones, then
  // rescaled so that Tr Σ_{a,x,λ} F D = 1 holds exactly
  out.certificate.assign(m, std::vector<Matrix>(q, Matrix::Zero(d, d)));
  double trace_sum = 0;
  for (int x = 0; x < m; ++x)
    for (int a = 0; a < q; ++a) {
      if (row_of[x][a] < 0) continue;
      Matrix y_mat = Matrix::Zero(d, d);
      for (int pc = 0; pc < d * d; ++pc) y_mat += res.y(row_of[x][a] + pc) * basis.herm[pc];
      out.certificate[x][a] = -2.0 * y_mat / double(per_outcome);
      trace_sum += out.certificate[x][a].trace().real();
    }
  const double norm = double(per_outcome) * trace_sum;
  if (std::abs(norm) > 1e-12)
    for (auto& row : out.certificate)
      for (auto& f : row) f /= norm;
  out.certificate_value = 0;
  for (int x = 0; x < m; ++x)
    for (int a = 0; a < q; ++a)
      out.certificate_value += (out.certificate[x][a] * members[x][a]).trace().real();
  return out;
}

SlackFormOutcome solve_slack_form(const std::vector<std::vector<Matrix>>& members, int d,
                                  bool maximize, const conic::Options& options) {
  const int m = static_cast<int>(members.size());
  const int q = static_cast<int>(members.front().size());
  const long nstrat = checked_strategy_count(m, q);
  auto strategies = DeterministicStrategySet::enumerate(m, q);

  conic::Problem p;
  for (long l = 0; l < nstrat; ++l) p.add_block(2 * d);
  std::vector<int> slack(m * q);
  for (int i = 0; i < m * q; ++i) slack[i] = p.add_block(2 * d);
  EmbeddedBasis basis = add_embedded_basis(p, d);

  const double slack_sign = maximize ? 1.0 : -1.0;  // ρ − ΣDσ ⪰ 0 vs ΣDσ − ρ ⪰ 0
  for (int x = 0; x < m; ++x)
    for (int a = 0; a < q; ++a)
      for (int pc = 0; pc < d * d; ++pc) {
        const int row = p.add_row(2.0 * herm_component(basis.herm[pc], members[x][a]));
        for (long l = 0; l < nstrat; ++l)
          if (strategies.responds(a, x, l))
            p.add_entry(row, static_cast<int>(l), basis.pool_ids[pc], 1.0);
        p.add_entry(row, slack[x * q + a], basis.pool_ids[pc], slack_sign);
      }
  const double obj_sign = maximize ? -1.0 : 1.0;  // conic form minimizes
  for (long l = 0; l < nstrat; ++l)
    p.set_objective(static_cast<int>(l),
                    RealMatrix(obj_sign * 0.5 * RealMatrix::Identity(2 * d, 2 * d)));

  conic::Result res = conic::backend().solve(p, options);
  if (res.status == conic::Status::numerical_failure)
    throw SolverError("conic backend failed on the slack-form program");

  SlackFormOutcome out;
  out.raw = res;
  out.sigma.reserve(nstrat);
  double total = 0;
  for (long l = 0; l < nstrat; ++l) {
    out.sigma.push_back(decode_hermitian(res.x[static_cast<int>(l)]));
    total += out.sigma.back().trace().real();
  }
  out.total_trace = total;
  return out;
}

namespace {

/// Members of an assemblage expressed on the support of its reduced state.
struct RestrictedAssemblage {
  std::vector<std::vector<Matrix>> members;
  SupportBasis support;
  int dim = 0;
};

RestrictedAssemblage restrict_to_support(const Assemblage& asm_) {
  RestrictedAssemblage out;
  out.support = support_of(asm_.reduced());
  out.dim = out.support.rank;
  const bool full = out.support.full();
  out.members.assign(asm_.settings(), {});
  for (int x = 0; x < asm_.settings(); ++x)
    for (int a = 0; a < asm_.outcomes(); ++a)
      out.members[x].push_back(full ? asm_.member(x, a)
                                    : Matrix(out.support.isometry.adjoint() * asm_.member(x, a) *
                                             out.support.isometry));
  return out;
}

Matrix lift(const SupportBasis& s, const Matrix& m) {
  if (s.full()) return m;
  return s.isometry * m * s.isometry.adjoint();
}

SolverDiagnostics diagnostics_from(const conic::Result& res, double tolerance,
                                   double duality_error = 0) {
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
}  // namespace detail

DeterministicStrategySet DeterministicStrategySet::enumerate(int settings, int outcomes) {
  const long count = detail::checked_strategy_count(settings, outcomes);
  return DeterministicStrategySet(settings, outcomes, count);
}

int DeterministicStrategySet::outcome(long lambda, int x) const {
  long div = 1;
  for (int i = settings_ - 1; i > x; --i) div *= outcomes_;
  return static_cast<int>((lambda / div) % outcomes_);
}

DeterministicStrategySet enumerate_strategies(int settings, int outcomes) {
  return DeterministicStrategySet::enumerate(settings, outcomes);
}

std::vector<std::vector<Matrix>> LhsModel::reproduce() const {
  const int m = strategies.settings();
  const int q = strategies.outcomes();
  const int d = static_cast<int>(hidden_states.front().rows());
  std::vector<std::vector<Matrix>> members(m, std::vector<Matrix>(q, Matrix::Zero(d, d)));
  for (long l = 0; l < strategies.count(); ++l)
    for (int x = 0; x < m; ++x) members[x][strategies.outcome(l, x)] += hidden_states[l];
  return members;
}

double LhsModel::reproduction_error(const Assemblage& asm_) const {
  auto members = reproduce();
  double err = 0;
  for (int x = 0; x < asm_.settings(); ++x)
    for (int a = 0; a < asm_.outcomes(); ++a)
      err = std::max(err, (members[x][a] - asm_.member(x, a)).norm());
  return err;
}

double SteeringInequality::evaluate(const Assemblage& asm_) const {
  double value = 0;
  for (int x = 0; x < asm_.settings(); ++x)
    for (int a = 0; a < asm_.outcomes(); ++a)
      value += (coefficients.at(x).at(a) * asm_.member(x, a)).trace().real();
  return value;
}

double SteeringInequality::constraint_floor(const DeterministicStrategySet& strategies) const {
  const int d = static_cast<int>(coefficients.front().front().rows());
  double floor = std::numeric_limits<double>::infinity();
  for (long l = 0; l < strategies.count(); ++l) {
    Matrix sum = Matrix::Zero(d, d);
    for (int x = 0; x < strategies.settings(); ++x)
      sum += coefficients.at(x).at(strategies.outcome(l, x));
    floor = std::min(floor, min_eigenvalue(sum));
  }
  return floor;
}

SteerVerdict lhs_feasibility(const Assemblage& asm_, double tolerance) {
  auto restricted = detail::restrict_to_support(asm_);
  conic::Options opt;
  auto outcome = detail::solve_max_mu(restricted.members, restricted.dim, opt);

  SteerVerdict verdict;
  verdict.optimum = outcome.mu;
  verdict.verdict = outcome.mu < -tolerance
                        ? Steerability::steerable
                        : (outcome.mu > tolerance ? Steerability::unsteerable
                                                  : Steerability::boundary);
  verdict.steerable = verdict.verdict == Steerability::steerable;

  auto strategies = enumerate_strategies(asm_.settings(), asm_.outcomes());
  if (outcome.mu >= -tolerance) {
    LhsModel model{strategies, {}};
    for (auto& sigma : outcome.sigma) model.hidden_states.push_back(detail::lift(restricted.support, sigma));
    verdict.model = std::move(model);
  }
  SteeringInequality ineq;
  ineq.coefficients.assign(asm_.settings(), {});
  for (int x = 0; x < asm_.settings(); ++x)
    for (int a = 0; a < asm_.outcomes(); ++a)
      ineq.coefficients[x].push_back(detail::lift(restricted.support, outcome.certificate[x][a]));
  ineq.normalization = 1.0;
  verdict.inequality = std::move(ineq);

  verdict.diagnostics = detail::diagnostics_from(
      outcome.raw, tolerance, std::abs(outcome.certificate_value - outcome.mu));
  return verdict;
}

WeightResult steering_weight(const Assemblage& asm_, double tolerance) {
  auto restricted = detail::restrict_to_support(asm_);
  conic::Options opt;
  auto outcome = detail::solve_slack_form(restricted.members, restricted.dim, true, opt);

  WeightResult result{.weight = 0,
                      .lhs_part = LhsModel{enumerate_strategies(asm_.settings(), asm_.outcomes()), {}},
                      .steerable_part = std::nullopt,
                      .diagnostics = detail::diagnostics_from(outcome.raw, tolerance)};
  const double total = asm_.reduced().trace().real();
  result.weight = std::clamp(total - outcome.total_trace, 0.0, 1.0);
  for (auto& sigma : outcome.sigma)
    result.lhs_part.hidden_states.push_back(detail::lift(restricted.support, sigma));

  if (result.weight > tolerance) {
    auto lhs_members = result.lhs_part.reproduce();
    std::vector<std::vector<Matrix>> steerable(asm_.settings());
    for (int x = 0; x < asm_.settings(); ++x)
      for (int a = 0; a < asm_.outcomes(); ++a)
        steerable[x].push_back((asm_.member(x, a) - lhs_members[x][a]) / result.weight);
    result.steerable_part = Assemblage(std::move(steerable));
  }
  return result;
}

RobustnessResult steering_robustness(const Assemblage& asm_, double tolerance) {
  auto restricted = detail::restrict_to_support(asm_);
  conic::Options opt;
  auto outcome = detail::solve_slack_form(restricted.members, restricted.dim, false, opt);

  RobustnessResult result;
  result.diagnostics = detail::diagnostics_from(outcome.raw, tolerance);
  const double total = asm_.reduced().trace().real();
  result.robustness = std::max(outcome.total_trace - total, 0.0);

  if (result.robustness > tolerance) {
    std::vector<std::vector<Matrix>> noise(asm_.settings());
    LhsModel cover{enumerate_strategies(asm_.settings(), asm_.outcomes()), {}};
    for (auto& sigma : outcome.sigma)
      cover.hidden_states.push_back(detail::lift(restricted.support, sigma));
    auto cover_members = cover.reproduce();
    for (int x = 0; x < asm_.settings(); ++x)
      for (int a = 0; a < asm_.outcomes(); ++a)
        noise[x].push_back((cover_members[x][a] - asm_.member(x, a)) / result.robustness);
    result.noise = Assemblage(std::move(noise));
  }
  return result;
}

SteeringInequality dual_inequality(const Assemblage& asm_) {
  return *lhs_feasibility(asm_).inequality;
}

namespace {

/// Flat reference member: Tr(E_{a|x})/d_A · ρ_B.
std::vector<std::vector<Matrix>> flat_members(const Assemblage& asm_, const MeasurementSet& alice) {
  std::vector<std::vector<Matrix>> flat(asm_.settings());
  for (int x = 0; x < asm_.settings(); ++x)
    for (int a = 0; a < asm_.outcomes(); ++a)
      flat[x].push_back(alice.effect(x, a).trace().real() / alice.dim() * asm_.reduced());
  return flat;
}

constexpr double kAlphaCap = 16.0;

}  // namespace

CriticalAlphaResult critical_alpha(const DensityMatrix& rho_ab, const MeasurementSet& alice,
                                   double tolerance) {
  Assemblage asm_ = assemblage_from_state(rho_ab, alice);
  auto flat = flat_members(asm_, alice);
  auto restricted = detail::restrict_to_support(asm_);
  const int d = restricted.dim;
  const int m = asm_.settings();
  const int q = asm_.outcomes();
  const long nstrat = detail::checked_strategy_count(m, q);
  auto strategies = enumerate_strategies(m, q);

  conic::Problem p;
  for (long l = 0; l < nstrat; ++l) p.add_block(2 * d);
  const int alpha_block = p.add_block(1);
  const int cap_slack = p.add_block(1);
  const int scalar_one = p.add_pool(RealMatrix::Identity(1, 1));
  detail::EmbeddedBasis basis = detail::add_embedded_basis(p, d);

  auto project = [&](const Matrix& mfull) {
    return restricted.support.full()
               ? mfull
               : Matrix(restricted.support.isometry.adjoint() * mfull * restricted.support.isometry);
  };

  for (int x = 0; x < m; ++x)
    for (int a = 0; a < q; ++a) {
      if (x > 0 && a == q - 1) continue;
      const Matrix tau = project(flat[x][a]);
      const Matrix drift = tau - restricted.members[x][a];  // coefficient of α
      for (int pc = 0; pc < d * d; ++pc) {
        const int row = p.add_row(2.0 * detail::herm_component(basis.herm[pc], tau));
        for (long l = 0; l < nstrat; ++l)
          if (strategies.responds(a, x, l))
            p.add_entry(row, static_cast<int>(l), basis.pool_ids[pc], 1.0);
        const double coeff = 2.0 * detail::herm_component(basis.herm[pc], drift);
        if (std::abs(coeff) > 0) p.add_entry(row, alpha_block, scalar_one, coeff);
      }
    }
  const int cap_row = p.add_row(kAlphaCap);
  p.add_entry(cap_row, alpha_block, scalar_one, 1.0);
  p.add_entry(cap_row, cap_slack, scalar_one, 1.0);
  p.set_objective(alpha_block, RealMatrix(-RealMatrix::Identity(1, 1)));

  conic::Result res = conic::backend().solve(p, conic::Options{});
  if (res.status == conic::Status::numerical_failure)
    throw SolverError("conic backend failed on the critical-alpha program");

  CriticalAlphaResult out;
  out.raw_alpha = res.x[alpha_block](0, 0);
  out.capped = out.raw_alpha >= kAlphaCap - 1e-6;
  out.alpha = std::clamp(out.raw_alpha, 0.0, 1.0);
  out.diagnostics = detail::diagnostics_from(res, tolerance);
  return out;
}

CriticalAlphaResult critical_alpha_bisect(const DensityMatrix& rho_ab,
                                          const MeasurementSet& alice, double tolerance) {
  Assemblage asm_ = assemblage_from_state(rho_ab, alice);
  auto flat = flat_members(asm_, alice);

  auto unsteerable_at = [&](double alpha) {
    std::vector<std::vector<Matrix>> mixed(asm_.settings());
    for (int x = 0; x < asm_.settings(); ++x)
      for (int a = 0; a < asm_.outcomes(); ++a)
        mixed[x].push_back(alpha * asm_.member(x, a) + (1 - alpha) * flat[x][a]);
    return !lhs_feasibility(Assemblage(std::move(mixed))).steerable;
  };

  CriticalAlphaResult out;
  out.diagnostics.backend = conic::backend().name();
  out.diagnostics.status = conic::Status::optimal;
  out.diagnostics.tolerance = tolerance;
  if (unsteerable_at(1.0)) {
    out.alpha = out.raw_alpha = 1.0;
    return out;
  }
  double lo = 0.0, hi = 1.0;
  while (hi - lo > tolerance) {
    const double mid = (lo + hi) / 2;
    (unsteerable_at(mid) ? lo : hi) = mid;
  }
  out.alpha = out.raw_alpha = (lo + hi) / 2;
  return out;
}

}  // namespace steerkit
