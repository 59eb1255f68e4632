#include "steerkit/operators.hpp"

#include <algorithm>

namespace steerkit {

HermitianOperator::HermitianOperator(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() < 1)
    throw DimensionError("Hermitian operator must be square and nonempty");
  if (hermiticity_residue(m) > tol::hermitian_residue)
    throw InvariantError("anti-Hermitian residue " + std::to_string(hermiticity_residue(m)) +
                         " exceeds tolerance");
  entries_ = hermitize(m);
}

DensityMatrix::DensityMatrix(const Matrix& m) : base_(m), trace_(base_.trace()) {
  if (min_eigenvalue(base_.matrix()) < -tol::psd)
    throw InvariantError("density matrix is not positive semidefinite");
  if (trace_ <= 0.0) throw InvariantError("density matrix trace must be positive");
  if (trace_ > 1.0 + 1e-9) throw InvariantError("density matrix trace exceeds one");
}

DensityMatrix DensityMatrix::subnormalized(const Matrix& m) {
  HermitianOperator base(m);
  const double tr = base.trace();
  if (min_eigenvalue(base.matrix()) < -tol::psd)
    throw InvariantError("conditional state is not positive semidefinite");
  if (tr < -tol::psd || tr > 1.0 + 1e-9)
    throw InvariantError("conditional state trace out of [0, 1]");
  return DensityMatrix(std::move(base), tr);
}

Povm::Povm(std::vector<Matrix> effects) {
  if (effects.size() < 2) throw InvariantError("a POVM needs at least two outcomes");
  const Eigen::Index d = effects.front().rows();
  Matrix sum = Matrix::Zero(d, d);
  for (auto& e : effects) {
    if (e.rows() != d || e.cols() != d) throw DimensionError("POVM effects must share one dimension");
    e = hermitize(e);
    if (min_eigenvalue(e) < -tol::psd) throw InvariantError("POVM effect is not positive semidefinite");
    sum += e;
  }
  if ((sum - Matrix::Identity(d, d)).norm() > tol::povm_completeness)
    throw InvariantError("POVM effects do not sum to the identity");
  effects_ = std::move(effects);
}

void Povm::pad_to(int q) {
  if (q < outcomes()) throw InvariantError("cannot pad a POVM to fewer outcomes");
  const int d = dim();
  while (outcomes() < q) effects_.push_back(Matrix::Zero(d, d));
}

MeasurementSet::MeasurementSet(std::vector<Povm> povms) {
  if (povms.empty()) throw InvariantError("a measurement set needs at least one setting");
  const int d = povms.front().dim();
  int q = 2;
  for (const auto& p : povms) {
    if (p.dim() != d) throw DimensionError("measurement settings must share one dimension");
    q = std::max(q, p.outcomes());
  }
  for (auto& p : povms) p.pad_to(q);
  povms_ = std::move(povms);
}

Povm projective_qubit(const Vector3& axis) {
  const double n = axis.norm();
  if (n < 1e-12) throw InvariantError("measurement axis must be nonzero");
  Matrix p = pauli_dot(axis / n);
  Matrix id = Matrix::Identity(2, 2);
  return Povm({(id + p) / 2.0, (id - p) / 2.0});
}

Povm projective_from_observable(const Matrix& observable) {
  HermitianOperator obs(observable);
  Eigen::SelfAdjointEigenSolver<Matrix> es(obs.matrix());
  std::vector<Matrix> effects;
  for (Eigen::Index i = 0; i < obs.dim(); ++i) {
    Vector v = es.eigenvectors().col(i);
    effects.push_back(v * v.adjoint());
  }
  return Povm(std::move(effects));
}

MeasurementSet paulis_xz() {
  return MeasurementSet({projective_qubit({1, 0, 0}), projective_qubit({0, 0, 1})});
}

MeasurementSet paulis_xyz() {
  return MeasurementSet({projective_qubit({1, 0, 0}), projective_qubit({0, 1, 0}),
                         projective_qubit({0, 0, 1})});
}

Assemblage::Assemblage(std::vector<std::vector<Matrix>> members) {
  if (members.empty() || members.front().empty())
    throw InvariantError("assemblage needs at least one setting and outcome");
  const Eigen::Index d = members.front().front().rows();
  const std::size_t q = members.front().size();
  reduced_ = Matrix::Zero(d, d);
  for (const auto& m : members.front()) reduced_ += hermitize(m);
  for (auto& row : members) {
    if (row.size() != q) throw DimensionError("assemblage settings must share one outcome count");
    Matrix sum = Matrix::Zero(d, d);
    for (auto& m : row) {
      if (m.rows() != d || m.cols() != d) throw DimensionError("assemblage members must share one dimension");
      m = hermitize(m);
      if (min_eigenvalue(m) < -tol::psd)
        throw InvariantError("assemblage member is not positive semidefinite");
      sum += m;
    }
    if ((sum - reduced_).norm() > tol::no_signalling)
      throw InvariantError("assemblage violates no-signalling: marginals differ across settings");
  }
  members_ = std::move(members);
}

Assemblage Assemblage::mixed_with(const Assemblage& other, double p) const {
  if (other.settings() != settings() || other.outcomes() != outcomes() || other.dim() != dim())
    throw DimensionError("cannot mix assemblages of different shapes");
  std::vector<std::vector<Matrix>> members(settings());
  for (int x = 0; x < settings(); ++x)
    for (int a = 0; a < outcomes(); ++a)
      members[x].push_back(p * member(x, a) + (1.0 - p) * other.member(x, a));
  return Assemblage(std::move(members));
}

Assemblage Assemblage::relabel_outcomes(int x, const std::vector<int>& perm) const {
  std::vector<std::vector<Matrix>> members = members_;
  if (static_cast<int>(perm.size()) != outcomes()) throw InvariantError("bad outcome permutation");
  for (int a = 0; a < outcomes(); ++a) members.at(x).at(a) = members_.at(x).at(perm.at(a));
  return Assemblage(std::move(members));
}

Assemblage Assemblage::permute_settings(const std::vector<int>& perm) const {
  if (static_cast<int>(perm.size()) != settings()) throw InvariantError("bad setting permutation");
  std::vector<std::vector<Matrix>> members;
  for (int x = 0; x < settings(); ++x) members.push_back(members_.at(perm.at(x)));
  return Assemblage(std::move(members));
}

BlochDecomposition bloch_decompose(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw DimensionError("Bloch decomposition requires a two-qubit state");
  const Matrix& m = rho.matrix();
  const Matrix paulis[3] = {pauli_x(), pauli_y(), pauli_z()};
  BlochDecomposition bd;
  for (int i = 0; i < 3; ++i) {
    bd.a(i) = (kron(paulis[i], Matrix::Identity(2, 2)) * m).trace().real();
    bd.b(i) = (kron(Matrix::Identity(2, 2), paulis[i]) * m).trace().real();
    for (int j = 0; j < 3; ++j)
      bd.T(i, j) = (kron(paulis[i], paulis[j]) * m).trace().real();
  }
  return bd;
}

Matrix bloch_reconstruct(const BlochDecomposition& bd) {
  const Matrix paulis[3] = {pauli_x(), pauli_y(), pauli_z()};
  Matrix id2 = Matrix::Identity(2, 2);
  Matrix m = kron(id2, id2);
  for (int i = 0; i < 3; ++i) {
    m += bd.a(i) * kron(paulis[i], id2);
    m += bd.b(i) * kron(id2, paulis[i]);
    for (int j = 0; j < 3; ++j) m += bd.T(i, j) * kron(paulis[i], paulis[j]);
  }
  return m / 4.0;
}

double min_eig_partial_transpose(const DensityMatrix& rho, int da, int db) {
  return min_eigenvalue(partial_transpose(rho.matrix(), da, db));
}

std::vector<double> operator_schmidt_coefficients(const DensityMatrix& rho, int d) {
  if (rho.dim() != d * d) throw DimensionError("operator Schmidt decomposition needs d_A = d_B = d");
  const Matrix& m = rho.matrix();
  // realignment: R[(iA,jA),(iB,jB)] = ρ[(iA,iB),(jA,jB)]
  Matrix r(d * d, d * d);
  for (int ia = 0; ia < d; ++ia)
    for (int ja = 0; ja < d; ++ja)
      for (int ib = 0; ib < d; ++ib)
        for (int jb = 0; jb < d; ++jb)
          r(ia * d + ja, ib * d + jb) = m(ia * d + ib, ja * d + jb);
  Eigen::JacobiSVD<Matrix> svd(r);
  std::vector<double> out(svd.singularValues().data(),
                          svd.singularValues().data() + svd.singularValues().size());
  return out;
}

Assemblage assemblage_from_state(const DensityMatrix& rho_ab, const MeasurementSet& alice) {
  const int da = alice.dim();
  if (rho_ab.dim() % da != 0)
    throw DimensionError("state dimension is not a multiple of Alice's dimension");
  const int db = rho_ab.dim() / da;
  std::vector<std::vector<Matrix>> members(alice.settings());
  for (int x = 0; x < alice.settings(); ++x)
    for (int a = 0; a < alice.outcomes(); ++a)
      members[x].push_back(partial_trace(
          Matrix(kron(alice.effect(x, a), Matrix::Identity(db, db)) * rho_ab.matrix()), da, db,
          Subsystem::A));
  return Assemblage(std::move(members));
}

DensityMatrix singlet() {
  Vector psi(4);
  psi << 0, 1, -1, 0;
  psi /= std::sqrt(2.0);
  return DensityMatrix(Matrix(psi * psi.adjoint()));
}

}  // namespace steerkit
