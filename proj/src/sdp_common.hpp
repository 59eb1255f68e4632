#pragma once

// Internal glue between the complex Hermitian quantum layer and the real
// symmetric conic solver. Hermitian PSD blocks are realized through the
// standard 2n×2n real-symmetric embedding [[X, −Y], [Y, X]].

#include <vector>

#include "steerkit/conic.hpp"
#include "steerkit/linalg.hpp"

namespace steerkit::detail {

inline RealMatrix embed_hermitian(const Matrix& h) {
  const Eigen::Index d = h.rows();
  RealMatrix e(2 * d, 2 * d);
  e.topLeftCorner(d, d) = h.real();
  e.bottomRightCorner(d, d) = h.real();
  e.topRightCorner(d, d) = -h.imag();
  e.bottomLeftCorner(d, d) = h.imag();
  return e;
}

inline Matrix decode_hermitian(const RealMatrix& e) {
  const Eigen::Index d = e.rows() / 2;
  Matrix m(d, d);
  m.real() = (e.topLeftCorner(d, d) + e.bottomRightCorner(d, d)) / 2.0;
  m.imag() = (e.bottomLeftCorner(d, d) - e.topRightCorner(d, d)) / 2.0;
  return hermitize(m);
}

/// Embedded orthonormal Hermitian basis registered in a problem's pool.
struct EmbeddedBasis {
  int d = 0;
  std::vector<Matrix> herm;   // complex basis H_p, ⟨H_p, H_q⟩ = δ_pq
  std::vector<int> pool_ids;  // pool index of embed(H_p)
};

inline EmbeddedBasis add_embedded_basis(conic::Problem& p, int d) {
  EmbeddedBasis basis;
  basis.d = d;
  basis.herm = hermitian_basis(d);
  for (const auto& h : basis.herm) basis.pool_ids.push_back(p.add_pool(embed_hermitian(h)));
  return basis;
}

/// ⟨H_p, M⟩ for Hermitian M (real by construction).
inline double herm_component(const Matrix& basis_mat, const Matrix& m) {
  return (basis_mat.adjoint() * m).trace().real();
}

/// Isometry onto the support of a PSD matrix (columns span the support).
struct SupportBasis {
  Matrix isometry;  // d × rank
  int rank = 0;
  bool full() const { return rank == isometry.rows(); }
};

inline SupportBasis support_of(const Matrix& psd, double cutoff = 1e-10) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(psd));
  std::vector<int> keep;
  for (Eigen::Index i = 0; i < psd.rows(); ++i)
    if (es.eigenvalues()(i) > cutoff) keep.push_back(static_cast<int>(i));
  SupportBasis out;
  out.rank = static_cast<int>(keep.size());
  out.isometry = Matrix(psd.rows(), out.rank);
  for (int i = 0; i < out.rank; ++i) out.isometry.col(i) = es.eigenvectors().col(keep[i]);
  return out;
}

/// Outcome of the common max-μ feasibility program
///   max μ  s.t.  Σ_λ D(a|x,λ) σ_λ = members[x][a],  σ_λ ⪰ μ·I,
/// together with its normalized dual certificate.
struct MaxMuOutcome {
  double mu = 0;
  std::vector<Matrix> sigma;                      // σ_λ = X_λ + μ·I
  std::vector<std::vector<Matrix>> certificate;   // F[x][a], Tr Σ F D = 1, Σ F D ⪰ 0
  double certificate_value = 0;                   // Tr Σ F_{a|x} members[x][a]
  conic::Result raw;
};

/// Solves the max-μ program for a family of Hermitian d×d members indexed by
/// (setting, outcome); used for LHS feasibility and joint measurability.
MaxMuOutcome solve_max_mu(const std::vector<std::vector<Matrix>>& members, int d,
                          const conic::Options& options);

/// Shared slack-form program:
///   optimize Σ_λ Tr σ_λ  s.t.  ±(members[x][a] − Σ_λ D σ_λ) ⪰ 0, σ_λ ⪰ 0.
/// maximize=true gives the steering-weight inner program (LHS part below the
/// members), maximize=false the robustness program (LHS cover above them).
struct SlackFormOutcome {
  double total_trace = 0;          // Σ_λ Tr σ_λ at the optimum
  std::vector<Matrix> sigma;       // optimal σ_λ
  conic::Result raw;
};

SlackFormOutcome solve_slack_form(const std::vector<std::vector<Matrix>>& members, int d,
                                  bool maximize, const conic::Options& options);

}  // namespace steerkit::detail
