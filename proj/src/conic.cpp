#include "steerkit/conic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <map>
#include <memory>

namespace steerkit::conic {

int Problem::add_block(int dim) {
  block_dims.push_back(dim);
  objective.emplace_back(RealMatrix::Zero(dim, dim));
  return static_cast<int>(block_dims.size()) - 1;
}

int Problem::add_pool(RealMatrix m) {
  pool.push_back(std::move(m));
  return static_cast<int>(pool.size()) - 1;
}

int Problem::add_row(double rhs_value) {
  const int r = static_cast<int>(rhs.size());
  rhs.conservativeResize(r + 1);
  rhs(r) = rhs_value;
  return r;
}

void Problem::add_entry(int row, int block, int mat, double coeff) {
  entries.push_back({row, block, mat, coeff});
}

void Problem::set_objective(int block, RealMatrix c) { objective.at(block) = std::move(c); }

double Result::worst_residual() const { return std::max({primal_residual, dual_residual, gap}); }

namespace {

using Eigen::Index;

double inner(const RealMatrix& a, const RealMatrix& b) { return (a.array() * b.array()).sum(); }

RealMatrix sym(const RealMatrix& m) { return (m + m.transpose()) / 2.0; }

// Cholesky with a tiny escalating shift; the iterates are kept strictly
// interior by step damping so this rarely needs more than the first try.
bool safe_llt(const RealMatrix& m, RealMatrix& lower) {
  RealMatrix a = m;
  double shift = 0;
  for (int attempt = 0; attempt < 4; ++attempt) {
    Eigen::LLT<RealMatrix> llt(a);
    if (llt.info() == Eigen::Success) {
      lower = llt.matrixL();
      return true;
    }
    shift = shift == 0 ? 1e-14 * (1.0 + std::abs(m.trace())) : shift * 100;
    a = m + shift * RealMatrix::Identity(m.rows(), m.cols());
  }
  return false;
}

struct BlockPlan {
  struct LocalEntry {
    int row;
    int local_mat;
    double coeff;
  };
  std::vector<int> mats;  // pool indices used by this block
  std::vector<LocalEntry> entries;
};

class NtIpmSolver final : public Solver {
 public:
  std::string name() const override { return "ipm"; }

  Result solve(const Problem& p, const Options& opt) const override {
    const int nblocks = p.blocks();
    const int k = p.rows();
    if (nblocks == 0 || k == 0) throw SolverError("conic problem is empty");
    for (const auto& e : p.entries) {
      if (e.row < 0 || e.row >= k || e.block < 0 || e.block >= nblocks || e.mat < 0 ||
          e.mat >= static_cast<int>(p.pool.size()))
        throw SolverError("conic entry out of range");
      if (p.pool[e.mat].rows() != p.block_dims[e.block])
        throw SolverError("constraint matrix does not match block dimension");
    }

    // group entries by block
    std::vector<BlockPlan> plans(nblocks);
    for (const auto& e : p.entries) {
      auto& plan = plans[e.block];
      int local = -1;
      for (std::size_t i = 0; i < plan.mats.size(); ++i)
        if (plan.mats[i] == e.mat) local = static_cast<int>(i);
      if (local < 0) {
        plan.mats.push_back(e.mat);
        local = static_cast<int>(plan.mats.size()) - 1;
      }
      plan.entries.push_back({e.row, local, e.coeff});
    }

    const double total_dim = [&] {
      double nu = 0;
      for (int d : p.block_dims) nu += d;
      return nu;
    }();

    std::vector<RealMatrix> x(nblocks), s(nblocks);
    for (int b = 0; b < nblocks; ++b) {
      x[b] = RealMatrix::Identity(p.block_dims[b], p.block_dims[b]);
      s[b] = RealMatrix::Identity(p.block_dims[b], p.block_dims[b]);
    }
    RealVector y = RealVector::Zero(k);

    const double bnorm = 1.0 + p.rhs.norm();
    double cnorm = 1.0;
    for (const auto& c : p.objective) cnorm += c.squaredNorm();
    cnorm = std::sqrt(cnorm);

    auto apply_a = [&](const std::vector<RealMatrix>& xs) {
      RealVector out = RealVector::Zero(k);
      for (int b = 0; b < nblocks; ++b)
        for (const auto& e : plans[b].entries)
          out(e.row) += e.coeff * inner(p.pool[plans[b].mats[e.local_mat]], xs[b]);
      return out;
    };
    auto apply_at_block = [&](const RealVector& yy, int b) {
      RealMatrix out = RealMatrix::Zero(p.block_dims[b], p.block_dims[b]);
      for (const auto& e : plans[b].entries)
        out += e.coeff * yy(e.row) * p.pool[plans[b].mats[e.local_mat]];
      return out;
    };

    Result best;
    best.status = Status::max_iterations;
    double best_score = std::numeric_limits<double>::infinity();

    std::vector<RealMatrix> w(nblocks), rmat(nblocks), rinv(nblocks), rd(nblocks);
    std::vector<RealVector> lambda(nblocks);
    std::vector<RealMatrix> dxa(nblocks), dsa(nblocks), dx(nblocks), ds(nblocks), kmat(nblocks);

    bool numerical_trouble = false;
    Result res;
    for (int iter = 0; iter <= opt.max_iterations; ++iter) {
      // residuals and duality gap
      RealVector rp = p.rhs - apply_a(x);
      double gap_abs = 0, pobj = 0;
      for (int b = 0; b < nblocks; ++b) {
        gap_abs += inner(x[b], s[b]);
        pobj += inner(p.objective[b], x[b]);
        rd[b] = p.objective[b] - apply_at_block(y, b) - s[b];
      }
      const double dobj = p.rhs.dot(y);
      double rd_norm = 0;
      for (int b = 0; b < nblocks; ++b) rd_norm += rd[b].squaredNorm();
      rd_norm = std::sqrt(rd_norm);

      res.primal_objective = pobj;
      res.dual_objective = dobj;
      res.primal_residual = rp.norm() / bnorm;
      res.dual_residual = rd_norm / cnorm;
      res.gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
      res.iterations = iter;

      const double score = std::max({res.primal_residual, res.dual_residual, res.gap});
      if (score < best_score) {
        best_score = score;
        best = res;
        best.x = x;
        best.y = y;
        best.s = s;
      }
      if (opt.verbose)
        std::cerr << "ipm iter " << iter << " pres " << res.primal_residual << " dres "
                  << res.dual_residual << " gap " << res.gap << "\n";
      if (score <= opt.eps) {
        best.status = Status::optimal;
        return best;
      }
      if (iter == opt.max_iterations) break;

      const double mu = gap_abs / total_dim;

      // Nesterov-Todd scaling per block
      int scaling_failures = 0;
#pragma omp parallel for schedule(dynamic, 64) reduction(+ : scaling_failures)
      for (int b = 0; b < nblocks; ++b) {
        RealMatrix lx, ls;
        if (!safe_llt(x[b], lx) || !safe_llt(s[b], ls)) {
          ++scaling_failures;
          continue;
        }
        Eigen::JacobiSVD<RealMatrix> svd(RealMatrix(ls.transpose() * lx),
                                         Eigen::ComputeFullU | Eigen::ComputeFullV);
        lambda[b] = svd.singularValues();
        RealVector si = lambda[b].array().sqrt().inverse().matrix();
        rmat[b] = lx * svd.matrixV() * si.asDiagonal();
        rinv[b] = si.asDiagonal() * lambda[b].asDiagonal() *
                  svd.matrixV().transpose() *
                  lx.triangularView<Eigen::Lower>().solve(
                      RealMatrix::Identity(lx.rows(), lx.cols()));
        w[b] = rmat[b] * rmat[b].transpose();
      }
      if (scaling_failures > 0) {
        numerical_trouble = true;
        break;
      }

      // Schur complement M_ij = Σ_b ⟨A_i, W A_j W⟩
      RealMatrix m = RealMatrix::Zero(k, k);
#pragma omp parallel
      {
        RealMatrix local = RealMatrix::Zero(k, k);
#pragma omp for schedule(dynamic, 64) nowait
        for (int b = 0; b < nblocks; ++b) {
          const auto& plan = plans[b];
          const int nm = static_cast<int>(plan.mats.size());
          if (nm == 0) continue;
          std::vector<RealMatrix> waw(nm);
          for (int q = 0; q < nm; ++q) waw[q] = w[b] * p.pool[plan.mats[q]] * w[b];
          RealMatrix t(nm, nm);
          for (int q1 = 0; q1 < nm; ++q1)
            for (int q2 = 0; q2 < nm; ++q2) t(q1, q2) = inner(p.pool[plan.mats[q1]], waw[q2]);
          for (const auto& e1 : plan.entries)
            for (const auto& e2 : plan.entries)
              local(e1.row, e2.row) += e1.coeff * e2.coeff * t(e1.local_mat, e2.local_mat);
        }
#pragma omp critical
        m += local;
      }
      Eigen::LDLT<RealMatrix> mldlt(sym(m));
      if (mldlt.info() != Eigen::Success) {
        numerical_trouble = true;
        break;
      }

      // direction for given scaled-space complementarity target g
      auto solve_direction = [&](const std::vector<RealMatrix>& g,
                                 std::vector<RealMatrix>& out_dx, RealVector& out_dy,
                                 std::vector<RealMatrix>& out_ds) {
        RealVector rhs_y = rp;
        for (int b = 0; b < nblocks; ++b) {
          kmat[b] = rmat[b] * g[b] * rmat[b].transpose();
          RealMatrix v = kmat[b] - w[b] * rd[b] * w[b];
          for (const auto& e : plans[b].entries)
            rhs_y(e.row) -= e.coeff * inner(p.pool[plans[b].mats[e.local_mat]], v);
        }
        out_dy = mldlt.solve(rhs_y);
#pragma omp parallel for schedule(dynamic, 64)
        for (int b = 0; b < nblocks; ++b) {
          out_ds[b] = sym(rd[b] - apply_at_block(out_dy, b));
          out_dx[b] = sym(kmat[b] - w[b] * out_ds[b] * w[b]);
        }
      };

      // largest step keeping Λ + α·D ⪰ 0 in scaled space
      auto max_step = [&](const std::vector<RealMatrix>& d, bool primal) {
        double alpha = 1.0 / 0.99;
        for (int b = 0; b < nblocks; ++b) {
          RealMatrix scaled = primal ? RealMatrix(rinv[b] * d[b] * rinv[b].transpose())
                                     : RealMatrix(rmat[b].transpose() * d[b] * rmat[b]);
          RealVector isq = lambda[b].array().sqrt().inverse().matrix();
          RealMatrix n = isq.asDiagonal() * sym(scaled) * isq.asDiagonal();
          Eigen::SelfAdjointEigenSolver<RealMatrix> es(sym(n), Eigen::EigenvaluesOnly);
          const double lo = es.eigenvalues().minCoeff();
          if (lo < 0) alpha = std::min(alpha, -1.0 / lo);
        }
        return alpha;
      };

      // predictor
      std::vector<RealMatrix> g(nblocks);
      for (int b = 0; b < nblocks; ++b) g[b] = RealMatrix(-lambda[b].asDiagonal());
      RealVector dya;
      solve_direction(g, dxa, dya, dsa);
      const double ap_a = std::min(1.0, 0.99 * max_step(dxa, true));
      const double ad_a = std::min(1.0, 0.99 * max_step(dsa, false));

      double gap_aff = 0;
      for (int b = 0; b < nblocks; ++b)
        gap_aff += inner(x[b] + ap_a * dxa[b], s[b] + ad_a * dsa[b]);
      gap_aff = std::max(gap_aff, 0.0);
      double sigma = std::pow(gap_aff / gap_abs, 3.0);
      sigma = std::clamp(sigma, 1e-10, 1.0);

      // corrector: g = (Λ∘)^{-1}[σμI − Λ² − sym(dX̂_a dŜ_a)]
#pragma omp parallel for schedule(dynamic, 64)
      for (int b = 0; b < nblocks; ++b) {
        RealMatrix dxh = sym(rinv[b] * dxa[b] * rinv[b].transpose());
        RealMatrix dsh = sym(rmat[b].transpose() * dsa[b] * rmat[b]);
        RealMatrix n = -sym(dxh * dsh);
        for (Index i = 0; i < n.rows(); ++i) n(i, i) += sigma * mu - lambda[b](i) * lambda[b](i);
        for (Index i = 0; i < n.rows(); ++i)
          for (Index j = 0; j < n.cols(); ++j) n(i, j) *= 2.0 / (lambda[b](i) + lambda[b](j));
        g[b] = n;
      }
      RealVector dy;
      solve_direction(g, dx, dy, ds);
      const double ap = std::min(1.0, 0.99 * max_step(dx, true));
      const double ad = std::min(1.0, 0.99 * max_step(ds, false));

      bool finite = std::isfinite(ap) && std::isfinite(ad) && dy.allFinite();
      for (int b = 0; finite && b < nblocks; ++b)
        finite = dx[b].allFinite() && ds[b].allFinite();
      if (!finite) {
        numerical_trouble = true;
        break;
      }

      for (int b = 0; b < nblocks; ++b) {
        x[b] = sym(x[b] + ap * dx[b]);
        s[b] = sym(s[b] + ad * ds[b]);
      }
      y += ad * dy;
    }

    if (best_score <= opt.accept_eps)
      best.status = Status::optimal;
    else
      best.status = numerical_trouble ? Status::numerical_failure : Status::max_iterations;
    return best;
  }
};

}  // namespace

const Solver& backend(const std::string& name) {
  static const NtIpmSolver ipm;
  if (name == "ipm" || name.empty()) return ipm;
  throw SolverError("unknown conic backend '" + name + "' (available: ipm)");
}

const Solver& backend() {
  const char* env = std::getenv("STEERKIT_SOLVER");
  return backend(env ? std::string(env) : "ipm");
}

}  // namespace steerkit::conic
