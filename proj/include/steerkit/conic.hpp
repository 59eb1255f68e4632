#pragma once

#include <string>
#include <vector>

#include "steerkit/core.hpp"

namespace steerkit::conic {

/// Standard-form conic program over a product of real symmetric PSD blocks:
///
///   min  Σ_b ⟨C_b, X_b⟩   s.t.   A(X) = rhs,   X_b ⪰ 0,
///
/// where row r of A(X) is Σ_entries(r) coeff · ⟨pool[mat], X_block⟩.
/// Constraint matrices are referenced from a shared pool so that the solver
/// can reuse scaled products across the many blocks that share them.
struct Problem {
  std::vector<int> block_dims;
  std::vector<RealMatrix> objective;  // one per block, zero matrices allowed
  std::vector<RealMatrix> pool;

  struct Entry {
    int row;
    int block;
    int mat;
    double coeff;
  };
  std::vector<Entry> entries;
  RealVector rhs;

  int add_block(int dim);
  int add_pool(RealMatrix m);
  int add_row(double rhs_value);
  void add_entry(int row, int block, int mat, double coeff);
  void set_objective(int block, RealMatrix c);

  int rows() const { return static_cast<int>(rhs.size()); }
  int blocks() const { return static_cast<int>(block_dims.size()); }
};

enum class Status { optimal, max_iterations, numerical_failure };

struct Options {
  double eps = 1e-10;        // target for feasibility and duality gap (relative)
  double accept_eps = 5e-8;  // worst residual still accepted as a solution
  int max_iterations = 200;
  bool verbose = false;
};

struct Result {
  Status status = Status::numerical_failure;
  std::vector<RealMatrix> x;  // primal blocks
  RealVector y;               // dual multipliers, one per row
  std::vector<RealMatrix> s;  // dual slack blocks
  double primal_objective = 0;
  double dual_objective = 0;
  double primal_residual = 0;  // relative equality residual
  double dual_residual = 0;    // relative dual residual
  double gap = 0;              // relative duality gap
  int iterations = 0;

  double worst_residual() const;
  bool acceptable(double eps) const { return worst_residual() <= eps; }
};

/// Conic backend seam. The default backend is a Nesterov-Todd scaled
/// primal-dual predictor-corrector interior-point method.
class Solver {
 public:
  virtual ~Solver() = default;
  virtual Result solve(const Problem& problem, const Options& options) const = 0;
  virtual std::string name() const = 0;
};

/// Backend selected by STEERKIT_SOLVER (default "ipm"); throws on unknown names.
const Solver& backend();
const Solver& backend(const std::string& name);

}  // namespace steerkit::conic
