#pragma once

// Self-contained dense two-phase revised simplex, used only by test oracles.
// Kept deliberately independent of the conic interior-point code path.

#include <vector>

namespace steerkit::testing {

struct LpRow {
  std::vector<std::pair<int, double>> terms;  // (column, coefficient)
  double rhs = 0;
  char type = '<';  // '<' (≤), '>' (≥), '=' (equality)
};

struct LpProblem {
  int cols = 0;
  std::vector<double> objective;  // minimized
  std::vector<LpRow> rows;
};

struct LpSolution {
  enum class Status { optimal, infeasible, unbounded, stalled } status = Status::stalled;
  double value = 0;
  std::vector<double> x;
};

LpSolution solve_lp(const LpProblem& problem);

}  // namespace steerkit::testing
