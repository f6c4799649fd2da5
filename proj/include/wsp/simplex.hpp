#pragma once

#include <utility>
#include <vector>

#include "wsp/rational.hpp"

namespace wsp {

enum class RowSense { LessEqual, GreaterEqual, Equal };

struct LpRow {
  std::vector<std::pair<int, Rational>> coeffs;  // (variable, coefficient)
  RowSense sense = RowSense::LessEqual;
  Rational rhs;
};

// min objective . x  subject to rows, x >= 0.
struct LinearProgram {
  std::vector<Rational> objective;
  std::vector<LpRow> rows;

  int num_vars() const { return static_cast<int>(objective.size()); }
  int add_variable(const Rational& cost) {
    objective.push_back(cost);
    return num_vars() - 1;
  }
  int add_row(LpRow row) {
    rows.push_back(std::move(row));
    return static_cast<int>(rows.size()) - 1;
  }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Rational objective;
  std::vector<Rational> values;
  // One multiplier per row: >= 0 for GreaterEqual rows, <= 0 for LessEqual
  // rows, free for Equal rows. At optimality rhs . duals == objective and
  // every reduced cost c_j - A_j . duals is non-negative.
  std::vector<Rational> duals;
};

// Dense two-phase primal simplex in exact arithmetic with Bland's rule, so it
// terminates on degenerate problems. Sized for desk-scale LPs.
LpSolution solve_lp(const LinearProgram& lp);

}  // namespace wsp
