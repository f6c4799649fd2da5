#include "wsp/simplex.hpp"

#include <stdexcept>

namespace wsp {

namespace {

class Tableau {
 public:
  // rows x (cols + 1); the last column is the right-hand side.
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> obj;  // reduced costs, last entry = -objective
  std::vector<int> basis;
  int cols = 0;

  void pivot(int r, int c) {
    std::vector<Rational>& prow = a[r];
    const Rational inv = 1 / prow[c];
    std::vector<int> nz;
    for (int j = 0; j <= cols; ++j) {
      if (sgn(prow[j]) != 0) {
        prow[j] *= inv;
        nz.push_back(j);
      }
    }
    auto eliminate = [&](std::vector<Rational>& row) {
      if (sgn(row[c]) == 0) return;
      const Rational factor = row[c];
      for (int j : nz) row[j] -= factor * prow[j];
    };
    for (int i = 0; i < static_cast<int>(a.size()); ++i) {
      if (i != r) eliminate(a[i]);
    }
    eliminate(obj);
    basis[r] = c;
  }

  // Bland's rule. Columns with allowed[j] == 0 never enter.
  // Returns false when unbounded.
  bool optimise(const std::vector<char>& allowed) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < cols; ++j) {
        if (allowed[j] && sgn(obj[j]) < 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      Rational best;
      for (int i = 0; i < static_cast<int>(a.size()); ++i) {
        if (sgn(a[i][enter]) <= 0) continue;
        Rational ratio = a[i][cols] / a[i][enter];
        if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = std::move(ratio);
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  void set_objective(const std::vector<Rational>& cost) {
    obj.assign(cols + 1, Rational(0));
    for (int j = 0; j < cols; ++j) obj[j] = cost[j];
    for (int i = 0; i < static_cast<int>(a.size()); ++i) {
      const Rational cb = cost[basis[i]];
      if (sgn(cb) == 0) continue;
      for (int j = 0; j <= cols; ++j) {
        if (sgn(a[i][j]) != 0) obj[j] -= cb * a[i][j];
      }
    }
  }
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
  const int nv = lp.num_vars();
  const int nr = static_cast<int>(lp.rows.size());

  // Column layout: structural, then one slack/surplus per inequality row,
  // then one artificial per GreaterEqual/Equal row.
  std::vector<bool> flipped(nr, false);
  std::vector<RowSense> sense(nr);
  int slack_count = 0;
  int art_count = 0;
  for (int i = 0; i < nr; ++i) {
    sense[i] = lp.rows[i].sense;
    if (sgn(lp.rows[i].rhs) < 0) {
      flipped[i] = true;
      if (sense[i] == RowSense::LessEqual) {
        sense[i] = RowSense::GreaterEqual;
      } else if (sense[i] == RowSense::GreaterEqual) {
        sense[i] = RowSense::LessEqual;
      }
    }
    if (sense[i] != RowSense::Equal) ++slack_count;
    if (sense[i] != RowSense::LessEqual) ++art_count;
  }

  Tableau t;
  t.cols = nv + slack_count + art_count;
  t.a.assign(nr, std::vector<Rational>(t.cols + 1));
  t.basis.assign(nr, -1);
  std::vector<int> identity_col(nr, -1);
  std::vector<char> is_artificial(t.cols, 0);
  int next_slack = nv;
  int next_art = nv + slack_count;
  for (int i = 0; i < nr; ++i) {
    const LpRow& row = lp.rows[i];
    const int sign = flipped[i] ? -1 : 1;
    for (const auto& [var, coef] : row.coeffs) {
      if (var < 0 || var >= nv) throw std::out_of_range("lp row references unknown variable");
      t.a[i][var] += sign * coef;
    }
    t.a[i][t.cols] = sign * row.rhs;
    switch (sense[i]) {
      case RowSense::LessEqual:
        t.a[i][next_slack] = 1;
        identity_col[i] = next_slack;
        t.basis[i] = next_slack++;
        break;
      case RowSense::GreaterEqual:
        t.a[i][next_slack++] = -1;
        [[fallthrough]];
      case RowSense::Equal:
        t.a[i][next_art] = 1;
        is_artificial[next_art] = 1;
        identity_col[i] = next_art;
        t.basis[i] = next_art++;
        break;
    }
  }

  LpSolution out;
  std::vector<char> allowed(t.cols, 1);
  if (art_count > 0) {
    std::vector<Rational> phase1(t.cols);
    for (int j = 0; j < t.cols; ++j) {
      if (is_artificial[j]) phase1[j] = 1;
    }
    t.set_objective(phase1);
    t.optimise(allowed);
    if (sgn(t.obj[t.cols]) != 0) {
      out.status = LpStatus::Infeasible;
      return out;
    }
    // Drive zero-valued artificials out of the basis where possible. Rows
    // where that fails are redundant and never change again.
    for (int i = 0; i < nr; ++i) {
      if (!is_artificial[t.basis[i]]) continue;
      for (int j = 0; j < t.cols; ++j) {
        if (!is_artificial[j] && sgn(t.a[i][j]) != 0) {
          t.pivot(i, j);
          break;
        }
      }
    }
    for (int j = 0; j < t.cols; ++j) {
      if (is_artificial[j]) allowed[j] = 0;
    }
  }

  std::vector<Rational> cost(t.cols);
  for (int j = 0; j < nv; ++j) cost[j] = lp.objective[j];
  t.set_objective(cost);
  if (!t.optimise(allowed)) {
    out.status = LpStatus::Unbounded;
    return out;
  }

  out.status = LpStatus::Optimal;
  out.objective = -t.obj[t.cols];
  out.values.assign(nv, Rational(0));
  for (int i = 0; i < nr; ++i) {
    if (t.basis[i] < nv) out.values[t.basis[i]] = t.a[i][t.cols];
  }
  out.duals.assign(nr, Rational(0));
  for (int i = 0; i < nr; ++i) {
    Rational y = -t.obj[identity_col[i]];
    out.duals[i] = flipped[i] ? Rational(-y) : y;
  }
  return out;
}

}  // namespace wsp
