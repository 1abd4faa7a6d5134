/**
 * @file lp.cpp
 */
#include "bagg/lp.hpp"

#include <algorithm>

namespace bagg {

LinearProgram LinearProgram::make(int vars) {
  LinearProgram lp;
  lp.num_vars = vars;
  lp.objective.assign(vars, Rat(0));
  lp.lower.assign(vars, Rat(0));
  lp.upper.assign(vars, std::nullopt);
  return lp;
}

void LinearProgram::add_le(std::vector<Rat> coeffs, Rat rhs) {
  constraints.push_back({std::move(coeffs), Relation::LessEq, std::move(rhs)});
}

void LinearProgram::add_eq(std::vector<Rat> coeffs, Rat rhs) {
  constraints.push_back({std::move(coeffs), Relation::Equal, std::move(rhs)});
}

namespace {

// Dense canonical-form tableau. basis[r] is the column basic in row r; basic
// columns are unit vectors. The reduced-cost row `d` and the objective value
// are maintained incrementally through pivots.
struct Tableau {
  int rows = 0, cols = 0;              // cols excludes the rhs column
  std::vector<std::vector<Rat>> a;     // rows x (cols+1); last entry is rhs
  std::vector<int> basis;
  std::vector<Rat> d;                  // reduced costs, size cols
  Rat value = 0;

  void pivot(int pr, int pc) {
    Rat inv = 1 / a[pr][pc];
    if (inv != 1)
      for (int c = 0; c <= cols; ++c) a[pr][c] *= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == pr || a[r][pc] == 0) continue;
      Rat f = a[r][pc];
      for (int c = 0; c <= cols; ++c)
        if (a[pr][c] != 0) a[r][c] -= f * a[pr][c];
    }
    if (d[pc] != 0) {
      Rat f = d[pc];
      for (int c = 0; c < cols; ++c)
        if (a[pr][c] != 0) d[c] -= f * a[pr][c];
      value += f * a[pr][cols];
    }
    basis[pr] = pc;
  }

  // Installs maximization costs (zero for banned columns) and prices out the
  // current basis so that reduced costs of basic columns are zero.
  void set_costs(const std::vector<Rat>& cost, const std::vector<bool>& banned) {
    d.assign(cols, Rat(0));
    for (int c = 0; c < cols; ++c)
      if (!banned[c]) d[c] = cost[c];
    value = 0;
    for (int r = 0; r < rows; ++r) {
      Rat cb = banned[basis[r]] ? Rat(0) : cost[basis[r]];
      if (cb == 0) continue;
      for (int c = 0; c < cols; ++c)
        if (a[r][c] != 0) d[c] -= cb * a[r][c];
      value += cb * a[r][cols];
    }
  }

  // Maximizes with Bland's rule (smallest eligible entering column; smallest
  // basic index on ratio ties). Returns false iff unbounded.
  bool run(const std::vector<bool>& banned) {
    while (true) {
      int enter = -1;
      for (int c = 0; c < cols; ++c)
        if (!banned[c] && d[c] > 0) { enter = c; break; }
      if (enter < 0) return true;
      int leave = -1;
      Rat best;
      for (int r = 0; r < rows; ++r) {
        if (a[r][enter] <= 0) continue;
        Rat ratio = a[r][cols] / a[r][enter];
        if (leave < 0 || ratio < best || (ratio == best && basis[r] < basis[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

std::optional<LpSolution> lp_solve(const LinearProgram& lp) {
  const int nv = lp.num_vars;

  // Shift to y = x - lower >= 0; upper bounds become extra inequality rows.
  enum class Rel { LE, GE, EQ };
  struct Row {
    std::vector<Rat> coeffs;
    Rel rel;
    Rat rhs;
  };
  std::vector<Row> rows;
  for (const Constraint& c : lp.constraints) {
    if (static_cast<int>(c.coeffs.size()) != nv)
      throw DimensionError("constraint arity mismatch in lp_solve");
    Rat shift = 0;
    for (int v = 0; v < nv; ++v)
      if (c.coeffs[v] != 0) shift += c.coeffs[v] * lp.lower[v];
    rows.push_back({c.coeffs, c.rel == Relation::LessEq ? Rel::LE : Rel::EQ, c.rhs - shift});
  }
  for (int v = 0; v < nv; ++v) {
    if (!lp.upper[v]) continue;
    std::vector<Rat> coeffs(nv, Rat(0));
    coeffs[v] = 1;
    rows.push_back({std::move(coeffs), Rel::LE, *lp.upper[v] - lp.lower[v]});
  }
  // Normalize to nonnegative right-hand sides (flipping <= into >=).
  for (Row& r : rows) {
    if (r.rhs < 0) {
      for (Rat& c : r.coeffs) c = -c;
      r.rhs = -r.rhs;
      if (r.rel == Rel::LE) r.rel = Rel::GE;
      else if (r.rel == Rel::GE) r.rel = Rel::LE;
    }
  }

  const int nr = static_cast<int>(rows.size());
  int n_slack = 0, n_art = 0;
  for (const Row& r : rows) {
    if (r.rel != Rel::EQ) ++n_slack;       // slack or surplus column
    if (r.rel != Rel::LE) ++n_art;         // >= and = rows need artificials
  }

  Tableau t;
  t.rows = nr;
  t.cols = nv + n_slack + n_art;
  t.a.assign(nr, std::vector<Rat>(t.cols + 1, Rat(0)));
  t.basis.assign(nr, -1);
  int next_slack = nv, next_art = nv + n_slack;
  for (int r = 0; r < nr; ++r) {
    for (int v = 0; v < nv; ++v) t.a[r][v] = rows[r].coeffs[v];
    t.a[r][t.cols] = rows[r].rhs;
    if (rows[r].rel == Rel::LE) {
      t.a[r][next_slack] = 1;
      t.basis[r] = next_slack++;
    } else {
      if (rows[r].rel == Rel::GE) t.a[r][next_slack++] = -1;
      t.a[r][next_art] = 1;
      t.basis[r] = next_art++;
    }
  }

  std::vector<bool> none(t.cols, false);
  std::vector<bool> art_banned(t.cols, false);
  for (int c = nv + n_slack; c < t.cols; ++c) art_banned[c] = true;

  // Phase 1: drive the artificials to zero.
  if (n_art > 0) {
    std::vector<Rat> phase1(t.cols, Rat(0));
    for (int c = nv + n_slack; c < t.cols; ++c) phase1[c] = -1;
    t.set_costs(phase1, none);
    if (!t.run(none)) throw Error("phase-1 LP unbounded (internal)");
    if (t.value != 0) return std::nullopt;  // infeasible
    // Drive artificials left basic at zero out of the basis: otherwise a later
    // pivot with a negative coefficient in their row could push them positive
    // and silently break the corresponding constraint. A row with no available
    // pivot is redundant and can never change again, so it is safe to keep.
    for (int r = 0; r < nr; ++r) {
      if (t.basis[r] < nv + n_slack) continue;
      for (int c = 0; c < nv + n_slack; ++c)
        if (t.a[r][c] != 0) {
          t.pivot(r, c);
          break;
        }
    }
  }

  // Phase 2 on the original objective; artificials may no longer enter. An
  // artificial left basic at value zero is harmless.
  std::vector<Rat> cost(t.cols, Rat(0));
  for (int v = 0; v < nv; ++v) cost[v] = lp.objective[v];
  t.set_costs(cost, art_banned);
  if (!t.run(art_banned)) throw UnboundedError("objective unbounded above");

  LpSolution sol;
  sol.x.assign(nv, Rat(0));
  for (int r = 0; r < nr; ++r)
    if (t.basis[r] < nv) sol.x[t.basis[r]] = t.a[r][t.cols];
  for (int v = 0; v < nv; ++v) sol.x[v] += lp.lower[v];
  sol.value = 0;
  for (int v = 0; v < nv; ++v)
    if (lp.objective[v] != 0) sol.value += lp.objective[v] * sol.x[v];
  return sol;
}

}  // namespace bagg
