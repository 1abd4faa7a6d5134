/**
 * @file optdecomp.cpp
 */
#include "bagg/optdecomp.hpp"

#include <algorithm>

namespace bagg {

IpModel build_ip(const Profile& p) {
  const int n = p.n, m = p.m, nm = n * m;
  IpModel ip;
  ip.n = n;
  ip.m = m;
  ip.lp = LinearProgram::make(3 * nm);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      ip.lp.objective[ip.u_var(i, j)] = 1;
      ip.lp.upper[ip.c_var(i, j)] = Rat(1);
      ip.lp.upper[ip.u_var(i, j)] = Rat(1);
      ip.lp.upper[ip.x_var(i, j)] = Rat(1);
      ip.binaries.push_back(ip.x_var(i, j));
    }
  auto zero_row = [&] { return std::vector<Rat>(3 * nm, Rat(0)); };
  // (1) per-voter contribution budget.
  for (int i = 0; i < n; ++i) {
    auto row = zero_row();
    for (int j = 0; j < m; ++j) row[ip.c_var(i, j)] = 1;
    ip.lp.add_eq(std::move(row), Rat(1, n));
  }
  // (2) c_ij <= x_ij.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      auto row = zero_row();
      row[ip.c_var(i, j)] = 1;
      row[ip.x_var(i, j)] = -1;
      ip.lp.add_le(std::move(row), Rat(0));
    }
  // (3) support condition: a_j + (1 - p_ij) x_ij <= 1.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      auto row = zero_row();
      for (int i2 = 0; i2 < n; ++i2) row[ip.c_var(i2, j)] = 1;
      row[ip.x_var(i, j)] += 1 - p.votes[i][j];
      ip.lp.add_le(std::move(row), Rat(1));
    }
  // (4) u_ij <= a_j.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      auto row = zero_row();
      row[ip.u_var(i, j)] = 1;
      for (int i2 = 0; i2 < n; ++i2) row[ip.c_var(i2, j)] = -1;
      ip.lp.add_le(std::move(row), Rat(0));
    }
  // (5) u_ij <= p_ij.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      auto row = zero_row();
      row[ip.u_var(i, j)] = 1;
      ip.lp.add_le(std::move(row), p.votes[i][j]);
    }
  return ip;
}

std::optional<Rat> pattern_welfare(const Profile& p, const SupportPattern& x) {
  IpModel ip = build_ip(p);
  for (int i = 0; i < p.n; ++i)
    for (int j = 0; j < p.m; ++j) {
      Rat v(x.x[i][j]);
      ip.lp.lower[ip.x_var(i, j)] = v;
      ip.lp.upper[ip.x_var(i, j)] = v;
    }
  auto sol = lp_solve(ip.lp);
  if (!sol) return std::nullopt;
  return sol->value;
}

namespace {

// Node LP over c and level-segment variables s; provably the projection of the
// IP(P) relaxation with the already-fixed binaries pinned (free x eliminated at
// its optimal value x = c, u eliminated through the concave per-alternative
// welfare written as level segments with decreasing coefficients).
//
// Variable layout: c_ij at i*m+j, s_jk at n*m + j*(n+1) + k for k in [0..n]
// (segment k < n spans [mu^k_j, mu^{k+1}_j) and earns approval n-k per unit;
// segment n spans [mu^n_j, 1] and earns nothing).
struct NodeLp {
  const Profile& p;
  std::vector<std::vector<Rat>> mu;  // mu[k][j], k in [0..n] with mu[0] = 0

  explicit NodeLp(const Profile& prof) : p(prof) {
    mu.assign(p.n + 1, std::vector<Rat>(p.m, Rat(0)));
    for (int k = 1; k <= p.n; ++k) mu[k] = level_vector(p, k).values;
  }

  int c_var(int i, int j) const { return i * p.m + j; }
  int s_var(int j, int k) const { return p.n * p.m + j * (p.n + 1) + k; }
  int vars() const { return p.n * p.m + p.m * (p.n + 1); }

  // fixed[i*m+j]: 0 or 1 when pinned, -1 when still free.
  LinearProgram build(const std::vector<int>& fixed) const {
    const int n = p.n, m = p.m;
    LinearProgram lp = LinearProgram::make(vars());
    for (int j = 0; j < m; ++j) {
      for (int k = 0; k < n; ++k) {
        lp.objective[s_var(j, k)] = n - k;
        lp.upper[s_var(j, k)] = mu[k + 1][j] - mu[k][j];
      }
      lp.upper[s_var(j, n)] = 1 - mu[n][j];
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) {
        lp.upper[c_var(i, j)] = (fixed[i * m + j] == 0) ? Rat(0) : Rat(1, n);
      }
    auto zero_row = [&] { return std::vector<Rat>(vars(), Rat(0)); };
    for (int i = 0; i < n; ++i) {
      auto row = zero_row();
      for (int j = 0; j < m; ++j) row[c_var(i, j)] = 1;
      lp.add_eq(std::move(row), Rat(1, n));
    }
    // Link a_j = sum_i c_ij to the segment decomposition.
    for (int j = 0; j < m; ++j) {
      auto row = zero_row();
      for (int i = 0; i < n; ++i) row[c_var(i, j)] = 1;
      for (int k = 0; k <= n; ++k) row[s_var(j, k)] = -1;
      lp.add_eq(std::move(row), Rat(0));
    }
    // Constraint (3): pinned x_ij = 1 gives a_j <= p_ij; free x_ij is tightest
    // at x = c, giving a_j + (1 - p_ij) c_ij <= 1.
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) {
        if (fixed[i * m + j] == 0) continue;
        auto row = zero_row();
        for (int i2 = 0; i2 < n; ++i2) row[c_var(i2, j)] = 1;
        if (fixed[i * m + j] == 1) {
          lp.add_le(std::move(row), p.votes[i][j]);
        } else {
          row[c_var(i, j)] += 1 - p.votes[i][j];
          lp.add_le(std::move(row), Rat(1));
        }
      }
    return lp;
  }
};

struct Incumbent {
  Rat welfare = -1;
  Rat min_coord = -1;  // smallest allocation entry (max-min tie-break stage)
  std::vector<Rat> alloc;
  std::vector<std::vector<Rat>> contrib;
};

// Appends one fresh variable (zero objective, zero coefficient everywhere,
// bounds [0, 1]) and returns its index.
int widen(LinearProgram& lp) {
  int idx = lp.num_vars++;
  lp.objective.push_back(Rat(0));
  lp.lower.push_back(Rat(0));
  lp.upper.push_back(Rat(1));
  for (Constraint& c : lp.constraints) c.coeffs.push_back(Rat(0));
  return idx;
}

int lex_compare(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return -1;
    if (a[i] > b[i]) return 1;
  }
  return 0;
}

struct Searcher {
  const Profile& p;
  NodeLp node_lp;
  long node_limit;
  long nodes = 0;
  Incumbent best;
  std::vector<int> branch_vars;  // row-major indices still worth branching on

  Searcher(const Profile& prof, long limit) : p(prof), node_lp(prof), node_limit(limit) {}

  // Tie-break refinement of a leaf that ties or beats the incumbent. At fixed
  // optimal welfare the stages are: (1) maximize the smallest allocation
  // entry, (2) lexicographically minimize the allocation, (3) lexicographically
  // minimize the contribution entries in row-major order. Each stage compares
  // against the incumbent with early exit.
  void refine_leaf(const std::vector<int>& fixed, const Rat& welfare) {
    const int n = p.n, m = p.m;
    LinearProgram lp = node_lp.build(fixed);
    auto welfare_row = lp.objective;
    lp.add_eq(welfare_row, welfare);

    bool strictly_better = welfare > best.welfare;

    // Stage 1: max-min coordinate via an auxiliary variable z <= a_j.
    const int z = widen(lp);
    for (int j = 0; j < m; ++j) {
      auto row = std::vector<Rat>(lp.num_vars, Rat(0));
      row[z] = 1;
      for (int i = 0; i < n; ++i) row[node_lp.c_var(i, j)] = -1;
      lp.add_le(std::move(row), Rat(0));
    }
    std::fill(lp.objective.begin(), lp.objective.end(), Rat(0));
    lp.objective[z] = 1;
    auto zsol = lp_solve(lp);
    if (!zsol) throw Error("leaf refinement LP infeasible (internal)");
    Rat min_coord = zsol->value;
    if (!strictly_better) {
      if (min_coord < best.min_coord) return;
      if (min_coord > best.min_coord) strictly_better = true;
    }
    for (int j = 0; j < m; ++j) {
      auto row = std::vector<Rat>(lp.num_vars, Rat(0));
      for (int i = 0; i < n; ++i) row[node_lp.c_var(i, j)] = -1;
      lp.add_le(std::move(row), -min_coord);  // a_j >= min_coord
    }

    std::vector<Rat> alloc(m);
    for (int j = 0; j < m; ++j) {
      std::fill(lp.objective.begin(), lp.objective.end(), Rat(0));
      for (int i = 0; i < n; ++i) lp.objective[node_lp.c_var(i, j)] = -1;
      auto sol = lp_solve(lp);
      if (!sol) throw Error("leaf refinement LP infeasible (internal)");
      alloc[j] = -sol->value;
      if (!strictly_better) {
        if (alloc[j] > best.alloc[j]) return;  // lex-worse allocation
        if (alloc[j] < best.alloc[j]) strictly_better = true;
      }
      auto pin = std::vector<Rat>(lp.num_vars, Rat(0));
      for (int i = 0; i < n; ++i) pin[node_lp.c_var(i, j)] = 1;
      lp.add_eq(std::move(pin), alloc[j]);
    }

    std::vector<std::vector<Rat>> contrib(n, std::vector<Rat>(m, Rat(0)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) {
        std::fill(lp.objective.begin(), lp.objective.end(), Rat(0));
        lp.objective[node_lp.c_var(i, j)] = -1;
        auto sol = lp_solve(lp);
        if (!sol) throw Error("leaf refinement LP infeasible (internal)");
        contrib[i][j] = -sol->value;
        if (!strictly_better) {
          if (contrib[i][j] > best.contrib[i][j]) return;
          if (contrib[i][j] < best.contrib[i][j]) strictly_better = true;
        }
        auto pin = std::vector<Rat>(lp.num_vars, Rat(0));
        pin[node_lp.c_var(i, j)] = 1;
        lp.add_eq(std::move(pin), contrib[i][j]);
      }
    if (!strictly_better) return;  // identical to the incumbent
    best = Incumbent{welfare, min_coord, std::move(alloc), std::move(contrib)};
  }

  void dfs(std::vector<int>& fixed, int depth) {
    if (++nodes > node_limit)
      throw NodeLimitExceeded("node limit " + std::to_string(node_limit) + " exceeded");
    auto sol = lp_solve(node_lp.build(fixed));
    if (!sol) return;                          // infeasible subtree
    if (sol->value < best.welfare) return;     // strict pruning (see ledger)
    if (depth == static_cast<int>(branch_vars.size())) {
      refine_leaf(fixed, sol->value);
      return;
    }
    for (int v : {1, 0}) {
      fixed[branch_vars[depth]] = v;
      dfs(fixed, depth + 1);
      fixed[branch_vars[depth]] = -1;
    }
  }
};

}  // namespace

OptDecompResult util_decomp(const Profile& p, long node_limit) {
  Searcher s(p, node_limit);
  // Seed the incumbent with GreedyDecomp: a valid decomposable allocation whose
  // welfare often prunes large parts of the tree immediately.
  DecompositionCertificate seed = greedy_decomp(p);
  s.best.welfare = social_welfare(p, seed.allocation);
  s.best.min_coord = *std::min_element(seed.allocation.values.begin(),
                                       seed.allocation.values.end());
  s.best.alloc = seed.allocation.values;
  s.best.contrib = seed.contributions.matrix;

  // Presolve by branch dominance: x_ij = 0 subsumes x_ij = 1 when p_ij = 0
  // (both force c_ij = 0, but x = 1 additionally kills a_j), and x_ij = 1
  // subsumes x_ij = 0 when p_ij is the column maximum (the added constraint
  // a_j <= p_ij already holds for every integral-feasible point, while x = 1
  // frees c_ij). Fixing these entries changes neither the optimal welfare nor
  // the lexicographic minimizer; only genuinely two-sided entries are branched,
  // in row-major order.
  std::vector<Rat> col_max(p.m, Rat(0));
  for (int j = 0; j < p.m; ++j)
    for (int i = 0; i < p.n; ++i) col_max[j] = std::max(col_max[j], p.votes[i][j]);
  std::vector<int> fixed(p.n * p.m, -1);
  for (int i = 0; i < p.n; ++i)
    for (int j = 0; j < p.m; ++j) {
      if (p.votes[i][j] == 0) fixed[i * p.m + j] = 0;
      else if (p.votes[i][j] == col_max[j]) fixed[i * p.m + j] = 1;
      else s.branch_vars.push_back(i * p.m + j);
    }
  s.dfs(fixed, 0);

  OptDecompResult res;
  res.allocation.values = s.best.alloc;
  res.contributions.matrix = s.best.contrib;
  res.welfare = s.best.welfare;
  res.nodes_explored = s.nodes;
  DecompositionCertificate cert{res.allocation, res.contributions};
  if (!verify_certificate(p, cert)) throw Error("util_decomp: invalid certificate");
  if (social_welfare(p, res.allocation) != res.welfare)
    throw Error("util_decomp: welfare mismatch");
  return res;
}

bool dwt_decide(const Profile& p, const Rat& C, long node_limit) {
  return util_decomp(p, node_limit).welfare >= C;
}

}  // namespace bagg
