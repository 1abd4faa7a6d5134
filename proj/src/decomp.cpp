/**
 * @file decomp.cpp
 */
#include "bagg/decomp.hpp"

#include <algorithm>
#include <queue>

namespace bagg {

namespace {

// The argmax sets N_j^+ for the current state: all voters with positive budget
// whose vote on j exceeds the partial allocation and is maximal among those.
std::vector<std::vector<int>> argmax_sets(const GreedyState& st, const Profile& p) {
  std::vector<std::vector<int>> sets(p.m);
  for (int j = 0; j < p.m; ++j) {
    Rat best = -1;
    for (int i = 0; i < p.n; ++i) {
      if (st.budgets[i] <= 0) continue;
      if (p.votes[i][j] <= st.a_tilde[j]) continue;
      if (p.votes[i][j] > best) {
        best = p.votes[i][j];
        sets[j].clear();
        sets[j].push_back(i);
      } else if (p.votes[i][j] == best) {
        sets[j].push_back(i);
      }
    }
  }
  return sets;
}

}  // namespace

MaxTauResult max_tau(const GreedyState& state, const Profile& p) {
  const LevelVector mu = level_vector(p, state.outer_k);
  const auto sets = argmax_sets(state, p);

  // Per-voter charge at a given tau; piecewise linear in tau with kinks only
  // at the values a~_j and mu^k_j.
  auto payment = [&](int i, int j, const Rat& tau) -> Rat {
    Rat raise = std::min(mu.values[j], tau) - state.a_tilde[j];
    if (raise <= 0) return Rat(0);
    return raise / static_cast<int>(sets[j].size());
  };
  auto total_charge = [&](int i, const Rat& tau) {
    Rat s = 0;
    for (int j = 0; j < p.m; ++j)
      if (std::find(sets[j].begin(), sets[j].end(), i) != sets[j].end())
        s += payment(i, j, tau);
    return s;
  };

  std::vector<Rat> cand = {Rat(0), Rat(1)};
  for (int j = 0; j < p.m; ++j) {
    if (state.a_tilde[j] >= 0 && state.a_tilde[j] <= 1) cand.push_back(state.a_tilde[j]);
    if (mu.values[j] >= 0 && mu.values[j] <= 1) cand.push_back(mu.values[j]);
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  // tau*_i = sup { tau : charge_i(tau) <= b_i }, found by ascending scan and
  // linear interpolation in the first interval where the budget binds.
  Rat tau_star = 1;
  for (int i = 0; i < p.n; ++i) {
    if (state.budgets[i] <= 0) continue;
    Rat prev_t = cand.front();
    Rat prev_c = total_charge(i, prev_t);  // always 0 at tau = 0
    for (size_t s = 1; s < cand.size(); ++s) {
      Rat cur_t = cand[s];
      Rat cur_c = total_charge(i, cur_t);
      if (cur_c > state.budgets[i]) {
        Rat tau_i = prev_t + (state.budgets[i] - prev_c) * (cur_t - prev_t) / (cur_c - prev_c);
        tau_star = std::min(tau_star, tau_i);
        break;
      }
      prev_t = cur_t;
      prev_c = cur_c;
    }
  }

  MaxTauResult res;
  res.tau_star = tau_star;
  res.payments.assign(p.n, std::vector<Rat>(p.m, Rat(0)));
  for (int j = 0; j < p.m; ++j)
    for (int i : sets[j]) res.payments[i][j] = payment(i, j, tau_star);
  return res;
}

DecompositionCertificate greedy_decomp(const Profile& p) {
  GreedyState st;
  st.a_tilde.assign(p.m, Rat(0));
  st.budgets.assign(p.n, Rat(1, p.n));

  Contributions contrib;
  contrib.matrix.assign(p.n, std::vector<Rat>(p.m, Rat(0)));

  int inner_total = 0;
  for (st.outer_k = 1; st.outer_k <= p.n; ++st.outer_k) {
    while (true) {
      // Termination argument: each iteration either ends the level (tau* = 1)
      // or exhausts at least one voter's budget, so at most 2n in total.
      if (++inner_total > 2 * p.n) throw Error("greedy_decomp: inner iteration cap exceeded");
      MaxTauResult mt = max_tau(st, p);
      for (int i = 0; i < p.n; ++i) {
        for (int j = 0; j < p.m; ++j) {
          const Rat& pay = mt.payments[i][j];
          if (pay == 0) continue;
          st.budgets[i] -= pay;
          st.a_tilde[j] += pay;
          contrib.matrix[i][j] += pay;
        }
      }
      if (mt.tau_star == 1) break;
    }
  }

  for (const Rat& b : st.budgets)
    if (b != 0) throw Error("greedy_decomp: leftover budget (invariant breach)");

  DecompositionCertificate cert;
  cert.allocation.values = st.a_tilde;
  cert.contributions = std::move(contrib);
  if (!verify_certificate(p, cert)) throw Error("greedy_decomp: invalid certificate");
  return cert;
}

bool verify_certificate(const Profile& p, const DecompositionCertificate& cert) {
  const auto& c = cert.contributions.matrix;
  const auto& a = cert.allocation.values;
  if (static_cast<int>(c.size()) != p.n || static_cast<int>(a.size()) != p.m)
    throw DimensionError("DimensionMismatch in verify_certificate");
  const Rat share(1, p.n);
  for (int i = 0; i < p.n; ++i) {
    if (static_cast<int>(c[i].size()) != p.m)
      throw DimensionError("DimensionMismatch in verify_certificate");
    Rat row = 0;
    for (int j = 0; j < p.m; ++j) {
      if (c[i][j] < 0 || c[i][j] > share) return false;
      if (c[i][j] > 0 && a[j] > p.votes[i][j]) return false;  // support condition
      row += c[i][j];
    }
    if (row != share) return false;
  }
  for (int j = 0; j < p.m; ++j) {
    Rat col = 0;
    for (int i = 0; i < p.n; ++i) col += c[i][j];
    if (col != a[j]) return false;
  }
  return true;
}

std::optional<Contributions> is_decomposable(const Profile& p, const Allocation& a) {
  if (static_cast<int>(a.values.size()) != p.m)
    throw DimensionError("DimensionMismatch in is_decomposable");

  // Scale all capacities by a common denominator so the flow is integral.
  Int L = p.n;
  for (const Rat& v : a.values) L = boost::multiprecision::lcm(L, den(v));

  // Nodes: 0 source, 1..n voters, n+1..n+m alternatives, n+m+1 sink.
  const int S = 0, T = p.n + p.m + 1, V = T + 1;
  std::vector<std::vector<Int>> cap(V, std::vector<Int>(V, Int(0)));
  const Int voter_cap = L / p.n;
  for (int i = 0; i < p.n; ++i) {
    cap[S][1 + i] = voter_cap;
    for (int j = 0; j < p.m; ++j)
      if (p.votes[i][j] >= a.values[j]) cap[1 + i][1 + p.n + j] = voter_cap;
  }
  for (int j = 0; j < p.m; ++j) {
    Rat scaled = a.values[j] * L;
    cap[1 + p.n + j][T] = num(scaled);  // exact integer by construction of L
  }

  // Edmonds-Karp: BFS shortest augmenting paths on the residual network.
  Int flow = 0;
  while (true) {
    std::vector<int> parent(V, -1);
    parent[S] = S;
    std::queue<int> q;
    q.push(S);
    while (!q.empty() && parent[T] == -1) {
      int u = q.front();
      q.pop();
      for (int v = 0; v < V; ++v) {
        if (parent[v] == -1 && cap[u][v] > 0) {
          parent[v] = u;
          q.push(v);
        }
      }
    }
    if (parent[T] == -1) break;
    Int bottleneck = -1;
    for (int v = T; v != S; v = parent[v]) {
      const Int& c = cap[parent[v]][v];
      if (bottleneck < 0 || c < bottleneck) bottleneck = c;
    }
    for (int v = T; v != S; v = parent[v]) {
      cap[parent[v]][v] -= bottleneck;
      cap[v][parent[v]] += bottleneck;
    }
    flow += bottleneck;
  }

  if (flow != L) return std::nullopt;
  Contributions out;
  out.matrix.assign(p.n, std::vector<Rat>(p.m, Rat(0)));
  for (int i = 0; i < p.n; ++i)
    for (int j = 0; j < p.m; ++j)
      if (p.votes[i][j] >= a.values[j]) {
        // Flow on i->j equals the reverse residual capacity.
        out.matrix[i][j] = Rat(cap[1 + p.n + j][1 + i], L);
      }
  return out;
}

}  // namespace bagg
