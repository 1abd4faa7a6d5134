/**
 * @file weighted.cpp
 */
#include "bagg/weighted.hpp"

#include <algorithm>
#include <numeric>

namespace bagg {

WeightedProfile make_weighted(Profile p, std::vector<long> weights) {
  if (static_cast<int>(weights.size()) != p.n)
    throw DimensionError("weights arity must equal the number of voters");
  long total = 0;
  for (long w : weights) {
    if (w < 1) throw ValidationError("weights must be positive integers");
    total += w;
  }
  return WeightedProfile{std::move(p), std::move(weights), total};
}

OmegaIndex build_omega(const WeightedProfile& wp) {
  const Profile& p = wp.profile;
  OmegaIndex idx;
  idx.omega.assign(p.m, std::vector<long>(p.n + 1, 0));
  std::vector<int> order(p.n);
  for (int j = 0; j < p.m; ++j) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (p.votes[a][j] != p.votes[b][j]) return p.votes[a][j] < p.votes[b][j];
      return a < b;
    });
    for (int i = 0; i < p.n; ++i)
      idx.omega[j][i + 1] = idx.omega[j][i] + wp.weights[order[i]];
  }
  return idx;
}

Profile expand_weighted(const WeightedProfile& wp) {
  if (wp.total > kExpansionCap)
    throw ValidationError("expansion refused: total weight exceeds the duplication cap");
  std::vector<std::vector<Rat>> rows;
  rows.reserve(wp.total);
  for (int i = 0; i < wp.profile.n; ++i)
    for (long d = 0; d < wp.weights[i]; ++d) rows.push_back(wp.profile.votes[i]);
  return validate_profile(rows);
}

Allocation weighted_mean(const WeightedProfile& wp) {
  Allocation a;
  a.values.assign(wp.profile.m, Rat(0));
  for (int i = 0; i < wp.profile.n; ++i)
    for (int j = 0; j < wp.profile.m; ++j)
      a.values[j] += Rat(wp.weights[i], wp.total) * wp.profile.votes[i][j];
  return a;
}

Rat weighted_welfare(const WeightedProfile& wp, const Allocation& a) {
  Rat w = 0;
  for (int i = 0; i < wp.profile.n; ++i)
    w += wp.weights[i] * utility(wp.profile, i, a);
  return w;
}

MechanismReport run_weighted_phantom(const WeightedProfile& wp, MechanismId id) {
  const Profile& p = wp.profile;
  PhantomSystem sys = build_system(id, static_cast<int>(wp.total));
  OmegaIndex idx = build_omega(wp);
  std::vector<MedianProblem> problems(p.m);
  for (int j = 0; j < p.m; ++j) {
    problems[j].fixed.resize(p.n);
    for (int i = 0; i < p.n; ++i) problems[j].fixed[i] = p.votes[i][j];
    problems[j].curves.resize(p.n + 1);
    for (int i = 0; i <= p.n; ++i)
      problems[j].curves[i] = &sys.curves[idx.omega[j][i]];
  }
  NormalizationResult norm = solve_normalization(problems);
  MechanismReport rep;
  rep.id = id;
  rep.t_star = norm.t_star;
  rep.allocation = norm.allocation;
  rep.welfare = weighted_welfare(wp, rep.allocation);
  return rep;
}

DecompositionCertificate weighted_greedy_decomp(const WeightedProfile& wp) {
  Profile expanded = expand_weighted(wp);
  DecompositionCertificate fine = greedy_decomp(expanded);
  DecompositionCertificate cert;
  cert.allocation = fine.allocation;
  cert.contributions.matrix.assign(wp.profile.n,
                                   std::vector<Rat>(wp.profile.m, Rat(0)));
  int row = 0;
  for (int i = 0; i < wp.profile.n; ++i)
    for (long d = 0; d < wp.weights[i]; ++d, ++row)
      for (int j = 0; j < wp.profile.m; ++j)
        cert.contributions.matrix[i][j] += fine.contributions.matrix[row][j];
  if (!verify_weighted_certificate(wp, cert))
    throw Error("weighted greedy certificate failed verification (internal)");
  return cert;
}

bool verify_weighted_certificate(const WeightedProfile& wp, const DecompositionCertificate& cert) {
  const Profile& p = wp.profile;
  const auto& c = cert.contributions.matrix;
  const auto& a = cert.allocation.values;
  if (static_cast<int>(c.size()) != p.n || static_cast<int>(a.size()) != p.m) return false;
  for (int i = 0; i < p.n; ++i) {
    if (static_cast<int>(c[i].size()) != p.m) return false;
    Rat row_sum = 0;
    for (int j = 0; j < p.m; ++j) {
      if (c[i][j] < 0) return false;
      if (c[i][j] > 0 && a[j] > p.votes[i][j]) return false;
      row_sum += c[i][j];
    }
    if (row_sum != Rat(wp.weights[i], wp.total)) return false;
  }
  for (int j = 0; j < p.m; ++j) {
    Rat col_sum = 0;
    for (int i = 0; i < p.n; ++i) col_sum += c[i][j];
    if (col_sum != a[j]) return false;
  }
  return true;
}

}  // namespace bagg
