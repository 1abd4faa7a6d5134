/**
 * @file phantoms.cpp
 */
#include "bagg/phantoms.hpp"

#include <algorithm>
#include <cassert>

namespace bagg {

Rat PiecewiseLinear::at(const Rat& t) const {
  if (t < 0 || t > 1) throw DimensionError("TimeOutOfRange: " + to_string(t));
  // Find the segment [t_i, t_{i+1}] containing t.
  for (size_t i = 0; i + 1 < points.size(); ++i) {
    const auto& [t1, y1] = points[i];
    const auto& [t2, y2] = points[i + 1];
    if (t >= t1 && t <= t2) {
      if (t1 == t2) return y2;
      return y1 + (y2 - y1) * (t - t1) / (t2 - t1);
    }
  }
  throw Error("piecewise-linear curve does not span its argument");
}

const std::vector<MechanismId>& all_mechanisms() {
  static const std::vector<MechanismId> ids = {
      MechanismId::Constant,      MechanismId::GreedyMax,
      MechanismId::Fan,           MechanismId::IndependentMarkets,
      MechanismId::Ladder,        MechanismId::PiecewiseUniform,
      MechanismId::Util,          MechanismId::UtilProp,
  };
  return ids;
}

std::string mechanism_name(MechanismId id) {
  switch (id) {
    case MechanismId::Constant: return "constant";
    case MechanismId::GreedyMax: return "greedymax";
    case MechanismId::Fan: return "fan";
    case MechanismId::IndependentMarkets: return "independentmarkets";
    case MechanismId::Ladder: return "ladder";
    case MechanismId::PiecewiseUniform: return "piecewiseuniform";
    case MechanismId::Util: return "util";
    case MechanismId::UtilProp: return "utilprop";
  }
  throw Error("unknown mechanism id");
}

std::optional<MechanismId> mechanism_from_name(const std::string& name) {
  std::string lower;
  lower.reserve(name.size());
  for (char c : name) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  for (MechanismId id : all_mechanisms())
    if (mechanism_name(id) == lower) return id;
  return std::nullopt;
}

namespace {

// Drops redundant collinear/duplicate interior points; keeps endpoints.
PiecewiseLinear simplify(std::vector<std::pair<Rat, Rat>> pts) {
  std::vector<std::pair<Rat, Rat>> out;
  for (const auto& p : pts) {
    if (!out.empty() && out.back().first == p.first) {
      if (out.back().second != p.second) throw Error("discontinuous phantom curve");
      continue;
    }
    out.push_back(p);
  }
  return PiecewiseLinear{std::move(out)};
}

}  // namespace

PhantomSystem build_system(MechanismId id, int n) {
  if (n < 1) throw ValidationError("phantom system needs n >= 1");
  PhantomSystem sys;
  sys.n = n;
  sys.curves.reserve(n + 1);
  const Rat half(1, 2);
  for (int k = 0; k <= n; ++k) {
    std::vector<std::pair<Rat, Rat>> pts;
    const Rat cap = Rat(n - k, n);  // the common "final position" (n-k)/n
    switch (id) {
      case MechanismId::Constant:
        pts = {{0, 0}, {1, 1}};
        break;
      case MechanismId::GreedyMax:
        // f_k(t) = t * min(1, n-k): identity for k < n, zero for k = n.
        pts = (k < n) ? std::vector<std::pair<Rat, Rat>>{{0, 0}, {1, 1}}
                      : std::vector<std::pair<Rat, Rat>>{{0, 0}, {1, 0}};
        break;
      case MechanismId::Fan:
        // min((n-k)/n, t): rise at unit speed, stop at the cap.
        pts = {{0, 0}, {cap, cap}, {1, cap}};
        break;
      case MechanismId::IndependentMarkets:
        pts = {{0, 0}, {1, cap}};
        break;
      case MechanismId::Ladder:
        // max(t - k/n, 0): start moving at t = k/n.
        pts = {{0, 0}, {Rat(k, n), 0}, {1, cap}};
        break;
      case MechanismId::PiecewiseUniform: {
        // Two phases split at t = 1/2, branch condition k/n <= 1/2 verbatim.
        if (2 * k <= n) {
          // Phase 1: 4t(n-k)/n - 2t, linear from 0 to (n-2k)/n at t=1/2.
          // Phase 2: (n-k)(3-2t)/n - 2 + 2t, reaching (n-k)/n at t=1.
          pts = {{0, 0}, {half, Rat(n - 2 * k, n)}, {1, cap}};
        } else {
          // 0 during phase 1, then (n-k)(2t-1)/n.
          pts = {{0, 0}, {half, 0}, {1, cap}};
        }
        break;
      }
      case MechanismId::Util:
        // max(0, min(1, t(n+1)-k)): consecutive unit ramps.
        pts = {{0, 0}, {Rat(k, n + 1), 0}, {Rat(k + 1, n + 1), 1}, {1, 1}};
        break;
      case MechanismId::UtilProp: {
        // max(0, min((n-k)/n, t(n+1)-k)): the Util ramp truncated at the cap.
        // The ramp hits the cap at t = (k + (n-k)/n) / (n+1).
        Rat t_cap = Rat(k * n + n - k, n * (n + 1));
        pts = {{0, 0}, {Rat(k, n + 1), 0}, {t_cap, cap}, {1, cap}};
        break;
      }
    }
    sys.curves.push_back(simplify(std::move(pts)));
  }
  return sys;
}

Rat phantom_at(const PhantomSystem& sys, int k, const Rat& t) {
  if (k < 0 || k > sys.n) throw DimensionError("phantom index out of range");
  return sys.curves[k].at(t);
}

Rat median_at(const Profile& p, const PhantomSystem& sys, const Rat& t, int j) {
  if (j < 0 || j >= p.m) throw DimensionError("alternative index out of range");
  std::vector<Rat> vals;
  vals.reserve(2 * p.n + 1);
  for (int i = 0; i < p.n; ++i) vals.push_back(p.votes[i][j]);
  for (int k = 0; k <= sys.n; ++k) vals.push_back(sys.curves[k].at(t));
  std::sort(vals.begin(), vals.end());
  return vals[p.n];  // (n+1)-th smallest of 2n+1
}

namespace {

Rat median_of_problem(const MedianProblem& mp, const Rat& t) {
  std::vector<Rat> vals;
  vals.reserve(mp.fixed.size() + mp.curves.size());
  for (const Rat& v : mp.fixed) vals.push_back(v);
  for (const PiecewiseLinear* c : mp.curves) vals.push_back(c->at(t));
  std::sort(vals.begin(), vals.end());
  // fixed.size() = n, curves.size() = n+1: median is the (n+1)-th smallest.
  return vals[vals.size() / 2];
}

}  // namespace

NormalizationResult solve_normalization(const std::vector<MedianProblem>& problems) {
  // Candidate times where any per-alternative median can change slope: curve
  // kinks, plus each exact crossing of a curve segment with a vote value.
  // Between consecutive candidates every median is a fixed linear function of
  // t, hence so is the sum; the phantom order f_0 >= ... >= f_n never flips, so
  // curve/curve events contribute no further kinks.
  std::vector<Rat> cand = {Rat(0), Rat(1)};
  for (const MedianProblem& mp : problems) {
    for (const PiecewiseLinear* c : mp.curves) {
      for (const auto& [t, y] : c->points) cand.push_back(t);
      for (const Rat& v : mp.fixed) {
        for (size_t s = 0; s + 1 < c->points.size(); ++s) {
          const auto& [t1, y1] = c->points[s];
          const auto& [t2, y2] = c->points[s + 1];
          if (y2 > y1 && v >= y1 && v <= y2)
            cand.push_back(t1 + (v - y1) * (t2 - t1) / (y2 - y1));
        }
      }
    }
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  auto sum_at = [&](const Rat& t) {
    Rat s = 0;
    for (const MedianProblem& mp : problems) s += median_of_problem(mp, t);
    return s;
  };

  // Scan for the first bracketing segment where the nondecreasing sum of
  // medians reaches 1, then solve the linear equation inside it.
  Rat prev_t = cand.front();
  Rat prev_s = sum_at(prev_t);
  std::optional<Rat> t_star;
  if (prev_s >= 1) t_star = prev_t;
  for (size_t i = 1; !t_star && i < cand.size(); ++i) {
    Rat cur_t = cand[i];
    Rat cur_s = sum_at(cur_t);
    if (cur_s >= 1) {
      // Linear on [prev_t, cur_t] with prev_s < 1 <= cur_s.
      t_star = prev_t + (1 - prev_s) * (cur_t - prev_t) / (cur_s - prev_s);
    }
    prev_t = cur_t;
    prev_s = cur_s;
  }
  if (!t_star) throw Error("NoNormalization: sum of medians never reaches 1");

  // Extend to the largest candidate where the sum is still exactly 1 (the
  // normalization set is a closed interval; the allocation is constant on it).
  Rat t_max = *t_star;
  for (const Rat& c : cand)
    if (c > t_max && sum_at(c) == 1) t_max = c;

  NormalizationResult res;
  res.t_star = *t_star;
  res.t_star_max = t_max;
  for (const MedianProblem& mp : problems)
    res.medians_trace.push_back(median_of_problem(mp, *t_star));
  res.allocation.values = res.medians_trace;
  if (sum(res.medians_trace) != 1) throw Error("normalization invariant breach");
  return res;
}

NormalizationResult normalization_time(const Profile& p, const PhantomSystem& sys) {
  if (sys.n != p.n) throw DimensionError("phantom system size does not match profile");
  std::vector<MedianProblem> problems(p.m);
  for (int j = 0; j < p.m; ++j) {
    for (int i = 0; i < p.n; ++i) problems[j].fixed.push_back(p.votes[i][j]);
    for (int k = 0; k <= sys.n; ++k) problems[j].curves.push_back(&sys.curves[k]);
  }
  return solve_normalization(problems);
}

MechanismReport run_phantom(const Profile& p, MechanismId id) {
  PhantomSystem sys = build_system(id, p.n);
  NormalizationResult nr = normalization_time(p, sys);
  return MechanismReport{id, nr.t_star, nr.allocation,
                         social_welfare(p, nr.allocation)};
}

}  // namespace bagg
