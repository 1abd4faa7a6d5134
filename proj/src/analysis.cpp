/**
 * @file analysis.cpp
 */
#include "bagg/analysis.hpp"

#include <algorithm>
#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bagg {

MechanismFn phantom_mechanism(MechanismId id) {
  return [id](const Profile& p) { return run_phantom(p, id).allocation; };
}

MechanismFn greedy_mechanism() {
  return [](const Profile& p) { return greedy_decomp(p).allocation; };
}

namespace {

using u128 = unsigned __int128;

// Exact comparison n*l1/(n+l1(l1-1)) < n*l2/(n+l2(l2-1)) by cross
// multiplication in 128-bit integers; overflow-safe for n <= 10^6.
constexpr long kAlphaStarMaxN = 1000000;

}  // namespace

Rat alpha_star(long n) {
  if (n < 1) throw ValidationError("alpha_star needs n >= 1");
  if (n > kAlphaStarMaxN)
    throw ValidationError("alpha_star capped at n <= 10^6 (128-bit cross products)");
  unsigned long long best_num = 1, best_den = 1;  // l = 1 gives n/n = 1
  for (long l = 2; l <= n; ++l) {
    u128 num = static_cast<u128>(n) * l;
    u128 den = static_cast<u128>(n) + static_cast<u128>(l) * (l - 1);
    if (num * best_den > static_cast<u128>(best_num) * den) {
      best_num = static_cast<unsigned long long>(num);
      best_den = static_cast<unsigned long long>(den);
    }
  }
  return Rat(Int(best_num), Int(best_den));
}

bool check_alpha_bound(long n) {
  // alpha <= n/(2 sqrt(n) - 1)  <=>  2 alpha sqrt(n) <= n + alpha (all terms
  // nonnegative)  <=>  4 alpha^2 n <= (n + alpha)^2. With alpha = p/q this is
  // 4 p^2 n <= (n q + p)^2.
  Rat a = alpha_star(n);
  u128 p = num(a).convert_to<unsigned long long>();
  u128 q = den(a).convert_to<unsigned long long>();
  u128 lhs = 4 * p * p;  // times n below; p <= ~10^12 so p^2 <= ~10^24
  u128 rhs_base = static_cast<u128>(n) * q + p;
  // lhs * n can reach ~4*10^30 and rhs^2 ~10^36; both fit 128 bits for the
  // capped n range.
  return lhs * static_cast<u128>(n) <= rhs_base * rhs_base;
}

BoundReport alpha_bound_report(long n) {
  return BoundReport{n, alpha_star(n), check_alpha_bound(n)};
}

bool respects_m_bound(const Rat& r, int m) {
  // r <= m/(2 sqrt(m) - 2)  <=>  2 r sqrt(m) <= m + 2r  <=>  4 r^2 m <= (m+2r)^2.
  if (r < 0) throw ValidationError("m-bound check needs r >= 0");
  if (m < 2) throw ValidationError("m-bound check needs m >= 2");
  Int p = num(r), q = den(r);
  return 4 * p * p * m <= (m * q + 2 * p) * (m * q + 2 * p);
}

bool check_range_respect(const Profile& p, const Allocation& a) {
  LevelVector lo = level_vector(p, 1), hi = level_vector(p, p.n);
  for (int j = 0; j < p.m; ++j)
    if (a.values[j] < lo.values[j] || a.values[j] > hi.values[j]) return false;
  return true;
}

ProportionalSpendingReport check_proportional_spending(const Profile& p, const Allocation& a) {
  ProportionalSpendingReport rep;
  for (int k = 1; k <= p.n; ++k) {
    LevelVector mu = level_vector(p, k);
    Rat lhs = overlap(a.values, mu.values);
    Rat rhs = std::min(Rat(p.n - k + 1, p.n), sum(mu.values));
    if (lhs < rhs) {
      rep.holds = false;
      rep.violating_k = k;
      rep.lhs = lhs;
      rep.rhs = rhs;
      return rep;
    }
  }
  return rep;
}

bool check_single_minded_proportionality(const MechanismFn& mech, const Profile& p) {
  if (!is_single_minded(p)) throw ValidationError("NotSingleMinded");
  return mech(p).values == mean_allocation(p).values;
}

bool pareto_dominates(const Profile& p, const Allocation& a, const Allocation& b) {
  bool strict = false;
  for (int i = 0; i < p.n; ++i) {
    Rat ua = utility(p, i, a), ub = utility(p, i, b);
    if (ua < ub) return false;
    if (ua > ub) strict = true;
  }
  return strict;
}

Profile worst_case_family(int n, int ell) {
  if (ell < 1 || ell > n) throw ValidationError("EllOutOfRange");
  const int m = n - ell + 1;
  if (m < 2) throw ValidationError("EllOutOfRange: family degenerates to m = 1");
  std::vector<std::vector<Rat>> rows(n, std::vector<Rat>(m, Rat(0)));
  for (int i = 0; i < n - ell; ++i) rows[i][i] = 1;
  for (int i = n - ell; i < n; ++i) rows[i][m - 1] = 1;
  return validate_profile(rows);
}

Profile pwu_lower_bound_family(int n) {
  if (n < 4 || n % 2 != 0) throw ValidationError("BadN: need even n >= 4");
  const int m = n * n / 2 + 1;
  std::vector<std::vector<Rat>> rows(n, std::vector<Rat>(m, Rat(0)));
  for (int i = 0; i < n / 2; ++i)
    for (int l = 0; l < n; ++l) rows[i][i * n + l] = Rat(1, n);
  for (int i = n / 2; i < n; ++i) rows[i][m - 1] = 1;
  return validate_profile(rows);
}

Profile gap_family(int n, const Rat& eps) {
  if (n < 4 || n % 2 != 0) throw ValidationError("BadN: need even n >= 4");
  if (eps <= 0 || eps >= 1) throw ValidationError("BadEps: need 0 < eps < 1");
  const int m = n + 1;
  std::vector<std::vector<Rat>> rows(n, std::vector<Rat>(m, Rat(0)));
  for (int i = 0; i < n / 2; ++i) {
    rows[i][i] = Rat(n - 1, n);
    rows[i][i + n / 2] = Rat(1, n);
  }
  for (int i = n / 2; i < n; ++i) {
    for (int j = n / 2; j < n; ++j) rows[i][j] = (1 + eps) / n;
    rows[i][n] = (1 - eps) / 2;
  }
  return validate_profile(rows);
}

DecompositionCertificate gap_family_opt_certificate(int n, const Rat& eps) {
  Profile p = gap_family(n, eps);
  DecompositionCertificate cert;
  cert.allocation.values.assign(p.m, Rat(0));
  for (int j = 0; j < n / 2; ++j) cert.allocation.values[j] = eps / n;
  for (int j = n / 2; j < n; ++j) cert.allocation.values[j] = Rat(1, n);
  cert.allocation.values[n] = (1 - eps) / 2;
  cert.contributions.matrix.assign(p.n, std::vector<Rat>(p.m, Rat(0)));
  for (int i = 0; i < n / 2; ++i) {
    cert.contributions.matrix[i][i] = eps / n;
    cert.contributions.matrix[i][i + n / 2] = (1 - eps) / n;
  }
  for (int i = n / 2; i < n; ++i) {
    cert.contributions.matrix[i][i] = eps / n;
    cert.contributions.matrix[i][n] = (1 - eps) / n;
  }
  if (!verify_certificate(p, cert)) throw Error("gap family certificate invalid (internal)");
  return cert;
}

namespace {

// Deterministic, platform-independent 64-bit PRNG (splitmix64).
struct SplitMix64 {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4B5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
};

SplitMix64 substream(std::uint64_t seed, std::uint64_t stream) {
  // Decorrelate (seed, stream) pairs by running the mixer once on each part.
  SplitMix64 a{seed};
  SplitMix64 b{a.next() ^ (stream * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL)};
  b.next();
  return b;
}

Int binomial(long top, long bottom) {
  if (bottom < 0 || bottom > top) return 0;
  Int r = 1;
  for (long i = 1; i <= bottom; ++i) r = r * (top - bottom + i) / i;
  return r;
}

// Uniform integer in [0, count) by rejection on the minimal bit width.
Int uniform_int(SplitMix64& rng, const Int& count) {
  const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(count)) + 1;
  while (true) {
    Int v = 0;
    for (unsigned got = 0; got < bits; got += 64) {
      v <<= 64;
      v += Int(rng.next());
    }
    unsigned excess = ((bits + 63) / 64) * 64 - bits;
    v >>= excess;
    if (v < count) return v;
  }
}

// Decodes the r-th composition of D into m nonnegative parts (stars and bars,
// lexicographic by first coordinate ascending).
std::vector<long> decode_composition(Int r, long D, int m) {
  std::vector<long> parts(m, 0);
  long left = D;
  for (int j = 0; j < m - 1; ++j) {
    for (long v = 0;; ++v) {
      Int cnt = binomial(left - v + m - j - 2, m - j - 2);
      if (r < cnt) {
        parts[j] = v;
        left -= v;
        break;
      }
      r -= cnt;
    }
  }
  parts[m - 1] = left;
  return parts;
}

}  // namespace

std::vector<Rat> random_simplex_row(int m, long D, unsigned long long seed, long stream) {
  if (D < 1) throw ValidationError("BadDenominator: need D >= 1");
  SplitMix64 rng = substream(seed, static_cast<std::uint64_t>(stream));
  Int count = binomial(D + m - 1, m - 1);
  std::vector<long> parts = decode_composition(uniform_int(rng, count), D, m);
  std::vector<Rat> row(m);
  for (int j = 0; j < m; ++j) row[j] = Rat(parts[j], D);
  return row;
}

Profile random_profile(const RandomProfileSpec& spec, long stream) {
  std::vector<std::vector<Rat>> rows;
  rows.reserve(spec.n);
  for (int i = 0; i < spec.n; ++i)
    rows.push_back(random_simplex_row(spec.m, spec.denominator, spec.seed,
                                      stream * (spec.n + 1) + i));
  return validate_profile(rows);
}

void enumerate_profiles(int n, int m, long D, const std::function<void(const Profile&)>& fn) {
  Int count = binomial(D + m - 1, m - 1);
  std::vector<std::vector<Rat>> rows_pool;
  for (Int r = 0; r < count; ++r) {
    std::vector<long> parts = decode_composition(r, D, m);
    std::vector<Rat> row(m);
    for (int j = 0; j < m; ++j) row[j] = Rat(parts[j], D);
    rows_pool.push_back(std::move(row));
  }
  std::vector<std::vector<Rat>> current(n);
  auto rec = [&](auto&& self, int i) -> void {
    if (i == n) {
      fn(validate_profile(current));
      return;
    }
    for (const auto& row : rows_pool) {
      current[i] = row;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
}

TruthfulnessReport truthfulness_probe(const MechanismFn& mech, const RandomProfileSpec& spec,
                                      long trials, int threads) {
  TruthfulnessReport rep;
  rep.trials = trials;
  std::vector<std::vector<TruthfulnessViolation>> per_trial(trials);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, threads)) if (threads > 1)
#endif
  for (long t = 0; t < trials; ++t) {
    Profile truth = random_profile(spec, 2 * t);
    Allocation a_true = mech(truth);
    for (int i = 0; i < spec.n; ++i) {
      std::vector<Rat> lie = random_simplex_row(
          spec.m, spec.denominator, spec.seed + 0x5EEDULL, (2 * t + 1) * (spec.n + 1) + i);
      Profile lied = truth;
      lied.votes[i] = lie;
      Allocation a_lie = mech(lied);
      Rat u_true = utility(truth, i, a_true);
      Rat u_lie = utility(truth, i, a_lie);
      if (u_lie > u_true)
        per_trial[t].push_back({t, i, truth, lie, u_true, u_lie});
    }
  }
  for (auto& v : per_trial)
    rep.violations.insert(rep.violations.end(), v.begin(), v.end());
  return rep;
}

std::vector<std::pair<MechanismId, MechanismId>> dominance_edges() {
  using M = MechanismId;
  return {
      {M::Util, M::UtilProp},
      {M::UtilProp, M::PiecewiseUniform},
      {M::UtilProp, M::Ladder},
      {M::PiecewiseUniform, M::IndependentMarkets},
      {M::Ladder, M::IndependentMarkets},
      {M::IndependentMarkets, M::Fan},
      {M::Fan, M::GreedyMax},
      {M::GreedyMax, M::Constant},
  };
}

DominancePair compare_welfare(MechanismId a, MechanismId b, const std::vector<Profile>& profiles) {
  DominancePair pair;
  pair.mech_a = a;
  pair.mech_b = b;
  for (const Profile& p : profiles) {
    Rat wa = run_phantom(p, a).welfare;
    Rat wb = run_phantom(p, b).welfare;
    if (wa > wb) ++pair.a_higher;
    else if (wa == wb) ++pair.equal;
    else {
      ++pair.b_higher;
      if (!pair.counterexample) pair.counterexample = p;
    }
  }
  return pair;
}

std::vector<DominancePair> dominance_experiment(
    const std::vector<std::pair<MechanismId, MechanismId>>& pairs,
    const RandomProfileSpec& spec, long trials, int threads) {
  std::vector<Profile> profiles;
  profiles.reserve(trials);
  for (long t = 0; t < trials; ++t) profiles.push_back(random_profile(spec, t));

  // Evaluate each needed mechanism once per profile (the expensive part),
  // parallel over profiles; comparisons afterwards are cheap and ordered.
  std::vector<MechanismId> needed;
  for (const auto& [a, b] : pairs) {
    for (MechanismId x : {a, b})
      if (std::find(needed.begin(), needed.end(), x) == needed.end()) needed.push_back(x);
  }
  std::vector<std::vector<Rat>> welfare(needed.size(), std::vector<Rat>(trials));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, threads)) if (threads > 1)
#endif
  for (long t = 0; t < trials; ++t)
    for (size_t k = 0; k < needed.size(); ++k)
      welfare[k][t] = run_phantom(profiles[t], needed[k]).welfare;

  auto index_of = [&](MechanismId id) {
    return std::find(needed.begin(), needed.end(), id) - needed.begin();
  };
  std::vector<DominancePair> out;
  for (const auto& [a, b] : pairs) {
    DominancePair pair;
    pair.mech_a = a;
    pair.mech_b = b;
    const auto& wa = welfare[index_of(a)];
    const auto& wb = welfare[index_of(b)];
    for (long t = 0; t < trials; ++t) {
      if (wa[t] > wb[t]) ++pair.a_higher;
      else if (wa[t] == wb[t]) ++pair.equal;
      else {
        ++pair.b_higher;
        if (!pair.counterexample) pair.counterexample = profiles[t];
      }
    }
    out.push_back(std::move(pair));
  }
  return out;
}

ApproximationAudit approximation_audit(const Profile& p) {
  ApproximationAudit audit;
  audit.w_util = welfare_optimal(p).second;
  audit.w_utilprop = run_phantom(p, MechanismId::UtilProp).welfare;
  audit.w_greedy = social_welfare(p, greedy_decomp(p).allocation);
  audit.r_utilprop = audit.w_util / audit.w_utilprop;
  audit.r_greedy = audit.w_util / audit.w_greedy;
  audit.alpha = alpha_star(p.n);
  audit.utilprop_within_alpha = audit.r_utilprop <= audit.alpha;
  audit.greedy_within_alpha = audit.r_greedy <= audit.alpha;
  audit.utilprop_within_m_bound = respects_m_bound(audit.r_utilprop, p.m);
  audit.greedy_within_m_bound = respects_m_bound(audit.r_greedy, p.m);
  return audit;
}

}  // namespace bagg
