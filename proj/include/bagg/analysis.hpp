/**
 * @file analysis.hpp
 * @brief Axiom checkers, worst-case bounds, instance families, and the
 *        randomized experiment harnesses.
 *
 * Irrational bounds (n/(2*sqrt(n)-1) and m/(2*sqrt(m)-2)) are never evaluated
 * in floating point: each comparison r <= bound is rewritten into an
 * algebraically equivalent squared rational inequality whose nonnegativity
 * side conditions hold, keeping the whole library float-free.
 */
#pragma once

#include "bagg/decomp.hpp"
#include "bagg/phantoms.hpp"

#include <functional>
#include <optional>

namespace bagg {

/// A budget-aggregation mechanism as a black box (profile -> allocation); used
/// by the probes so GreedyDecomp can be tested alongside the phantom family.
using MechanismFn = std::function<Allocation(const Profile&)>;

MechanismFn phantom_mechanism(MechanismId id);
MechanismFn greedy_mechanism();

/// alpha*(n) = max over l in [n] of n*l / (n + l(l-1)), exactly.
Rat alpha_star(long n);

struct BoundReport {
  long n = 0;
  Rat alpha;
  bool bound_holds = false;  // alpha*(n) <= n / (2*sqrt(n) - 1)
};

/// Verifies alpha*(n) <= n/(2*sqrt(n)-1) via 4*alpha^2*n <= (n + alpha)^2.
bool check_alpha_bound(long n);
BoundReport alpha_bound_report(long n);

/// r <= m/(2*sqrt(m)-2), via 4*r^2*m <= (m + 2r)^2 (both sides nonnegative).
bool respects_m_bound(const Rat& r, int m);

bool check_range_respect(const Profile& p, const Allocation& a);

struct ProportionalSpendingReport {
  bool holds = true;
  int violating_k = 0;   // 1-based when holds == false
  Rat lhs, rhs;          // overlap(a, mu^k) vs min((n-k+1)/n, sum mu^k)
};

ProportionalSpendingReport check_proportional_spending(const Profile& p, const Allocation& a);

/// Requires a single-minded profile; true iff the mechanism returns the mean.
bool check_single_minded_proportionality(const MechanismFn& mech, const Profile& p);

bool pareto_dominates(const Profile& p, const Allocation& a, const Allocation& b);

/// Single-minded worst case: m = n-l+1 alternatives, first n-l voters on
/// distinct alternatives 1..n-l, the last l voters on alternative m.
Profile worst_case_family(int n, int ell);

/// The PiecewiseUniform linear lower-bound family: n even >= 4, m = n^2/2 + 1.
Profile pwu_lower_bound_family(int n);

/// The GreedyDecomp-vs-UtilDecomp gap family: n even >= 4, m = n+1, 0<eps<1.
Profile gap_family(int n, const Rat& eps);

/// The paper's welfare-optimal decomposable allocation a' for gap_family(n, eps)
/// and its contribution certificate.
DecompositionCertificate gap_family_opt_certificate(int n, const Rat& eps);

struct RandomProfileSpec {
  int n = 0, m = 0;
  long denominator = 1;
  unsigned long long seed = 0;
};

/// Uniform lattice point of the simplex per row: each row is a composition of
/// D into m nonnegative parts, decoded from a uniform stars-and-bars index.
/// The PRNG substream is derived deterministically from (seed, stream).
Profile random_profile(const RandomProfileSpec& spec, long stream = 0);

/// Uniform single row (denominator D); used for misreports.
std::vector<Rat> random_simplex_row(int m, long D, unsigned long long seed, long stream);

/// Calls fn with every profile whose rows are lattice points with denominator
/// exactly dividing D (all rows enumerated independently).
void enumerate_profiles(int n, int m, long D, const std::function<void(const Profile&)>& fn);

struct TruthfulnessViolation {
  long trial = 0;
  int voter = 0;
  Profile profile;
  std::vector<Rat> misreport;
  Rat truthful_utility, misreport_utility;
};

struct TruthfulnessReport {
  long trials = 0;
  std::vector<TruthfulnessViolation> violations;
};

/// Samples `trials` profiles and, per voter, one misreport from the same
/// lattice; records every strict utility gain. threads > 1 parallelizes the
/// trial loop (results identical to the serial run).
TruthfulnessReport truthfulness_probe(const MechanismFn& mech, const RandomProfileSpec& spec,
                                      long trials, int threads = 1);

struct DominancePair {
  MechanismId mech_a, mech_b;
  long a_higher = 0, equal = 0, b_higher = 0;
  std::optional<Profile> counterexample;  // first profile where welfare(a) < welfare(b)
};

/// Edges of the welfare-dominance order (a dominates b) among the eight
/// named mechanisms.
std::vector<std::pair<MechanismId, MechanismId>> dominance_edges();

DominancePair compare_welfare(MechanismId a, MechanismId b, const std::vector<Profile>& profiles);

/// Sampled dominance check; threads as in truthfulness_probe.
std::vector<DominancePair> dominance_experiment(
    const std::vector<std::pair<MechanismId, MechanismId>>& pairs,
    const RandomProfileSpec& spec, long trials, int threads = 1);

struct ApproximationAudit {
  Rat w_util, w_utilprop, w_greedy;
  Rat r_utilprop, r_greedy;        // w_util / w_mech
  Rat alpha;                       // alpha*(n)
  bool utilprop_within_alpha = false;
  bool greedy_within_alpha = false;
  bool utilprop_within_m_bound = false;
  bool greedy_within_m_bound = false;  // recorded, deliberately not asserted
};

ApproximationAudit approximation_audit(const Profile& p);

}  // namespace bagg
