/**
 * @file phantoms.hpp
 * @brief Phantom systems, the eight named mechanisms, and exact normalization.
 *
 * A moving-phantom mechanism is defined by n+1 coordinated nondecreasing
 * continuous curves f_0 >= f_1 >= ... >= f_n on [0,1] with f_k(0) = 0 and
 * f_k(1) >= 1 - k/n. The output on alternative j is the median of the n votes
 * on j and the n+1 phantom positions, evaluated at the normalization time t*
 * where the per-alternative medians sum to exactly 1.
 *
 * All curves here are piecewise linear with rational breakpoints, which covers
 * every named mechanism and makes t* exactly computable: the sum of medians is
 * piecewise linear in t with kinks only at curve kinks and curve/vote
 * crossings, so a breakpoint scan plus one linear solve finds the smallest t*.
 */
#pragma once

#include "bagg/core.hpp"

#include <optional>
#include <string>

namespace bagg {

/// Nondecreasing piecewise-linear function given by sorted (t, value) points
/// spanning [0,1].
struct PiecewiseLinear {
  std::vector<std::pair<Rat, Rat>> points;

  /// Exact evaluation by linear interpolation; throws on t outside [0,1].
  Rat at(const Rat& t) const;
};

struct PhantomSystem {
  int n = 0;
  std::vector<PiecewiseLinear> curves;  // n+1 curves, f_0 .. f_n
};

enum class MechanismId {
  Constant,
  GreedyMax,
  Fan,
  IndependentMarkets,
  Ladder,
  PiecewiseUniform,
  Util,
  UtilProp,
};

/// All eight ids in the declaration order above.
const std::vector<MechanismId>& all_mechanisms();

/// Canonical lowercase name ("constant", ..., "utilprop").
std::string mechanism_name(MechanismId id);

/// Case-insensitive lookup; nullopt for unknown names.
std::optional<MechanismId> mechanism_from_name(const std::string& name);

PhantomSystem build_system(MechanismId id, int n);

/// f_k(t) for k in [0..n].
Rat phantom_at(const PhantomSystem& sys, int k, const Rat& t);

/// Median of the 2n+1 values {f_0(t),...,f_n(t), p_{1,j},...,p_{n,j}}.
Rat median_at(const Profile& p, const PhantomSystem& sys, const Rat& t, int j);

struct NormalizationResult {
  Rat t_star;               ///< smallest normalization time
  Rat t_star_max;           ///< largest candidate time where medians still sum to 1
  Allocation allocation;    ///< medians at t_star
  std::vector<Rat> medians_trace;  ///< per-alternative median at t_star
};

/// One per-alternative median subproblem: fixed vote values plus a selection of
/// phantom curves. The generic solver below also serves the weighted setting,
/// where different alternatives index different curves.
struct MedianProblem {
  std::vector<Rat> fixed;                        // n vote values
  std::vector<const PiecewiseLinear*> curves;    // n+1 curves
};

/// Core normalization solver over arbitrary per-alternative median problems.
NormalizationResult solve_normalization(const std::vector<MedianProblem>& problems);

NormalizationResult normalization_time(const Profile& p, const PhantomSystem& sys);

struct MechanismReport {
  MechanismId id;
  Rat t_star;
  Allocation allocation;
  Rat welfare;
};

MechanismReport run_phantom(const Profile& p, MechanismId id);

}  // namespace bagg
