/**
 * @file core.hpp
 * @brief Profile/allocation data model, order statistics, utilities, welfare.
 *
 * A Profile is an n x m matrix of rationals with every row on the standard
 * simplex (each voter reports how they would split the unit budget over m
 * alternatives). An Allocation is a single point of that simplex. Utilities are
 * overlaps: u_i(a) = sum_j min(p_ij, a_j), ordinally equivalent to negative l1
 * distance.
 */
#pragma once

#include "bagg/rational.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace bagg {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Input-validation failures (bad profile rows, out-of-range entries, ...).
struct ValidationError : Error {
  using Error::Error;
};

/// Dimension/index mismatches between otherwise valid objects.
struct DimensionError : Error {
  using Error::Error;
};

struct Profile {
  int n = 0;  ///< voters (rows), >= 1
  int m = 0;  ///< alternatives (columns), >= 2
  std::vector<std::vector<Rat>> votes;  ///< n rows, each summing to exactly 1
};

struct Allocation {
  std::vector<Rat> values;  ///< m entries in [0,1] summing to exactly 1
};

/// Column-wise k-th order statistic of the profile (k in [1..n]); mu^k.
struct LevelVector {
  int k = 0;
  std::vector<Rat> values;
};

/// Decomposability certificate: row i sums to 1/n, entries in [0, 1/n].
struct Contributions {
  std::vector<std::vector<Rat>> matrix;  // n x m
};

/// Validates row sums and entry ranges; throws ValidationError with the
/// offending row/column in the message.
Profile validate_profile(const std::vector<std::vector<Rat>>& raw);

/// True iff every row has a single 1 entry (and zeros elsewhere).
bool is_single_minded(const Profile& p);

/// Mean of the vote rows (the single-minded proportional target).
Allocation mean_allocation(const Profile& p);

LevelVector level_vector(const Profile& p, int k);

/// <v || w> = sum_j min(v_j, w_j).
Rat overlap(const std::vector<Rat>& v, const std::vector<Rat>& w);

/// u_i(a), voter index 0-based.
Rat utility(const Profile& p, int i, const Allocation& a);

/// Sum of all voter utilities.
Rat social_welfare(const Profile& p, const Allocation& a);

/// Welfare-maximizing allocation via the greedy segment oracle: fund the
/// per-alternative level segments [mu^{k-1}_j, mu^k_j) in decreasing order of
/// approval count n-k+1 (ties: lower alternative index) until total mass 1.
std::pair<Allocation, Rat> welfare_optimal(const Profile& p);

}  // namespace bagg
