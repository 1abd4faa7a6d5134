/**
 * @file weighted.hpp
 * @brief Weighted voters: Omega-indexed moving phantoms and weighted
 *        GreedyDecomp.
 *
 * Each voter carries a positive integer weight w_i with total b. The weighted
 * moving-phantom outcome on alternative j is
 *
 *   med(f_{O_0j}(t*), ..., f_{O_nj}(t*), p_1j, ..., p_nj)
 *
 * where the system is built for b voters and O_ij is the total weight of the
 * voters holding the i lowest votes on j (ties broken by voter index). This
 * direct evaluation is polynomial in n, m, and the bit-size of b and agrees
 * with duplicating every voter w_i times; duplication is kept only as a
 * hard-capped oracle.
 */
#pragma once

#include "bagg/decomp.hpp"
#include "bagg/phantoms.hpp"

namespace bagg {

struct WeightedProfile {
  Profile profile;
  std::vector<long> weights;  ///< n positive integers
  long total = 0;             ///< b = sum of weights
};

/// Validates weights (positive, arity n) and fills the total.
WeightedProfile make_weighted(Profile p, std::vector<long> weights);

/// Prefix-weight table: omega[j][i] for i in [0..n], built per alternative on
/// the (vote value, voter index) order; omega[j][0] = 0, omega[j][n] = b.
struct OmegaIndex {
  std::vector<std::vector<long>> omega;
};

OmegaIndex build_omega(const WeightedProfile& wp);

/// Duplication oracle cap: expansion refuses totals beyond this.
inline constexpr long kExpansionCap = 64;

/// Unweighted profile with b rows, voter i duplicated w_i times, in order.
Profile expand_weighted(const WeightedProfile& wp);

/// Weighted mean of the votes: sum_i (w_i/b) p_i.
Allocation weighted_mean(const WeightedProfile& wp);

/// w(a) = sum_i w_i * u_i(a).
Rat weighted_welfare(const WeightedProfile& wp, const Allocation& a);

/// Direct Omega-indexed run; the reported welfare is the weighted welfare.
MechanismReport run_weighted_phantom(const WeightedProfile& wp, MechanismId id);

/// GreedyDecomp on the expansion with duplicate rows merged back; row i of the
/// certificate sums to w_i/b. Subject to the expansion cap.
DecompositionCertificate weighted_greedy_decomp(const WeightedProfile& wp);

/// Weighted decomposability conditions: entries >= 0, row sums w_i/b, column
/// sums a_j, and positive entries only where a_j <= p_ij.
bool verify_weighted_certificate(const WeightedProfile& wp, const DecompositionCertificate& cert);

}  // namespace bagg
