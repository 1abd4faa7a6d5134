/**
 * @file decomp.hpp
 * @brief GreedyDecomp, decomposition certificates, and the flow-based
 *        decomposability decision.
 *
 * An allocation a is decomposable if it splits into per-voter contributions
 * c_i with row sums 1/n, column sums a_j, and c_ij > 0 only where a_j <= p_ij
 * (non-strict support condition). GreedyDecomp builds such a certificate
 * constructively, raising the partial allocation level by level and charging,
 * on each alternative, the highest-voting voters that still have budget.
 */
#pragma once

#include "bagg/core.hpp"

#include <optional>

namespace bagg {

struct GreedyState {
  std::vector<Rat> a_tilde;   ///< partial allocation, starts at 0
  std::vector<Rat> budgets;   ///< remaining voter budgets, start at 1/n
  int outer_k = 1;            ///< current level in [1..n]
};

struct DecompositionCertificate {
  Allocation allocation;
  Contributions contributions;
};

struct MaxTauResult {
  Rat tau_star;
  std::vector<std::vector<Rat>> payments;  // n x m payments at tau_star
};

/// One inner step of Alg. GreedyDecomp: the maximal tau* <= 1 such that no
/// positive-budget voter is charged beyond their remaining budget, where voter
/// i in the argmax set N_j^+ pays (min(mu^k_j, tau) - a~_j) / |N_j^+| on j.
/// The search scans the candidate values {0, 1} u {a~_j} u {mu^k_j} in
/// ascending order and linearly interpolates inside the first interval where
/// some voter's budget binds.
MaxTauResult max_tau(const GreedyState& state, const Profile& p);

/// Full GreedyDecomp run; the result always passes verify_certificate and all
/// budgets end at exactly 0. At most 2n inner iterations happen in total.
DecompositionCertificate greedy_decomp(const Profile& p);

bool verify_certificate(const Profile& p, const DecompositionCertificate& cert);

/// Decides decomposability of a given allocation by an exact max-flow
/// computation (capacities scaled to a common denominator): source->voter arcs
/// of capacity 1/n, voter->alternative arcs where p_ij >= a_j, alternative->
/// sink arcs of capacity a_j. Returns a certificate iff max flow = 1.
std::optional<Contributions> is_decomposable(const Profile& p, const Allocation& a);

}  // namespace bagg
