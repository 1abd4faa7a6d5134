/**
 * @file optdecomp.hpp
 * @brief Welfare-optimal decomposable allocations via the IP formulation.
 *
 * The integer program IP(P) has binaries x_ij (support pattern), contributions
 * c_ij, and utility pieces u_ij:
 *
 *   max sum_ij u_ij
 *   (1) sum_j c_ij = 1/n                       for all i
 *   (2) c_ij <= x_ij                           for all i, j
 *   (3) sum_i' c_i'j + (1 - p_ij) x_ij <= 1    for all i, j
 *   (4) u_ij <= sum_i' c_i'j                   for all i, j
 *   (5) u_ij <= p_ij                           for all i, j
 *
 * Feasible points with binary x correspond exactly to decomposable allocations
 * a_j = sum_i c_ij. The optimum is found by depth-first branch-and-bound over
 * x in row-major order with exact LP relaxation bounds; ties between optimal
 * solutions are broken toward the largest minimum allocation entry, then the
 * lexicographically smallest allocation, then the lexicographically smallest
 * contribution matrix.
 */
#pragma once

#include "bagg/decomp.hpp"
#include "bagg/lp.hpp"

namespace bagg {

struct SupportPattern {
  std::vector<std::vector<int>> x;  // n x m entries in {0,1}
};

/// IP(P) as a LinearProgram plus the indices of the binary variables.
/// Variable layout: c_ij at i*m+j, u_ij at n*m + i*m+j, x_ij at 2*n*m + i*m+j.
struct IpModel {
  LinearProgram lp;
  std::vector<int> binaries;  // indices of the x variables
  int n = 0, m = 0;

  int c_var(int i, int j) const { return i * m + j; }
  int u_var(int i, int j) const { return n * m + i * m + j; }
  int x_var(int i, int j) const { return 2 * n * m + i * m + j; }
};

IpModel build_ip(const Profile& p);

struct NodeLimitExceeded : Error {
  using Error::Error;
};

struct OptDecompResult {
  Allocation allocation;
  Contributions contributions;
  Rat welfare;
  long nodes_explored = 0;
};

inline constexpr long kDefaultNodeLimit = 1000000;

OptDecompResult util_decomp(const Profile& p, long node_limit = kDefaultNodeLimit);

/// Decision wrapper: does a decomposable allocation with welfare >= C exist?
bool dwt_decide(const Profile& p, const Rat& C, long node_limit = kDefaultNodeLimit);

/// Test oracle: the optimal welfare over one fixed support pattern, solved on
/// the full IP(P) relaxation with the binaries pinned. nullopt when infeasible.
std::optional<Rat> pattern_welfare(const Profile& p, const SupportPattern& x);

}  // namespace bagg
