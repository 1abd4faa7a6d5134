/**
 * @file lp.hpp
 * @brief Exact rational linear programming via two-phase primal simplex.
 *
 * Dense tableau simplex over arbitrary-precision rationals with Bland's rule,
 * which guarantees termination without any numerical tolerance. Intended for
 * the small LPs arising from the decomposable-welfare integer program; not a
 * general-purpose large-scale solver.
 */
#pragma once

#include "bagg/core.hpp"

#include <optional>

namespace bagg {

enum class Relation { LessEq, Equal };

struct Constraint {
  std::vector<Rat> coeffs;
  Relation rel = Relation::LessEq;
  Rat rhs;
};

struct LinearProgram {
  int num_vars = 0;
  std::vector<Rat> objective;  ///< maximized
  std::vector<Constraint> constraints;
  std::vector<Rat> lower;                 ///< finite lower bounds (default 0)
  std::vector<std::optional<Rat>> upper;  ///< optional upper bounds

  /// Creates an LP with `vars` variables, zero objective, bounds [0, +inf).
  static LinearProgram make(int vars);

  void add_le(std::vector<Rat> coeffs, Rat rhs);
  void add_eq(std::vector<Rat> coeffs, Rat rhs);
};

struct UnboundedError : Error {
  using Error::Error;
};

struct LpSolution {
  std::vector<Rat> x;
  Rat value;
};

/// Exact optimum when feasible and bounded; nullopt when infeasible; throws
/// UnboundedError when the objective is unbounded above.
std::optional<LpSolution> lp_solve(const LinearProgram& lp);

}  // namespace bagg
