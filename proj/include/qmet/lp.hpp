#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qmet/error.hpp"
#include "qmet/rational.hpp"

namespace qmet {

enum class Rel { Le, Eq, Ge };
enum class Sense { Max, Min };

struct LpConstraint {
  std::vector<Rat> coeffs;
  Rel rel = Rel::Le;
  Rat rhs;
};

// Dense exact-rational LP.  Variables are nonnegative by default, with
// optional finite upper bounds.  All data finite rationals.
struct LpProblem {
  Sense sense = Sense::Max;
  std::vector<Rat> objective;
  std::vector<LpConstraint> rows;
  std::vector<std::optional<Rat>> upper;  // empty, or one entry per var

  int num_vars() const { return static_cast<int>(objective.size()); }
  std::string dump() const;  // one constraint per line, for failure reports
};

// Optimal outcome with primal and dual certificates.  The dual vector y
// has one entry per row (upper bounds excluded) and satisfies, exactly:
//   sum_i y_i b_i = value (when no upper bound is active; in general
//   y accounts only for the listed rows and the bound rows' duals are
//   folded in by verify helpers), dual feasibility, and complementary
//   slackness.  Signs: for Max, y_i >= 0 on Le rows and y_i <= 0 on Ge
//   rows; for Min the opposite.
struct LpOptimal {
  Rat value;
  std::vector<Rat> x;
  std::vector<Rat> y;        // duals of the listed rows
  std::vector<Rat> ybound;   // duals of the upper-bound rows (same order as vars)
};

struct LpUnbounded {
  std::vector<Rat> point;  // feasible point
  std::vector<Rat> ray;    // improving feasible direction
};

struct LpInfeasible {
  std::vector<Rat> farkas;  // one multiplier per row (bounds folded in)
  std::vector<Rat> farkas_bound;
};

using LpOutcome = std::variant<LpOptimal, LpUnbounded, LpInfeasible>;

// Two-phase primal simplex, Bland's rule, dense rational tableau.
// Throws Error on malformed input.
LpOutcome solve_lp(const LpProblem& p);

// {x >= 0 : rows hold, x_j <= upper_j where given}.
struct Polytope {
  int dim = 0;
  std::vector<LpConstraint> rows;
  std::vector<std::optional<Rat>> upper;
};

bool polytope_nonempty(const Polytope& p);

// min over x in P of max over y in Q of x^T M y, computed by dualizing
// the inner maximization and solving the combined LP exactly.  Both
// polytopes must be non-empty (EmptyPolytope otherwise) and bounded.
Rat solve_saddle(const std::vector<std::vector<Rat>>& m, const Polytope& p,
                 const Polytope& q);

struct EmptyPolytope : Error {
  using Error::Error;
};

}  // namespace qmet
