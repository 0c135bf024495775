#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vass_asym/rational.hpp"

/// Exact rational linear programming.
///
/// Variables are free unless a constraint of the form `x >= 0` (single
/// variable, positive coefficient, zero right-hand side) bounds them; such
/// rows become variable bounds instead of tableau rows. The simplex runs in two
/// phases with Bland's rule, so it terminates on degenerate problems and never
/// consults a numerical tolerance.
namespace vass::lp {

enum class Relation { Eq, Geq, Leq };

struct LinearConstraint {
  std::map<std::size_t, Rational> coefficients;
  Relation relation = Relation::Geq;
  Rational rhs = 0;
  std::string label;

  Rational lhs(const std::vector<Rational>& x) const;
  bool holds(const std::vector<Rational>& x) const;
};

struct LpProblem {
  std::vector<std::string> variables;
  std::vector<LinearConstraint> constraints;
  /// "Desired strict" rows: each is `expr >= 0` and is probed as `expr >= 1`.
  std::vector<LinearConstraint> candidates;

  std::size_t add_variable(std::string name);
  std::size_t num_variables() const { return variables.size(); }
};

struct LpSolution {
  std::vector<Rational> assignment;
  std::vector<std::size_t> achieved_strict;  // candidate indices, ascending

  bool achieves(std::size_t candidate) const;
};

std::optional<LpSolution> solve_feasibility(const LpProblem& p);

enum class Sense { Minimize, Maximize };

struct OptimizationResult {
  enum class Status { Optimal, Infeasible, Unbounded };
  Status status = Status::Infeasible;
  LpSolution solution;  // optimal basic solution when status == Optimal
  Rational value = 0;
};

/// Optimizes over the base constraints of p (candidates are ignored).
OptimizationResult optimize(const LpProblem& p, const std::map<std::size_t, Rational>& objective,
                            Sense sense);

/// Probes each candidate as `candidate >= 1` on top of the base system and
/// the non-strict form of every other candidate, then sums one witness per
/// achievable candidate. Requires every base row and every candidate to be
/// homogeneous (rhs 0, candidates as Geq). In systems where the non-strict
/// candidates are implied by the base rows this is exactly the per-candidate
/// probe; otherwise they act as extra constraints.
LpSolution maximize_strict_count(const LpProblem& p);

/// Multiplies by the positive lcm of all denominators. With
/// `min_nonzero_at_least_one`, additionally guarantees that the smallest
/// nonzero magnitude is >= 1.
LpSolution scale_to_integers(const LpSolution& s, bool min_nonzero_at_least_one = false);

/// Unique solution of the square system A x = b, or nullopt if A is singular.
std::optional<std::vector<Rational>> solve_linear_system(std::vector<std::vector<Rational>> a,
                                                         std::vector<Rational> b);

}  // namespace vass::lp
