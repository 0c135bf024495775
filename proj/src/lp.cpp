#include "vass_asym/lp.hpp"

#include <algorithm>
#include <cassert>

#include "vass_asym/errors.hpp"

namespace vass::lp {

Rational LinearConstraint::lhs(const std::vector<Rational>& x) const {
  Rational sum = 0;
  for (const auto& [v, a] : coefficients) sum += a * x.at(v);
  return sum;
}

bool LinearConstraint::holds(const std::vector<Rational>& x) const {
  const Rational value = lhs(x);
  switch (relation) {
    case Relation::Eq:
      return value == rhs;
    case Relation::Geq:
      return value >= rhs;
    case Relation::Leq:
      return value <= rhs;
  }
  return false;
}

std::size_t LpProblem::add_variable(std::string name) {
  variables.push_back(std::move(name));
  return variables.size() - 1;
}

bool LpSolution::achieves(std::size_t candidate) const {
  return std::binary_search(achieved_strict.begin(), achieved_strict.end(), candidate);
}

namespace {

// Standard-form problem: A x = b, x >= 0, b >= 0, with a known starting basis
// made of slack or artificial columns.
class Tableau {
 public:
  enum class Outcome { Optimal, Unbounded };

  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  std::vector<std::size_t> basis;
  std::size_t columns = 0;

  void pivot(std::size_t row, std::size_t col) {
    const Rational inv = 1 / a[row][col];
    for (auto& v : a[row]) v *= inv;
    b[row] *= inv;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][col] == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t j = 0; j < columns; ++j) {
        if (a[row][j] != 0) a[r][j] -= f * a[row][j];
      }
      b[r] -= f * b[row];
    }
    basis[row] = col;
  }

  // Minimizes cost.x over columns with allowed[j]; Bland's rule throughout.
  Outcome minimize(const std::vector<Rational>& cost, const std::vector<bool>& allowed) {
    std::vector<Rational> reduced(columns);
    while (true) {
      std::optional<std::size_t> entering;
      for (std::size_t j = 0; j < columns && !entering; ++j) {
        if (!allowed[j]) continue;
        Rational d = cost[j];
        for (std::size_t r = 0; r < a.size(); ++r) {
          if (a[r][j] != 0) d -= cost[basis[r]] * a[r][j];
        }
        if (d < 0) entering = j;
      }
      if (!entering) return Outcome::Optimal;

      std::optional<std::size_t> leaving;
      Rational best_ratio;
      for (std::size_t r = 0; r < a.size(); ++r) {
        if (a[r][*entering] <= 0) continue;
        Rational ratio = b[r] / a[r][*entering];
        if (!leaving || ratio < best_ratio ||
            (ratio == best_ratio && basis[r] < basis[*leaving])) {
          leaving = r;
          best_ratio = ratio;
        }
      }
      if (!leaving) return Outcome::Unbounded;
      pivot(*leaving, *entering);
    }
  }

  void remove_row(std::size_t r) {
    a.erase(a.begin() + static_cast<std::ptrdiff_t>(r));
    b.erase(b.begin() + static_cast<std::ptrdiff_t>(r));
    basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(r));
  }
};

struct StandardForm {
  Tableau tableau;
  // Column layout: for each variable a "plus" column and optionally a "minus"
  // column (free variables); then slack columns; then artificial columns.
  std::vector<std::size_t> plus_col;
  std::vector<std::optional<std::size_t>> minus_col;
  std::size_t first_artificial = 0;
};

bool is_bound_row(const LinearConstraint& c) {
  if (c.coefficients.size() != 1 || c.rhs != 0) return false;
  const auto& coef = c.coefficients.begin()->second;
  return (c.relation == Relation::Geq && coef > 0) || (c.relation == Relation::Leq && coef < 0);
}

StandardForm build_standard_form(const LpProblem& p, const std::vector<LinearConstraint>& rows_in) {
  const std::size_t n = p.num_variables();
  std::vector<bool> nonneg(n, false);
  std::vector<const LinearConstraint*> rows;
  for (const auto& c : rows_in) {
    for (const auto& [v, coef] : c.coefficients) {
      if (v >= n) throw std::out_of_range("constraint references undeclared variable");
    }
    if (is_bound_row(c)) {
      nonneg[c.coefficients.begin()->first] = true;
    } else {
      rows.push_back(&c);
    }
  }

  StandardForm sf;
  std::size_t col = 0;
  sf.plus_col.resize(n);
  sf.minus_col.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    sf.plus_col[v] = col++;
    if (!nonneg[v]) sf.minus_col[v] = col++;
  }
  std::vector<std::optional<std::size_t>> slack_col(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r]->relation != Relation::Eq) slack_col[r] = col++;
  }
  sf.first_artificial = col;

  auto& t = sf.tableau;
  t.a.assign(rows.size(), {});
  t.b.assign(rows.size(), 0);
  t.basis.assign(rows.size(), 0);
  std::vector<bool> needs_artificial(rows.size(), true);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& c = *rows[r];
    std::vector<Rational> row(sf.first_artificial);
    for (const auto& [v, coef] : c.coefficients) {
      row[sf.plus_col[v]] += coef;
      if (sf.minus_col[v]) row[*sf.minus_col[v]] -= coef;
    }
    if (slack_col[r]) row[*slack_col[r]] = (c.relation == Relation::Leq) ? 1 : -1;
    Rational rhs = c.rhs;
    if (rhs < 0) {
      for (auto& x : row) x = -x;
      rhs = -rhs;
    }
    if (slack_col[r] && row[*slack_col[r]] == 1) {
      needs_artificial[r] = false;
      t.basis[r] = *slack_col[r];
    }
    t.a[r] = std::move(row);
    t.b[r] = rhs;
  }
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (needs_artificial[r]) t.basis[r] = col++;
  }
  t.columns = col;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    t.a[r].resize(col);
    if (needs_artificial[r]) t.a[r][t.basis[r]] = 1;
  }
  return sf;
}

std::vector<Rational> extract(const StandardForm& sf, std::size_t n) {
  std::vector<Rational> colval(sf.tableau.columns);
  for (std::size_t r = 0; r < sf.tableau.basis.size(); ++r) {
    colval[sf.tableau.basis[r]] = sf.tableau.b[r];
  }
  std::vector<Rational> x(n);
  for (std::size_t v = 0; v < n; ++v) {
    x[v] = colval[sf.plus_col[v]];
    if (sf.minus_col[v]) x[v] -= colval[*sf.minus_col[v]];
  }
  return x;
}

// Phase 1. Returns false if infeasible; otherwise leaves a feasible basis
// without artificial columns.
bool phase_one(StandardForm& sf) {
  auto& t = sf.tableau;
  std::vector<Rational> cost(t.columns);
  for (std::size_t j = sf.first_artificial; j < t.columns; ++j) cost[j] = 1;
  std::vector<bool> allowed(t.columns, true);
  t.minimize(cost, allowed);
  for (std::size_t r = 0; r < t.basis.size(); ++r) {
    if (t.basis[r] >= sf.first_artificial && t.b[r] != 0) return false;
  }
  // Drive zero-level artificials out of the basis; drop redundant rows.
  for (std::size_t r = 0; r < t.basis.size();) {
    if (t.basis[r] < sf.first_artificial) {
      ++r;
      continue;
    }
    std::optional<std::size_t> col;
    for (std::size_t j = 0; j < sf.first_artificial && !col; ++j) {
      if (t.a[r][j] != 0) col = j;
    }
    if (col) {
      t.pivot(r, *col);
      ++r;
    } else {
      t.remove_row(r);
    }
  }
  return true;
}

}  // namespace

std::optional<LpSolution> solve_feasibility(const LpProblem& p) {
  auto sf = build_standard_form(p, p.constraints);
  if (!phase_one(sf)) return std::nullopt;
  LpSolution s;
  s.assignment = extract(sf, p.num_variables());
  return s;
}

OptimizationResult optimize(const LpProblem& p, const std::map<std::size_t, Rational>& objective,
                            Sense sense) {
  OptimizationResult result;
  auto sf = build_standard_form(p, p.constraints);
  if (!phase_one(sf)) {
    result.status = OptimizationResult::Status::Infeasible;
    return result;
  }
  auto& t = sf.tableau;
  std::vector<Rational> cost(t.columns);
  for (const auto& [v, c] : objective) {
    if (v >= p.num_variables()) throw std::out_of_range("objective references undeclared variable");
    const Rational signed_c = (sense == Sense::Minimize) ? c : Rational(-c);
    cost[sf.plus_col[v]] += signed_c;
    if (sf.minus_col[v]) cost[*sf.minus_col[v]] -= signed_c;
  }
  std::vector<bool> allowed(t.columns, false);
  for (std::size_t j = 0; j < sf.first_artificial; ++j) allowed[j] = true;
  if (t.minimize(cost, allowed) == Tableau::Outcome::Unbounded) {
    result.status = OptimizationResult::Status::Unbounded;
    return result;
  }
  result.status = OptimizationResult::Status::Optimal;
  result.solution.assignment = extract(sf, p.num_variables());
  for (const auto& [v, c] : objective) result.value += c * result.solution.assignment[v];
  return result;
}

LpSolution maximize_strict_count(const LpProblem& p) {
  for (const auto& c : p.constraints) {
    if (c.rhs != 0) throw NonHomogeneousSystem("base constraint '" + c.label + "' has nonzero right-hand side");
  }
  for (const auto& c : p.candidates) {
    if (c.rhs != 0 || c.relation != Relation::Geq) {
      throw NonHomogeneousSystem("candidate '" + c.label + "' is not of the form expr >= 0");
    }
  }

  const std::size_t k = p.candidates.size();
  std::vector<Rational> total(p.num_variables());
  std::vector<bool> achieved(k, false);

  LpProblem probe = p;
  probe.candidates.clear();
  for (const auto& c : p.candidates) probe.constraints.push_back(c);
  for (std::size_t i = 0; i < k; ++i) {
    if (achieved[i]) continue;
    auto strict = p.candidates[i];
    strict.rhs = 1;
    probe.constraints.push_back(strict);
    auto witness = solve_feasibility(probe);
    probe.constraints.pop_back();
    if (!witness) continue;
    for (std::size_t v = 0; v < total.size(); ++v) total[v] += witness->assignment[v];
    // Any candidate positive in this witness is achievable by positive scaling.
    for (std::size_t j = 0; j < k; ++j) {
      if (p.candidates[j].lhs(witness->assignment) > 0) achieved[j] = true;
    }
  }

  Rational factor = 1;
  for (std::size_t j = 0; j < k; ++j) {
    if (!achieved[j]) continue;
    const Rational value = p.candidates[j].lhs(total);
    assert(value > 0);
    if (1 / value > factor) factor = 1 / value;
  }
  LpSolution s;
  s.assignment = std::move(total);
  if (factor != 1) {
    for (auto& v : s.assignment) v *= factor;
  }
  for (std::size_t j = 0; j < k; ++j) {
    if (achieved[j]) s.achieved_strict.push_back(j);
  }
  return s;
}

LpSolution scale_to_integers(const LpSolution& s, bool min_nonzero_at_least_one) {
  LpSolution out = s;
  const Integer l = lcm_of_denominators(s.assignment);
  for (auto& v : out.assignment) v *= l;
  if (min_nonzero_at_least_one) {
    Rational smallest = 0;
    for (const auto& v : out.assignment) {
      const Rational mag = abs(v);
      if (mag != 0 && (smallest == 0 || mag < smallest)) smallest = mag;
    }
    if (smallest != 0 && smallest < 1) {
      Integer f = Rational(1 / smallest).get_num();
      if (Rational(f) * smallest < 1) f += 1;
      for (auto& v : out.assignment) v *= f;
    }
  }
  return out;
}

std::optional<std::vector<Rational>> solve_linear_system(std::vector<std::vector<Rational>> a,
                                                         std::vector<Rational> b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw std::invalid_argument("solve_linear_system: dimension mismatch");
  for (const auto& row : a) {
    if (row.size() != n) throw std::invalid_argument("solve_linear_system: matrix is not square");
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::optional<std::size_t> piv;
    for (std::size_t r = col; r < n && !piv; ++r) {
      if (a[r][col] != 0) piv = r;
    }
    if (!piv) return std::nullopt;
    std::swap(a[col], a[*piv]);
    std::swap(b[col], b[*piv]);
    const Rational inv = 1 / a[col][col];
    for (std::size_t j = col; j < n; ++j) a[col][j] *= inv;
    b[col] *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t j = col; j < n; ++j) a[r][j] -= f * a[col][j];
      b[r] -= f * b[col];
    }
  }
  return b;
}

}  // namespace vass::lp
