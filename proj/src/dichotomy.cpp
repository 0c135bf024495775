#include "vass_asym/dichotomy.hpp"

#include <algorithm>
#include <cassert>

#include "vass_asym/errors.hpp"

namespace vass::dichotomy {

std::string to_string(CounterClass c) {
  return c == CounterClass::TightLinear ? "TightLinear" : "LowerQuadratic";
}

std::string to_string(CapState w) { return w == CapState::LinearCap ? "LinearCap" : "PumpedQuadratic"; }

namespace {

using lp::LinearConstraint;
using lp::Relation;

void add_term(LinearConstraint& row, std::size_t var, const Rational& coef) {
  if (coef == 0) return;
  auto& slot = row.coefficients[var];
  slot += coef;
  if (slot == 0) row.coefficients.erase(var);
}

LinearConstraint negated(LinearConstraint row) {
  for (auto& [v, c] : row.coefficients) c = -c;
  row.relation = Relation::Geq;
  return row;
}

}  // namespace

lp::LpProblem build_system_I(const VassMdp& sc) {
  lp::LpProblem p;
  for (const auto& t : sc.transitions()) p.add_variable("x[" + t.id + "]");
  for (std::size_t t = 0; t < sc.num_transitions(); ++t) {
    LinearConstraint row;
    row.coefficients[t] = 1;
    row.label = "x[" + sc.transition(t).id + "] >= 0";
    p.constraints.push_back(std::move(row));
  }
  std::vector<LinearConstraint> effect(sc.dimension());
  for (std::size_t c = 0; c < sc.dimension(); ++c) {
    for (std::size_t t = 0; t < sc.num_transitions(); ++t) add_term(effect[c], t, sc.transition(t).update[c]);
    effect[c].label = "effect on counter " + std::to_string(c + 1);
    if (!effect[c].coefficients.empty()) p.constraints.push_back(effect[c]);
  }
  for (std::size_t q = 0; q < sc.num_states(); ++q) {
    LinearConstraint flow;
    flow.relation = Relation::Eq;
    flow.label = "flow at " + sc.state(q).name;
    for (auto t : sc.in(q)) add_term(flow, t, 1);
    for (auto t : sc.out(q)) add_term(flow, t, -1);
    if (!flow.coefficients.empty()) p.constraints.push_back(std::move(flow));
    if (!sc.is_prob(q)) continue;
    for (auto t : sc.out(q)) {
      LinearConstraint prop;
      prop.relation = Relation::Eq;
      prop.label = "proportion of " + sc.transition(t).id;
      add_term(prop, t, 1);
      for (auto u : sc.out(q)) add_term(prop, u, -sc.weight(t));
      if (!prop.coefficients.empty()) p.constraints.push_back(std::move(prop));
    }
  }
  for (std::size_t c = 0; c < sc.dimension(); ++c) p.candidates.push_back(effect[c]);
  for (std::size_t t = 0; t < sc.num_transitions(); ++t) {
    LinearConstraint cand;
    cand.coefficients[t] = 1;
    cand.label = "x[" + sc.transition(t).id + "] > 0";
    p.candidates.push_back(std::move(cand));
  }
  return p;
}

lp::LpProblem build_system_II(const VassMdp& sc) {
  lp::LpProblem p;
  const std::size_t d = sc.dimension();
  for (std::size_t c = 0; c < d; ++c) p.add_variable("y[" + std::to_string(c + 1) + "]");
  for (const auto& s : sc.states()) p.add_variable("z[" + s.name + "]");
  for (std::size_t v = 0; v < p.num_variables(); ++v) {
    LinearConstraint row;
    row.coefficients[v] = 1;
    row.label = p.variables[v] + " >= 0";
    p.constraints.push_back(std::move(row));
  }
  auto transition_row = [&](std::size_t t, const Rational& scale, LinearConstraint& row) {
    add_term(row, d + sc.target(t), scale);
    add_term(row, d + sc.source(t), -scale);
    for (std::size_t c = 0; c < d; ++c) add_term(row, c, scale * sc.transition(t).update[c]);
  };
  std::vector<LinearConstraint> strict_rows;
  for (std::size_t t = 0; t < sc.num_transitions(); ++t) {
    if (sc.is_prob(sc.source(t))) continue;
    LinearConstraint row;
    row.relation = Relation::Leq;
    row.label = "rank decrease on " + sc.transition(t).id;
    transition_row(t, 1, row);
    p.constraints.push_back(row);
    strict_rows.push_back(negated(row));
  }
  for (std::size_t q = 0; q < sc.num_states(); ++q) {
    if (!sc.is_prob(q)) continue;
    LinearConstraint row;
    row.relation = Relation::Leq;
    row.label = "expected rank decrease at " + sc.state(q).name;
    for (auto t : sc.out(q)) transition_row(t, sc.weight(t), row);
    p.constraints.push_back(row);
    strict_rows.push_back(negated(row));
  }
  for (std::size_t c = 0; c < d; ++c) {
    LinearConstraint cand;
    cand.coefficients[c] = 1;
    cand.label = "y[" + std::to_string(c + 1) + "] > 0";
    p.candidates.push_back(std::move(cand));
  }
  for (auto& r : strict_rows) p.candidates.push_back(std::move(r));
  return p;
}

Rational rank_effect(const VassMdp& sc, const RankingFunction& r, std::size_t t) {
  const auto& tr = sc.transition(t);
  Rational e = Rational(r.z.at(tr.to)) - Rational(r.z.at(tr.from));
  for (std::size_t c = 0; c < sc.dimension(); ++c) e += Rational(tr.update[c] * r.y[c]);
  return e;
}

Rational expected_rank_effect(const VassMdp& sc, const RankingFunction& r, std::size_t p) {
  Rational e = 0;
  for (auto t : sc.out(p)) e += sc.weight(t) * rank_effect(sc, r, t);
  return e;
}

SystemIWitness make_multicycle(const VassMdp& sc, const std::vector<Rational>& x) {
  lp::LpSolution raw;
  raw.assignment = x;
  const auto scaled = lp::scale_to_integers(raw).assignment;
  SystemIWitness w;
  for (std::size_t t = 0; t < sc.num_transitions(); ++t) {
    const Integer v = scaled[t].get_num();
    w.x[sc.transition(t).id] = v;
    if (v > 0) w.positive_transitions.push_back(sc.transition(t).id);
  }
  for (std::size_t c = 0; c < sc.dimension(); ++c) {
    Integer e = 0;
    for (std::size_t t = 0; t < sc.num_transitions(); ++t) e += scaled[t].get_num() * sc.transition(t).update[c];
    if (e > 0) w.positive_counters.push_back(c);
  }
  return w;
}

MaximalSolutions compute_maximal_solutions(const VassMdp& sc) {
  MaximalSolutions out;
  const std::size_t d = sc.dimension();

  out.multicycle = make_multicycle(sc, lp::maximize_strict_count(build_system_I(sc)).assignment);

  const auto sol_ii = lp::scale_to_integers(lp::maximize_strict_count(build_system_II(sc)), true);
  auto& r = out.ranking;
  for (std::size_t c = 0; c < d; ++c) r.y.push_back(sol_ii.assignment[c].get_num());
  for (std::size_t q = 0; q < sc.num_states(); ++q) r.z[sc.state(q).name] = sol_ii.assignment[d + q].get_num();
  for (std::size_t t = 0; t < sc.num_transitions(); ++t) {
    if (!sc.is_prob(sc.source(t)) && rank_effect(sc, r, t) < 0) r.strict_nondet.push_back(sc.transition(t).id);
  }
  for (std::size_t q = 0; q < sc.num_states(); ++q) {
    if (sc.is_prob(q) && expected_rank_effect(sc, r, q) < 0) r.strict_prob.push_back(sc.state(q).name);
  }
  return out;
}

bool verify_dichotomy(const VassMdp& sc, const SystemIWitness& w, const RankingFunction& r) {
  auto x_of = [&](std::size_t t) -> Integer {
    auto it = w.x.find(sc.transition(t).id);
    return it == w.x.end() ? Integer(0) : it->second;
  };
  for (std::size_t c = 0; c < sc.dimension(); ++c) {
    Integer e = 0;
    for (std::size_t t = 0; t < sc.num_transitions(); ++t) e += x_of(t) * sc.transition(t).update[c];
    if (!(r.y[c] > 0 || e > 0)) return false;
  }
  for (std::size_t t = 0; t < sc.num_transitions(); ++t) {
    if (sc.is_prob(sc.source(t))) continue;
    if (!(rank_effect(sc, r, t) < 0 || x_of(t) > 0)) return false;
  }
  for (std::size_t q = 0; q < sc.num_states(); ++q) {
    if (!sc.is_prob(q)) continue;
    const bool covered = std::all_of(sc.out(q).begin(), sc.out(q).end(), [&](auto t) { return x_of(t) > 0; });
    if (!(expected_rank_effect(sc, r, q) < 0 || covered)) return false;
  }
  return true;
}

std::vector<CounterClass> classify_counters(const MaximalSolutions& s, std::size_t dimension) {
  std::vector<CounterClass> out;
  for (std::size_t c = 0; c < dimension; ++c) {
    out.push_back(s.ranking.y[c] > 0 ? CounterClass::TightLinear : CounterClass::LowerQuadratic);
  }
  return out;
}

std::vector<CounterClass> classify_counters_mec(const VassMdp& sc) {
  return classify_counters(compute_maximal_solutions(sc), sc.dimension());
}

void validate_type(const VassMdp& m, const std::vector<graph::Mec>& mecs, const std::vector<std::size_t>& beta) {
  if (beta.empty()) throw InvalidType("empty type");
  for (auto i : beta) {
    if (i >= mecs.size()) throw InvalidType("type refers to an unknown MEC");
  }
  for (std::size_t i = 0; i + 1 < beta.size(); ++i) {
    if (beta[i] == beta[i + 1]) throw InvalidType("consecutive MECs of a type must differ");
    if (!graph::mec_successor(m, mecs, beta[i], beta[i + 1])) {
      throw InvalidType(mecs[beta[i + 1]].id + " is not reachable from " + mecs[beta[i]].id +
                        " without entering another MEC");
    }
  }
}

DagEstimate classify_dag(const VassMdp& m, const std::vector<std::size_t>& beta, const ComplexityMeasure& f) {
  return classify_dag(m, graph::mec_decomposition(m), beta, f);
}

DagEstimate classify_dag(const VassMdp& m, const std::vector<graph::Mec>& mecs,
                         const std::vector<std::size_t>& beta, const ComplexityMeasure& f) {
  validate_measure(f, m);
  if (!graph::is_dag_like(m, mecs)) throw NotDagLike("MEC decomposition not DAG-like");
  validate_type(m, mecs, beta);

  DagEstimate est;
  est.measure = f;
  const VassMdp* model = &m;
  std::optional<VassMdp> augmented;
  switch (f.kind) {
    case ComplexityMeasure::Kind::Counter:
      est.counter = f.counter;
      break;
    case ComplexityMeasure::Kind::Termination:
      augmented = augment_step_counter(m, StepCounterTarget::every_transition());
      break;
    case ComplexityMeasure::Kind::TransitionCount:
      augmented = augment_step_counter(m, StepCounterTarget::only_transition(f.transition));
      break;
  }
  if (augmented) {
    model = &*augmented;
    est.counter = m.dimension();
  }

  // The step counter does not change the graph, so MEC indices carry over.
  const std::size_t d = model->dimension();
  std::vector<CapState> w(d, CapState::LinearCap);
  for (std::size_t pos = 0; pos < beta.size(); ++pos) {
    PipelineStep step;
    step.mec = beta[pos];
    step.w_before = w;
    step.zeroed.resize(d);
    for (std::size_t c = 0; c < d; ++c) step.zeroed[c] = w[c] == CapState::PumpedQuadratic;
    const auto sub = graph::mec_submodel(*model, mecs[beta[pos]], step.zeroed);
    step.solutions = compute_maximal_solutions(sub);
    step.classes = classify_counters(step.solutions, d);
    for (std::size_t c = 0; c < d; ++c) {
      if (w[c] == CapState::LinearCap && step.classes[c] == CounterClass::LowerQuadratic) {
        w[c] = CapState::PumpedQuadratic;
        step.promoted.push_back(c);
      }
    }
    if (std::find(step.promoted.begin(), step.promoted.end(), est.counter) != step.promoted.end()) {
      est.promoted_at = pos;
      if (pos > 0) {
        const auto plain = graph::mec_submodel(*model, mecs[beta[pos]]);
        est.beyond_quadratic = classify_counters_mec(plain)[est.counter] == CounterClass::LowerQuadratic;
      }
    }
    est.steps.push_back(std::move(step));
  }
  for (std::size_t i = 1; i < est.steps.size(); ++i) {
    for (std::size_t c = 0; c < d; ++c) {
      assert(!(est.steps[i - 1].w_before[c] == CapState::PumpedQuadratic &&
               est.steps[i].w_before[c] == CapState::LinearCap));
    }
  }
  est.label = est.promoted_at ? CounterClass::LowerQuadratic : CounterClass::TightLinear;
  return est;
}

}  // namespace vass::dichotomy
