#include "vass_asym/onedim.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "vass_asym/errors.hpp"

namespace vass::onedim {

std::string to_string(BsccClass c) {
  switch (c) {
    case BsccClass::Increasing: return "Increasing";
    case BsccClass::Decreasing: return "Decreasing";
    case BsccClass::BoundedZero: return "BoundedZero";
    case BsccClass::UnboundedZero: return "UnboundedZero";
  }
  return "?";
}

std::string to_string(Label l) {
  switch (l) {
    case Label::Unbounded: return "Unbounded";
    case Label::TightQuadratic: return "TightQuadratic";
    case Label::TightLinear: return "TightLinear";
    case Label::TightZero: return "TightZero";
    case Label::UpperTypeLength: return "UpperTypeLength";
    case Label::UpperLinear: return "UpperLinear";
    case Label::LowerQuadratic: return "LowerQuadratic";
  }
  return "?";
}

std::string to_string(EnergyAnswer::Kind k) {
  switch (k) {
    case EnergyAnswer::Kind::Safe: return "Safe";
    case EnergyAnswer::Kind::Unsafe: return "Unsafe";
    case EnergyAnswer::Kind::UnknownNPRegime: return "UnknownNPRegime";
  }
  return "?";
}

namespace {

void require_one_dimensional(const VassMdp& m) {
  if (m.dimension() != 1) throw ValidationError("a one-dimensional model is required");
}

const Integer& update_of(const VassMdp& m, std::size_t t) { return m.transition(t).update[0]; }

bool contains(const std::vector<std::size_t>& sorted, std::size_t v) {
  return std::binary_search(sorted.begin(), sorted.end(), v);
}

std::vector<std::size_t> to_original_states(const VassMdp& m, const VassMdp& sub, const std::vector<std::size_t>& s) {
  std::vector<std::size_t> out;
  for (auto p : s) out.push_back(m.state_index(sub.state(p).name));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> to_original_transitions(const VassMdp& m, const VassMdp& sub,
                                                 const std::vector<std::size_t>& ts) {
  std::vector<std::size_t> out;
  for (auto t : ts) out.push_back(m.transition_index(sub.transition(t).id));
  std::sort(out.begin(), out.end());
  return out;
}

// Potential along the given transitions from their first source; nullopt if
// some cycle has nonzero effect. States outside the transitions get 0.
std::optional<std::vector<Integer>> potential_on(const VassMdp& m, const std::vector<std::size_t>& states,
                                                 const std::vector<std::size_t>& transitions) {
  std::vector<std::optional<Integer>> phi(m.num_states());
  std::vector<std::vector<std::size_t>> adj(m.num_states());
  for (auto t : transitions) {
    adj[m.source(t)].push_back(t);
    adj[m.target(t)].push_back(t);
  }
  for (auto root : states) {
    if (phi[root]) continue;
    phi[root] = Integer(0);
    std::deque<std::size_t> queue{root};
    while (!queue.empty()) {
      const auto p = queue.front();
      queue.pop_front();
      for (auto t : adj[p]) {
        const auto a = m.source(t), b = m.target(t);
        if (a == p && !phi[b]) {
          phi[b] = *phi[a] + update_of(m, t);
          queue.push_back(b);
        } else if (b == p && !phi[a]) {
          phi[a] = *phi[b] - update_of(m, t);
          queue.push_back(a);
        }
      }
    }
  }
  for (auto t : transitions) {
    if (*phi[m.target(t)] != *phi[m.source(t)] + update_of(m, t)) return std::nullopt;
  }
  std::vector<Integer> out;
  for (auto p : states) out.push_back(*phi[p]);
  return out;
}

// Nondeterministic states of the region steer towards `target` along allowed
// transitions; `forced` overrides the choice at its source.
MdStrategy strategy_towards(const VassMdp& m, const std::vector<std::size_t>& region,
                            const std::vector<std::size_t>& allowed, std::size_t target,
                            std::optional<std::size_t> forced) {
  constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(m.num_states(), kInf);
  std::vector<bool> ok(m.num_transitions(), false);
  for (auto t : allowed) ok[t] = true;
  dist[target] = 0;
  std::deque<std::size_t> queue{target};
  while (!queue.empty()) {
    const auto q = queue.front();
    queue.pop_front();
    for (auto t : m.in(q)) {
      const auto p = m.source(t);
      if (!ok[t] || dist[p] != kInf || !contains(region, p)) continue;
      dist[p] = dist[q] + 1;
      queue.push_back(p);
    }
  }
  MdStrategy s = default_md_strategy(m);
  for (auto p : region) {
    if (m.is_prob(p)) continue;
    std::optional<std::size_t> pick;
    for (auto t : m.out(p)) {
      if (!ok[t]) continue;
      if (!pick) pick = t;
      if (dist[m.target(t)] != kInf && dist[p] != kInf && dist[m.target(t)] + 1 == dist[p]) {
        pick = t;
        break;
      }
    }
    if (pick) s.choice[m.state(p).name] = m.transition(*pick).id;
  }
  if (forced && !m.is_prob(m.source(*forced))) {
    s.choice[m.state(m.source(*forced)).name] = m.transition(*forced).id;
  }
  return s;
}

std::optional<MdWitness> bscc_witness(const VassMdp& m, const MdStrategy& s, const std::vector<std::size_t>& region,
                                      std::optional<std::size_t> containing,
                                      const std::function<bool(BsccClass)>& accept) {
  for (const auto& b : graph::bottom_sccs(m, s)) {
    if (!std::all_of(b.states.begin(), b.states.end(), [&](auto p) { return contains(region, p); })) continue;
    if (containing && !contains(b.states, *containing)) continue;
    const auto cls = classify_bscc(m, s, b);
    if (accept(cls)) return MdWitness{s, b, cls};
  }
  return std::nullopt;
}

std::vector<Component> components_of(const VassMdp& m, const std::vector<std::size_t>& transitions) {
  std::vector<std::vector<std::size_t>> succ(m.num_states());
  std::vector<bool> touched(m.num_states(), false);
  for (auto t : transitions) {
    succ[m.source(t)].push_back(m.target(t));
    touched[m.source(t)] = touched[m.target(t)] = true;
  }
  std::vector<Component> out;
  for (auto& comp : graph::strongly_connected_components(succ)) {
    if (!touched[comp.front()]) continue;
    Component c;
    c.states = comp;
    for (auto t : transitions) {
      if (contains(comp, m.source(t)) && contains(comp, m.target(t))) c.transitions.push_back(t);
    }
    if (c.transitions.empty()) continue;
    c.nonzero_cycle = !potential_on(m, c.states, c.transitions);
    out.push_back(std::move(c));
  }
  return out;
}

struct IncreasingCheck {
  dichotomy::SystemIWitness multicycle;
  MdWitness witness;
};

std::optional<IncreasingCheck> check_increasing(const VassMdp& m, const graph::Mec& mec) {
  const auto sub = graph::mec_submodel(m, mec);
  auto p = dichotomy::build_system_I(sub);
  lp::LinearConstraint positive = p.candidates.front();
  positive.rhs = 1;
  positive.label = "effect >= 1";
  p.candidates.clear();
  auto probe = p;
  probe.constraints.push_back(positive);
  const auto feasible = lp::solve_feasibility(probe);
  if (!feasible) return std::nullopt;

  IncreasingCheck out;
  out.multicycle = dichotomy::make_multicycle(sub, feasible->assignment);

  // A vertex of the normalized frequency polytope maximizing the drift is the
  // stationary flow of one MD BSCC.
  lp::LinearConstraint total;
  for (std::size_t t = 0; t < sub.num_transitions(); ++t) total.coefficients[t] = 1;
  total.relation = lp::Relation::Eq;
  total.rhs = 1;
  p.constraints.push_back(total);
  std::map<std::size_t, Rational> objective;
  for (std::size_t t = 0; t < sub.num_transitions(); ++t) {
    if (update_of(sub, t) != 0) objective[t] = update_of(sub, t);
  }
  const auto best = lp::optimize(p, objective, lp::Sense::Maximize);
  if (best.status != lp::OptimizationResult::Status::Optimal) {
    throw std::logic_error("increasing MEC without an optimal drift vertex");
  }
  MdStrategy s = default_md_strategy(m);
  std::vector<std::size_t> support_states;
  for (std::size_t q = 0; q < sub.num_states(); ++q) {
    std::optional<std::size_t> pick;
    for (auto t : sub.out(q)) {
      if (best.solution.assignment[t] > 0 && (!pick || best.solution.assignment[t] > best.solution.assignment[*pick])) {
        pick = t;
      }
    }
    if (!pick) continue;
    support_states.push_back(m.state_index(sub.state(q).name));
    if (!sub.is_prob(q)) s.choice[sub.state(q).name] = sub.transition(*pick).id;
  }
  std::sort(support_states.begin(), support_states.end());
  auto w = bscc_witness(m, s, support_states, std::nullopt, [](BsccClass c) { return c == BsccClass::Increasing; });
  if (!w) throw std::logic_error("drift vertex did not yield an increasing BSCC");
  out.witness = std::move(*w);
  return out;
}

}  // namespace

BsccAnalysis analyze_bscc(const VassMdp& m, const MdStrategy& s, const graph::Bscc& b) {
  require_one_dimensional(m);
  const auto all = graph::bottom_sccs(m, s);
  if (std::find(all.begin(), all.end(), b) == all.end()) throw NotABottomScc("not a bottom SCC of the chain");

  const std::size_t k = b.states.size();
  std::vector<std::size_t> slot(m.num_states(), k);
  for (std::size_t i = 0; i < k; ++i) slot[b.states[i]] = i;

  // pi = pi P with the first balance row replaced by sum(pi) = 1.
  std::vector<std::vector<Rational>> a(k, std::vector<Rational>(k));
  std::vector<Rational> rhs(k);
  for (std::size_t i = 1; i < k; ++i) a[i][i] = 1;
  for (auto t : b.transitions) {
    const auto to = slot[m.target(t)];
    if (to != 0) a[to][slot[m.source(t)]] -= m.weight(t);
  }
  for (std::size_t j = 0; j < k; ++j) a[0][j] = 1;
  rhs[0] = 1;
  auto pi = lp::solve_linear_system(std::move(a), std::move(rhs));
  if (!pi) throw std::logic_error("singular stationary system on a bottom SCC");

  BsccAnalysis out;
  out.stationary = std::move(*pi);
  for (auto t : b.transitions) out.drift += out.stationary[slot[m.source(t)]] * m.weight(t) * update_of(m, t);
  out.potential = potential_on(m, b.states, b.transitions);
  if (out.drift > 0) {
    out.cls = BsccClass::Increasing;
  } else if (out.drift < 0) {
    out.cls = BsccClass::Decreasing;
  } else {
    out.cls = out.potential ? BsccClass::BoundedZero : BsccClass::UnboundedZero;
  }
  return out;
}

BsccClass classify_bscc(const VassMdp& m, const MdStrategy& s, const graph::Bscc& b) {
  return analyze_bscc(m, s, b).cls;
}

bool MecProfile::has_transition_in(const std::vector<std::size_t>& list, std::size_t t) const {
  return contains(list, t);
}

std::optional<MdWitness> witness_through(const VassMdp& m, const Component& c, std::size_t state,
                                         std::optional<std::size_t> forced) {
  const auto s = strategy_towards(m, c.states, c.transitions, state, forced);
  return bscc_witness(m, s, c.states, state, [](BsccClass) { return true; });
}

MecProfile profile_mec(const VassMdp& m, const std::vector<graph::Mec>& mecs, std::size_t i) {
  require_one_dimensional(m);
  const auto& mec = mecs.at(i);
  MecProfile prof;
  prof.mec = i;
  if (auto inc = check_increasing(m, mec)) {
    prof.increasing = true;
    prof.increasing_multicycle = std::move(inc->multicycle);
    prof.increasing_witness = std::move(inc->witness);
    return prof;
  }

  const auto sub = graph::mec_submodel(m, mec);
  prof.solutions = dichotomy::compute_maximal_solutions(sub);
  const auto& r = prof.solutions->ranking;

  // Bounded zero: keep rank-preserving transitions, then prune to a fixpoint.
  std::vector<bool> keep(m.num_transitions(), false), alive(m.num_states(), false);
  for (auto p : mec.states) alive[p] = true;
  for (auto t : mec.transitions) keep[t] = dichotomy::rank_effect(m, r, t) == 0;
  for (auto p : mec.states) {
    if (!m.is_prob(p)) continue;
    const bool all = std::all_of(m.out(p).begin(), m.out(p).end(), [&](auto t) { return keep[t]; });
    if (!all) {
      for (auto t : m.out(p)) keep[t] = false;
    }
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto p : mec.states) {
      if (!alive[p]) continue;
      std::size_t live_out = 0;
      for (auto t : m.out(p)) {
        if (keep[t] && !alive[m.target(t)]) keep[t] = false;
        live_out += keep[t];
      }
      if (m.is_prob(p) ? live_out != m.out(p).size() : live_out == 0) {
        alive[p] = false;
        for (auto t : m.out(p)) keep[t] = false;
        changed = true;
      }
    }
  }
  std::vector<std::size_t> alive_states, kept;
  for (auto p : mec.states) {
    if (alive[p]) alive_states.push_back(p);
  }
  for (auto t : mec.transitions) {
    if (keep[t]) kept.push_back(t);
  }
  if (!alive_states.empty()) {
    const auto fix = restrict_model(m, alive_states, kept);
    for (const auto& e : graph::mec_decomposition(fix)) {
      Component c;
      c.states = to_original_states(m, fix, e.states);
      c.transitions = to_original_transitions(m, fix, e.transitions);
      prof.bounded_zero_transitions.insert(prof.bounded_zero_transitions.end(), c.transitions.begin(),
                                           c.transitions.end());
      prof.bounded_zero_components.push_back(std::move(c));
    }
    std::sort(prof.bounded_zero_transitions.begin(), prof.bounded_zero_transitions.end());
    prof.bounded_zero = true;
    const auto& c0 = prof.bounded_zero_components.front();
    prof.bounded_zero_witness = witness_through(m, c0, c0.states.front());
    if (!prof.bounded_zero_witness || prof.bounded_zero_witness->cls != BsccClass::BoundedZero) {
      throw std::logic_error("rank-preserving end component without a bounded-zero BSCC");
    }
  }

  // Unbounded zero: support components of the maximal multicycle.
  std::vector<std::size_t> support;
  for (auto t : mec.transitions) {
    if (prof.solutions->multicycle.x.at(m.transition(t).id) > 0) support.push_back(t);
  }
  prof.support_components = components_of(m, support);
  for (auto t : support) {
    if (!contains(prof.bounded_zero_transitions, t)) prof.unbounded_zero_transitions.push_back(t);
  }
  for (const auto& c : prof.support_components) {
    if (!c.nonzero_cycle) continue;
    prof.unbounded_zero = true;
    // A probabilistic state with a rank-changing branch lies on every BSCC we
    // steer into it; that BSCC then has a nonzero cycle.
    std::size_t anchor = c.states.front();
    for (auto t : c.transitions) {
      if (m.is_prob(m.source(t)) && dichotomy::rank_effect(m, r, t) != 0) {
        anchor = m.source(t);
        break;
      }
    }
    prof.unbounded_zero_witness = witness_through(m, c, anchor);
    if (!prof.unbounded_zero_witness || prof.unbounded_zero_witness->cls != BsccClass::UnboundedZero) {
      throw std::logic_error("support component with a nonzero cycle but no unbounded-zero BSCC");
    }
    break;
  }
  return prof;
}

std::optional<IncreasingDetection> detect_increasing(const VassMdp& m) {
  require_one_dimensional(m);
  const auto mecs = graph::mec_decomposition(m);
  for (std::size_t i = 0; i < mecs.size(); ++i) {
    if (auto inc = check_increasing(m, mecs[i])) return IncreasingDetection{i, std::move(inc->multicycle), std::move(inc->witness)};
  }
  return std::nullopt;
}

namespace {

std::vector<MecProfile> zero_profiles(const VassMdp& m, const std::vector<graph::Mec>& mecs) {
  std::vector<MecProfile> out;
  for (std::size_t i = 0; i < mecs.size(); ++i) {
    out.push_back(profile_mec(m, mecs, i));
    if (out.back().increasing) {
      throw PreconditionViolated("an increasing BSCC exists in " + mecs[i].id +
                                 "; the zero-class detectors need its absence");
    }
  }
  return out;
}

}  // namespace

std::optional<ZeroDetection> detect_bounded_zero(const VassMdp& m) {
  require_one_dimensional(m);
  const auto mecs = graph::mec_decomposition(m);
  for (auto& prof : zero_profiles(m, mecs)) {
    if (!prof.bounded_zero) continue;
    const auto& c = prof.bounded_zero_components.front();
    return ZeroDetection{prof.mec, c.states, c.transitions, *prof.bounded_zero_witness};
  }
  return std::nullopt;
}

std::optional<ZeroDetection> detect_unbounded_zero(const VassMdp& m) {
  require_one_dimensional(m);
  const auto mecs = graph::mec_decomposition(m);
  for (auto& prof : zero_profiles(m, mecs)) {
    if (!prof.unbounded_zero) continue;
    for (const auto& c : prof.support_components) {
      if (c.nonzero_cycle) return ZeroDetection{prof.mec, c.states, c.transitions, *prof.unbounded_zero_witness};
    }
  }
  return std::nullopt;
}

std::uint64_t count_md_strategies(const VassMdp& m) {
  std::uint64_t n = 1;
  for (std::size_t p = 0; p < m.num_states(); ++p) {
    if (m.is_prob(p)) continue;
    const std::uint64_t k = m.out(p).size();
    if (n > std::numeric_limits<std::uint64_t>::max() / k) return std::numeric_limits<std::uint64_t>::max();
    n *= k;
  }
  return n;
}

void throw_too_many_strategies(std::uint64_t count, std::uint64_t bound) {
  throw TooManyStrategies(std::to_string(count) + " MD strategies exceed the bound " + std::to_string(bound));
}

std::vector<BruteEntry> brute_force_classify(const VassMdp& m, std::uint64_t bound) {
  require_one_dimensional(m);
  std::vector<BruteEntry> out;
  for_each_md_strategy(m, bound, [&](const MdStrategy& s) {
    for (auto& b : graph::bottom_sccs(m, s)) {
      const auto cls = classify_bscc(m, s, b);
      out.push_back({s, std::move(b), cls});
    }
    return true;
  });
  return out;
}

bool has_negative_cycle(const VassMdp& m, const std::vector<std::size_t>& transitions) {
  // Bellman-Ford from a virtual source connected to every state with weight 0.
  std::vector<Integer> dist(m.num_states(), 0);
  for (std::size_t round = 0; round <= m.num_states(); ++round) {
    bool relaxed = false;
    for (auto t : transitions) {
      const Integer cand = dist[m.source(t)] + update_of(m, t);
      if (cand < dist[m.target(t)]) {
        dist[m.target(t)] = cand;
        relaxed = true;
      }
    }
    if (!relaxed) return false;
  }
  return true;
}

std::optional<MdWitness> find_nondecreasing_bscc(const VassMdp& m, std::optional<std::size_t> through,
                                                 std::uint64_t bound) {
  require_one_dimensional(m);
  std::optional<MdWitness> found;
  for_each_md_strategy(m, bound, [&](const MdStrategy& s) {
    for (auto& b : graph::bottom_sccs(m, s)) {
      if (through && !contains(b.states, *through)) continue;
      if (has_negative_cycle(m, b.transitions)) continue;
      const auto cls = classify_bscc(m, s, b);
      found = MdWitness{s, std::move(b), cls};
      return false;
    }
    return true;
  });
  return found;
}

ClassInventory inventory_from_profiles(const VassMdp& m, const std::vector<MecProfile>& profiles) {
  ClassInventory inv;
  inv.bz_transition.assign(m.num_transitions(), false);
  inv.uz_transition.assign(m.num_transitions(), false);
  for (const auto& p : profiles) {
    inv.increasing.push_back(p.increasing);
    inv.bounded_zero.push_back(p.bounded_zero);
    inv.unbounded_zero.push_back(p.unbounded_zero);
    for (auto t : p.bounded_zero_transitions) inv.bz_transition[t] = true;
    for (auto t : p.unbounded_zero_transitions) inv.uz_transition[t] = true;
  }
  return inv;
}

OneDimEntry label_for(const VassMdp& m, const std::vector<graph::Mec>& mecs, const graph::TypeSeq& beta,
                      std::size_t type_index, const ComplexityMeasure& f, const ClassInventory& inv) {
  OneDimEntry e;
  e.measure = f;
  e.type_index = type_index;
  const auto& seq = beta.mecs;
  const std::size_t k = seq.size();
  const bool longer = k > 1;
  auto first_in_type = [&](const std::vector<bool>& flag, std::size_t upto) -> std::optional<std::size_t> {
    for (std::size_t j = 0; j < upto; ++j) {
      if (flag[seq[j]]) return seq[j];
    }
    return std::nullopt;
  };
  auto first_anywhere = [&](const std::vector<bool>& flag) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < flag.size(); ++i) {
      if (flag[i]) return i;
    }
    return std::nullopt;
  };
  auto set = [&](Label l, bool amb, std::string why, std::optional<std::size_t> mec) {
    e.label = l;
    e.ambiguous = amb;
    e.justification = std::move(why);
    e.witness_mec = mec;
  };

  const auto inc_in = first_in_type(inv.increasing, k);
  const auto bz_in = first_in_type(inv.bounded_zero, k);
  const auto uz_in = first_in_type(inv.unbounded_zero, k);
  const auto inc_any = first_anywhere(inv.increasing);
  const auto bz_any = first_anywhere(inv.bounded_zero);
  const auto uz_any = first_anywhere(inv.unbounded_zero);

  switch (f.kind) {
    case ComplexityMeasure::Kind::Counter:
      if (inc_in) {
        set(Label::Unbounded, longer, "increasing-bscc-in-type", inc_in);
      } else {
        set(Label::TightLinear, inc_any.has_value(), "no-increasing-bscc-in-type", std::nullopt);
      }
      break;

    case ComplexityMeasure::Kind::Termination:
      if (inc_in) {
        set(Label::Unbounded, longer, "increasing-bscc-in-type", inc_in);
      } else if (bz_in) {
        set(Label::Unbounded, longer, "bounded-zero-bscc-in-type", bz_in);
      } else if (inc_any || bz_any) {
        if (uz_in) {
          set(Label::LowerQuadratic, longer, "unbounded-zero-bscc-in-type-upper-bound-open", uz_in);
        } else {
          set(Label::TightLinear, true, "non-decreasing-bscc-elsewhere", std::nullopt);
        }
      } else if (uz_in) {
        set(Label::TightQuadratic, longer, "unbounded-zero-bscc-in-type", uz_in);
      } else if (uz_any) {
        set(Label::TightLinear, true, "unbounded-zero-bscc-elsewhere", std::nullopt);
      } else {
        set(Label::TightLinear, false, "all-bsccs-decreasing", std::nullopt);
      }
      break;

    case ComplexityMeasure::Kind::TransitionCount: {
      const auto t = m.transition_index(f.transition);
      std::optional<std::size_t> home;
      for (std::size_t i = 0; i < mecs.size(); ++i) {
        if (mecs[i].contains_transition(t)) home = i;
      }
      if (!home) {
        set(Label::UpperTypeLength, false, "transition-outside-mecs", std::nullopt);
        e.type_length = k;
        break;
      }
      std::optional<std::size_t> pos;
      for (std::size_t i = 0; i < k; ++i) {
        if (seq[i] == *home) pos = i;
      }
      if (!pos) {
        set(Label::TightZero, false, "type-avoids-mec-of-transition", std::nullopt);
        break;
      }
      if (const auto j = first_in_type(inv.increasing, *pos + 1)) {
        set(Label::Unbounded, false, "increasing-bscc-at-or-before-mec-of-transition", j);
      } else if (inv.bz_transition[t]) {
        set(Label::Unbounded, longer, "bounded-zero-bscc-through-transition", home);
      } else if (inv.uz_transition[t]) {
        set(Label::TightQuadratic, longer, "unbounded-zero-bscc-through-transition", home);
      } else if (!inc_any && !bz_any && !uz_any) {
        set(Label::UpperLinear, false, "all-bsccs-decreasing", std::nullopt);
      } else {
        set(Label::UpperLinear, true, "transition-on-no-non-decreasing-bscc", std::nullopt);
      }
      break;
    }
  }
  return e;
}

OneDimReport classify_onedim(const VassMdp& m, const std::vector<ComplexityMeasure>& measures,
                             std::size_t max_type_len) {
  require_one_dimensional(m);
  for (const auto& f : measures) validate_measure(f, m);
  OneDimReport rep;
  rep.mecs = graph::mec_decomposition(m);
  rep.types = graph::enumerate_types(m, rep.mecs, max_type_len);
  for (std::size_t i = 0; i < rep.mecs.size(); ++i) rep.profiles.push_back(profile_mec(m, rep.mecs, i));
  const auto inv = inventory_from_profiles(m, rep.profiles);

  for (const auto& f : measures) {
    for (std::size_t ti = 0; ti < rep.types.size(); ++ti) {
      auto e = label_for(m, rep.mecs, rep.types[ti], ti, f, inv);
      if (e.witness_mec) {
        const auto& prof = rep.profiles[*e.witness_mec];
        const bool on_transition = f.kind == ComplexityMeasure::Kind::TransitionCount &&
                                   (e.justification == "bounded-zero-bscc-through-transition" ||
                                    e.justification == "unbounded-zero-bscc-through-transition");
        if (on_transition) {
          const auto t = m.transition_index(f.transition);
          const bool bz = e.justification.rfind("bounded", 0) == 0;
          const auto& comps = bz ? prof.bounded_zero_components : prof.support_components;
          for (const auto& c : comps) {
            if (!contains(c.transitions, t)) continue;
            e.witness = witness_through(m, c, m.source(t), t);
            break;
          }
        } else if (e.label == Label::Unbounded && prof.increasing) {
          e.witness = prof.increasing_witness;
        } else if (e.justification == "bounded-zero-bscc-in-type") {
          e.witness = prof.bounded_zero_witness;
        } else if (prof.unbounded_zero) {
          e.witness = prof.unbounded_zero_witness;
        }
      }
      rep.entries.push_back(std::move(e));
    }
  }
  return rep;
}

EnergyAnswer energy_safe(const VassMdp& m, std::uint64_t bound) {
  require_one_dimensional(m);
  const auto mecs = graph::mec_decomposition(m);
  std::vector<MecProfile> profiles;
  bool increasing = false;
  for (std::size_t i = 0; i < mecs.size(); ++i) {
    profiles.push_back(profile_mec(m, mecs, i));
    increasing = increasing || profiles.back().increasing;
  }
  EnergyAnswer ans;
  if (!increasing) {
    ans.method = "bounded-zero-detector";
    for (const auto& p : profiles) {
      if (p.bounded_zero) {
        ans.kind = EnergyAnswer::Kind::Safe;
        ans.witness = p.bounded_zero_witness;
        return ans;
      }
    }
    ans.kind = EnergyAnswer::Kind::Unsafe;
    return ans;
  }
  ans.method = "brute-force";
  if (count_md_strategies(m) > bound) {
    ans.kind = EnergyAnswer::Kind::UnknownNPRegime;
    return ans;
  }
  ans.witness = find_nondecreasing_bscc(m, std::nullopt, bound);
  ans.kind = ans.witness ? EnergyAnswer::Kind::Safe : EnergyAnswer::Kind::Unsafe;
  return ans;
}

UndirectedGraph parse_graph(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("graph document is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("vertices") || !doc.contains("edges") || !doc["vertices"].is_array() ||
      !doc["edges"].is_array()) {
    throw SchemaError("graph document needs arrays \"vertices\" and \"edges\"");
  }
  UndirectedGraph g;
  for (const auto& v : doc["vertices"]) {
    if (!v.is_string()) throw SchemaError("vertex names must be strings");
    g.vertices.push_back(v.get<std::string>());
  }
  for (const auto& e : doc["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string()) {
      throw SchemaError("edges must be pairs of vertex names");
    }
    g.edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  }
  return g;
}

VassMdp hamiltonian_reduction(const UndirectedGraph& g, const std::string& p) {
  std::set<std::string> names(g.vertices.begin(), g.vertices.end());
  if (names.size() != g.vertices.size()) throw ValidationError("duplicate vertex names");
  if (!names.count(p)) throw VertexNotInGraph("vertex '" + p + "' is not in the graph");
  const Integer back = 1 - static_cast<long>(g.vertices.size());
  std::vector<StateDef> states;
  for (const auto& v : g.vertices) states.push_back({v, StateKind::Nondet});
  std::vector<Transition> ts;
  std::set<std::pair<std::string, std::string>> seen;
  std::set<std::string> touched;
  auto add = [&](const std::string& a, const std::string& b, Integer u) {
    ts.push_back({"e:" + a + "->" + b, a, {std::move(u)}, b, std::nullopt});
  };
  for (const auto& [a, b] : g.edges) {
    if (!names.count(a)) throw VertexNotInGraph("edge endpoint '" + a + "' is not in the graph");
    if (!names.count(b)) throw VertexNotInGraph("edge endpoint '" + b + "' is not in the graph");
    if (a == b) throw ValidationError("self-loop on '" + a + "'");
    const auto key = std::minmax(a, b);
    if (!seen.insert({key.first, key.second}).second) throw ValidationError("duplicate edge {" + a + "," + b + "}");
    touched.insert(a);
    touched.insert(b);
    if (a == p || b == p) {
      const auto& q = a == p ? b : a;
      add(q, p, 1);
      add(p, q, back);
    } else {
      add(a, b, 1);
      add(b, a, 1);
    }
  }
  for (const auto& v : g.vertices) {
    if (!touched.count(v)) add(v, v, -1);
  }
  return VassMdp(1, std::move(states), std::move(ts));
}

}  // namespace vass::onedim
