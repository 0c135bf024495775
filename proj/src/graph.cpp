#include "vass_asym/graph.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>

#include "vass_asym/errors.hpp"
#include "vass_asym/lp.hpp"

namespace vass::graph {

bool Mec::contains_state(std::size_t p) const {
  return std::binary_search(states.begin(), states.end(), p);
}

bool Mec::contains_transition(std::size_t t) const {
  return std::binary_search(transitions.begin(), transitions.end(), t);
}

std::vector<std::vector<std::size_t>> strongly_connected_components(
    const std::vector<std::vector<std::size_t>>& successors) {
  const std::size_t n = successors.size();
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> components;
  std::size_t counter = 0;

  struct Frame {
    std::size_t v;
    std::size_t next_edge;
  };
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& f = call.back();
      if (f.next_edge < successors[f.v].size()) {
        const std::size_t w = successors[f.v][f.next_edge++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      const std::size_t v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == index[v]) {
        std::vector<std::size_t> comp;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        components.push_back(std::move(comp));
      }
    }
  }
  std::sort(components.begin(), components.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return components;
}

std::vector<Mec> mec_decomposition(const VassMdp& m) {
  const std::size_t n = m.num_states();
  std::vector<bool> state_alive(n, true);
  std::vector<bool> trans_alive(m.num_transitions(), true);

  std::vector<std::vector<std::size_t>> components;
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::vector<std::size_t>> succ(n);
    for (std::size_t t = 0; t < m.num_transitions(); ++t) {
      if (trans_alive[t]) succ[m.source(t)].push_back(m.target(t));
    }
    components = strongly_connected_components(succ);
    std::vector<std::size_t> comp_of(n);
    for (std::size_t c = 0; c < components.size(); ++c) {
      for (auto p : components[c]) comp_of[p] = c;
    }
    for (std::size_t t = 0; t < m.num_transitions(); ++t) {
      if (!trans_alive[t]) continue;
      const auto p = m.source(t), q = m.target(t);
      if (!state_alive[p] || !state_alive[q] || comp_of[p] != comp_of[q]) {
        trans_alive[t] = false;
        changed = true;
      }
    }
    for (std::size_t p = 0; p < n; ++p) {
      if (!state_alive[p]) continue;
      const auto outs = m.out(p);
      const bool any_alive = std::any_of(outs.begin(), outs.end(), [&](auto t) { return trans_alive[t]; });
      const bool all_alive = std::all_of(outs.begin(), outs.end(), [&](auto t) { return trans_alive[t]; });
      if ((m.is_prob(p) && !all_alive) || (!m.is_prob(p) && !any_alive)) {
        state_alive[p] = false;
        for (auto t : outs) trans_alive[t] = false;
        for (auto t : m.in(p)) trans_alive[t] = false;
        changed = true;
      }
    }
  }

  std::vector<Mec> mecs;
  for (const auto& comp : components) {
    if (!state_alive[comp.front()]) continue;
    Mec mec;
    mec.states = comp;
    for (std::size_t t = 0; t < m.num_transitions(); ++t) {
      if (trans_alive[t] && mec.contains_state(m.source(t))) mec.transitions.push_back(t);
    }
    mecs.push_back(std::move(mec));
  }
  for (std::size_t i = 0; i < mecs.size(); ++i) mecs[i].id = "M" + std::to_string(i + 1);
  return mecs;
}

std::vector<std::optional<std::size_t>> mec_of_states(const VassMdp& m, const std::vector<Mec>& mecs) {
  std::vector<std::optional<std::size_t>> owner(m.num_states());
  for (std::size_t i = 0; i < mecs.size(); ++i) {
    for (auto p : mecs[i].states) owner[p] = i;
  }
  return owner;
}

std::vector<std::optional<std::size_t>> mec_of_transitions(const VassMdp& m,
                                                           const std::vector<Mec>& mecs) {
  std::vector<std::optional<std::size_t>> owner(m.num_transitions());
  for (std::size_t i = 0; i < mecs.size(); ++i) {
    for (auto t : mecs[i].transitions) owner[t] = i;
  }
  return owner;
}

bool is_dag_like(const VassMdp& m) { return is_dag_like(m, mec_decomposition(m)); }

bool is_dag_like(const VassMdp& m, const std::vector<Mec>& mecs) {
  // Two MECs are mutually reachable iff they lie in one SCC of the full graph.
  std::vector<std::vector<std::size_t>> succ(m.num_states());
  for (std::size_t t = 0; t < m.num_transitions(); ++t) succ[m.source(t)].push_back(m.target(t));
  const auto comps = strongly_connected_components(succ);
  std::vector<std::size_t> comp_of(m.num_states());
  for (std::size_t c = 0; c < comps.size(); ++c) {
    for (auto p : comps[c]) comp_of[p] = c;
  }
  std::vector<int> seen(comps.size(), 0);
  for (const auto& mec : mecs) {
    if (seen[comp_of[mec.states.front()]]++ > 0) return false;
  }
  return true;
}

VassMdp mec_submodel(const VassMdp& m, const Mec& mec, const std::vector<bool>& zeroed) {
  return restrict_model(m, mec.states, mec.transitions, zeroed);
}

bool mec_successor(const VassMdp& m, const std::vector<Mec>& mecs, std::size_t from, std::size_t to) {
  if (from == to) return false;
  const auto owner = mec_of_states(m, mecs);
  std::vector<bool> seen(m.num_states(), false);
  std::deque<std::size_t> queue(mecs[from].states.begin(), mecs[from].states.end());
  for (auto p : queue) seen[p] = true;
  while (!queue.empty()) {
    const auto p = queue.front();
    queue.pop_front();
    for (auto t : m.out(p)) {
      const auto q = m.target(t);
      if (seen[q]) continue;
      if (owner[q] == to) return true;
      if (owner[q] && *owner[q] != from) continue;
      seen[q] = true;
      queue.push_back(q);
    }
  }
  return false;
}

std::vector<TypeSeq> enumerate_types(const VassMdp& m, std::size_t max_len) {
  return enumerate_types(m, mec_decomposition(m), max_len);
}

std::vector<TypeSeq> enumerate_types(const VassMdp& m, const std::vector<Mec>& mecs, std::size_t max_len) {
  const std::size_t k = mecs.size();
  std::vector<std::vector<std::optional<Rational>>> edge(k, std::vector<std::optional<Rational>>(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (i != j && mec_successor(m, mecs, i, j)) edge[i][j] = max_reach_probability(m, mecs, i, j);
    }
  }
  std::vector<TypeSeq> types;
  std::vector<TypeSeq> frontier;
  for (std::size_t i = 0; i < k && max_len >= 1; ++i) frontier.push_back({{i}, 1});
  for (std::size_t len = 1; len <= max_len && !frontier.empty(); ++len) {
    types.insert(types.end(), frontier.begin(), frontier.end());
    std::vector<TypeSeq> next;
    for (const auto& ty : frontier) {
      const auto last = ty.mecs.back();
      for (std::size_t j = 0; j < k; ++j) {
        if (!edge[last][j]) continue;
        TypeSeq ext = ty;
        ext.mecs.push_back(j);
        ext.weight *= *edge[last][j];
        next.push_back(std::move(ext));
      }
    }
    frontier = std::move(next);
  }
  return types;
}

ReachResult max_reach(const VassMdp& m, const std::vector<Mec>& mecs, std::size_t from, std::size_t to,
                      std::optional<std::size_t> start) {
  const std::size_t n = m.num_states();
  ReachResult r;
  r.target.assign(n, false);
  r.losing.assign(n, false);
  const auto owner = mec_of_states(m, mecs);
  for (std::size_t p = 0; p < n; ++p) {
    if (owner[p] == to) {
      r.target[p] = true;
    } else if (owner[p] && *owner[p] != from) {
      r.losing[p] = true;
    }
  }
  r.start = start.value_or(mecs[from].states.front());

  // Backward BFS distance to the target through non-losing states.
  constexpr std::size_t kInf = static_cast<std::size_t>(-1);
  std::vector<std::size_t> dist(n, kInf);
  std::deque<std::size_t> queue;
  for (std::size_t p = 0; p < n; ++p) {
    if (r.target[p]) {
      dist[p] = 0;
      queue.push_back(p);
    }
  }
  while (!queue.empty()) {
    const auto q = queue.front();
    queue.pop_front();
    for (auto t : m.in(q)) {
      const auto p = m.source(t);
      if (dist[p] != kInf || r.losing[p]) continue;
      dist[p] = dist[q] + 1;
      queue.push_back(p);
    }
  }

  // Unknown states: can reach the target, not target/losing themselves.
  std::vector<std::size_t> unknown;
  std::vector<std::size_t> slot(n, kInf);
  for (std::size_t p = 0; p < n; ++p) {
    if (!r.target[p] && !r.losing[p] && dist[p] != kInf) {
      slot[p] = unknown.size();
      unknown.push_back(p);
    }
  }

  std::vector<std::size_t> choice(n, kInf);
  for (std::size_t p = 0; p < n; ++p) {
    if (m.is_prob(p)) continue;
    choice[p] = m.out(p).front();
    if (slot[p] == kInf) continue;
    for (auto t : m.out(p)) {
      if (dist[m.target(t)] != kInf && dist[m.target(t)] + 1 == dist[p]) {
        choice[p] = t;
        break;
      }
    }
  }

  auto fixed_value = [&](std::size_t q) -> Rational { return r.target[q] ? Rational(1) : Rational(0); };
  r.values.assign(n, 0);
  for (std::size_t p = 0; p < n; ++p) r.values[p] = fixed_value(p);

  while (true) {
    const std::size_t u = unknown.size();
    std::vector<std::vector<Rational>> a(u, std::vector<Rational>(u));
    std::vector<Rational> b(u);
    for (std::size_t i = 0; i < u; ++i) {
      const auto p = unknown[i];
      a[i][i] += 1;
      auto add = [&](std::size_t t, const Rational& w) {
        const auto q = m.target(t);
        if (slot[q] != kInf) {
          a[i][slot[q]] -= w;
        } else {
          b[i] += w * fixed_value(q);
        }
      };
      if (m.is_prob(p)) {
        for (auto t : m.out(p)) add(t, m.weight(t));
      } else {
        add(choice[p], 1);
      }
    }
    auto sol = lp::solve_linear_system(std::move(a), std::move(b));
    if (!sol) throw std::logic_error("max_reach: singular system for a proper strategy");
    for (std::size_t i = 0; i < u; ++i) r.values[unknown[i]] = (*sol)[i];

    bool improved = false;
    for (auto p : unknown) {
      if (m.is_prob(p)) continue;
      Rational best = r.values[m.target(choice[p])];
      std::size_t best_t = choice[p];
      for (auto t : m.out(p)) {
        if (r.values[m.target(t)] > best) {
          best = r.values[m.target(t)];
          best_t = t;
        }
      }
      if (best_t != choice[p]) {
        choice[p] = best_t;
        improved = true;
      }
    }
    if (!improved) break;
  }

  for (std::size_t p = 0; p < n; ++p) {
    if (!m.is_prob(p)) r.strategy.choice[m.state(p).name] = m.transition(choice[p]).id;
  }
  r.value = r.values[r.start];
  return r;
}

Rational max_reach_probability(const VassMdp& m, const std::vector<Mec>& mecs, std::size_t from,
                               std::size_t to) {
  if (from == to) throw std::invalid_argument("max_reach_probability: from == to");
  return max_reach(m, mecs, from, to).value;
}

std::vector<bool> chain_transitions(const VassMdp& m, const MdStrategy& s) {
  validate_md_strategy(m, s);
  std::vector<bool> kept(m.num_transitions(), false);
  for (std::size_t t = 0; t < m.num_transitions(); ++t) {
    const auto p = m.source(t);
    kept[t] = m.is_prob(p) || s.choice.at(m.state(p).name) == m.transition(t).id;
  }
  return kept;
}

std::vector<std::vector<std::size_t>> chain_successors(const VassMdp& m, const MdStrategy& s) {
  const auto kept = chain_transitions(m, s);
  std::vector<std::vector<std::size_t>> succ(m.num_states());
  for (std::size_t t = 0; t < m.num_transitions(); ++t) {
    if (kept[t]) succ[m.source(t)].push_back(m.target(t));
  }
  return succ;
}

std::vector<Bscc> bottom_sccs(const VassMdp& m, const MdStrategy& s) {
  const auto kept = chain_transitions(m, s);
  std::vector<std::vector<std::size_t>> succ(m.num_states());
  for (std::size_t t = 0; t < m.num_transitions(); ++t) {
    if (kept[t]) succ[m.source(t)].push_back(m.target(t));
  }
  const auto comps = strongly_connected_components(succ);
  std::vector<std::size_t> comp_of(m.num_states());
  for (std::size_t c = 0; c < comps.size(); ++c) {
    for (auto p : comps[c]) comp_of[p] = c;
  }
  std::vector<Bscc> result;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    bool bottom = true;
    for (auto p : comps[c]) {
      for (auto q : succ[p]) bottom = bottom && comp_of[q] == c;
    }
    if (!bottom) continue;
    Bscc b;
    b.states = comps[c];
    for (std::size_t t = 0; t < m.num_transitions(); ++t) {
      if (kept[t] && comp_of[m.source(t)] == c) b.transitions.push_back(t);
    }
    result.push_back(std::move(b));
  }
  return result;
}

std::vector<std::string> state_names(const VassMdp& m, const std::vector<std::size_t>& states) {
  std::vector<std::string> names;
  for (auto p : states) names.push_back(m.state(p).name);
  return names;
}

std::vector<std::string> transition_ids(const VassMdp& m, const std::vector<std::size_t>& transitions) {
  std::vector<std::string> ids;
  for (auto t : transitions) ids.push_back(m.transition(t).id);
  return ids;
}

}  // namespace vass::graph
