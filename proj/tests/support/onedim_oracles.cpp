#include "onedim_oracles.hpp"

#include <map>
#include <stdexcept>

#include "oracles.hpp"

namespace vass::oracle {

std::vector<OracleBscc> oracle_bsccs(const VassMdp& m, const MdStrategy& s) {
  const std::size_t n = m.num_states();
  std::vector<std::vector<std::size_t>> chain(n);
  for (std::size_t t = 0; t < m.num_transitions(); ++t) {
    const auto p = m.source(t);
    if (m.is_prob(p) || s.choice.at(m.state(p).name) == m.transition(t).id) chain[p].push_back(t);
  }
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t p = 0; p < n; ++p) {
    std::vector<std::size_t> stack{p};
    reach[p][p] = true;
    while (!stack.empty()) {
      const auto q = stack.back();
      stack.pop_back();
      for (auto t : chain[q]) {
        if (!reach[p][m.target(t)]) {
          reach[p][m.target(t)] = true;
          stack.push_back(m.target(t));
        }
      }
    }
  }
  std::vector<OracleBscc> out;
  std::vector<bool> done(n, false);
  for (std::size_t p = 0; p < n; ++p) {
    if (done[p]) continue;
    bool bottom = true;
    for (std::size_t q = 0; q < n; ++q) {
      if (reach[p][q] && !reach[q][p]) bottom = false;
    }
    if (!bottom) continue;
    OracleBscc b;
    for (std::size_t q = 0; q < n; ++q) {
      if (reach[p][q]) {
        b.states.push_back(q);
        done[q] = true;
      }
    }
    for (auto q : b.states) b.transitions.insert(b.transitions.end(), chain[q].begin(), chain[q].end());
    const std::size_t k = b.states.size();
    std::map<std::size_t, std::size_t> slot;
    for (std::size_t i = 0; i < k; ++i) slot[b.states[i]] = i;
    std::vector<std::vector<Rational>> a(k + 1, std::vector<Rational>(k));
    std::vector<Rational> rhs(k + 1);
    for (std::size_t i = 0; i < k; ++i) a[i][i] -= 1;
    for (auto t : b.transitions) a[slot[m.target(t)]][slot[m.source(t)]] += m.weight(t);
    for (std::size_t i = 0; i < k; ++i) a[k][i] = 1;
    rhs[k] = 1;
    // Drop one redundant balance row to get a square system.
    a.erase(a.begin());
    rhs.erase(rhs.begin());
    const auto pi = oracle::gauss(a, rhs);
    if (!pi) throw std::logic_error("singular stationary system");
    Rational drift = 0;
    for (auto t : b.transitions) drift += (*pi)[slot[m.source(t)]] * m.weight(t) * m.transition(t).update[0];
    std::map<std::size_t, Integer> phi{{b.states[0], 0}};
    std::vector<std::size_t> stack{b.states[0]};
    while (!stack.empty()) {
      const auto q = stack.back();
      stack.pop_back();
      for (auto t : b.transitions) {
        if (m.source(t) == q && !phi.count(m.target(t))) {
          phi[m.target(t)] = phi[q] + m.transition(t).update[0];
          stack.push_back(m.target(t));
        }
      }
    }
    bool consistent = true;
    for (auto t : b.transitions) {
      if (phi.at(m.target(t)) != phi.at(m.source(t)) + m.transition(t).update[0]) consistent = false;
    }
    b.cls = drift > 0   ? onedim::BsccClass::Increasing
            : drift < 0 ? onedim::BsccClass::Decreasing
            : consistent ? onedim::BsccClass::BoundedZero
                         : onedim::BsccClass::UnboundedZero;
    out.push_back(std::move(b));
  }
  return out;
}

onedim::ClassInventory brute_inventory(const VassMdp& m, const std::vector<graph::Mec>& mecs) {
  onedim::ClassInventory inv;
  inv.increasing.assign(mecs.size(), false);
  inv.bounded_zero.assign(mecs.size(), false);
  inv.unbounded_zero.assign(mecs.size(), false);
  std::vector<bool> bz_t(m.num_transitions(), false), uz_t(m.num_transitions(), false);
  for (const auto& s : oracle::all_md_strategies(m)) {
    for (const auto& b : oracle_bsccs(m, s)) {
      std::size_t home = mecs.size();
      for (std::size_t i = 0; i < mecs.size(); ++i) {
        if (mecs[i].contains_state(b.states[0])) home = i;
      }
      if (home == mecs.size()) throw std::logic_error("BSCC outside every MEC");
      if (b.cls == onedim::BsccClass::Increasing) inv.increasing[home] = true;
      if (b.cls == onedim::BsccClass::BoundedZero) {
        inv.bounded_zero[home] = true;
        for (auto t : b.transitions) bz_t[t] = true;
      }
      if (b.cls == onedim::BsccClass::UnboundedZero) {
        inv.unbounded_zero[home] = true;
        for (auto t : b.transitions) uz_t[t] = true;
      }
    }
  }
  inv.bz_transition.assign(m.num_transitions(), false);
  inv.uz_transition.assign(m.num_transitions(), false);
  for (std::size_t i = 0; i < mecs.size(); ++i) {
    if (inv.increasing[i]) {
      inv.bounded_zero[i] = inv.unbounded_zero[i] = false;
      continue;
    }
    for (auto t : mecs[i].transitions) {
      inv.bz_transition[t] = bz_t[t];
      inv.uz_transition[t] = uz_t[t] && !bz_t[t];
    }
  }
  return inv;
}

bool hamiltonian(const onedim::UndirectedGraph& g) {
  const std::size_t n = g.vertices.size();
  if (n < 3) return false;
  std::map<std::string, std::size_t> idx;
  for (std::size_t i = 0; i < n; ++i) idx[g.vertices[i]] = i;
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (const auto& [a, b] : g.edges) adj[idx[a]][idx[b]] = adj[idx[b]][idx[a]] = true;
  const std::size_t full = std::size_t{1} << n;
  std::vector<std::vector<bool>> dp(full, std::vector<bool>(n, false));
  dp[1][0] = true;
  for (std::size_t mask = 1; mask < full; ++mask) {
    for (std::size_t v = 0; v < n; ++v) {
      if (!dp[mask][v]) continue;
      for (std::size_t w = 0; w < n; ++w) {
        if (adj[v][w] && !(mask & (std::size_t{1} << w))) dp[mask | (std::size_t{1} << w)][w] = true;
      }
    }
  }
  for (std::size_t v = 1; v < n; ++v) {
    if (dp[full - 1][v] && adj[v][0]) return true;
  }
  return false;
}

VassMdp zero_mean(const VassMdp& m, std::mt19937_64& rng) {
  std::vector<StateDef> states;
  for (std::size_t p = 0; p < m.num_states(); ++p) states.push_back(m.state(p));
  std::vector<Transition> ts;
  for (std::size_t p = 0; p < m.num_states(); ++p) {
    const auto out = m.out(p);
    const long k = static_cast<long>(out.size());
    const long a = 1 + static_cast<long>(rng() % 2);
    for (long i = 0; i < k; ++i) {
      Transition t = m.transition(out[i]);
      if (m.is_prob(p)) {
        t.prob = parse_rational("1/" + std::to_string(k));
        t.update = {Integer(k == 1 ? 0 : (i == 0 ? a * (k - 1) : -a))};
      } else {
        t.update = {Integer(t.update[0] < 0 ? -1 : 0)};
      }
      ts.push_back(std::move(t));
    }
  }
  return VassMdp(1, std::move(states), std::move(ts));
}

onedim::UndirectedGraph named_graph(std::size_t n, const std::vector<std::pair<int, int>>& edges) {
  onedim::UndirectedGraph g;
  for (std::size_t i = 0; i < n; ++i) g.vertices.push_back("v" + std::to_string(i));
  for (auto [a, b] : edges) g.edges.emplace_back(g.vertices[a], g.vertices[b]);
  return g;
}

onedim::UndirectedGraph random_graph(std::mt19937_64& rng, std::size_t n, unsigned num, unsigned den) {
  std::vector<std::pair<int, int>> edges;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (rng() % den < num) edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
  return named_graph(n, edges);
}

}  // namespace vass::oracle
