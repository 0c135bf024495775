#include "vass_asym/verify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace vass::verify {

using nlohmann::json;

namespace {

using Updates = std::vector<std::vector<Integer>>;

struct Checker {
  const VassMdp& m;
  Outcome& out;
  std::string where;

  bool fail(const std::string& msg) {
    out.failures.push_back(where + ": " + msg);
    return false;
  }

  std::optional<std::size_t> state(const json& name) {
    if (!name.is_string()) return fail("state name is not a string"), std::nullopt;
    auto p = m.find_state(name.get<std::string>());
    if (!p) fail("unknown state '" + name.get<std::string>() + "'");
    return p;
  }
  std::optional<std::size_t> transition(const json& id) {
    if (!id.is_string()) return fail("transition id is not a string"), std::nullopt;
    auto t = m.find_transition(id.get<std::string>());
    if (!t) fail("unknown transition '" + id.get<std::string>() + "'");
    return t;
  }
  std::optional<Rational> number(const json& v) {
    try {
      if (v.is_string()) return parse_rational(v.get<std::string>());
      if (v.is_number_integer()) return Rational(Integer(std::to_string(v.get<long long>())));
    } catch (const std::exception&) {
    }
    fail("not an exact number: " + v.dump());
    return std::nullopt;
  }
};

Rational weight(const VassMdp& m, std::size_t t) { return m.is_prob(m.source(t)) ? m.weight(t) : Rational(1); }

Updates model_updates(const VassMdp& m) {
  Updates u;
  for (std::size_t t = 0; t < m.num_transitions(); ++t) u.push_back(m.transition(t).update);
  return u;
}

// Strong connectivity of `states` using only `edges` (pairs of state indices).
bool strongly_connected(const std::set<std::size_t>& states, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  if (states.empty()) return false;
  auto reach = [&](bool forward) {
    std::set<std::size_t> seen{*states.begin()};
    std::vector<std::size_t> stack{*states.begin()};
    while (!stack.empty()) {
      const auto p = stack.back();
      stack.pop_back();
      for (const auto& [a, b] : edges) {
        const auto from = forward ? a : b, to = forward ? b : a;
        if (from == p && states.count(to) && seen.insert(to).second) stack.push_back(to);
      }
    }
    return seen.size() == states.size();
  };
  return reach(true) && reach(false);
}

struct MecSets {
  std::set<std::size_t> states, transitions;
};

std::optional<MecSets> mec_sets(Checker& c, const json& mec) {
  MecSets s;
  if (!mec.contains("states") || !mec.contains("transitions")) return c.fail("MEC lacks states/transitions"), std::nullopt;
  for (const auto& n : mec["states"]) {
    auto p = c.state(n);
    if (!p) return std::nullopt;
    s.states.insert(*p);
  }
  for (const auto& n : mec["transitions"]) {
    auto t = c.transition(n);
    if (!t) return std::nullopt;
    s.transitions.insert(*t);
  }
  return s;
}

const json* find_mec(const json& mecs, const std::string& id) {
  for (const auto& mec : mecs) {
    if (mec.value("id", "") == id) return &mec;
  }
  return nullptr;
}

}  // namespace

void check_mecs(const VassMdp& m, const json& mecs, Outcome& out) {
  std::set<std::size_t> used;
  for (const auto& mec : mecs) {
    Checker c{m, out, "MEC " + mec.value("id", "?")};
    ++out.checked;
    auto s = mec_sets(c, mec);
    if (!s) continue;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (auto t : s->transitions) {
      if (!s->states.count(m.source(t)) || !s->states.count(m.target(t))) c.fail("transition leaves the component");
      edges.emplace_back(m.source(t), m.target(t));
    }
    for (auto p : s->states) {
      if (!used.insert(p).second) c.fail("state shared between MECs");
      std::size_t inside = 0;
      for (auto t : m.out(p)) inside += s->transitions.count(t);
      if (m.is_prob(p) && inside != m.out(p).size()) c.fail("probabilistic state not closed");
      if (!m.is_prob(p) && inside == 0) c.fail("nondeterministic state without a transition inside");
    }
    if (!strongly_connected(s->states, edges)) c.fail("not strongly connected");
  }
}

void check_reach(const VassMdp& m, const json& mecs, const std::string& from, const std::string& to,
                 const json& cert, Outcome& out) {
  Checker c{m, out, "reach " + from + "->" + to};
  ++out.checked;
  const json* mf = find_mec(mecs, from);
  const json* mt = find_mec(mecs, to);
  if (!mf || !mt) {
    c.fail("unknown MEC");
    return;
  }
  std::vector<bool> target(m.num_states(), false), losing(m.num_states(), false);
  for (const auto& mec : mecs) {
    const auto id = mec.value("id", "");
    for (const auto& n : mec["states"]) {
      auto p = c.state(n);
      if (!p) return;
      if (id == to) target[*p] = true;
      else if (id != from) losing[*p] = true;
    }
  }
  std::vector<Rational> v(m.num_states());
  for (std::size_t p = 0; p < m.num_states(); ++p) {
    const auto& name = m.state(p).name;
    if (!cert["values"].contains(name)) {
      c.fail("missing value for '" + name + "'");
      return;
    }
    auto x = c.number(cert["values"][name]);
    if (!x) return;
    v[p] = *x;
    if (v[p] < 0 || v[p] > 1) c.fail("value outside [0,1] at '" + name + "'");
    if (target[p] && v[p] != 1) c.fail("target state '" + name + "' without value 1");
    if (losing[p] && v[p] != 0) c.fail("third-MEC state '" + name + "' with nonzero value");
  }
  std::vector<std::size_t> choice(m.num_states(), m.num_transitions());
  for (std::size_t p = 0; p < m.num_states(); ++p) {
    if (m.is_prob(p) || target[p] || losing[p]) continue;
    const auto& name = m.state(p).name;
    if (!cert["strategy"].contains(name)) {
      c.fail("strategy misses '" + name + "'");
      return;
    }
    auto t = c.transition(cert["strategy"][name]);
    if (!t || m.source(*t) != p) {
      c.fail("strategy choice at '" + name + "' does not leave it");
      return;
    }
    choice[p] = *t;
    for (auto u : m.out(p)) {
      if (v[m.target(u)] > v[p]) c.fail("value at '" + name + "' is not a fixpoint of max");
    }
    if (v[m.target(*t)] != v[p]) c.fail("strategy does not attain the value at '" + name + "'");
  }
  for (std::size_t p = 0; p < m.num_states(); ++p) {
    if (!m.is_prob(p) || target[p] || losing[p]) continue;
    Rational e = 0;
    for (auto t : m.out(p)) e += m.weight(t) * v[m.target(t)];
    if (e != v[p]) c.fail("value at '" + m.state(p).name + "' is not the expectation");
  }
  // Positive values must reach the target in the strategy's chain through
  // positive states; otherwise the system could hold a spurious fixpoint.
  std::vector<bool> good(target);
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t p = 0; p < m.num_states(); ++p) {
      if (good[p] || v[p] == 0 || losing[p]) continue;
      bool step = false;
      if (m.is_prob(p)) {
        for (auto t : m.out(p)) step = step || good[m.target(t)];
      } else {
        step = good[m.target(choice[p])];
      }
      if (step) good[p] = grew = true;
    }
  }
  for (std::size_t p = 0; p < m.num_states(); ++p) {
    if (v[p] > 0 && !good[p]) c.fail("positive value at '" + m.state(p).name + "' does not lead to the target");
  }
  auto start = c.state(cert["start"]);
  if (!start) return;
  bool in_from = false;
  for (const auto& n : (*mf)["states"]) in_from = in_from || n == cert["start"];
  if (!in_from) c.fail("start state outside the source MEC");
}

void check_multicycle(const VassMdp& m, const json& mec, const Updates& updates, const json& w, Outcome& out) {
  Checker c{m, out, "multicycle on " + mec.value("id", "?")};
  ++out.checked;
  auto s = mec_sets(c, mec);
  if (!s) return;
  std::map<std::size_t, Integer> x;
  for (const auto& [id, val] : w["x"].items()) {
    auto t = c.transition(json(id));
    auto q = c.number(val);
    if (!t || !q) return;
    if (!s->transitions.count(*t)) c.fail("x on a transition outside the MEC");
    if (q->get_den() != 1 || *q < 0) c.fail("x(" + id + ") is not a nonnegative integer");
    x[*t] = q->get_num();
  }
  auto xv = [&](std::size_t t) { return x.count(t) ? x[t] : Integer(0); };
  for (auto p : s->states) {
    Integer in = 0, outflow = 0;
    for (auto t : s->transitions) {
      if (m.target(t) == p) in += xv(t);
      if (m.source(t) == p) outflow += xv(t);
    }
    if (in != outflow) c.fail("flow not conserved at '" + m.state(p).name + "'");
    if (m.is_prob(p)) {
      for (auto t : m.out(p)) {
        if (Rational(xv(t)) != m.weight(t) * outflow) c.fail("x not proportional at '" + m.state(p).name + "'");
      }
    }
  }
  const std::size_t d = updates.empty() ? 0 : updates.front().size();
  std::set<std::size_t> positive;
  for (std::size_t i = 0; i < d; ++i) {
    Integer eff = 0;
    for (auto t : s->transitions) eff += xv(t) * updates[t][i];
    if (eff < 0) c.fail("negative effect on counter " + std::to_string(i + 1));
    if (eff > 0) positive.insert(i + 1);
  }
  std::set<std::size_t> claimed;
  for (const auto& v : w["positive_counters"]) claimed.insert(v.get<std::size_t>());
  if (claimed != positive) c.fail("claimed positive counters differ from the effect");
  std::set<std::string> pos_t, claimed_t;
  for (auto t : s->transitions) {
    if (xv(t) > 0) pos_t.insert(m.transition(t).id);
  }
  for (const auto& v : w["positive_transitions"]) claimed_t.insert(v.get<std::string>());
  if (pos_t != claimed_t) c.fail("claimed positive transitions differ from x");
}

void check_ranking(const VassMdp& m, const json& mec, const Updates& updates, const json& r, Outcome& out) {
  Checker c{m, out, "ranking on " + mec.value("id", "?")};
  ++out.checked;
  auto s = mec_sets(c, mec);
  if (!s) return;
  std::vector<Integer> y;
  for (const auto& v : r["y"]) {
    auto q = c.number(v);
    if (!q) return;
    if (q->get_den() != 1 || *q < 0) c.fail("y is not a nonnegative integer");
    y.push_back(q->get_num());
  }
  const std::size_t d = updates.empty() ? 0 : updates.front().size();
  if (y.size() != d) {
    c.fail("y has the wrong length");
    return;
  }
  std::map<std::size_t, Integer> z;
  for (const auto& [name, val] : r["z"].items()) {
    auto p = c.state(json(name));
    auto q = c.number(val);
    if (!p || !q) return;
    if (q->get_den() != 1) c.fail("z is not an integer");
    z[*p] = q->get_num();
  }
  for (auto p : s->states) {
    if (!z.count(p)) {
      c.fail("z misses '" + m.state(p).name + "'");
      return;
    }
  }
  auto delta = [&](std::size_t t) {
    Integer e = z[m.target(t)] - z[m.source(t)];
    for (std::size_t i = 0; i < d; ++i) e += updates[t][i] * y[i];
    return e;
  };
  std::set<std::string> strict_n, strict_p, claimed_n, claimed_p;
  for (auto t : s->transitions) {
    if (m.is_prob(m.source(t))) continue;
    const auto e = delta(t);
    if (e > 0) c.fail("rank increases along '" + m.transition(t).id + "'");
    if (e < 0) strict_n.insert(m.transition(t).id);
  }
  for (auto p : s->states) {
    if (!m.is_prob(p)) continue;
    Rational e = 0;
    for (auto t : m.out(p)) e += m.weight(t) * Rational(delta(t));
    if (e > 0) c.fail("expected rank increases at '" + m.state(p).name + "'");
    if (e < 0) strict_p.insert(m.state(p).name);
  }
  for (const auto& v : r["strict_nondet"]) claimed_n.insert(v.get<std::string>());
  for (const auto& v : r["strict_prob"]) claimed_p.insert(v.get<std::string>());
  if (claimed_n != strict_n) c.fail("claimed strict transitions differ from the ranking");
  if (claimed_p != strict_p) c.fail("claimed strict states differ from the ranking");
}

void check_bscc_witness(const VassMdp& m, const json& w, Outcome& out) {
  Checker c{m, out, "BSCC witness"};
  ++out.checked;
  std::vector<std::size_t> choice(m.num_states(), m.num_transitions());
  for (std::size_t p = 0; p < m.num_states(); ++p) {
    if (m.is_prob(p)) continue;
    const auto& name = m.state(p).name;
    if (!w["strategy"].contains(name)) {
      c.fail("strategy misses '" + name + "'");
      return;
    }
    auto t = c.transition(w["strategy"][name]);
    if (!t || m.source(*t) != p) {
      c.fail("strategy choice at '" + name + "' does not leave it");
      return;
    }
    choice[p] = *t;
  }
  std::set<std::size_t> states, trans, chain;
  for (const auto& n : w["states"]) {
    auto p = c.state(n);
    if (!p) return;
    states.insert(*p);
  }
  for (const auto& n : w["transitions"]) {
    auto t = c.transition(n);
    if (!t) return;
    trans.insert(*t);
  }
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (auto p : states) {
    if (m.is_prob(p)) {
      for (auto t : m.out(p)) chain.insert(t);
    } else {
      chain.insert(choice[p]);
    }
  }
  if (chain != trans) c.fail("transitions differ from those of the chain");
  for (auto t : chain) {
    if (!states.count(m.target(t))) c.fail("component is not closed in the chain");
    edges.emplace_back(m.source(t), m.target(t));
  }
  if (!strongly_connected(states, edges)) c.fail("component is not strongly connected");
  if (!c.out.failures.empty() && c.out.failures.back().rfind(c.where, 0) == 0) return;

  std::map<std::size_t, Rational> pi;
  Rational total = 0;
  for (auto p : states) {
    const auto& name = m.state(p).name;
    if (!w["stationary"].contains(name)) {
      c.fail("stationary misses '" + name + "'");
      return;
    }
    auto q = c.number(w["stationary"][name]);
    if (!q) return;
    if (*q < 0) c.fail("negative stationary mass");
    pi[p] = *q;
    total += *q;
  }
  if (total != 1) c.fail("stationary masses do not sum to 1");
  for (auto q : states) {
    Rational in = 0;
    for (auto t : chain) {
      if (m.target(t) == q) in += pi[m.source(t)] * weight(m, t);
    }
    if (in != pi[q]) c.fail("balance fails at '" + m.state(q).name + "'");
  }
  if (m.dimension() != 1) return;
  Rational drift = 0;
  for (auto t : chain) drift += pi[m.source(t)] * weight(m, t) * m.transition(t).update[0];
  auto claimed = c.number(w["drift"]);
  if (!claimed) return;
  if (*claimed != drift) c.fail("drift differs from the stationary expectation");

  // Potential: own search, then compare with the claim.
  std::map<std::size_t, Integer> phi{{*states.begin(), 0}};
  std::vector<std::size_t> stack{*states.begin()};
  while (!stack.empty()) {
    const auto p = stack.back();
    stack.pop_back();
    for (auto t : chain) {
      if (m.source(t) == p && !phi.count(m.target(t))) {
        phi[m.target(t)] = phi[p] + m.transition(t).update[0];
        stack.push_back(m.target(t));
      }
      if (m.target(t) == p && !phi.count(m.source(t))) {
        phi[m.source(t)] = phi[p] - m.transition(t).update[0];
        stack.push_back(m.source(t));
      }
    }
  }
  bool zero_cycles = true;
  for (auto t : chain) zero_cycles = zero_cycles && phi[m.target(t)] == phi[m.source(t)] + m.transition(t).update[0];
  if (!w["potential"].is_null()) {
    for (auto t : chain) {
      auto a = c.number(w["potential"].value(m.state(m.source(t)).name, json("x")));
      auto b = c.number(w["potential"].value(m.state(m.target(t)).name, json("x")));
      if (!a || !b) return;
      if (*b != *a + Rational(m.transition(t).update[0])) c.fail("claimed potential is inconsistent");
    }
  }
  const std::string cls = w.value("class", "");
  const std::string expect = drift > 0 ? "Increasing"
                             : drift < 0 ? "Decreasing"
                             : zero_cycles ? "BoundedZero"
                                           : "UnboundedZero";
  if (cls != expect) c.fail("class " + cls + " but the data give " + expect);
}

namespace {

bool has_negative_cycle(const VassMdp& m, const json& w) {
  std::vector<std::size_t> ts;
  for (const auto& id : w["transitions"]) ts.push_back(m.transition_index(id.get<std::string>()));
  std::vector<Integer> dist(m.num_states(), 0);
  for (std::size_t round = 0; round <= m.num_states(); ++round) {
    bool relaxed = false;
    for (auto t : ts) {
      const Integer cand = dist[m.source(t)] + m.transition(t).update[0];
      if (cand < dist[m.target(t)]) {
        dist[m.target(t)] = cand;
        relaxed = true;
      }
    }
    if (!relaxed) return false;
  }
  return true;
}

Updates pipeline_updates(const VassMdp& m, const json& est, const json& step) {
  Updates u = model_updates(m);
  const std::string aug = est.value("augmentation", "none");
  if (aug != "none") {
    const std::string only = aug.rfind("only:", 0) == 0 ? aug.substr(5) : "";
    for (std::size_t t = 0; t < m.num_transitions(); ++t) {
      u[t].push_back(aug == "every-transition" || m.transition(t).id == only ? 1 : 0);
    }
  }
  const auto& zeroed = step["zeroed"];
  for (auto& row : u) {
    for (std::size_t i = 0; i < row.size() && i < zeroed.size(); ++i) {
      if (zeroed[i].get<bool>()) row[i] = 0;
    }
  }
  return u;
}

}  // namespace

Outcome verify_report(const VassMdp& m, const json& report) {
  Outcome out;
  const json mecs = report.value("mecs", json::array());
  if (report.contains("mecs")) check_mecs(m, mecs, out);

  if (report.contains("types")) {
    for (const auto& ty : report["types"]) {
      Rational product = 1;
      for (const auto& st : ty["steps"]) {
        const auto from = st["from"].get<std::string>(), to = st["to"].get<std::string>();
        check_reach(m, mecs, from, to, st["certificate"], out);
        const auto p = parse_rational(st["probability"].get<std::string>());
        const auto start = st["certificate"]["start"].get<std::string>();
        if (parse_rational(st["certificate"]["values"][start].get<std::string>()) != p) {
          out.failures.push_back("type " + ty["index"].dump() + ": probability differs from the certificate");
        }
        product *= p;
      }
      ++out.checked;
      if (parse_rational(ty["weight"].get<std::string>()) != product) {
        out.failures.push_back("type " + ty["index"].dump() + ": weight is not the product of its steps");
      }
    }
  }

  if (report.contains("mec_profiles")) {
    const auto u = model_updates(m);
    for (const auto& prof : report["mec_profiles"]) {
      const json* mec = find_mec(mecs, prof["mec"].get<std::string>());
      if (!mec) {
        out.failures.push_back("profile names an unknown MEC");
        continue;
      }
      if (!prof["multicycle"].is_null()) {
        check_multicycle(m, *mec, u, prof["multicycle"], out);
        if (prof["increasing"].get<bool>() && prof["multicycle"]["positive_counters"].empty()) {
          out.failures.push_back("increasing MEC " + prof["mec"].get<std::string>() + " without positive effect");
        }
      }
      if (!prof["ranking"].is_null()) check_ranking(m, *mec, u, prof["ranking"], out);
      if (prof.contains("witness")) check_bscc_witness(m, prof["witness"], out);
    }
  }

  if (report.contains("estimates")) {
    for (const auto& est : report["estimates"]) {
      if (est.contains("witness") && !est["witness"].is_null()) check_bscc_witness(m, est["witness"], out);
      if (!est.contains("steps")) continue;
      for (const auto& step : est["steps"]) {
        const json* mec = find_mec(mecs, step["mec"].get<std::string>());
        if (!mec) {
          out.failures.push_back("pipeline step names an unknown MEC");
          continue;
        }
        const auto u = pipeline_updates(m, est, step);
        check_multicycle(m, *mec, u, step["multicycle"], out);
        check_ranking(m, *mec, u, step["ranking"], out);
        // Every counter is bounded by the ranking function or pumped by the
        // multicycle, and the class follows y.
        const auto& y = step["ranking"]["y"];
        std::set<std::size_t> pumped;
        for (const auto& v : step["multicycle"]["positive_counters"]) pumped.insert(v.get<std::size_t>());
        for (std::size_t i = 0; i < y.size(); ++i) {
          const bool bounded = parse_rational(y[i].get<std::string>()) > 0;
          if (bounded == (pumped.count(i + 1) > 0)) {
            out.failures.push_back("counter " + std::to_string(i + 1) + " violates the dichotomy in " +
                                   step["mec"].get<std::string>());
          }
          const bool tight = step["classes"][i].get<std::string>() == "TightLinear";
          if (tight != bounded) out.failures.push_back("class of counter " + std::to_string(i + 1) + " contradicts y");
        }
      }
    }
  }

  if (report.contains("answer") && !report["witness"].is_null()) {
    check_bscc_witness(m, report["witness"], out);
    if (report["answer"] == "Safe" && has_negative_cycle(m, report["witness"])) {
      out.failures.push_back("energy witness has a negative cycle");
    }
  }
  return out;
}

}  // namespace vass::verify
