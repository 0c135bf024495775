#include "vass_asym/report.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "vass_asym/dichotomy.hpp"
#include "vass_asym/errors.hpp"
#include "vass_asym/onedim.hpp"
#include "vass_asym/verify.hpp"

namespace vass::report {

using nlohmann::json;

namespace {

json header(const VassMdp& m) {
  return {{"tool", kToolName}, {"version", kToolVersion}, {"model_digest", model_digest(m)}, {"dimension", m.dimension()}};
}

json mec_json(const VassMdp& m, const graph::Mec& mec) {
  return {{"id", mec.id},
          {"states", graph::state_names(m, mec.states)},
          {"transitions", graph::transition_ids(m, mec.transitions)}};
}

json mecs_json(const VassMdp& m, const std::vector<graph::Mec>& mecs) {
  json out = json::array();
  for (const auto& mec : mecs) out.push_back(mec_json(m, mec));
  return out;
}

json strategy_json(const MdStrategy& s) {
  json out = json::object();
  for (const auto& [p, t] : s.choice) out[p] = t;
  return out;
}

json multicycle_json(const dichotomy::SystemIWitness& w) {
  json x = json::object();
  for (const auto& [t, v] : w.x) x[t] = to_string(v);
  std::vector<std::size_t> counters;
  for (auto c : w.positive_counters) counters.push_back(c + 1);
  return {{"x", x}, {"positive_counters", counters}, {"positive_transitions", w.positive_transitions}};
}

json ranking_json(const dichotomy::RankingFunction& r) {
  json y = json::array();
  for (const auto& v : r.y) y.push_back(to_string(v));
  json z = json::object();
  for (const auto& [p, v] : r.z) z[p] = to_string(v);
  return {{"y", y}, {"z", z}, {"strict_nondet", r.strict_nondet}, {"strict_prob", r.strict_prob}};
}

json bscc_witness_json(const VassMdp& m, const onedim::MdWitness& w) {
  const auto a = onedim::analyze_bscc(m, w.strategy, w.bscc);
  json pi = json::object();
  for (std::size_t i = 0; i < w.bscc.states.size(); ++i) pi[m.state(w.bscc.states[i]).name] = to_string(a.stationary[i]);
  json potential = nullptr;
  if (a.potential) {
    potential = json::object();
    for (std::size_t i = 0; i < w.bscc.states.size(); ++i) {
      potential[m.state(w.bscc.states[i]).name] = to_string((*a.potential)[i]);
    }
  }
  return {{"class", onedim::to_string(w.cls)},
          {"strategy", strategy_json(w.strategy)},
          {"states", graph::state_names(m, w.bscc.states)},
          {"transitions", graph::transition_ids(m, w.bscc.transitions)},
          {"stationary", pi},
          {"drift", to_string(a.drift)},
          {"potential", potential}};
}

json reach_json(const VassMdp& m, const graph::ReachResult& r) {
  json values = json::object();
  for (std::size_t p = 0; p < m.num_states(); ++p) values[m.state(p).name] = to_string(r.values[p]);
  return {{"start", m.state(r.start).name}, {"values", values}, {"strategy", strategy_json(r.strategy)}};
}

json types_json(const VassMdp& m, const std::vector<graph::Mec>& mecs, const std::vector<graph::TypeSeq>& types) {
  std::map<std::pair<std::size_t, std::size_t>, graph::ReachResult> cache;
  json out = json::array();
  for (std::size_t i = 0; i < types.size(); ++i) {
    const auto& beta = types[i];
    json ids = json::array();
    for (auto k : beta.mecs) ids.push_back(mecs[k].id);
    json steps = json::array();
    for (std::size_t j = 0; j + 1 < beta.mecs.size(); ++j) {
      const auto key = std::make_pair(beta.mecs[j], beta.mecs[j + 1]);
      auto it = cache.find(key);
      if (it == cache.end()) it = cache.emplace(key, graph::max_reach(m, mecs, key.first, key.second)).first;
      steps.push_back({{"from", mecs[key.first].id},
                       {"to", mecs[key.second].id},
                       {"probability", to_string(it->second.value)},
                       {"certificate", reach_json(m, it->second)}});
    }
    out.push_back({{"index", i}, {"mecs", ids}, {"weight", to_string(beta.weight)}, {"steps", steps}});
  }
  return out;
}

// Growth vocabulary of an estimate: kind in {tight, lower, upper, unbounded,
// constant} and the function of n.
json estimate_of(onedim::Label l, std::size_t k) {
  switch (l) {
    case onedim::Label::Unbounded: return {{"kind", "unbounded"}, {"function", nullptr}};
    case onedim::Label::TightQuadratic: return {{"kind", "tight"}, {"function", "n^2"}};
    case onedim::Label::TightLinear: return {{"kind", "tight"}, {"function", "n"}};
    case onedim::Label::TightZero: return {{"kind", "constant"}, {"function", "0"}};
    case onedim::Label::UpperTypeLength: return {{"kind", "constant"}, {"function", std::to_string(k)}};
    case onedim::Label::UpperLinear: return {{"kind", "upper"}, {"function", "n"}};
    case onedim::Label::LowerQuadratic: return {{"kind", "lower"}, {"function", "n^2"}};
  }
  return nullptr;
}

int rank_of(const std::string& label) {
  static const std::map<std::string, int> order{{"TightZero", 0},      {"UpperTypeLength", 1}, {"UpperLinear", 2},
                                                {"TightLinear", 3},    {"LowerQuadratic", 4},  {"TightQuadratic", 5},
                                                {"Unbounded", 6}};
  return order.at(label);
}

// MECs reachable from p without passing through another MEC first.
std::vector<std::size_t> first_mecs(const VassMdp& m, const std::vector<std::optional<std::size_t>>& owner,
                                    std::size_t p) {
  std::set<std::size_t> found;
  std::vector<bool> seen(m.num_states(), false);
  std::vector<std::size_t> stack{p};
  seen[p] = true;
  while (!stack.empty()) {
    const auto q = stack.back();
    stack.pop_back();
    if (owner[q]) {
      found.insert(*owner[q]);
      continue;
    }
    for (auto t : m.out(q)) {
      if (!seen[m.target(t)]) {
        seen[m.target(t)] = true;
        stack.push_back(m.target(t));
      }
    }
  }
  return {found.begin(), found.end()};
}

// Per initial state the types that can start there and the largest label per
// measure over them; "overall" is the maximum over all states.
void add_initial_states(const VassMdp& m, const std::vector<graph::Mec>& mecs,
                        const std::vector<graph::TypeSeq>& types, json& rep) {
  const auto owner = graph::mec_of_states(m, mecs);
  json states = json::array();
  json overall = json::object();
  for (std::size_t p = 0; p < m.num_states(); ++p) {
    const auto first = first_mecs(m, owner, p);
    std::vector<std::size_t> type_idx;
    for (std::size_t i = 0; i < types.size(); ++i) {
      if (std::find(first.begin(), first.end(), types[i].mecs.front()) != first.end()) type_idx.push_back(i);
    }
    json worst = json::object();
    for (const auto& e : rep["estimates"]) {
      const std::size_t ti = e["type"].get<std::size_t>();
      if (std::find(type_idx.begin(), type_idx.end(), ti) == type_idx.end()) continue;
      const auto& meas = e["measure"].get_ref<const std::string&>();
      const auto& label = e["label"].get_ref<const std::string&>();
      if (!worst.contains(meas) || rank_of(label) > rank_of(worst[meas].get<std::string>())) worst[meas] = label;
      if (!overall.contains(meas) || rank_of(label) > rank_of(overall[meas].get<std::string>())) overall[meas] = label;
    }
    json first_ids = json::array();
    for (auto i : first) first_ids.push_back(mecs[i].id);
    states.push_back({{"state", m.state(p).name}, {"first_mecs", first_ids}, {"types", type_idx}, {"max", worst}});
  }
  rep["initial_states"] = states;
  rep["overall"] = overall;
}

json analyze_onedim(const VassMdp& m, const std::vector<ComplexityMeasure>& measures, std::size_t max_type_len,
                    json rep) {
  const auto r = onedim::classify_onedim(m, measures, max_type_len);
  rep["engine"] = "one-dimensional";
  rep["mecs"] = mecs_json(m, r.mecs);
  rep["dag_like"] = graph::is_dag_like(m, r.mecs);
  rep["types"] = types_json(m, r.mecs, r.types);

  json profiles = json::array();
  for (const auto& p : r.profiles) {
    json j = {{"mec", r.mecs[p.mec].id},
              {"increasing", p.increasing},
              {"bounded_zero", p.bounded_zero},
              {"unbounded_zero", p.unbounded_zero},
              {"bounded_zero_transitions", graph::transition_ids(m, p.bounded_zero_transitions)},
              {"unbounded_zero_transitions", graph::transition_ids(m, p.unbounded_zero_transitions)},
              {"multicycle", nullptr},
              {"ranking", nullptr}};
    if (p.increasing) {
      j["multicycle"] = multicycle_json(*p.increasing_multicycle);
      j["witness"] = bscc_witness_json(m, *p.increasing_witness);
    } else {
      j["multicycle"] = multicycle_json(p.solutions->multicycle);
      j["ranking"] = ranking_json(p.solutions->ranking);
    }
    profiles.push_back(std::move(j));
  }
  rep["mec_profiles"] = profiles;

  json estimates = json::array();
  for (const auto& e : r.entries) {
    json j = {{"measure", to_string(e.measure)},
              {"type", e.type_index},
              {"label", onedim::to_string(e.label)},
              {"estimate", estimate_of(e.label, e.type_length)},
              {"ambiguous", e.ambiguous},
              {"justification", e.justification},
              {"witness_mec", e.witness_mec ? json(r.mecs[*e.witness_mec].id) : json(nullptr)},
              {"witness", e.witness ? bscc_witness_json(m, *e.witness) : json(nullptr)}};
    if (e.label == onedim::Label::UpperTypeLength) j["type_length"] = e.type_length;
    estimates.push_back(std::move(j));
  }
  rep["estimates"] = estimates;
  add_initial_states(m, r.mecs, r.types, rep);
  return rep;
}

std::string augmentation_of(const ComplexityMeasure& f) {
  switch (f.kind) {
    case ComplexityMeasure::Kind::Counter: return "none";
    case ComplexityMeasure::Kind::Termination: return "every-transition";
    case ComplexityMeasure::Kind::TransitionCount: return "only:" + f.transition;
  }
  return "none";
}

json analyze_dag(const VassMdp& m, const std::vector<ComplexityMeasure>& measures, std::size_t max_type_len,
                 json rep) {
  const auto mecs = graph::mec_decomposition(m);
  if (!graph::is_dag_like(m, mecs)) throw NotDagLike("MEC decomposition not DAG-like");
  const auto types = graph::enumerate_types(m, mecs, max_type_len);
  rep["engine"] = "counter-pipeline";
  rep["mecs"] = mecs_json(m, mecs);
  rep["dag_like"] = true;
  rep["types"] = types_json(m, mecs, types);

  json estimates = json::array();
  for (const auto& f : measures) {
    for (std::size_t ti = 0; ti < types.size(); ++ti) {
      const auto est = dichotomy::classify_dag(m, mecs, types[ti].mecs, f);
      json steps = json::array();
      for (const auto& s : est.steps) {
        std::vector<std::string> w, cls;
        for (auto x : s.w_before) w.push_back(dichotomy::to_string(x));
        for (auto x : s.classes) cls.push_back(dichotomy::to_string(x));
        std::vector<std::size_t> promoted;
        for (auto c : s.promoted) promoted.push_back(c + 1);
        steps.push_back({{"mec", mecs[s.mec].id},
                         {"w_before", w},
                         {"zeroed", s.zeroed},
                         {"classes", cls},
                         {"promoted", promoted},
                         {"multicycle", multicycle_json(s.solutions.multicycle)},
                         {"ranking", ranking_json(s.solutions.ranking)}});
      }
      const bool quad = est.label == dichotomy::CounterClass::LowerQuadratic;
      std::string why = quad ? "multicycle-pumps-counter" : "ranking-function-bounds-counter";
      if (est.beyond_quadratic) why = "pumped-by-earlier-quadratic-counter";
      estimates.push_back({{"measure", to_string(f)},
                           {"type", ti},
                           {"label", dichotomy::to_string(est.label)},
                           {"estimate", quad ? json{{"kind", "lower"}, {"function", "n^2"}}
                                             : json{{"kind", "tight"}, {"function", "n"}}},
                           {"ambiguous", false},
                           {"justification", why},
                           {"analyzed_counter", est.counter + 1},
                           {"augmentation", augmentation_of(f)},
                           {"promoted_at", est.promoted_at ? json(*est.promoted_at) : json(nullptr)},
                           {"beyond_quadratic", est.beyond_quadratic},
                           {"steps", steps}});
    }
  }
  rep["estimates"] = estimates;
  add_initial_states(m, mecs, types, rep);
  return rep;
}

void render(std::ostringstream& out, const json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  auto scalar = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  auto is_flat = [](const json& v) {
    return std::all_of(v.begin(), v.end(), [](const json& e) { return !e.is_structured(); });
  };
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_object() && !v.empty()) {
        out << pad << k << ":\n";
        render(out, v, indent + 1);
      } else if (v.is_array() && !v.empty() && !is_flat(v)) {
        out << pad << k << ":\n";
        render(out, v, indent + 1);
      } else if (v.is_array()) {
        out << pad << k << ": [";
        for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << scalar(v[i]);
        out << "]\n";
      } else {
        out << pad << k << ": " << (v.is_object() ? "{}" : scalar(v)) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_structured()) {
        out << pad << "-\n";
        render(out, v, indent + 1);
      } else {
        out << pad << "- " << scalar(v) << "\n";
      }
    }
  } else {
    out << pad << scalar(j) << "\n";
  }
}

}  // namespace

std::string model_digest(const VassMdp& m) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : serialize_vass(m)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<ComplexityMeasure> all_measures(const VassMdp& m) {
  std::vector<ComplexityMeasure> out{ComplexityMeasure::termination()};
  for (std::size_t c = 0; c < m.dimension(); ++c) out.push_back(ComplexityMeasure::counter_of(c));
  for (std::size_t t = 0; t < m.num_transitions(); ++t) {
    out.push_back(ComplexityMeasure::transition_count(m.transition(t).id));
  }
  return out;
}

json mecs_report(const VassMdp& m) {
  const auto mecs = graph::mec_decomposition(m);
  auto rep = header(m);
  rep["mecs"] = mecs_json(m, mecs);
  rep["dag_like"] = graph::is_dag_like(m, mecs);
  return rep;
}

json types_report(const VassMdp& m, std::size_t max_type_len) {
  const auto mecs = graph::mec_decomposition(m);
  auto rep = header(m);
  rep["mecs"] = mecs_json(m, mecs);
  rep["dag_like"] = graph::is_dag_like(m, mecs);
  rep["max_type_length"] = max_type_len;
  rep["types"] = types_json(m, mecs, graph::enumerate_types(m, mecs, max_type_len));
  const auto check = verify::verify_report(m, rep);
  if (!check.ok()) throw std::logic_error("reachability certificate failed: " + check.failures.front());
  return rep;
}

json analyze(const VassMdp& m, const std::vector<ComplexityMeasure>& measures, std::size_t max_type_len) {
  for (const auto& f : measures) validate_measure(f, m);
  if (max_type_len == 0) throw ValidationError("--max-type-len must be at least 1");
  auto rep = header(m);
  std::vector<std::string> names;
  for (const auto& f : measures) names.push_back(to_string(f));
  rep["measures"] = names;
  rep["max_type_length"] = max_type_len;
  rep = m.dimension() == 1 ? analyze_onedim(m, measures, max_type_len, std::move(rep))
                           : analyze_dag(m, measures, max_type_len, std::move(rep));
  const auto check = verify::verify_report(m, rep);
  rep["attestation"] = {{"arithmetic", "exact rationals (GMP)"},
                        {"verifier", "independent re-substitution"},
                        {"witnesses_checked", check.checked},
                        {"failures", check.failures}};
  if (!check.ok()) throw std::logic_error("witness re-substitution failed: " + check.failures.front());
  return rep;
}

json energy_report(const VassMdp& m, std::uint64_t bound) {
  const auto ans = onedim::energy_safe(m, bound);
  auto rep = header(m);
  rep["answer"] = onedim::to_string(ans.kind);
  rep["method"] = ans.method;
  rep["strategy_bound"] = bound;
  rep["witness"] = ans.witness ? bscc_witness_json(m, *ans.witness) : json(nullptr);
  const auto check = verify::verify_report(m, rep);
  if (!check.ok()) throw std::logic_error("energy witness failed: " + check.failures.front());
  return rep;
}

std::string render_text(const json& j) {
  std::ostringstream out;
  render(out, j, 0);
  return out.str();
}

}  // namespace vass::report
