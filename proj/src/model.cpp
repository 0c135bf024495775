#include "vass_asym/model.hpp"

#include <algorithm>
#include <set>

#include "vass_asym/errors.hpp"

namespace vass {

using nlohmann::json;

VassMdp::VassMdp(std::size_t dimension, std::vector<StateDef> states,
                 std::vector<Transition> transitions)
    : dimension_(dimension), states_(std::move(states)), transitions_(std::move(transitions)) {
  std::sort(states_.begin(), states_.end(),
            [](const StateDef& a, const StateDef& b) { return a.name < b.name; });
  std::sort(transitions_.begin(), transitions_.end(),
            [](const Transition& a, const Transition& b) { return a.id < b.id; });

  if (states_.empty()) throw ValidationError("model has no states");
  for (std::size_t p = 0; p < states_.size(); ++p) {
    if (states_[p].name.empty()) throw ValidationError("state with empty name");
    if (!state_by_name_.emplace(states_[p].name, p).second) {
      throw ValidationError("duplicate state name '" + states_[p].name + "'");
    }
  }

  out_.assign(states_.size(), {});
  in_.assign(states_.size(), {});
  source_.reserve(transitions_.size());
  target_.reserve(transitions_.size());
  weight_.reserve(transitions_.size());
  for (std::size_t t = 0; t < transitions_.size(); ++t) {
    const auto& tr = transitions_[t];
    if (tr.id.empty()) throw ValidationError("transition with empty id");
    if (!transition_by_id_.emplace(tr.id, t).second) {
      throw ValidationError("duplicate transition id '" + tr.id + "'");
    }
    auto from = find_state(tr.from);
    auto to = find_state(tr.to);
    if (!from) throw ValidationError("transition '" + tr.id + "' leaves unknown state '" + tr.from + "'");
    if (!to) throw ValidationError("transition '" + tr.id + "' enters unknown state '" + tr.to + "'");
    if (tr.update.size() != dimension_) {
      throw ValidationError("transition '" + tr.id + "' has update of length " +
                            std::to_string(tr.update.size()) + ", expected dimension " +
                            std::to_string(dimension_));
    }
    if (is_prob(*from)) {
      if (!tr.prob) {
        throw ValidationError("transition '" + tr.id +
                              "' leaves probabilistic state without a probability");
      }
      if (*tr.prob <= 0 || *tr.prob > 1) {
        throw ValidationError("transition '" + tr.id + "' has probability outside (0,1]");
      }
      weight_.push_back(*tr.prob);
    } else {
      if (tr.prob) {
        throw ValidationError("transition '" + tr.id +
                              "' leaves nondeterministic state but carries a probability");
      }
      weight_.emplace_back(1);
    }
    source_.push_back(*from);
    target_.push_back(*to);
    out_[*from].push_back(t);
    in_[*to].push_back(t);
  }

  for (std::size_t p = 0; p < states_.size(); ++p) {
    if (out_[p].empty()) {
      throw ValidationError("Out(" + states_[p].name + ") is empty: every state needs an outgoing transition");
    }
    if (is_prob(p)) {
      Rational total = 0;
      for (auto t : out_[p]) total += weight_[t];
      if (total != 1) {
        throw ValidationError("outgoing probabilities of '" + states_[p].name + "' sum to " +
                              to_string(total) + ", not 1");
      }
    }
  }
}

std::optional<std::size_t> VassMdp::find_state(std::string_view name) const {
  auto it = state_by_name_.find(name);
  if (it == state_by_name_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> VassMdp::find_transition(std::string_view id) const {
  auto it = transition_by_id_.find(id);
  if (it == transition_by_id_.end()) return std::nullopt;
  return it->second;
}

std::size_t VassMdp::state_index(std::string_view name) const {
  auto p = find_state(name);
  if (!p) throw ValidationError("unknown state '" + std::string(name) + "'");
  return *p;
}

std::size_t VassMdp::transition_index(std::string_view id) const {
  auto t = find_transition(id);
  if (!t) throw UnknownTransition("unknown transition '" + std::string(id) + "'");
  return *t;
}

bool Configuration::terminal() const {
  return std::any_of(counters.begin(), counters.end(), [](const Integer& v) { return v < 0; });
}

std::string to_string(const ComplexityMeasure& f) {
  switch (f.kind) {
    case ComplexityMeasure::Kind::Termination:
      return "L";
    case ComplexityMeasure::Kind::Counter:
      return "C:" + std::to_string(f.counter + 1);
    case ComplexityMeasure::Kind::TransitionCount:
      return "T:" + f.transition;
  }
  return "?";
}

void validate_measure(const ComplexityMeasure& f, const VassMdp& m) {
  if (f.kind == ComplexityMeasure::Kind::Counter && f.counter >= m.dimension()) {
    throw ValidationError("counter index " + std::to_string(f.counter + 1) + " out of range 1.." +
                          std::to_string(m.dimension()));
  }
  if (f.kind == ComplexityMeasure::Kind::TransitionCount) m.transition_index(f.transition);
}

ComplexityMeasure parse_measure(std::string_view text, const VassMdp& m) {
  ComplexityMeasure f;
  if (text == "L") {
    f = ComplexityMeasure::termination();
  } else if (text.starts_with("C:")) {
    auto idx = parse_integer(text.substr(2));
    if (idx < 1) throw ValidationError("counter index must be >= 1 in '" + std::string(text) + "'");
    f = ComplexityMeasure::counter_of(static_cast<std::size_t>(to_int64(idx) - 1));
  } else if (text.starts_with("T:")) {
    f = ComplexityMeasure::transition_count(std::string(text.substr(2)));
  } else {
    throw ValidationError("unknown measure '" + std::string(text) + "' (expected L, C:<c>, T:<t>)");
  }
  validate_measure(f, m);
  return f;
}

namespace {

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw SchemaError(where + ": missing field '" + key + "'");
  }
  return obj.at(key);
}

std::string require_string(const json& obj, const char* key, const std::string& where) {
  const auto& v = require(obj, key, where);
  if (!v.is_string()) throw SchemaError(where + ": field '" + key + "' must be a string");
  return v.get<std::string>();
}

Integer integer_from_json(const json& v, const std::string& where) {
  if (v.is_number_integer()) {
    if (v.is_number_unsigned()) return Integer(std::to_string(v.get<std::uint64_t>()), 10);
    return Integer(std::to_string(v.get<std::int64_t>()), 10);
  }
  if (v.is_string()) return parse_integer(v.get<std::string>());
  throw SchemaError(where + ": update entries must be integers");
}

json integer_to_json(const Integer& z) {
  if (fits_int64(z)) return to_int64(z);
  return z.get_str();
}

}  // namespace

VassMdp vass_from_json(const json& doc) {
  if (!doc.is_object()) throw SchemaError("model document must be a JSON object");
  const auto& dim = require(doc, "dimension", "model");
  if (!dim.is_number_integer() || dim.get<std::int64_t>() < 1) {
    throw SchemaError("model: 'dimension' must be a positive integer");
  }
  const auto d = static_cast<std::size_t>(dim.get<std::int64_t>());

  const auto& states_json = require(doc, "states", "model");
  if (!states_json.is_array()) throw SchemaError("model: 'states' must be an array");
  std::vector<StateDef> states;
  for (std::size_t i = 0; i < states_json.size(); ++i) {
    const std::string where = "states[" + std::to_string(i) + "]";
    const auto& s = states_json[i];
    StateDef def;
    def.name = require_string(s, "name", where);
    const auto kind = require_string(s, "kind", where);
    if (kind == "nondet") {
      def.kind = StateKind::Nondet;
    } else if (kind == "prob") {
      def.kind = StateKind::Prob;
    } else {
      throw SchemaError(where + ": 'kind' must be \"nondet\" or \"prob\"");
    }
    states.push_back(std::move(def));
  }

  const auto& trans_json = require(doc, "transitions", "model");
  if (!trans_json.is_array()) throw SchemaError("model: 'transitions' must be an array");
  std::vector<Transition> transitions;
  for (std::size_t i = 0; i < trans_json.size(); ++i) {
    const std::string where = "transitions[" + std::to_string(i) + "]";
    const auto& t = trans_json[i];
    Transition tr;
    tr.id = require_string(t, "id", where);
    tr.from = require_string(t, "from", where);
    tr.to = require_string(t, "to", where);
    const auto& upd = require(t, "update", where);
    if (!upd.is_array()) throw SchemaError(where + ": 'update' must be an array");
    for (const auto& v : upd) tr.update.push_back(integer_from_json(v, where));
    if (t.contains("prob")) {
      const auto& p = t.at("prob");
      if (!p.is_string()) {
        throw SchemaError(where + ": 'prob' must be a string \"a/b\" (floating-point probabilities are rejected)");
      }
      tr.prob = parse_rational(p.get<std::string>());
    }
    transitions.push_back(std::move(tr));
  }
  return VassMdp(d, std::move(states), std::move(transitions));
}

VassMdp parse_vass(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
  return vass_from_json(doc);
}

json to_json(const VassMdp& m) {
  json doc;
  doc["dimension"] = m.dimension();
  doc["states"] = json::array();
  for (const auto& s : m.states()) {
    doc["states"].push_back({{"name", s.name}, {"kind", s.kind == StateKind::Prob ? "prob" : "nondet"}});
  }
  doc["transitions"] = json::array();
  for (const auto& t : m.transitions()) {
    json tj;
    tj["id"] = t.id;
    tj["from"] = t.from;
    tj["update"] = json::array();
    for (const auto& u : t.update) tj["update"].push_back(integer_to_json(u));
    tj["to"] = t.to;
    if (t.prob) tj["prob"] = to_string(*t.prob);
    doc["transitions"].push_back(std::move(tj));
  }
  return doc;
}

std::string serialize_vass(const VassMdp& m) { return to_json(m).dump(2); }

VassMdp augment_step_counter(const VassMdp& m, const StepCounterTarget& target) {
  if (target.only) m.transition_index(*target.only);
  auto transitions = m.transitions();
  for (auto& t : transitions) {
    const bool counts = !target.only || *target.only == t.id;
    t.update.emplace_back(counts ? 1 : 0);
  }
  return VassMdp(m.dimension() + 1, m.states(), std::move(transitions));
}

VassMdp project_counters(const VassMdp& m, std::size_t keep) {
  if (keep > m.dimension()) throw ValidationError("cannot project onto more counters than the model has");
  auto transitions = m.transitions();
  for (auto& t : transitions) t.update.resize(keep);
  return VassMdp(keep, m.states(), std::move(transitions));
}

void validate_md_strategy(const VassMdp& m, const MdStrategy& s) {
  for (const auto& [state, tid] : s.choice) {
    auto p = m.find_state(state);
    if (!p) throw IncompleteStrategy("strategy names unknown state '" + state + "'");
    if (m.is_prob(*p)) throw IncompleteStrategy("strategy assigns a choice to probabilistic state '" + state + "'");
    auto t = m.find_transition(tid);
    if (!t || m.source(*t) != *p) {
      throw IncompleteStrategy("strategy choice '" + tid + "' is not in Out(" + state + ")");
    }
  }
  for (std::size_t p = 0; p < m.num_states(); ++p) {
    if (!m.is_prob(p) && !s.choice.contains(m.state(p).name)) {
      throw IncompleteStrategy("strategy has no choice for nondeterministic state '" + m.state(p).name + "'");
    }
  }
}

VassMdp apply_md_strategy(const VassMdp& m, const MdStrategy& s) {
  validate_md_strategy(m, s);
  std::vector<Transition> kept;
  for (std::size_t t = 0; t < m.num_transitions(); ++t) {
    const auto p = m.source(t);
    if (m.is_prob(p) || s.choice.at(m.state(p).name) == m.transition(t).id) {
      kept.push_back(m.transition(t));
    }
  }
  return VassMdp(m.dimension(), m.states(), std::move(kept));
}

MdStrategy default_md_strategy(const VassMdp& m) {
  MdStrategy s;
  for (std::size_t p = 0; p < m.num_states(); ++p) {
    if (!m.is_prob(p)) s.choice[m.state(p).name] = m.transition(m.out(p).front()).id;
  }
  return s;
}

VassMdp restrict_model(const VassMdp& m, std::span<const std::size_t> states,
                       std::span<const std::size_t> transitions, const std::vector<bool>& zeroed) {
  std::vector<StateDef> sub_states;
  for (auto p : states) sub_states.push_back(m.state(p));
  std::vector<Transition> sub_transitions;
  for (auto t : transitions) {
    auto tr = m.transition(t);
    for (std::size_t c = 0; c < zeroed.size() && c < tr.update.size(); ++c) {
      if (zeroed[c]) tr.update[c] = 0;
    }
    sub_transitions.push_back(std::move(tr));
  }
  return VassMdp(m.dimension(), std::move(sub_states), std::move(sub_transitions));
}

}  // namespace vass
