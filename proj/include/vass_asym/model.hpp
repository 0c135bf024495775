#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "vass_asym/rational.hpp"

namespace vass {

enum class StateKind { Nondet, Prob };

struct StateDef {
  std::string name;
  StateKind kind = StateKind::Nondet;

  friend bool operator==(const StateDef&, const StateDef&) = default;
};

struct Transition {
  std::string id;
  std::string from;
  std::vector<Integer> update;
  std::string to;
  std::optional<Rational> prob;  // present iff `from` is probabilistic

  friend bool operator==(const Transition&, const Transition&) = default;
};

/// A d-dimensional VASS MDP. Immutable once constructed; the constructor
/// validates every structural invariant and stores states sorted by name and
/// transitions sorted by id, so index order is the lexicographic tie-break
/// order used throughout the library.
class VassMdp {
 public:
  VassMdp(std::size_t dimension, std::vector<StateDef> states, std::vector<Transition> transitions);

  std::size_t dimension() const { return dimension_; }
  const std::vector<StateDef>& states() const { return states_; }
  const std::vector<Transition>& transitions() const { return transitions_; }
  std::size_t num_states() const { return states_.size(); }
  std::size_t num_transitions() const { return transitions_.size(); }

  const StateDef& state(std::size_t p) const { return states_[p]; }
  const Transition& transition(std::size_t t) const { return transitions_[t]; }
  bool is_prob(std::size_t p) const { return states_[p].kind == StateKind::Prob; }

  std::optional<std::size_t> find_state(std::string_view name) const;
  std::optional<std::size_t> find_transition(std::string_view id) const;
  /// Throws ValidationError for unknown names.
  std::size_t state_index(std::string_view name) const;
  /// Throws UnknownTransition for unknown ids.
  std::size_t transition_index(std::string_view id) const;

  std::size_t source(std::size_t t) const { return source_[t]; }
  std::size_t target(std::size_t t) const { return target_[t]; }
  std::span<const std::size_t> out(std::size_t p) const { return out_[p]; }
  std::span<const std::size_t> in(std::size_t p) const { return in_[p]; }

  /// P(t) for transitions leaving probabilistic states, 1 otherwise.
  const Rational& weight(std::size_t t) const { return weight_[t]; }

  friend bool operator==(const VassMdp& a, const VassMdp& b) {
    return a.dimension_ == b.dimension_ && a.states_ == b.states_ &&
           a.transitions_ == b.transitions_;
  }

 private:
  std::size_t dimension_;
  std::vector<StateDef> states_;
  std::vector<Transition> transitions_;
  std::map<std::string, std::size_t, std::less<>> state_by_name_;
  std::map<std::string, std::size_t, std::less<>> transition_by_id_;
  std::vector<std::size_t> source_;
  std::vector<std::size_t> target_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
  std::vector<Rational> weight_;
};

struct Configuration {
  std::string state;
  std::vector<Integer> counters;

  bool terminal() const;
};

/// Memoryless deterministic strategy: nondeterministic state -> transition id.
struct MdStrategy {
  std::map<std::string, std::string> choice;

  friend bool operator==(const MdStrategy&, const MdStrategy&) = default;
  friend auto operator<=>(const MdStrategy&, const MdStrategy&) = default;
};

/// Counter indices are 0-based in the C++ API and 1-based in every textual
/// surface (CLI flags, JSON reports).
struct ComplexityMeasure {
  enum class Kind { Termination, Counter, TransitionCount };
  Kind kind = Kind::Termination;
  std::size_t counter = 0;
  std::string transition;

  static ComplexityMeasure termination() { return {Kind::Termination, 0, {}}; }
  static ComplexityMeasure counter_of(std::size_t c) { return {Kind::Counter, c, {}}; }
  static ComplexityMeasure transition_count(std::string t) {
    return {Kind::TransitionCount, 0, std::move(t)};
  }

  friend bool operator==(const ComplexityMeasure&, const ComplexityMeasure&) = default;
};

/// "L", "C:<1-based counter>", "T:<transition id>".
std::string to_string(const ComplexityMeasure& f);
ComplexityMeasure parse_measure(std::string_view text, const VassMdp& m);
void validate_measure(const ComplexityMeasure& f, const VassMdp& m);

VassMdp parse_vass(std::string_view text);
VassMdp vass_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const VassMdp& m);
std::string serialize_vass(const VassMdp& m);

struct StepCounterTarget {
  std::optional<std::string> only;  // empty: every transition

  static StepCounterTarget every_transition() { return {}; }
  static StepCounterTarget only_transition(std::string id) { return {std::move(id)}; }
};

/// Appends counter d+1, incremented by every transition or only by `target.only`.
VassMdp augment_step_counter(const VassMdp& m, const StepCounterTarget& target);

/// Keeps counters 0..keep-1.
VassMdp project_counters(const VassMdp& m, std::size_t keep);

/// Throws IncompleteStrategy unless s chooses an outgoing transition for every
/// nondeterministic state (entries for other states are rejected as well).
void validate_md_strategy(const VassMdp& m, const MdStrategy& s);

/// The Markov chain A_s: every nondeterministic state keeps only its chosen transition.
VassMdp apply_md_strategy(const VassMdp& m, const MdStrategy& s);

/// Least-id choice in every nondeterministic state.
MdStrategy default_md_strategy(const VassMdp& m);

/// Sub-model on the given states/transitions (indices into m); counters in
/// `zeroed` get update 0. The result is validated like any other model.
VassMdp restrict_model(const VassMdp& m, std::span<const std::size_t> states,
                       std::span<const std::size_t> transitions,
                       const std::vector<bool>& zeroed = {});

}  // namespace vass
