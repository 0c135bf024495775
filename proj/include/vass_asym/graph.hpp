#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "vass_asym/model.hpp"
#include "vass_asym/rational.hpp"

namespace vass::graph {

/// Maximal end component. Indices refer to the model it was computed from.
/// Ids are "M1", "M2", ... ordered by the lexicographically least state name.
struct Mec {
  std::string id;
  std::vector<std::size_t> states;       // ascending
  std::vector<std::size_t> transitions;  // ascending; all transitions with both ends inside

  bool contains_state(std::size_t p) const;
  bool contains_transition(std::size_t t) const;
};

/// A finite sequence of MEC indices (into the decomposition) with its weight.
struct TypeSeq {
  std::vector<std::size_t> mecs;
  Rational weight = 1;

  friend bool operator==(const TypeSeq&, const TypeSeq&) = default;
};

/// Bottom SCC of a Markov chain A_s, in indices of the original model.
struct Bscc {
  std::vector<std::size_t> states;       // ascending
  std::vector<std::size_t> transitions;  // ascending

  friend bool operator==(const Bscc&, const Bscc&) = default;
  friend auto operator<=>(const Bscc&, const Bscc&) = default;
};

/// Tarjan's algorithm (iterative). Each component is sorted; components are
/// ordered by their least vertex.
std::vector<std::vector<std::size_t>> strongly_connected_components(
    const std::vector<std::vector<std::size_t>>& successors);

/// Iterated SCC refinement: drop transitions leaving their SCC, probabilistic
/// states that lost an outgoing transition and nondeterministic states left
/// without one; repeat to a fixed point.
std::vector<Mec> mec_decomposition(const VassMdp& m);

/// For each state, the index of its MEC (if any).
std::vector<std::optional<std::size_t>> mec_of_states(const VassMdp& m, const std::vector<Mec>& mecs);

/// For each transition, the index of the MEC containing it (if any).
std::vector<std::optional<std::size_t>> mec_of_transitions(const VassMdp& m,
                                                           const std::vector<Mec>& mecs);

bool is_dag_like(const VassMdp& m);
bool is_dag_like(const VassMdp& m, const std::vector<Mec>& mecs);

/// The MEC as a strongly connected VASS MDP of its own; counters flagged in
/// `zeroed` get update 0 on every transition.
VassMdp mec_submodel(const VassMdp& m, const Mec& mec, const std::vector<bool>& zeroed = {});

/// Whether some path leads from a state of `from` to a state of `to` without
/// visiting a state of a third MEC.
bool mec_successor(const VassMdp& m, const std::vector<Mec>& mecs, std::size_t from, std::size_t to);

/// All realizable MEC sequences of length <= max_len, ordered by length and
/// then lexicographically by MEC index.
std::vector<TypeSeq> enumerate_types(const VassMdp& m, std::size_t max_len);
std::vector<TypeSeq> enumerate_types(const VassMdp& m, const std::vector<Mec>& mecs, std::size_t max_len);

/// Result of the finite-MDP max-reachability problem behind P(M, M').
struct ReachResult {
  std::vector<Rational> values;  // per state of the model
  std::vector<bool> target;      // states of `to`
  std::vector<bool> losing;      // states of third MECs
  MdStrategy strategy;           // optimal; total on nondeterministic states
  std::size_t start = 0;         // least state of `from`
  Rational value = 0;            // values[start]
};

/// Strategy iteration with exact linear solves, started from an attractor
/// strategy; switches only on strict improvement (ties keep the current choice,
/// new choices break ties by id).
ReachResult max_reach(const VassMdp& m, const std::vector<Mec>& mecs, std::size_t from,
                      std::size_t to, std::optional<std::size_t> start = std::nullopt);

Rational max_reach_probability(const VassMdp& m, const std::vector<Mec>& mecs, std::size_t from,
                               std::size_t to);

/// Successor lists of the chain A_s over the original state indices.
std::vector<std::vector<std::size_t>> chain_successors(const VassMdp& m, const MdStrategy& s);

/// Transitions kept by s (all probabilistic ones plus the chosen ones).
std::vector<bool> chain_transitions(const VassMdp& m, const MdStrategy& s);

/// Bottom SCCs of A_s.
std::vector<Bscc> bottom_sccs(const VassMdp& m, const MdStrategy& s);

std::vector<std::string> state_names(const VassMdp& m, const std::vector<std::size_t>& states);
std::vector<std::string> transition_ids(const VassMdp& m, const std::vector<std::size_t>& transitions);

}  // namespace vass::graph
