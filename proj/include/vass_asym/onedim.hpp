#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vass_asym/dichotomy.hpp"
#include "vass_asym/graph.hpp"
#include "vass_asym/model.hpp"

namespace vass::onedim {

inline constexpr std::uint64_t kDefaultStrategyBound = 1'000'000;

enum class BsccClass { Increasing, Decreasing, BoundedZero, UnboundedZero };
std::string to_string(BsccClass c);

struct BsccAnalysis {
  BsccClass cls = BsccClass::Decreasing;
  std::vector<Rational> stationary;  // aligned with bscc.states
  Rational drift = 0;                // mean counter change per step
  /// phi with u(t) = phi(to) - phi(from) on every BSCC transition, if one exists.
  std::optional<std::vector<Integer>> potential;
};

/// Exact classification of a bottom SCC of A_s. Throws NotABottomScc.
BsccAnalysis analyze_bscc(const VassMdp& m, const MdStrategy& s, const graph::Bscc& b);
BsccClass classify_bscc(const VassMdp& m, const MdStrategy& s, const graph::Bscc& b);

/// An MD strategy together with one of its bottom SCCs.
struct MdWitness {
  MdStrategy strategy;
  graph::Bscc bscc;
  BsccClass cls = BsccClass::Decreasing;
};

/// End component given by states and transitions of the original model.
struct Component {
  std::vector<std::size_t> states;
  std::vector<std::size_t> transitions;
  bool nonzero_cycle = false;
};

/// Per-MEC facts. Bounded-/unbounded-zero questions are only answered for
/// MECs without an increasing BSCC (the ranking function needs y > 0).
struct MecProfile {
  std::size_t mec = 0;
  bool increasing = false;
  std::optional<dichotomy::SystemIWitness> increasing_multicycle;
  std::optional<MdWitness> increasing_witness;

  std::optional<dichotomy::MaximalSolutions> solutions;  // when !increasing
  bool bounded_zero = false;
  bool unbounded_zero = false;
  std::optional<MdWitness> bounded_zero_witness;
  std::optional<MdWitness> unbounded_zero_witness;
  std::vector<std::size_t> bounded_zero_transitions;    // t on some bounded-zero BSCC
  std::vector<std::size_t> unbounded_zero_transitions;  // t on some unbounded-zero BSCC, on none bounded-zero
  std::vector<Component> bounded_zero_components;  // MECs of the rank-preserving fixpoint
  std::vector<Component> support_components;       // of the maximal (I)-witness

  bool has_transition_in(const std::vector<std::size_t>& list, std::size_t t) const;
};

/// MD strategy inside c whose BSCC contains `state` (and `forced`, if given).
std::optional<MdWitness> witness_through(const VassMdp& m, const Component& c, std::size_t state,
                                         std::optional<std::size_t> forced = std::nullopt);

MecProfile profile_mec(const VassMdp& m, const std::vector<graph::Mec>& mecs, std::size_t i);

struct IncreasingDetection {
  std::size_t mec = 0;
  dichotomy::SystemIWitness multicycle;
  MdWitness witness;
};

struct ZeroDetection {
  std::size_t mec = 0;
  std::vector<std::size_t> states;       // the end component found
  std::vector<std::size_t> transitions;
  MdWitness witness;
};

/// First MEC (id order) where system (I) with a positive counter effect is feasible.
std::optional<IncreasingDetection> detect_increasing(const VassMdp& m);

/// Rank-preserving sub-MDP fixpoint. Throws PreconditionViolated when an
/// increasing BSCC exists.
std::optional<ZeroDetection> detect_bounded_zero(const VassMdp& m);

/// Support component of the maximal (I)-witness containing a nonzero cycle.
/// Throws PreconditionViolated when an increasing BSCC exists.
std::optional<ZeroDetection> detect_unbounded_zero(const VassMdp& m);

/// Number of MD strategies, saturating at UINT64_MAX.
std::uint64_t count_md_strategies(const VassMdp& m);

[[noreturn]] void throw_too_many_strategies(std::uint64_t count, std::uint64_t bound);

struct BruteEntry {
  MdStrategy strategy;
  graph::Bscc bscc;
  BsccClass cls = BsccClass::Decreasing;
};

/// Every (MD strategy, BSCC) pair with its class. Throws TooManyStrategies.
std::vector<BruteEntry> brute_force_classify(const VassMdp& m, std::uint64_t bound = kDefaultStrategyBound);

/// Calls f(strategy) for every MD strategy in odometer order (least ids
/// first) until f returns false. Throws TooManyStrategies.
template <class F>
void for_each_md_strategy(const VassMdp& m, std::uint64_t bound, F&& f);

/// Whether a cycle of negative total effect exists among the given transitions.
bool has_negative_cycle(const VassMdp& m, const std::vector<std::size_t>& transitions);

/// Brute-force search for an MD strategy with a BSCC free of negative cycles
/// (optionally containing `through`). Throws TooManyStrategies.
std::optional<MdWitness> find_nondecreasing_bscc(const VassMdp& m, std::optional<std::size_t> through,
                                                 std::uint64_t bound = kDefaultStrategyBound);

enum class Label { Unbounded, TightQuadratic, TightLinear, TightZero, UpperTypeLength, UpperLinear, LowerQuadratic };
std::string to_string(Label l);

struct OneDimEntry {
  ComplexityMeasure measure;
  std::size_t type_index = 0;
  Label label = Label::TightLinear;
  std::size_t type_length = 0;  // the k of UpperTypeLength
  /// Several cases of the classification apply or none pins the type; the
  /// label is the strongest one backed by a witness.
  bool ambiguous = false;
  std::string justification;
  std::optional<MdWitness> witness;
  std::optional<std::size_t> witness_mec;
};

struct OneDimReport {
  std::vector<graph::Mec> mecs;
  std::vector<graph::TypeSeq> types;
  std::vector<MecProfile> profiles;
  std::vector<OneDimEntry> entries;  // grouped by measure, then type
};

OneDimReport classify_onedim(const VassMdp& m, const std::vector<ComplexityMeasure>& measures,
                             std::size_t max_type_len);

/// Which classes occur inside each MEC; used to apply the case table.
struct ClassInventory {
  std::vector<bool> increasing, bounded_zero, unbounded_zero;  // per MEC
  std::vector<bool> bz_transition, uz_transition;              // per transition
};

ClassInventory inventory_from_profiles(const VassMdp& m, const std::vector<MecProfile>& profiles);

/// The case table on an inventory; `entry.witness` is left empty.
OneDimEntry label_for(const VassMdp& m, const std::vector<graph::Mec>& mecs, const graph::TypeSeq& beta,
                      std::size_t type_index, const ComplexityMeasure& f, const ClassInventory& inv);

struct EnergyAnswer {
  enum class Kind { Safe, Unsafe, UnknownNPRegime };
  Kind kind = Kind::Unsafe;
  std::optional<MdWitness> witness;
  std::string method;  // "bounded-zero-detector" or "brute-force"
};
std::string to_string(EnergyAnswer::Kind k);

EnergyAnswer energy_safe(const VassMdp& m, std::uint64_t bound = kDefaultStrategyBound);

struct UndirectedGraph {
  std::vector<std::string> vertices;
  std::vector<std::pair<std::string, std::string>> edges;
};

/// Reads {"vertices": [...], "edges": [[u, v], ...]}.
UndirectedGraph parse_graph(std::string_view text);

/// All states nondeterministic; edge {q,r} not touching p gives (q,+1,r) and
/// (r,+1,q); edge {p,q} gives (q,+1,p) and (p,-|V|+1,q). Isolated vertices get
/// a -1 self-loop so that every state has an outgoing transition. Throws
/// VertexNotInGraph and ValidationError (self-loops, duplicate edges).
VassMdp hamiltonian_reduction(const UndirectedGraph& g, const std::string& p);

// ---------------------------------------------------------------------------

template <class F>
void for_each_md_strategy(const VassMdp& m, std::uint64_t bound, F&& f) {
  if (count_md_strategies(m) > bound) throw_too_many_strategies(count_md_strategies(m), bound);
  std::vector<std::size_t> nondet;
  for (std::size_t p = 0; p < m.num_states(); ++p) {
    if (!m.is_prob(p)) nondet.push_back(p);
  }
  std::vector<std::size_t> digit(nondet.size(), 0);
  MdStrategy s;
  for (auto p : nondet) s.choice[m.state(p).name] = m.transition(m.out(p)[0]).id;
  while (true) {
    if (!f(static_cast<const MdStrategy&>(s))) return;
    std::size_t k = 0;
    for (; k < nondet.size(); ++k) {
      const auto p = nondet[k];
      if (++digit[k] < m.out(p).size()) {
        s.choice[m.state(p).name] = m.transition(m.out(p)[digit[k]]).id;
        break;
      }
      digit[k] = 0;
      s.choice[m.state(p).name] = m.transition(m.out(p)[0]).id;
    }
    if (k == nondet.size()) return;
  }
}

}  // namespace vass::onedim
