#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vass_asym/graph.hpp"
#include "vass_asym/lp.hpp"
#include "vass_asym/model.hpp"

namespace vass::dichotomy {

enum class CounterClass { TightLinear, LowerQuadratic };
enum class CapState { LinearCap, PumpedQuadratic };

std::string to_string(CounterClass c);
std::string to_string(CapState w);

/// Integer solution of system (I) (a multicycle). Counter indices are 0-based.
struct SystemIWitness {
  std::map<std::string, Integer> x;  // transition id -> x(t)
  std::vector<std::size_t> positive_counters;
  std::vector<std::string> positive_transitions;
};

/// Integer solution of system (II). rank(p v) = z(p) + sum_i v(i) y(i).
struct RankingFunction {
  std::vector<Integer> y;
  std::map<std::string, Integer> z;       // state name -> z(p)
  std::vector<std::string> strict_nondet;  // transition ids
  std::vector<std::string> strict_prob;    // state names
};

struct MaximalSolutions {
  SystemIWitness multicycle;
  RankingFunction ranking;
};

/// Both systems are built over a strongly connected model, normally a MEC
/// restricted with graph::mec_submodel. Variables of (I) are x_t in transition
/// order; candidates are one per counter followed by one per transition.
lp::LpProblem build_system_I(const VassMdp& sc);

/// Variables y_1..y_d then z_p in state order. Candidates: y(c) per counter,
/// strict decrease per nondeterministic transition, strict expected decrease
/// per probabilistic state.
lp::LpProblem build_system_II(const VassMdp& sc);

MaximalSolutions compute_maximal_solutions(const VassMdp& sc);

/// Scales a rational solution of (I) to integers and fills the derived sets.
SystemIWitness make_multicycle(const VassMdp& sc, const std::vector<Rational>& x);

/// Rank change z(q) - z(p) + u . y of a single transition.
Rational rank_effect(const VassMdp& sc, const RankingFunction& r, std::size_t t);

/// Expected rank change at a probabilistic state.
Rational expected_rank_effect(const VassMdp& sc, const RankingFunction& r, std::size_t p);

/// Every counter, nondeterministic transition and probabilistic state is
/// covered by the ranking function (strictly) or by the multicycle.
bool verify_dichotomy(const VassMdp& sc, const SystemIWitness& w, const RankingFunction& r);

/// TightLinear iff y(c) > 0 in the maximal solution of (II).
std::vector<CounterClass> classify_counters_mec(const VassMdp& sc);
std::vector<CounterClass> classify_counters(const MaximalSolutions& s, std::size_t dimension);

/// One MEC along a type.
struct PipelineStep {
  std::size_t mec = 0;
  std::vector<CapState> w_before;
  std::vector<bool> zeroed;
  MaximalSolutions solutions;
  std::vector<CounterClass> classes;
  std::vector<std::size_t> promoted;  // counters moved to PumpedQuadratic here
};

struct DagEstimate {
  ComplexityMeasure measure;
  std::size_t counter = 0;  // analyzed counter in the (possibly augmented) model
  CounterClass label = CounterClass::TightLinear;
  std::optional<std::size_t> promoted_at;  // 0-based position in the type
  /// Promoted at a later MEC where the counter is also quadratic without the
  /// zeroing, i.e. its growth is driven by an already pumped counter.
  bool beyond_quadratic = false;
  std::vector<PipelineStep> steps;
};

/// Throws InvalidType if consecutive MECs are equal or not successors.
void validate_type(const VassMdp& m, const std::vector<graph::Mec>& mecs, const std::vector<std::size_t>& beta);

/// Counter pipeline along beta. L and T[t] go through a step counter. Throws
/// NotDagLike and InvalidType.
DagEstimate classify_dag(const VassMdp& m, const std::vector<graph::Mec>& mecs,
                         const std::vector<std::size_t>& beta, const ComplexityMeasure& f);
DagEstimate classify_dag(const VassMdp& m, const std::vector<std::size_t>& beta, const ComplexityMeasure& f);

}  // namespace vass::dichotomy
