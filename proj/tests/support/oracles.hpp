#pragma once

// Brute-force reference implementations used only by the tests. Nothing here
// calls into the simplex or the strategy-iteration code under test.

#include <optional>
#include <vector>

#include "vass_asym/graph.hpp"
#include "vass_asym/lp.hpp"
#include "vass_asym/model.hpp"

namespace vass::oracle {

std::optional<std::vector<Rational>> gauss(std::vector<std::vector<Rational>> a, std::vector<Rational> b);

struct Row {
  std::vector<Rational> a;
  lp::Relation rel = lp::Relation::Geq;
  Rational b = 0;
};

/// Optimum over {x >= 0, rows} by enumerating basic solutions. Assumes the
/// feasible region is bounded. nullopt when infeasible.
std::optional<Rational> vertex_optimum(const std::vector<Row>& rows, std::size_t n,
                                       const std::vector<Rational>& objective, bool maximize);

std::vector<MdStrategy> all_md_strategies(const VassMdp& m);

/// Probability of reaching `target` from `start` in A_s, avoiding `avoid`.
Rational chain_reach(const VassMdp& m, const MdStrategy& s, const std::vector<bool>& target,
                     const std::vector<bool>& avoid, std::size_t start);

/// max over MD strategies of the reachability probability behind P(M, M').
Rational brute_max_reach(const VassMdp& m, const std::vector<graph::Mec>& mecs, std::size_t from,
                         std::size_t to);

}  // namespace vass::oracle
