#pragma once

// Brute-force references for the one-dimensional classification.

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "vass_asym/graph.hpp"
#include "vass_asym/onedim.hpp"

namespace vass::oracle {

struct OracleBscc {
  std::vector<std::size_t> states;
  std::vector<std::size_t> transitions;
  onedim::BsccClass cls;
};

/// BSCCs of the chain induced by `s`, classified by Gaussian elimination for
/// the stationary distribution and a DFS potential.
std::vector<OracleBscc> oracle_bsccs(const VassMdp& m, const MdStrategy& s);

/// Classes per MEC and per transition over all MD strategies. Zero classes
/// are masked in MECs with an increasing BSCC.
onedim::ClassInventory brute_inventory(const VassMdp& m, const std::vector<graph::Mec>& mecs);

/// Held-Karp: the undirected graph has a Hamiltonian cycle.
bool hamiltonian(const onedim::UndirectedGraph& g);

/// Probabilistic states become uniform zero-mean branchings and
/// nondeterministic updates are clamped to {-1, 0}.
VassMdp zero_mean(const VassMdp& m, std::mt19937_64& rng);

/// Vertices v0..v{n-1}.
onedim::UndirectedGraph named_graph(std::size_t n, const std::vector<std::pair<int, int>>& edges);

/// Random graph on n vertices, each edge present with probability num/den.
onedim::UndirectedGraph random_graph(std::mt19937_64& rng, std::size_t n, unsigned num, unsigned den);

}  // namespace vass::oracle
