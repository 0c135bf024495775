#pragma once

#include <cstdint>
#include <random>

#include "vass_asym/model.hpp"

namespace vass::testing {

struct RandomModelOptions {
  std::size_t min_states = 1;
  std::size_t max_states = 5;
  std::size_t dimension = 1;
  int min_update = -3;
  int max_update = 3;
  std::size_t extra_transitions = 4;  // on top of the spanning cycle
  double prob_state_share = 0.5;
  bool strongly_connected = true;
};

/// Random model; with `strongly_connected` a Hamiltonian cycle over all
/// states guarantees strong connectivity, otherwise edges are arbitrary.
VassMdp random_model(std::mt19937_64& rng, const RandomModelOptions& opt);

}  // namespace vass::testing
