#pragma once

#include "veerflow/flow_graph.hpp"
#include "veerflow/util.hpp"

namespace vf {

// Rejection sampler: random quad cellulation with an admissible sign and
// direction pattern. Deterministic per seed state.
IndividualFlowGraph random_individual(Rng& rng, int quads, int max_tries = 20000);

// Random pieces plus a random perfect matching, rejected until strongly
// connected.
TotalFlowGraph random_total(Rng& rng, int max_quads, int max_pieces, int max_tries = 20000);

}  // namespace vf
