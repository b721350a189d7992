#pragma once

#include "veerflow/moves.hpp"

namespace vf {

enum class QuadClass { Free, OutwardlyRigid, InwardlyRigid, TotallyRigid };

// classification of one quad by whether its two inward (resp. outward)
// corners land on equal joints
QuadClass classify_quad(const IndividualFlowGraph& g, int quad,
                        const std::vector<int>& vclass, const std::vector<int>& role);

struct GraphCase {
    int case_id = 0;  // 1..7
    // witnesses, by case:
    //   3: cycle + piece-local side slot
    //   4: quad index
    //   5: quad pair and the shared slot
    EdgeCycle cycle;
    int quad_a = -1, quad_b = -1, shared_slot = -1;
};

// Returns the first applicable case in order 1..7; throws
// classification-failure if none applies (which would falsify the
// classification rule this is built on).
GraphCase classify(const IndividualFlowGraph& g);

struct ReductionMeasure {
    long long quads = 0;   // total quads over non-(2QS) pieces
    long long genus = 0;   // sum of (genus - 1) over non-(2QS) pieces
    bool operator<(const ReductionMeasure& o) const {
        return quads != o.quads ? quads < o.quads : genus < o.genus;
    }
    bool operator==(const ReductionMeasure& o) const = default;
};

ReductionMeasure measure_of(const TotalFlowGraph& t);

struct ReductionResult {
    TotalFlowGraph graph;
    std::vector<Move> moves;
    std::vector<ReductionMeasure> trace;  // measure after each outer step
};

// Phase 1: apply case handlers until every piece is a (2QS), or until the
// graph is the terminal single self-matched (1QP). The measure strictly
// decreases at every outer iteration (checked).
ReductionResult reduce_phase1(const TotalFlowGraph& t);

// Correspondence between all-(2QS) total flow graphs and fat graphs.
FatGraph fat_graph_of(const TotalFlowGraph& t);
TotalFlowGraph two_qs_graph_of(const FatGraph& g);

// Phase 2: shrink the fat graph to one edge, then convert the single (2QS)
// into the terminal single (1QP).
ReductionResult reduce_phase2(const TotalFlowGraph& t);

// Full pipeline; the certificate replays from t to the single (1QP).
MoveCertificate reduce_to_1qp(const TotalFlowGraph& t,
                              std::vector<ReductionMeasure>* trace = nullptr);

}  // namespace vf
