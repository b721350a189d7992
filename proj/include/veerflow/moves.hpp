#pragma once

#include "veerflow/flow_graph.hpp"

namespace vf {

// Moves on total flow graphs. Every move is a pure function; preconditions
// are checked and violations throw tagged errors:
//   cycle-error, sign-error, coorientation-error, move-error,
//   precondition-error, replay-error.
// Rule tags (see README registry) name the rewrite rule each move instance
// claims; certificates carry them verbatim.

enum class MoveKind {
    Cut, Glue, CyclicGlue, Slide, Insert1QP, Remove1QP,
    Bridge, DistantGlue, SignSwap, TwoQSSplit
};

const char* move_kind_name(MoveKind k);
MoveKind move_kind_from_name(const std::string& s);
const char* rule_tag(MoveKind k);

struct Move {
    MoveKind kind;
    std::vector<long long> params;
    std::string just;  // rule tag
};

struct MoveCertificate {
    TotalFlowGraph initial;
    std::vector<Move> moves;
    TotalFlowGraph final_graph;
};

struct EdgeRef {
    int piece;
    int slot;
};
struct VertexRef {
    int piece;
    int corner;
};

// --- elementary moves ---

// Cut along an embedded two-sided monochromatic cycle in one piece.
// `minus_side_slot` picks the coorientation: the side of the first cycle
// edge the coorientation points into.
TotalFlowGraph cut_move(const TotalFlowGraph& t, int piece, const EdgeCycle& cyc,
                        int minus_side_slot);

struct GlueOutcome {
    TotalFlowGraph graph;
    bool strongly_connected;
    // slots of the two glued edge copies inside the merged piece, plus the
    // slots that came from the e1/e2 sides (for the follow-up cut)
    int merged_piece;
    int copy1_e1slot, copy1_e2slot;  // the two sides of the first glued copy
    int copy2_e1slot, copy2_e2slot;
};
// Glue edge e1 to edge e2 (same sign, head(e1) = tail(e2) as total vertices,
// head(e1) != head(e2), tail(e1) != tail(e2)). Two labellings exist; pick
// with `variant`. Strong connectedness of the result is NOT implied; the
// outcome reports it.
GlueOutcome glue_move(const TotalFlowGraph& t, EdgeRef e1, EdgeRef e2, int variant);

// Glue guarded by a directed-cycle witness through (e1,e2); the result is
// strongly connected (checked).
TotalFlowGraph cyclic_glue_move(const TotalFlowGraph& t, EdgeRef e1, EdgeRef e2, int variant);

// Repeated glue/cut pairs moving e1 along a monochromatic embedded directed
// cycle until head(e1) = tail(e2). Pieces are preserved as a multiset.
TotalFlowGraph slide_move(const TotalFlowGraph& t, EdgeRef e1, EdgeRef e2,
                          std::vector<Move>* log = nullptr);

TotalFlowGraph insert_1qp_move(const TotalFlowGraph& t, VertexRef v);
TotalFlowGraph remove_1qp_move(const TotalFlowGraph& t, int piece);

// Direct rewrite: splice a (2QS) into vertices v and w along its edges of
// `splice_sign`; the two edges of the other sign run v->w and w->v.
TotalFlowGraph bridge_move(const TotalFlowGraph& t, VertexRef v, VertexRef w, Sign splice_sign,
                           std::vector<Move>* log = nullptr);

// Reverse of a bridge: remove a (2QS) piece, shortcutting the positive
// cycles through its two positive edges.
TotalFlowGraph unbridge_move(const TotalFlowGraph& t, int piece);

// Insert a (1QP) at head(e) and glue its same-sign edge to e: splits e into
// two parallel edges and adds one edge of the opposite sign.
TotalFlowGraph sign_swap_move(const TotalFlowGraph& t, EdgeRef e,
                              std::vector<Move>* log = nullptr);

// Composite gluing of non-adjacent edges: bridges, transport, final glue.
TotalFlowGraph distant_glue_move(const TotalFlowGraph& t, EdgeRef e1, EdgeRef e2, int variant,
                                 std::vector<Move>* log = nullptr);

// Single-(2QS) total graph -> two (1QP)s with a pair of joints identified.
TotalFlowGraph two_qs_split_move(const TotalFlowGraph& t, std::vector<Move>* log = nullptr);

// --- certificates ---

TotalFlowGraph apply_move(const TotalFlowGraph& t, const Move& m);
TotalFlowGraph replay(const MoveCertificate& cert);  // throws replay-error on step k
bool verify_certificate(const MoveCertificate& cert);

// Expansion of a composite move into the elementary sequence justifying it.
std::vector<Move> expand_move(const TotalFlowGraph& t, const Move& m);

// --- move record constructors ---
Move mk_cut(int piece, const EdgeCycle& cyc, int minus_side_slot);
Move mk_glue(EdgeRef e1, EdgeRef e2, int variant);
Move mk_cyclic_glue(EdgeRef e1, EdgeRef e2, int variant);
Move mk_slide(EdgeRef e1, EdgeRef e2);
Move mk_insert(VertexRef v);
Move mk_remove(int piece);
Move mk_bridge(VertexRef v, VertexRef w, Sign splice_sign);
Move mk_unbridge(int piece);
Move mk_sign_swap(EdgeRef e);
Move mk_distant_glue(EdgeRef e1, EdgeRef e2, int variant);
Move mk_two_qs_split();

// helpers shared with the reduction
int total_vertex_of_joint(const TotalView& view, JointRef j);
JointRef joint_of_corner(const TotalFlowGraph& t, const TotalView& view, VertexRef v);

}  // namespace vf
