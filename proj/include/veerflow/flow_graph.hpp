#pragma once

#include <map>
#include <string>
#include <vector>

#include "veerflow/fat_graph.hpp"
#include "veerflow/quad_surface.hpp"

namespace vf {

enum class Sign : uint8_t { Pos = 0, Neg = 1 };
inline Sign flip(Sign s) { return s == Sign::Pos ? Sign::Neg : Sign::Pos; }

// Flow graph of one Seifert piece: a quadrangulated closed surface whose
// vertices are the joints, with signed directed edges. Signs and directions
// are stored per slot so they survive re-pairing surgery; partners must
// agree (same sign; directions matching through the rev flag).
struct IndividualFlowGraph {
    QuadSurface surf;
    std::vector<Sign> sign_slot;      // per slot
    std::vector<uint8_t> dir_along;   // per slot: edge directed tail(slot)->head(slot)

    int quad_count() const { return surf.polygon_count(); }
    Sign sign_of_slot(int s) const { return sign_slot[s]; }
    // graph-tail corner of the edge as seen from this slot
    int tail_corner(int s) const { return dir_along[s] ? s : surf.next_slot(s); }
    int head_corner(int s) const { return dir_along[s] ? surf.next_slot(s) : s; }
};

struct CheckItem {
    std::string tag;
    bool ok;
    std::string detail;
};
struct ValidationReport {
    std::vector<CheckItem> items;
    bool ok() const {
        for (auto& it : items) if (!it.ok) return false;
        return true;
    }
    std::string first_failure() const {
        for (auto& it : items) if (!it.ok) return it.tag + " " + it.detail;
        return "";
    }
};

ValidationReport validate_individual(const IndividualFlowGraph& g);

// joint roles derived from edge directions: -1 inward (all tails),
// +1 outward (all heads); throws if inconsistent
std::vector<int> joint_roles(const IndividualFlowGraph& g, const std::vector<int>& vclass, int nv);

struct JointRef {
    int piece;
    int vclass;
    auto operator<=>(const JointRef&) const = default;
};

struct TotalFlowGraph {
    std::vector<IndividualFlowGraph> pieces;
    // each entry identifies one inward joint with one outward joint
    std::vector<std::pair<JointRef, JointRef>> matching;  // (inward, outward)
};

// Precomputed view of the identified directed graph.
struct TotalView {
    std::vector<std::vector<int>> vclass;  // per piece, per corner
    std::vector<int> nv;                   // vertex class counts
    std::vector<std::vector<int>> role;    // per piece, per vclass
    std::map<JointRef, int> vertex_of;     // joint -> total vertex
    int nvert = 0;
    // arcs of the digraph: one per edge class
    struct Arc { int from, to, piece, slot; Sign sign; };
    std::vector<Arc> arcs;
};

TotalView make_view(const TotalFlowGraph& t);
ValidationReport validate_total(const TotalFlowGraph& t);
bool is_strongly_connected(const TotalFlowGraph& t);
bool strongly_connected_oracle(const TotalFlowGraph& t);  // reachability-matrix check

std::string canonical_total(const TotalFlowGraph& t);
bool isomorphic(const TotalFlowGraph& a, const TotalFlowGraph& b);

// --- atoms ---
IndividualFlowGraph make_1qp();
IndividualFlowGraph make_2qs();
bool is_1qp(const IndividualFlowGraph& g);
bool is_2qs(const IndividualFlowGraph& g);
TotalFlowGraph single_1qp_total();  // the terminal object

// --- spine duality ---
// Embedded 4-valent graph as a ribbon structure with twist flags (twisted
// bands realize non-orientable base surfaces). All per-edge data is stored
// per half-edge and must be coherent across the two halves.
struct SpineGraph {
    FatGraph graph;                   // 4-valent
    std::vector<uint8_t> twist;       // per half: band is twisted
    std::vector<Sign> edge_sign;      // per half, equal on mates
    std::vector<uint8_t> coor_left;   // per half: coorientation points left of outward travel
    std::vector<uint8_t> orient_out;  // per half: edge oriented out of this half's vertex
    bool twisted(int h) const { return twist[h] != 0; }
};

ValidationReport validate_spine(const SpineGraph& x);
IndividualFlowGraph flow_graph_from_spine(const SpineGraph& x);
SpineGraph spine_from_flow_graph(const IndividualFlowGraph& g);

}  // namespace vf
