#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "veerflow/util.hpp"

namespace vf {

// A closed or bounded surface given as polygons with side slots paired off.
//
// Slot (p,i) is the i-th side of polygon p, directed along the polygon's
// boundary orientation. Corner (p,i) sits at the tail of slot (p,i), i.e.
// between slots (p,i-1) and (p,i).
//
// A pairing of slot a with slot b carries a flag `rev`:
//   rev = false ("same"): tail(a)~tail(b), head(a)~head(b)
//   rev = true  ("flip"): tail(a)~head(b), head(a)~tail(b)
// Two coherently oriented polygons of an oriented surface meet along a
// "flip" pair; "same" pairs are the crosscap-style gluings.
struct QuadSurface {
    std::vector<int> ngon;       // sides per polygon
    std::vector<int> slot_base;  // prefix sums into flat slot ids
    std::vector<int> partner;    // flat slot -> flat slot, or -1 for boundary
    std::vector<uint8_t> rev;    // per flat slot (valid when partner >= 0)

    int polygon_count() const { return static_cast<int>(ngon.size()); }
    int slot_count() const { return static_cast<int>(partner.size()); }
    int slot(int p, int i) const { return slot_base[p] + i; }
    int poly_of(int s) const;
    int index_of(int s) const { return s - slot_base[poly_of(s)]; }
    int next_slot(int s) const;  // next side around the same polygon
    int prev_slot(int s) const;

    static QuadSurface from_polygons(const std::vector<int>& sides);
    void pair_slots(int a, int b, bool reversed);
    void unpair(int a);
    void validate_structure() const;  // throws structural-error

    bool closed() const;

    // --- derived combinatorics ---
    // edge classes: each pair is one edge; each boundary slot is one edge
    std::vector<int> edge_class(int* count = nullptr) const;   // per slot
    // vertex classes: orbits of corners; corner id == slot id of the slot it tails
    std::vector<int> vertex_class(int* count = nullptr) const; // per corner
    std::vector<int> component_of(int* count = nullptr) const; // per polygon

    int euler_characteristic() const;  // V - E + F, boundary edges included
};

// Edge-end: (slot, end) with end 0 = tail, 1 = head. The same geometric
// end of an interior edge has two representations, one per side.
struct EdgeEnd {
    int slot = -1;
    int end = 0;
    bool operator==(const EdgeEnd&) const = default;
};

EdgeEnd cross_end(const QuadSurface& s, EdgeEnd e);       // other side of the edge
int corner_at(const QuadSurface& s, EdgeEnd e);           // corner of e.slot's polygon at this end
int vertex_of_end(const QuadSurface& s, EdgeEnd e);       // vertex class (via vertex_class)

// One step of a cycle: an edge traversed via the slot `slot`, from tail to
// head when `along` is true.
struct CycleStep {
    int slot;
    bool along;
};
using EdgeCycle = std::vector<CycleStep>;

EdgeEnd entry_end(const CycleStep& st);
EdgeEnd exit_end(const CycleStep& st);

// Checks the steps form a cycle in the 1-skeleton with pairwise distinct
// edges and pairwise distinct intermediate vertices.
void check_embedded_cycle(const QuadSurface& s, const EdgeCycle& c);

// Walks the corner fan at the shared vertex from the exit end of step i
// on the given side, returning the side slot of step i+1 reached without
// crossing either cycle edge in between.
int propagate_side(const QuadSurface& s, const EdgeCycle& c, size_t i, int side_slot);

// True iff a transverse side choice propagates consistently around c.
bool is_two_sided(const QuadSurface& s, const EdgeCycle& c);

struct CutBoundaryEdge {
    int new_slot;         // boundary slot of the cut surface
    int original_slot;    // the slot it came from
    int step;             // index into the cycle
    int side;             // +1 plus side, -1 minus side, 0 when one-sided
};
struct CutResult {
    QuadSurface surface;
    std::vector<CutBoundaryEdge> boundary;
    int boundary_circles = 0;
};

// Cuts along the cycle by removing its pairings. Two-sidedness is not
// required; when the cycle is two-sided the boundary records +/- sides
// using the side of c's first step reached by propagate_side from
// `side_slot_hint` (or a deterministic default).
CutResult cut_along_edge_cycle(const QuadSurface& s, const EdgeCycle& c,
                               std::optional<int> side_slot_hint = std::nullopt);

struct OrientGenus {
    bool connected;
    bool orientable;
    int genus;  // orientable genus, or crosscap count when non-orientable
};
// Closed connected input expected; for disconnected input use per-component.
OrientGenus orientability_and_genus(const QuadSurface& s);
std::vector<OrientGenus> orientability_and_genus_components(const QuadSurface& s);

// Canonical labeling by breadth-first relabeling from every (polygon, slot,
// direction) start; label_fn contributes per-slot payload (signs, colors,
// directions). `dir_reversed` tells the callback the polygon traversal was
// reversed so direction-like labels can be flipped.
using SlotLabelFn = std::function<std::string(int slot, bool dir_reversed)>;
std::string canonical_form(const QuadSurface& s, const SlotLabelFn& label_fn = nullptr);

bool isomorphic(const QuadSurface& a, const QuadSurface& b);

}  // namespace vf
