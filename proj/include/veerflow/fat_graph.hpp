#pragma once

#include <string>
#include <vector>

#include "veerflow/util.hpp"

namespace vf {

// Graph with a cyclic order of half-edges at each vertex.
struct FatGraph {
    std::vector<std::vector<int>> cyc;  // per vertex: half-edge ids in cyclic order
    std::vector<int> mate;              // half-edge -> half-edge

    int vertex_count() const { return static_cast<int>(cyc.size()); }
    int half_count() const { return static_cast<int>(mate.size()); }
    int edge_count() const { return half_count() / 2; }
    int vertex_of_half(int h) const;
    int edge_of_half(int h) const { return std::min(h, mate[h]); }

    void validate() const;
    bool connected() const;  // ignores vertices with no half-edges
    int degree(int v) const { return static_cast<int>(cyc[v].size()); }

    // true iff removing edge {h, mate[h]} keeps the graph connected
    // (vertices left with no half-edges are dropped)
    bool edge_non_separating(int h) const;

    FatGraph remove_edge(int h) const;  // drops emptied vertices

    // boundary walks of the ribbon surface: each face as a cyclic list of
    // half-edges (the half-edge read when the walk leaves its vertex)
    std::vector<std::vector<int>> faces() const;

    std::string canonical_form() const;
};

bool isomorphic(const FatGraph& a, const FatGraph& b);

}  // namespace vf
