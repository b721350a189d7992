#include "veerflow/fat_graph.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace vf {

int FatGraph::vertex_of_half(int h) const {
    for (int v = 0; v < vertex_count(); ++v)
        for (int x : cyc[v])
            if (x == h) return v;
    fail("FG-STRUCT", "half-edge not attached to a vertex");
}

void FatGraph::validate() const {
    std::vector<int> owner(half_count(), -1);
    for (int v = 0; v < vertex_count(); ++v)
        for (int h : cyc[v]) {
            require(h >= 0 && h < half_count(), "FG-STRUCT", "half-edge id out of range");
            require(owner[h] == -1, "FG-STRUCT", "half-edge attached twice");
            owner[h] = v;
        }
    for (int h = 0; h < half_count(); ++h) {
        require(owner[h] >= 0, "FG-STRUCT", "dangling half-edge");
        require(mate[h] != h, "FG-STRUCT", "half-edge mated to itself");
        require(mate[mate[h]] == h, "FG-STRUCT", "mate is not an involution");
    }
}

bool FatGraph::connected() const {
    int n = vertex_count();
    std::vector<int> owner(half_count());
    for (int v = 0; v < n; ++v)
        for (int h : cyc[v]) owner[h] = v;
    int start = -1;
    for (int v = 0; v < n; ++v)
        if (!cyc[v].empty()) { start = v; break; }
    if (start < 0) return false;
    std::vector<char> seen(n, 0);
    std::vector<int> stack{start};
    seen[start] = 1;
    while (!stack.empty()) {
        int v = stack.back(); stack.pop_back();
        for (int h : cyc[v]) {
            int w = owner[mate[h]];
            if (!seen[w]) { seen[w] = 1; stack.push_back(w); }
        }
    }
    for (int v = 0; v < n; ++v)
        if (!cyc[v].empty() && !seen[v]) return false;
    return true;
}

FatGraph FatGraph::remove_edge(int h) const {
    int h2 = mate[h];
    FatGraph g;
    std::vector<int> hmap(half_count(), -1);
    int nh = 0;
    for (int x = 0; x < half_count(); ++x)
        if (x != h && x != h2) hmap[x] = nh++;
    g.mate.resize(nh);
    for (int x = 0; x < half_count(); ++x)
        if (hmap[x] >= 0) g.mate[hmap[x]] = hmap[mate[x]];
    for (int v = 0; v < vertex_count(); ++v) {
        std::vector<int> row;
        for (int x : cyc[v])
            if (hmap[x] >= 0) row.push_back(hmap[x]);
        if (!row.empty()) g.cyc.push_back(std::move(row));
    }
    return g;
}

bool FatGraph::edge_non_separating(int h) const {
    if (edge_count() <= 1) return false;
    FatGraph g = remove_edge(h);
    return g.connected();
}

std::vector<std::vector<int>> FatGraph::faces() const {
    // next half-edge of a boundary walk: cross the edge, then take the
    // next half-edge clockwise (i.e. previous in the cyclic order)
    std::vector<int> owner(half_count());
    std::vector<int> pos(half_count());
    for (int v = 0; v < vertex_count(); ++v)
        for (size_t i = 0; i < cyc[v].size(); ++i) { owner[cyc[v][i]] = v; pos[cyc[v][i]] = static_cast<int>(i); }
    auto next = [&](int half) {
        int m = mate[half];
        int v = owner[m];
        int d = degree(v);
        return cyc[v][(pos[m] + 1) % d];
    };
    std::vector<char> used(half_count(), 0);
    std::vector<std::vector<int>> out;
    for (int h = 0; h < half_count(); ++h) {
        if (used[h]) continue;
        std::vector<int> face;
        int cur = h;
        while (!used[cur]) {
            used[cur] = 1;
            face.push_back(cur);
            cur = next(cur);
        }
        out.push_back(std::move(face));
    }
    return out;
}

namespace {

std::string encode_fat(const FatGraph& g, int v0, int h0pos, int dir) {
    int nv = g.vertex_count();
    std::vector<int> owner(g.half_count());
    std::vector<int> pos(g.half_count());
    for (int v = 0; v < nv; ++v)
        for (size_t i = 0; i < g.cyc[v].size(); ++i) { owner[g.cyc[v][i]] = v; pos[g.cyc[v][i]] = static_cast<int>(i); }
    std::vector<int> order(nv, -1), rot(nv, 0), vdir(nv, 1);
    std::vector<int> bfs;
    order[v0] = 0; rot[v0] = h0pos; vdir[v0] = dir;
    bfs.push_back(v0);
    auto half_at = [&](int v, int j) {
        int d = g.degree(v);
        int idx = vdir[v] == 1 ? (rot[v] + j) % d : ((rot[v] - j) % d + d) % d;
        return g.cyc[v][idx];
    };
    std::string enc;
    for (size_t qi = 0; qi < bfs.size(); ++qi) {
        int v = bfs[qi];
        enc += "V" + std::to_string(g.degree(v)) + ";";
        for (int j = 0; j < g.degree(v); ++j) {
            int h = half_at(v, j);
            int m = g.mate[h];
            int w = owner[m];
            if (order[w] < 0) {
                order[w] = static_cast<int>(bfs.size());
                rot[w] = pos[m];
                vdir[w] = vdir[v];  // keep orientation convention across the edge
                bfs.push_back(w);
            }
            int d = g.degree(w);
            int jm = vdir[w] == 1 ? ((pos[m] - rot[w]) % d + d) % d
                                  : ((rot[w] - pos[m]) % d + d) % d;
            enc += std::to_string(order[w]) + "." + std::to_string(jm) + ",";
        }
    }
    if (static_cast<int>(bfs.size()) != nv) enc += "#DISC";
    return enc;
}

}  // namespace

std::string FatGraph::canonical_form() const {
    require(vertex_count() > 0, "FG-STRUCT", "empty fat graph");
    std::string best;
    for (int v = 0; v < vertex_count(); ++v)
        for (size_t i = 0; i < cyc[v].size(); ++i)
            for (int dir : {1, -1}) {
                std::string e = encode_fat(*this, v, static_cast<int>(i), dir);
                if (best.empty() || e < best) best = std::move(e);
            }
    return best;
}

bool isomorphic(const FatGraph& a, const FatGraph& b) {
    return a.canonical_form() == b.canonical_form();
}

}  // namespace vf
