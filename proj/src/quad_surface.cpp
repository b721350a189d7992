#include "veerflow/quad_surface.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace vf {

int QuadSurface::poly_of(int s) const {
    int lo = 0, hi = polygon_count() - 1;
    while (lo < hi) {
        int mid = (lo + hi + 1) / 2;
        if (slot_base[mid] <= s) lo = mid; else hi = mid - 1;
    }
    return lo;
}

int QuadSurface::next_slot(int s) const {
    int p = poly_of(s);
    int i = s - slot_base[p];
    return slot_base[p] + (i + 1) % ngon[p];
}

int QuadSurface::prev_slot(int s) const {
    int p = poly_of(s);
    int i = s - slot_base[p];
    return slot_base[p] + (i + ngon[p] - 1) % ngon[p];
}

QuadSurface QuadSurface::from_polygons(const std::vector<int>& sides) {
    QuadSurface s;
    s.ngon = sides;
    s.slot_base.resize(sides.size());
    int acc = 0;
    for (size_t p = 0; p < sides.size(); ++p) {
        require(sides[p] >= 1, "QS-STRUCT", "polygon with no sides");
        s.slot_base[p] = acc;
        acc += sides[p];
    }
    s.partner.assign(acc, -1);
    s.rev.assign(acc, 0);
    return s;
}

void QuadSurface::pair_slots(int a, int b, bool reversed) {
    require(a != b, "QS-STRUCT", "slot paired with itself");
    require(partner[a] == -1 && partner[b] == -1, "QS-STRUCT", "slot already paired");
    partner[a] = b;
    partner[b] = a;
    rev[a] = rev[b] = reversed ? 1 : 0;
}

void QuadSurface::unpair(int a) {
    int b = partner[a];
    require(b >= 0, "QS-STRUCT", "unpairing a boundary slot");
    partner[a] = partner[b] = -1;
    rev[a] = rev[b] = 0;
}

void QuadSurface::validate_structure() const {
    for (int s = 0; s < slot_count(); ++s) {
        int b = partner[s];
        if (b == -1) continue;
        require(b >= 0 && b < slot_count(), "QS-STRUCT", "partner out of range");
        require(b != s, "QS-STRUCT", "pairing has a fixed point");
        require(partner[b] == s, "QS-STRUCT", "pairing is not an involution");
        require(rev[b] == rev[s], "QS-STRUCT", "mismatched rev flags");
    }
}

bool QuadSurface::closed() const {
    for (int s = 0; s < slot_count(); ++s)
        if (partner[s] == -1) return false;
    return true;
}

std::vector<int> QuadSurface::edge_class(int* count) const {
    std::vector<int> cls(slot_count(), -1);
    int k = 0;
    for (int s = 0; s < slot_count(); ++s) {
        if (cls[s] >= 0) continue;
        cls[s] = k;
        if (partner[s] >= 0) cls[partner[s]] = k;
        ++k;
    }
    if (count) *count = k;
    return cls;
}

std::vector<int> QuadSurface::vertex_class(int* count) const {
    UnionFind uf(slot_count());  // corner id = slot id it tails
    for (int a = 0; a < slot_count(); ++a) {
        int b = partner[a];
        if (b < 0 || b < a) continue;
        int tail_a = a, head_a = next_slot(a);
        int tail_b = b, head_b = next_slot(b);
        if (!rev[a]) {
            uf.unite(tail_a, tail_b);
            uf.unite(head_a, head_b);
        } else {
            uf.unite(tail_a, head_b);
            uf.unite(head_a, tail_b);
        }
    }
    return uf.classes(count);
}

std::vector<int> QuadSurface::component_of(int* count) const {
    UnionFind uf(polygon_count());
    for (int s = 0; s < slot_count(); ++s)
        if (partner[s] >= 0) uf.unite(poly_of(s), poly_of(partner[s]));
    return uf.classes(count);
}

int QuadSurface::euler_characteristic() const {
    int V, E;
    vertex_class(&V);
    edge_class(&E);
    return V - E + polygon_count();
}

EdgeEnd cross_end(const QuadSurface& s, EdgeEnd e) {
    int b = s.partner[e.slot];
    require(b >= 0, "QS-BOUNDARY", "crossing a boundary edge end");
    return EdgeEnd{b, s.rev[e.slot] ? 1 - e.end : e.end};
}

int corner_at(const QuadSurface& s, EdgeEnd e) {
    return e.end == 0 ? e.slot : s.next_slot(e.slot);
}

int vertex_of_end(const QuadSurface& s, EdgeEnd e) {
    auto vc = s.vertex_class();
    return vc[corner_at(s, e)];
}

EdgeEnd entry_end(const CycleStep& st) { return EdgeEnd{st.slot, st.along ? 0 : 1}; }
EdgeEnd exit_end(const CycleStep& st) { return EdgeEnd{st.slot, st.along ? 1 : 0}; }

void check_embedded_cycle(const QuadSurface& s, const EdgeCycle& c) {
    require(!c.empty(), "QS-CYCLE", "empty cycle");
    auto ec = s.edge_class();
    auto vc = s.vertex_class();
    std::set<int> edges, verts;
    for (size_t i = 0; i < c.size(); ++i) {
        require(c[i].slot >= 0 && c[i].slot < s.slot_count(), "QS-CYCLE", "bad slot");
        require(s.partner[c[i].slot] >= 0, "QS-CYCLE", "cycle through a boundary edge");
        require(edges.insert(ec[c[i].slot]).second, "QS-CYCLE", "repeated edge in cycle");
        const CycleStep& nx = c[(i + 1) % c.size()];
        int v_exit = vc[corner_at(s, exit_end(c[i]))];
        int v_entry = vc[corner_at(s, entry_end(nx))];
        require(v_exit == v_entry, "QS-CYCLE", "consecutive edges do not share a vertex");
        require(verts.insert(v_exit).second, "QS-CYCLE", "repeated vertex in cycle");
    }
}

namespace {

// The two edge-ends flanking a corner, as seen from the corner's polygon:
// tail-side (the slot the corner tails) and head-side (the previous slot).
EdgeEnd tail_side_end(const QuadSurface& s, int corner) { return EdgeEnd{corner, 0}; }
EdgeEnd head_side_end(const QuadSurface& s, int corner) {
    return EdgeEnd{s.prev_slot(corner), 1};
}

bool same_geometric_end(const QuadSurface& s, EdgeEnd a, EdgeEnd b) {
    if (a == b) return true;
    if (s.partner[a.slot] < 0) return false;
    return cross_end(s, a) == b;
}

}  // namespace

int propagate_side(const QuadSurface& s, const EdgeCycle& c, size_t i, int side_slot) {
    const CycleStep& cur = c[i];
    const CycleStep& nxt = c[(i + 1) % c.size()];
    require(side_slot == cur.slot || side_slot == s.partner[cur.slot],
            "QS-CYCLE", "side slot not a side of the current edge");
    // exit end of the current edge, represented on the chosen side
    EdgeEnd exit = exit_end(cur);
    if (side_slot != cur.slot) exit = cross_end(s, exit);
    EdgeEnd target_a = entry_end(nxt);
    EdgeEnd target_b = s.partner[nxt.slot] >= 0 ? cross_end(s, target_a) : target_a;
    // walk the corner fan around the vertex starting beside `exit`
    EdgeEnd at = exit;
    for (int guard = 0; guard <= s.slot_count() * 2 + 2; ++guard) {
        int corner = corner_at(s, at);
        EdgeEnd other = same_geometric_end(s, tail_side_end(s, corner), at)
                            ? head_side_end(s, corner)
                            : tail_side_end(s, corner);
        if (other == target_a) return target_a.slot;
        if (other == target_b) return target_b.slot;
        at = cross_end(s, other);
    }
    fail("QS-CYCLE", "side propagation did not reach the next edge");
}

bool is_two_sided(const QuadSurface& s, const EdgeCycle& c) {
    check_embedded_cycle(s, c);
    int side = c[0].slot;
    int start = side;
    for (size_t i = 0; i < c.size(); ++i) {
        int next_side = propagate_side(s, c, i, side);
        side = next_side;
    }
    return side == start;
}

CutResult cut_along_edge_cycle(const QuadSurface& s, const EdgeCycle& c,
                               std::optional<int> side_slot_hint) {
    check_embedded_cycle(s, c);
    bool two_sided = is_two_sided(s, c);

    std::vector<int> side_of_step(c.size(), 0);
    if (two_sided) {
        int side = side_slot_hint.value_or(c[0].slot);
        require(side == c[0].slot || side == s.partner[c[0].slot],
                "QS-CYCLE", "side hint not a side of the first edge");
        for (size_t i = 0; i < c.size(); ++i) {
            side_of_step[i] = side;
            side = propagate_side(s, c, i, side);
        }
    }

    CutResult out;
    out.surface = s;
    for (size_t i = 0; i < c.size(); ++i) {
        int a = c[i].slot, b = s.partner[c[i].slot];
        out.surface.unpair(a);
        int side_a = 0, side_b = 0;
        if (two_sided) {
            side_a = (side_of_step[i] == a) ? -1 : +1;  // chosen side is the minus side
            side_b = -side_a;
        }
        out.boundary.push_back({a, a, static_cast<int>(i), side_a});
        out.boundary.push_back({b, b, static_cast<int>(i), side_b});
    }
    // count boundary circles of the cut surface: walk corner fans along the boundary
    {
        const QuadSurface& t = out.surface;
        std::set<int> seen;
        int circles = 0;
        for (int sl = 0; sl < t.slot_count(); ++sl) {
            if (t.partner[sl] >= 0 || seen.count(sl)) continue;
            ++circles;
            EdgeEnd at{sl, 1};  // leave via the head end
            for (int guard = 0; guard <= 2 * t.slot_count() + 1; ++guard) {
                seen.insert(at.slot);
                // fan around the vertex from `at` to the next boundary end
                while (true) {
                    int corner = corner_at(t, at);
                    EdgeEnd other = same_geometric_end(t, tail_side_end(t, corner), at)
                                        ? head_side_end(t, corner)
                                        : tail_side_end(t, corner);
                    if (t.partner[other.slot] < 0) { at = EdgeEnd{other.slot, 1 - other.end}; break; }
                    at = cross_end(t, other);
                }
                if (at.slot == sl) break;
            }
        }
        out.boundary_circles = circles;
    }
    return out;
}

OrientGenus orientability_and_genus(const QuadSurface& s) {
    int ncomp;
    s.component_of(&ncomp);
    ParityUnionFind pu(s.polygon_count());
    for (int a = 0; a < s.slot_count(); ++a) {
        int b = s.partner[a];
        if (b < 0 || b < a) continue;
        // coherent orientations across a pair need rev = true ("flip")
        pu.relate(s.poly_of(a), s.poly_of(b), s.rev[a] ? 0 : 1);
    }
    OrientGenus og;
    og.connected = (ncomp == 1);
    og.orientable = pu.consistent;
    int chi = s.euler_characteristic();
    og.genus = og.orientable ? (2 - chi) / 2 : (2 - chi);
    return og;
}

std::vector<OrientGenus> orientability_and_genus_components(const QuadSurface& s) {
    int ncomp;
    auto comp = s.component_of(&ncomp);
    std::vector<OrientGenus> out;
    for (int k = 0; k < ncomp; ++k) {
        // extract component k
        std::vector<int> polys;
        std::vector<int> newidx(s.polygon_count(), -1);
        std::vector<int> sides;
        for (int p = 0; p < s.polygon_count(); ++p)
            if (comp[p] == k) { newidx[p] = static_cast<int>(polys.size()); polys.push_back(p); sides.push_back(s.ngon[p]); }
        QuadSurface t = QuadSurface::from_polygons(sides);
        for (int a = 0; a < s.slot_count(); ++a) {
            int b = s.partner[a];
            if (b < 0 || b < a) continue;
            int pa = s.poly_of(a), pb = s.poly_of(b);
            if (comp[pa] != k) continue;
            t.pair_slots(t.slot(newidx[pa], s.index_of(a)), t.slot(newidx[pb], s.index_of(b)), s.rev[a]);
        }
        out.push_back(orientability_and_genus(t));
    }
    return out;
}

namespace {

std::string encode_from(const QuadSurface& s, int p0, int i0, int dir,
                        const SlotLabelFn& label_fn) {
    int np = s.polygon_count();
    std::vector<int> order(np, -1);      // old poly -> new index
    std::vector<int> rot(np, 0);         // old slot index that becomes new slot 0
    std::vector<int> pdir(np, 1);        // traversal direction
    std::vector<int> bfs;
    order[p0] = 0; rot[p0] = i0; pdir[p0] = dir;
    bfs.push_back(p0);
    auto old_slot_of = [&](int p, int j) {
        int n = s.ngon[p];
        int idx = pdir[p] == 1 ? (rot[p] + j) % n : ((rot[p] - j) % n + n) % n;
        return s.slot(p, idx);
    };
    std::string enc;
    enc.reserve(static_cast<size_t>(s.slot_count()) * 8);
    for (size_t qi = 0; qi < bfs.size(); ++qi) {
        int p = bfs[qi];
        enc += "P" + std::to_string(s.ngon[p]) + ";";
        for (int j = 0; j < s.ngon[p]; ++j) {
            int a = old_slot_of(p, j);
            int b = s.partner[a];
            if (b < 0) {
                enc += "b";
            } else {
                int q = s.poly_of(b);
                if (order[q] < 0) {
                    order[q] = static_cast<int>(bfs.size());
                    // align q so the partner slot becomes its slot 0, keeping
                    // the identification "flip-like" in the new labels
                    rot[q] = s.index_of(b);
                    // choose q's direction so the new rev flag is canonical (flip)
                    pdir[q] = s.rev[a] ? pdir[p] : -pdir[p];
                    bfs.push_back(q);
                }
                // new rev flag: rev flips when exactly one polygon is reversed
                bool flipped = (pdir[p] == -1) ^ (pdir[q] == -1);
                bool nrev = (s.rev[a] != 0) ^ flipped;
                // new index of b within q
                int n = s.ngon[q];
                int jb = pdir[q] == 1 ? ((s.index_of(b) - rot[q]) % n + n) % n
                                      : ((rot[q] - s.index_of(b)) % n + n) % n;
                enc += std::to_string(order[q]) + "." + std::to_string(jb) + (nrev ? "f" : "s");
            }
            if (label_fn) enc += "[" + label_fn(a, pdir[p] == -1) + "]";
            enc += ",";
        }
    }
    if (static_cast<int>(bfs.size()) != np) enc += "#DISCONNECTED";
    return enc;
}

}  // namespace

std::string canonical_form(const QuadSurface& s, const SlotLabelFn& label_fn) {
    require(s.polygon_count() > 0, "QS-STRUCT", "empty surface");
    std::string best;
    for (int p = 0; p < s.polygon_count(); ++p)
        for (int i = 0; i < s.ngon[p]; ++i)
            for (int dir : {1, -1}) {
                std::string e = encode_from(s, p, i, dir, label_fn);
                if (best.empty() || e < best) best = std::move(e);
            }
    return best;
}

bool isomorphic(const QuadSurface& a, const QuadSurface& b) {
    return canonical_form(a) == canonical_form(b);
}

}  // namespace vf
