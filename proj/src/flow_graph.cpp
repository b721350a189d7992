#include "veerflow/flow_graph.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace vf {

ValidationReport validate_individual(const IndividualFlowGraph& g) {
    ValidationReport r;
    auto add = [&](const std::string& tag, bool ok, const std::string& detail) {
        r.items.push_back({tag, ok, detail});
    };
    try {
        g.surf.validate_structure();
        add("FG-STRUCT", true, "");
    } catch (const Error& e) {
        add("FG-STRUCT", false, e.what());
        return r;
    }
    add("FG-CLOSED", g.surf.closed(), "surface must be closed");
    {
        int nc;
        g.surf.component_of(&nc);
        add("FG-CONNECTED", nc == 1, "piece must be connected");
    }
    bool quads = true;
    for (int n : g.surf.ngon)
        if (n != 4) quads = false;
    add("FG-QUADS", quads, "every polygon must be a quadrilateral");
    if (!r.ok()) return r;

    // sign and direction agree across each pairing
    bool pair_ok = true;
    std::string pair_detail;
    for (int s = 0; s < g.surf.slot_count(); ++s) {
        int b = g.surf.partner[s];
        if (b < s) continue;
        if (g.sign_slot[s] != g.sign_slot[b]) {
            pair_ok = false;
            pair_detail = "sign mismatch across pairing at slot " + std::to_string(s);
            break;
        }
        bool expect_equal = !g.surf.rev[s];
        if ((g.dir_along[s] == g.dir_along[b]) != expect_equal) {
            pair_ok = false;
            pair_detail = "direction mismatch across pairing at slot " + std::to_string(s);
            break;
        }
    }
    add("FG-EDGEDATA", pair_ok, pair_detail);

    // two opposite positive sides and two opposite negative sides per quad
    bool alt_ok = true;
    std::string alt_detail;
    for (int p = 0; p < g.surf.polygon_count() && alt_ok; ++p)
        for (int i = 0; i < 4; ++i) {
            int a = g.surf.slot(p, i), b = g.surf.slot(p, (i + 1) % 4);
            if (g.sign_slot[a] == g.sign_slot[b]) {
                alt_ok = false;
                alt_detail = "adjacent sides of quad " + std::to_string(p) + " share a sign";
                break;
            }
        }
    add("FG-SIDEALT", alt_ok, alt_detail);
    if (!r.ok()) return r;

    // joint roles consistent
    int nv;
    auto vc = g.surf.vertex_class(&nv);
    bool roles_ok = true;
    std::string roles_detail;
    std::vector<int> role(nv, 0);
    for (int s = 0; s < g.surf.slot_count(); ++s) {
        int b = g.surf.partner[s];
        if (b < s) continue;
        int tv = vc[g.tail_corner(s)], hv = vc[g.head_corner(s)];
        for (auto [v, want] : {std::pair{tv, -1}, std::pair{hv, +1}}) {
            if (role[v] == 0) role[v] = want;
            else if (role[v] != want) {
                roles_ok = false;
                roles_detail = "joint " + std::to_string(v) + " is both inward and outward";
            }
        }
        if (tv == hv) {
            roles_ok = false;
            roles_detail = "edge at slot " + std::to_string(s) + " is a loop";
        }
    }
    add("FG-ROLES", roles_ok, roles_detail);

    // #quads = #joints - chi(closed surface)  (the quad-count law)
    int chi = g.surf.euler_characteristic();
    add("FG-QUADLAW", g.quad_count() == nv - chi,
        "quad count " + std::to_string(g.quad_count()) + " vs joints - chi = " + std::to_string(nv - chi));
    return r;
}

std::vector<int> joint_roles(const IndividualFlowGraph& g, const std::vector<int>& vclass, int nv) {
    std::vector<int> role(nv, 0);
    for (int s = 0; s < g.surf.slot_count(); ++s) {
        int b = g.surf.partner[s];
        if (b < s) continue;
        int tv = vclass[g.tail_corner(s)], hv = vclass[g.head_corner(s)];
        require(tv != hv, "FG-ROLES", "loop edge");
        require(role[tv] <= 0 && role[hv] >= 0, "FG-ROLES", "inconsistent joint roles");
        role[tv] = -1;
        role[hv] = +1;
    }
    for (int v = 0; v < nv; ++v) require(role[v] != 0, "FG-ROLES", "isolated joint");
    return role;
}

TotalView make_view(const TotalFlowGraph& t) {
    TotalView view;
    int np = static_cast<int>(t.pieces.size());
    view.vclass.resize(np);
    view.nv.resize(np);
    view.role.resize(np);
    for (int p = 0; p < np; ++p) {
        view.vclass[p] = t.pieces[p].surf.vertex_class(&view.nv[p]);
        view.role[p] = joint_roles(t.pieces[p], view.vclass[p], view.nv[p]);
    }
    // total vertices from matching
    view.nvert = 0;
    std::set<JointRef> seen;
    for (auto& [in_j, out_j] : t.matching) {
        require(in_j.piece >= 0 && in_j.piece < np && out_j.piece >= 0 && out_j.piece < np,
                "TFG-MATCH", "matching references a missing piece");
        require(view.role[in_j.piece][in_j.vclass] == -1, "TFG-MATCH",
                "matching lists a non-inward joint on the inward side");
        require(view.role[out_j.piece][out_j.vclass] == +1, "TFG-MATCH",
                "matching lists a non-outward joint on the outward side");
        require(seen.insert(in_j).second && seen.insert(out_j).second,
                "TFG-MATCH", "joint matched twice");
        int id = view.nvert++;
        view.vertex_of[in_j] = id;
        view.vertex_of[out_j] = id;
    }
    for (int p = 0; p < np; ++p)
        for (int v = 0; v < view.nv[p]; ++v)
            require(view.vertex_of.count({p, v}), "TFG-MATCH", "unmatched joint");
    for (int p = 0; p < np; ++p) {
        const auto& g = t.pieces[p];
        for (int s = 0; s < g.surf.slot_count(); ++s) {
            int b = g.surf.partner[s];
            if (b < s) continue;
            int tv = view.vclass[p][g.tail_corner(s)];
            int hv = view.vclass[p][g.head_corner(s)];
            view.arcs.push_back({view.vertex_of.at({p, tv}), view.vertex_of.at({p, hv}),
                                 p, s, g.sign_slot[s]});
        }
    }
    return view;
}

ValidationReport validate_total(const TotalFlowGraph& t) {
    ValidationReport r;
    for (size_t p = 0; p < t.pieces.size(); ++p) {
        auto pr = validate_individual(t.pieces[p]);
        for (auto& it : pr.items)
            if (!it.ok) r.items.push_back({it.tag, false, "piece " + std::to_string(p) + ": " + it.detail});
    }
    if (!r.items.empty()) return r;
    try {
        make_view(t);
        r.items.push_back({"TFG-MATCH", true, ""});
    } catch (const Error& e) {
        r.items.push_back({"TFG-MATCH", false, e.what()});
    }
    return r;
}

namespace {

bool reachable_all(int n, const std::vector<std::vector<int>>& adj) {
    if (n == 0) return false;
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int cnt = 1;
    while (!stack.empty()) {
        int v = stack.back(); stack.pop_back();
        for (int w : adj[v])
            if (!seen[w]) { seen[w] = 1; ++cnt; stack.push_back(w); }
    }
    return cnt == n;
}

}  // namespace

bool is_strongly_connected(const TotalFlowGraph& t) {
    TotalView view = make_view(t);
    int n = view.nvert;
    std::vector<std::vector<int>> fwd(n), bwd(n);
    for (auto& a : view.arcs) {
        fwd[a.from].push_back(a.to);
        bwd[a.to].push_back(a.from);
    }
    return reachable_all(n, fwd) && reachable_all(n, bwd);
}

bool strongly_connected_oracle(const TotalFlowGraph& t) {
    TotalView view = make_view(t);
    int n = view.nvert;
    if (n == 0) return false;
    std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i) reach[i][i] = 1;
    for (auto& a : view.arcs) reach[a.from][a.to] = 1;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (reach[i][k] && reach[k][j]) reach[i][j] = 1;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!reach[i][j]) return false;
    return true;
}

// ---------- canonical form of a total flow graph ----------

namespace {

struct PieceLabeling {
    std::string enc;
    // old corner -> canonical corner id, old vertex class -> canonical joint id
    std::vector<int> corner_id;
    std::vector<int> joint_id;  // indexed by old vclass
};

PieceLabeling label_piece(const IndividualFlowGraph& g, int i0, int dir) {
    const QuadSurface& s = g.surf;
    int p0 = s.poly_of(i0);
    int np = s.polygon_count();
    std::vector<int> order(np, -1), rot(np, 0), pdir(np, 1);
    std::vector<int> bfs;
    order[p0] = 0; rot[p0] = s.index_of(i0); pdir[p0] = dir;
    bfs.push_back(p0);
    auto old_slot_of = [&](int p, int j) {
        int n = s.ngon[p];
        int idx = pdir[p] == 1 ? (rot[p] + j) % n : ((rot[p] - j) % n + n) % n;
        return s.slot(p, idx);
    };
    PieceLabeling out;
    out.corner_id.assign(s.slot_count(), -1);
    std::string enc;
    for (size_t qi = 0; qi < bfs.size(); ++qi) {
        int p = bfs[qi];
        for (int j = 0; j < s.ngon[p]; ++j) {
            int a = old_slot_of(p, j);
            // canonical corner j of polygon qi = tail of the new slot j
            int old_corner = pdir[p] == 1 ? a : s.next_slot(a);
            out.corner_id[old_corner] = static_cast<int>(qi) * 8 + j;
            int b = s.partner[a];
            if (b < 0) { enc += "b,"; continue; }
            int q = s.poly_of(b);
            if (order[q] < 0) {
                order[q] = static_cast<int>(bfs.size());
                rot[q] = s.index_of(b);
                pdir[q] = s.rev[a] ? pdir[p] : -pdir[p];
                bfs.push_back(q);
            }
            bool flipped = (pdir[p] == -1) ^ (pdir[q] == -1);
            bool nrev = (s.rev[a] != 0) ^ flipped;
            int n = s.ngon[q];
            int jb = pdir[q] == 1 ? ((s.index_of(b) - rot[q]) % n + n) % n
                                  : ((rot[q] - s.index_of(b)) % n + n) % n;
            enc += std::to_string(order[q]) + "." + std::to_string(jb) + (nrev ? "f" : "s");
            enc += g.sign_slot[a] == Sign::Pos ? "P" : "N";
            bool d = g.dir_along[a];
            if (pdir[p] == -1) d = !d;
            enc += d ? ">" : "<";
            enc += ",";
        }
        enc += ";";
    }
    if (static_cast<int>(bfs.size()) != np) enc += "#DISC";
    out.enc = std::move(enc);
    int nv;
    auto vc = s.vertex_class(&nv);
    std::vector<int> best(nv, 1 << 30);
    for (int c = 0; c < s.slot_count(); ++c)
        best[vc[c]] = std::min(best[vc[c]], out.corner_id[c]);
    // joints ranked by smallest canonical corner
    std::vector<int> idx(nv);
    for (int v = 0; v < nv; ++v) idx[v] = v;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return best[a] < best[b]; });
    out.joint_id.assign(nv, -1);
    for (int k = 0; k < nv; ++k) out.joint_id[idx[k]] = k;
    return out;
}

PieceLabeling best_piece_labeling(const IndividualFlowGraph& g, int prefer_vclass) {
    PieceLabeling best;
    std::string best_key;
    bool have = false;
    for (int sl = 0; sl < g.surf.slot_count(); ++sl)
        for (int dir : {1, -1}) {
            PieceLabeling cand = label_piece(g, sl, dir);
            std::string key = cand.enc;
            if (prefer_vclass >= 0)
                key += "@" + std::to_string(cand.joint_id[prefer_vclass]);
            if (!have || key < best_key) { best = cand; best_key = key; have = true; }
        }
    return best;
}

}  // namespace

namespace {
std::string canonical_component(const TotalFlowGraph& t);
}

std::string canonical_total(const TotalFlowGraph& t) {
    require(!t.pieces.empty(), "TFG-STRUCT", "empty total flow graph");
    // split into matching-connected components, canonicalize each
    int np = static_cast<int>(t.pieces.size());
    UnionFind uf(np);
    for (auto& [a, b] : t.matching) uf.unite(a.piece, b.piece);
    int nc;
    auto comp = uf.classes(&nc);
    if (nc == 1) return canonical_component(t);
    std::vector<std::string> parts;
    for (int k = 0; k < nc; ++k) {
        TotalFlowGraph sub;
        std::vector<int> newidx(np, -1);
        for (int p = 0; p < np; ++p)
            if (comp[p] == k) {
                newidx[p] = static_cast<int>(sub.pieces.size());
                sub.pieces.push_back(t.pieces[p]);
            }
        for (auto& [a, b] : t.matching)
            if (comp[a.piece] == k)
                sub.matching.push_back({{newidx[a.piece], a.vclass}, {newidx[b.piece], b.vclass}});
        parts.push_back(canonical_component(sub));
    }
    std::sort(parts.begin(), parts.end());
    std::string out;
    for (auto& p : parts) out += "<" + p + ">";
    return out;
}

namespace {
std::string canonical_component(const TotalFlowGraph& t) {
    TotalView view = make_view(t);
    int np = static_cast<int>(t.pieces.size());
    // matched partner of each joint
    std::map<JointRef, JointRef> partner;
    for (auto& [a, b] : t.matching) { partner[a] = b; partner[b] = a; }

    std::string best;
    for (int sp = 0; sp < np; ++sp)
        for (int sl = 0; sl < t.pieces[sp].surf.slot_count(); ++sl)
            for (int dir : {1, -1}) {
                std::vector<int> piece_order(np, -1);
                std::vector<PieceLabeling> lab(np);
                std::vector<int> discovered;
                piece_order[sp] = 0;
                lab[sp] = label_piece(t.pieces[sp], sl, dir);
                discovered.push_back(sp);
                // pending joints keyed by (discovery index, canonical joint id)
                std::set<std::pair<std::pair<int, int>, JointRef>> pending;
                auto push_joints = [&](int p) {
                    for (int v = 0; v < view.nv[p]; ++v)
                        pending.insert({{piece_order[p], lab[p].joint_id[v]}, JointRef{p, v}});
                };
                push_joints(sp);
                while (!pending.empty()) {
                    auto it = pending.begin();
                    JointRef j = it->second;
                    pending.erase(it);
                    JointRef m = partner.at(j);
                    if (piece_order[m.piece] >= 0) continue;
                    piece_order[m.piece] = static_cast<int>(discovered.size());
                    lab[m.piece] = best_piece_labeling(t.pieces[m.piece], m.vclass);
                    discovered.push_back(m.piece);
                    push_joints(m.piece);
                }
                if (static_cast<int>(discovered.size()) != np) continue;  // matching-disconnected
                std::string enc;
                for (int p : discovered) enc += "{" + lab[p].enc + "}";
                std::vector<std::string> pairs;
                for (auto& [a, b] : t.matching) {
                    auto fmt = [&](JointRef x) {
                        return std::to_string(piece_order[x.piece]) + ":" +
                               std::to_string(lab[x.piece].joint_id[x.vclass]);
                    };
                    pairs.push_back(fmt(a) + "-" + fmt(b));
                }
                std::sort(pairs.begin(), pairs.end());
                for (auto& pr : pairs) enc += pr + "|";
                if (best.empty() || enc < best) best = std::move(enc);
            }
    require(!best.empty(), "TFG-STRUCT", "total flow graph not connected through its matching");
    return best;
}
}  // namespace

bool isomorphic(const TotalFlowGraph& a, const TotalFlowGraph& b) {
    if (a.pieces.size() != b.pieces.size()) return false;
    return canonical_total(a) == canonical_total(b);
}

// ---------- atoms ----------

IndividualFlowGraph make_1qp() {
    IndividualFlowGraph g;
    g.surf = QuadSurface::from_polygons({4});
    g.surf.pair_slots(0, 2, false);
    g.surf.pair_slots(1, 3, false);
    g.sign_slot = {Sign::Pos, Sign::Neg, Sign::Pos, Sign::Neg};
    g.dir_along = {1, 0, 1, 0};
    return g;
}

IndividualFlowGraph make_2qs() {
    IndividualFlowGraph g;
    g.surf = QuadSurface::from_polygons({4, 4});
    g.surf.pair_slots(0, 7, true);
    g.surf.pair_slots(1, 6, true);
    g.surf.pair_slots(2, 5, true);
    g.surf.pair_slots(3, 4, true);
    g.sign_slot = {Sign::Pos, Sign::Neg, Sign::Pos, Sign::Neg,
                   Sign::Neg, Sign::Pos, Sign::Neg, Sign::Pos};
    g.dir_along = {1, 0, 1, 0, 1, 0, 1, 0};
    return g;
}

namespace {
std::string piece_canon(const IndividualFlowGraph& g) {
    return canonical_form(g.surf, [&](int slot, bool rev) {
        std::string l = g.sign_slot[slot] == Sign::Pos ? "P" : "N";
        bool d = g.dir_along[slot];
        if (rev) d = !d;
        return l + (d ? ">" : "<");
    });
}
}  // namespace

bool is_1qp(const IndividualFlowGraph& g) {
    if (g.quad_count() != 1) return false;
    static const std::string ref = piece_canon(make_1qp());
    return piece_canon(g) == ref;
}

bool is_2qs(const IndividualFlowGraph& g) {
    if (g.quad_count() != 2) return false;
    static const std::string ref = piece_canon(make_2qs());
    return piece_canon(g) == ref;
}

TotalFlowGraph single_1qp_total() {
    TotalFlowGraph t;
    t.pieces.push_back(make_1qp());
    int nv;
    auto vc = t.pieces[0].surf.vertex_class(&nv);
    auto role = joint_roles(t.pieces[0], vc, nv);
    JointRef in{0, -1}, out{0, -1};
    for (int v = 0; v < nv; ++v) (role[v] == -1 ? in : out).vclass = v;
    t.matching.push_back({in, out});
    return t;
}

// ---------- spine duality ----------

namespace {

// face orbits of a twisted ribbon structure; each geometric face appears as
// two orbits (the two traversal directions), so faces = orbit pairs
int twisted_face_count(const FatGraph& g, const std::vector<uint8_t>& twist) {
    std::vector<int> owner(g.half_count()), pos(g.half_count());
    for (int v = 0; v < g.vertex_count(); ++v)
        for (size_t i = 0; i < g.cyc[v].size(); ++i) { owner[g.cyc[v][i]] = v; pos[g.cyc[v][i]] = static_cast<int>(i); }
    auto step = [&](std::pair<int, int> st) {
        auto [h, s] = st;
        int m = g.mate[h];
        int s2 = twist[h] ? s : 1 - s;
        int v = owner[m], d = g.degree(v);
        if (s2 == 0) return std::pair{g.cyc[v][(pos[m] + 1) % d], 1};
        return std::pair{g.cyc[v][(pos[m] - 1 + d) % d], 0};
    };
    std::map<std::pair<int, int>, int> orbit;
    int norb = 0;
    for (int h = 0; h < g.half_count(); ++h)
        for (int s : {0, 1}) {
            if (orbit.count({h, s})) continue;
            auto cur = std::pair{h, s};
            while (!orbit.count(cur)) { orbit[cur] = norb; cur = step(cur); }
            ++norb;
        }
    // pair each orbit with its reverse
    UnionFind uf(norb);
    for (int h = 0; h < g.half_count(); ++h)
        for (int s : {0, 1}) {
            int rs = twist[h] ? s : 1 - s;
            uf.unite(orbit.at({h, s}), orbit.at({g.mate[h], rs}));
        }
    int k;
    uf.classes(&k);
    return k;
}

}  // namespace

ValidationReport validate_spine(const SpineGraph& x) {
    ValidationReport r;
    auto add = [&](const std::string& tag, bool ok, const std::string& d) {
        r.items.push_back({tag, ok, d});
    };
    try {
        x.graph.validate();
        add("SP-STRUCT", true, "");
    } catch (const Error& e) {
        add("SP-STRUCT", false, e.what());
        return r;
    }
    bool fourval = true;
    for (int v = 0; v < x.graph.vertex_count(); ++v)
        if (x.graph.degree(v) != 4) fourval = false;
    add("SP-4VALENT", fourval, "");
    if (!fourval) return r;

    bool mates_ok = true;
    for (int h = 0; h < x.graph.half_count(); ++h) {
        int m = x.graph.mate[h];
        if (x.edge_sign[h] != x.edge_sign[m]) mates_ok = false;
        if (x.twisted(h) != x.twisted(m)) mates_ok = false;
        if (x.orient_out[h] == x.orient_out[m]) mates_ok = false;
        bool expect_equal = x.twisted(h);
        if ((x.coor_left[h] == x.coor_left[m]) != expect_equal) mates_ok = false;
    }
    add("SP-EDGEDATA", mates_ok, "per-edge data must be coherent across both halves");

    // adjacent edges: opposite coorientations and signs; opposite edges:
    // opposite orientations
    bool local_ok = true;
    for (int v = 0; v < x.graph.vertex_count(); ++v)
        for (int i = 0; i < 4; ++i) {
            int a = x.graph.cyc[v][i], b = x.graph.cyc[v][(i + 1) % 4], c = x.graph.cyc[v][(i + 2) % 4];
            if (x.edge_sign[a] == x.edge_sign[b]) local_ok = false;
            if (x.coor_left[a] == x.coor_left[b]) local_ok = false;
            if (x.orient_out[a] == x.orient_out[c]) local_ok = false;
        }
    add("SP-LOCAL", local_ok, "adjacent edges need opposite coorientations and signs; opposite edges opposite orientations");

    // deformation-retract property: every complementary region is an annulus
    // around one joint, i.e. one ribbon face per joint; here the ribbon
    // structure defines the surface, so we record the face count
    int faces = twisted_face_count(x.graph, x.twist);
    add("SP-RETRACT", faces >= 1, "faces=" + std::to_string(faces));
    return r;
}

IndividualFlowGraph flow_graph_from_spine(const SpineGraph& x) {
    auto rep = validate_spine(x);
    require(rep.ok(), "SP-VALID", rep.first_failure());
    const FatGraph& fg = x.graph;
    std::vector<int> owner(fg.half_count()), pos(fg.half_count());
    for (int v = 0; v < fg.vertex_count(); ++v)
        for (size_t i = 0; i < fg.cyc[v].size(); ++i) { owner[fg.cyc[v][i]] = v; pos[fg.cyc[v][i]] = static_cast<int>(i); }
    IndividualFlowGraph g;
    g.surf = QuadSurface::from_polygons(std::vector<int>(fg.vertex_count(), 4));
    g.sign_slot.assign(fg.half_count(), Sign::Pos);
    g.dir_along.assign(fg.half_count(), 0);
    for (int h = 0; h < fg.half_count(); ++h) {
        int m = fg.mate[h];
        int a = g.surf.slot(owner[h], pos[h]);
        int b = g.surf.slot(owner[m], pos[m]);
        if (h < m) g.surf.pair_slots(a, b, !x.twisted(h));
        g.sign_slot[a] = flip(x.edge_sign[h]);
        g.dir_along[a] = x.coor_left[h];
    }
    auto rep2 = validate_individual(g);
    require(rep2.ok(), "SP-DUAL", "dual flow graph invalid: " + rep2.first_failure());
    return g;
}

SpineGraph spine_from_flow_graph(const IndividualFlowGraph& g) {
    auto rep = validate_individual(g);
    require(rep.ok(), "FG-VALID", rep.first_failure());
    SpineGraph x;
    int np = g.surf.polygon_count();
    x.graph.cyc.resize(np);
    x.graph.mate.assign(g.surf.slot_count(), -1);
    for (int p = 0; p < np; ++p)
        for (int i = 0; i < 4; ++i) x.graph.cyc[p].push_back(g.surf.slot(p, i));
    for (int s = 0; s < g.surf.slot_count(); ++s) x.graph.mate[s] = g.surf.partner[s];
    x.twist.assign(g.surf.slot_count(), 0);
    x.edge_sign.assign(g.surf.slot_count(), Sign::Pos);
    x.coor_left.assign(g.surf.slot_count(), 0);
    x.orient_out.assign(g.surf.slot_count(), 0);
    for (int s = 0; s < g.surf.slot_count(); ++s) {
        x.twist[s] = !g.surf.rev[s];
        x.edge_sign[s] = flip(g.sign_slot[s]);
        x.coor_left[s] = g.dir_along[s];
    }
    // orientations: opposite edges at a vertex anti-aligned, the two halves of
    // an edge anti-aligned; canonical solution per parity class
    ParityUnionFind pu(g.surf.slot_count());
    for (int s = 0; s < g.surf.slot_count(); ++s) pu.relate(s, x.graph.mate[s], 1);
    for (int p = 0; p < np; ++p)
        for (int i = 0; i < 2; ++i)
            pu.relate(g.surf.slot(p, i), g.surf.slot(p, i + 2), 1);
    require(pu.consistent, "SP-ORIENT", "no consistent edge orientations");
    for (int s = 0; s < g.surf.slot_count(); ++s) {
        auto [root, parity] = pu.find(s);
        (void)root;
        x.orient_out[s] = parity == 0;
    }
    return x;
}

}  // namespace vf
