#include "veerflow/moves.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>

namespace vf {

const char* move_kind_name(MoveKind k) {
    switch (k) {
        case MoveKind::Cut: return "cut";
        case MoveKind::Glue: return "glue";
        case MoveKind::CyclicGlue: return "cyclic-glue";
        case MoveKind::Slide: return "slide";
        case MoveKind::Insert1QP: return "insert-1qp";
        case MoveKind::Remove1QP: return "remove-1qp";
        case MoveKind::Bridge: return "bridge";
        case MoveKind::DistantGlue: return "distant-glue";
        case MoveKind::SignSwap: return "sign-swap";
        case MoveKind::TwoQSSplit: return "2qs-split";
    }
    return "?";
}

MoveKind move_kind_from_name(const std::string& s) {
    for (MoveKind k : {MoveKind::Cut, MoveKind::Glue, MoveKind::CyclicGlue, MoveKind::Slide,
                       MoveKind::Insert1QP, MoveKind::Remove1QP, MoveKind::Bridge,
                       MoveKind::DistantGlue, MoveKind::SignSwap, MoveKind::TwoQSSplit})
        if (s == move_kind_name(k)) return k;
    fail("replay-error", "unknown move kind " + s);
}

const char* rule_tag(MoveKind k) {
    switch (k) {
        case MoveKind::Cut: return "R-CUT";
        case MoveKind::Glue: return "R-GLUE";
        case MoveKind::CyclicGlue: return "R-CYCLIC-GLUE";
        case MoveKind::Slide: return "R-TRANSPORT";
        case MoveKind::Insert1QP: return "R-INSERT";
        case MoveKind::Remove1QP: return "R-INSERT";
        case MoveKind::Bridge: return "R-BRIDGE";
        case MoveKind::DistantGlue: return "R-DISTANT-GLUE";
        case MoveKind::SignSwap: return "R-SIGN-SWAP";
        case MoveKind::TwoQSSplit: return "R-2QS-SPLIT";
    }
    return "?";
}

int total_vertex_of_joint(const TotalView& view, JointRef j) {
    return view.vertex_of.at(j);
}

JointRef joint_of_corner(const TotalFlowGraph& t, const TotalView& view, VertexRef v) {
    (void)t;
    return JointRef{v.piece, view.vclass[v.piece][v.corner]};
}

namespace {

// (old piece, old slot) -> (new piece, new slot); corners map the same way
struct SlotMap {
    std::vector<std::vector<std::pair<int, int>>> m;
    std::pair<int, int> operator()(int p, int s) const { return m[p][s]; }
};

// split a (possibly disconnected) piece into connected components;
// slot_map[old slot] = (component, new slot)
std::vector<IndividualFlowGraph> split_components(const IndividualFlowGraph& g,
                                                  std::vector<std::pair<int, int>>& slot_map) {
    int nc;
    auto comp = g.surf.component_of(&nc);
    std::vector<IndividualFlowGraph> out(nc);
    std::vector<std::vector<int>> polys(nc);
    for (int p = 0; p < g.surf.polygon_count(); ++p) polys[comp[p]].push_back(p);
    slot_map.assign(g.surf.slot_count(), {-1, -1});
    for (int k = 0; k < nc; ++k) {
        std::vector<int> sides;
        for (int p : polys[k]) sides.push_back(g.surf.ngon[p]);
        out[k].surf = QuadSurface::from_polygons(sides);
        out[k].sign_slot.assign(out[k].surf.slot_count(), Sign::Pos);
        out[k].dir_along.assign(out[k].surf.slot_count(), 0);
        for (size_t pi = 0; pi < polys[k].size(); ++pi) {
            int p = polys[k][pi];
            for (int i = 0; i < g.surf.ngon[p]; ++i) {
                int olds = g.surf.slot(p, i);
                int news = out[k].surf.slot(static_cast<int>(pi), i);
                slot_map[olds] = {k, news};
                out[k].sign_slot[news] = g.sign_slot[olds];
                out[k].dir_along[news] = g.dir_along[olds];
            }
        }
    }
    for (int s = 0; s < g.surf.slot_count(); ++s) {
        int b = g.surf.partner[s];
        if (b < s) continue;
        auto [ka, na] = slot_map[s];
        auto [kb, nb] = slot_map[b];
        require(ka == kb, "FG-STRUCT", "pairing across components");
        out[ka].surf.pair_slots(na, nb, g.surf.rev[s]);
    }
    return out;
}

struct CornerRef {
    int piece;
    int corner;
};

std::vector<std::pair<CornerRef, CornerRef>> snapshot_matching(
    const TotalFlowGraph& t, const TotalView& view,
    const std::map<std::pair<int, int>, int>* rep_override = nullptr) {
    std::map<std::pair<int, int>, int> rep;
    for (size_t p = 0; p < t.pieces.size(); ++p) {
        const auto& vc = view.vclass[p];
        for (int c = 0; c < t.pieces[p].surf.slot_count(); ++c)
            rep.try_emplace({static_cast<int>(p), vc[c]}, c);
    }
    if (rep_override)
        for (auto& [k, v] : *rep_override) rep[k] = v;
    std::vector<std::pair<CornerRef, CornerRef>> out;
    for (auto& [a, b] : t.matching)
        out.push_back({{a.piece, rep.at({a.piece, a.vclass})},
                       {b.piece, rep.at({b.piece, b.vclass})}});
    return out;
}

std::vector<std::pair<JointRef, JointRef>> resolve_matching(
    const std::vector<IndividualFlowGraph>& pieces,
    const std::vector<std::pair<CornerRef, CornerRef>>& snap, const SlotMap& sm) {
    std::vector<std::vector<int>> vc(pieces.size());
    for (size_t p = 0; p < pieces.size(); ++p) vc[p] = pieces[p].surf.vertex_class();
    std::vector<std::pair<JointRef, JointRef>> out;
    for (auto& [a, b] : snap) {
        auto [pa, ca] = sm(a.piece, a.corner);
        auto [pb, cb] = sm(b.piece, b.corner);
        out.push_back({JointRef{pa, vc[pa][ca]}, JointRef{pb, vc[pb][cb]}});
    }
    return out;
}

void check_result(const TotalFlowGraph& t, const char* what) {
    auto rep = validate_total(t);
    require(rep.ok(), "move-invariant-error",
            std::string(what) + " produced an invalid graph: " + rep.first_failure());
}

// ---------------- cut ----------------

TotalFlowGraph cut_move_impl(const TotalFlowGraph& t, int piece, const EdgeCycle& cyc,
                             int minus_side_slot, SlotMap* out_map) {
    require(piece >= 0 && piece < static_cast<int>(t.pieces.size()), "cycle-error", "bad piece");
    const IndividualFlowGraph& g = t.pieces[piece];
    check_embedded_cycle(g.surf, cyc);
    Sign sgn = g.sign_slot[cyc[0].slot];
    for (auto& st : cyc)
        require(g.sign_slot[st.slot] == sgn, "sign-error", "cutting cycle mixes signs");
    require(is_strongly_connected(t), "precondition-error", "cut needs a strongly connected graph");
    require(is_two_sided(g.surf, cyc), "coorientation-error", "cutting cycle is one-sided");
    size_t k = cyc.size();
    require(k % 2 == 0, "cycle-error", "cutting cycle has odd length");

    std::vector<int> minus(k), plus(k);
    {
        int side = minus_side_slot;
        require(side == cyc[0].slot || side == g.surf.partner[cyc[0].slot],
                "cycle-error", "side slot does not belong to the first cycle edge");
        for (size_t i = 0; i < k; ++i) {
            minus[i] = side;
            plus[i] = g.surf.partner[side];
            side = propagate_side(g.surf, cyc, i, side);
        }
    }

    int nv;
    auto vc = g.surf.vertex_class(&nv);
    auto role = joint_roles(g, vc, nv);
    std::vector<int> hinge_vc(k), hinge_role(k);
    for (size_t i = 0; i < k; ++i) {
        hinge_vc[i] = vc[corner_at(g.surf, exit_end(cyc[i]))];
        hinge_role[i] = role[hinge_vc[i]];
    }
    for (size_t i = 0; i < k; ++i)
        require(hinge_role[i] != hinge_role[(i + 1) % k], "cycle-error",
                "cycle hinges do not alternate joint roles");

    auto exit_on = [&](size_t i, int slot) {
        EdgeEnd e = exit_end(cyc[i]);
        if (slot != cyc[i].slot) e = cross_end(g.surf, e);
        return e;
    };
    auto entry_on = [&](size_t i, int slot) {
        EdgeEnd e = entry_end(cyc[i]);
        if (slot != cyc[i].slot) e = cross_end(g.surf, e);
        return e;
    };

    // representative corners: inward hinge keeps its partner on the minus
    // copy, outward hinge on the plus copy; the merged copies become the
    // two new joints
    std::map<std::pair<int, int>, int> rep_override;
    int repUplus = -1, repWminus = -1;
    for (size_t i = 0; i < k; ++i) {
        int cm = corner_at(g.surf, exit_on(i, minus[i]));
        int cp = corner_at(g.surf, exit_on(i, plus[i]));
        if (hinge_role[i] == -1) {
            rep_override[{piece, hinge_vc[i]}] = cm;
            repUplus = cp;
        } else {
            rep_override[{piece, hinge_vc[i]}] = cp;
            repWminus = cm;
        }
    }
    require(repUplus >= 0 && repWminus >= 0, "cycle-error", "cycle misses a joint role");

    TotalView view = make_view(t);
    auto snap = snapshot_matching(t, view, &rep_override);

    IndividualFlowGraph ng = g;
    for (size_t i = 0; i < k; ++i) ng.surf.unpair(cyc[i].slot);
    for (size_t i = 0; i < k; ++i) {
        size_t j = (i + 1) % k;
        int a, b;
        if (hinge_role[i] == -1) { a = minus[i]; b = minus[j]; }
        else { a = plus[i]; b = plus[j]; }
        EdgeEnd ea = exit_on(i, a), eb = entry_on(j, b);
        ng.surf.pair_slots(a, b, ea.end != eb.end);
    }

    std::vector<std::pair<int, int>> comp_slot_map;
    auto comps = split_components(ng, comp_slot_map);
    TotalFlowGraph out;
    SlotMap sm;
    sm.m.resize(t.pieces.size());
    for (int p = 0; p < static_cast<int>(t.pieces.size()); ++p) {
        if (p == piece) continue;
        int np = static_cast<int>(out.pieces.size());
        out.pieces.push_back(t.pieces[p]);
        sm.m[p].resize(t.pieces[p].surf.slot_count());
        for (int s = 0; s < t.pieces[p].surf.slot_count(); ++s) sm.m[p][s] = {np, s};
    }
    int comp_base = static_cast<int>(out.pieces.size());
    for (auto& cpiece : comps) out.pieces.push_back(cpiece);
    sm.m[piece].resize(g.surf.slot_count());
    for (int s = 0; s < g.surf.slot_count(); ++s) {
        auto [cidx, ns] = comp_slot_map[s];
        sm.m[piece][s] = {comp_base + cidx, ns};
    }

    auto matching = resolve_matching(out.pieces, snap, sm);
    {
        std::vector<std::vector<int>> vcs(out.pieces.size());
        for (size_t p = 0; p < out.pieces.size(); ++p) vcs[p] = out.pieces[p].surf.vertex_class();
        auto [pu, cu] = sm(piece, repUplus);
        auto [pw, cw] = sm(piece, repWminus);
        matching.push_back({JointRef{pu, vcs[pu][cu]}, JointRef{pw, vcs[pw][cw]}});
    }
    out.matching = std::move(matching);
    check_result(out, "cut");
    require(is_strongly_connected(out), "move-invariant-error",
            "cut must preserve strong connectedness");
    if (out_map) *out_map = std::move(sm);
    return out;
}

// ---------------- glue ----------------

struct GlueDetail {
    GlueOutcome outcome;
    SlotMap sm;
};

GlueDetail glue_move_impl(const TotalFlowGraph& t, EdgeRef e1, EdgeRef e2, int variant) {
    require(e1.piece >= 0 && e1.piece < static_cast<int>(t.pieces.size()) &&
                e2.piece >= 0 && e2.piece < static_cast<int>(t.pieces.size()),
            "move-error", "bad piece reference");
    const IndividualFlowGraph& g1 = t.pieces[e1.piece];
    const IndividualFlowGraph& g2 = t.pieces[e2.piece];
    require(g1.sign_slot[e1.slot] == g2.sign_slot[e2.slot], "move-error",
            "glued edges must share a sign");
    bool same_edge = e1.piece == e2.piece &&
                     (e1.slot == e2.slot || g1.surf.partner[e1.slot] == e2.slot);
    require(!same_edge, "move-error", "cannot glue an edge to itself");

    TotalView view = make_view(t);
    auto vtx = [&](int p, int corner) {
        return view.vertex_of.at({p, view.vclass[p][corner]});
    };
    int head1 = vtx(e1.piece, g1.head_corner(e1.slot));
    int tail1 = vtx(e1.piece, g1.tail_corner(e1.slot));
    int head2 = vtx(e2.piece, g2.head_corner(e2.slot));
    int tail2 = vtx(e2.piece, g2.tail_corner(e2.slot));
    require(head1 == tail2, "move-error", "glue needs head(e1) = tail(e2)");
    require(head1 != head2, "move-error", "glue needs head(e1) != head(e2)");
    require(tail1 != tail2, "move-error", "glue needs tail(e1) != tail(e2)");

    TotalFlowGraph out;
    SlotMap sm;
    sm.m.resize(t.pieces.size());
    IndividualFlowGraph gm;
    if (e1.piece == e2.piece) {
        gm = g1;
    } else {
        std::vector<int> sides = g1.surf.ngon;
        for (int n : g2.surf.ngon) sides.push_back(n);
        gm.surf = QuadSurface::from_polygons(sides);
        gm.sign_slot.resize(gm.surf.slot_count());
        gm.dir_along.resize(gm.surf.slot_count());
        int off = g1.surf.slot_count();
        for (int s = 0; s < g1.surf.slot_count(); ++s) {
            gm.sign_slot[s] = g1.sign_slot[s];
            gm.dir_along[s] = g1.dir_along[s];
            if (g1.surf.partner[s] > s) gm.surf.pair_slots(s, g1.surf.partner[s], g1.surf.rev[s]);
        }
        for (int s = 0; s < g2.surf.slot_count(); ++s) {
            gm.sign_slot[off + s] = g2.sign_slot[s];
            gm.dir_along[off + s] = g2.dir_along[s];
            if (g2.surf.partner[s] > s)
                gm.surf.pair_slots(off + s, off + g2.surf.partner[s], g2.surf.rev[s]);
        }
    }
    std::vector<int> rest;
    for (int p = 0; p < static_cast<int>(t.pieces.size()); ++p)
        if (p != e1.piece && p != e2.piece) rest.push_back(p);
    out.pieces.push_back(std::move(gm));
    for (int p : rest) out.pieces.push_back(t.pieces[p]);
    {
        int off = e1.piece == e2.piece ? 0 : g1.surf.slot_count();
        sm.m[e1.piece].resize(g1.surf.slot_count());
        for (int s = 0; s < g1.surf.slot_count(); ++s) sm.m[e1.piece][s] = {0, s};
        if (e1.piece != e2.piece) {
            sm.m[e2.piece].resize(g2.surf.slot_count());
            for (int s = 0; s < g2.surf.slot_count(); ++s) sm.m[e2.piece][s] = {0, off + s};
        }
        for (size_t ri = 0; ri < rest.size(); ++ri) {
            int p = rest[ri];
            sm.m[p].resize(t.pieces[p].surf.slot_count());
            for (int s = 0; s < t.pieces[p].surf.slot_count(); ++s)
                sm.m[p][s] = {static_cast<int>(ri) + 1, s};
        }
    }
    IndividualFlowGraph& G = out.pieces[0];
    int a1 = sm(e1.piece, e1.slot).second;
    int b1 = sm(e1.piece, g1.surf.partner[e1.slot]).second;
    int a2 = sm(e2.piece, e2.slot).second;
    int b2 = sm(e2.piece, g2.surf.partner[e2.slot]).second;
    G.surf.unpair(a1);
    G.surf.unpair(a2);
    auto pair_dir = [&](int x, int y) {
        G.surf.pair_slots(x, y, G.dir_along[x] != G.dir_along[y]);
    };
    int c1b, c2b;
    if (variant == 0) { c1b = a2; c2b = b2; }
    else { c1b = b2; c2b = a2; }
    pair_dir(a1, c1b);
    pair_dir(b1, c2b);

    auto snap = snapshot_matching(t, view);
    std::vector<std::pair<CornerRef, CornerRef>> kept;
    for (size_t i = 0; i < snap.size(); ++i) {
        if (view.vertex_of.at(t.matching[i].first) == head1) continue;
        kept.push_back(snap[i]);
    }
    out.matching = resolve_matching(out.pieces, kept, sm);
    check_result(out, "glue");

    GlueDetail d;
    d.outcome.strongly_connected = is_strongly_connected(out);
    d.outcome.graph = std::move(out);
    d.outcome.merged_piece = 0;
    d.outcome.copy1_e1slot = a1;
    d.outcome.copy1_e2slot = c1b;
    d.outcome.copy2_e1slot = b1;
    d.outcome.copy2_e2slot = c2b;
    d.sm = std::move(sm);
    return d;
}

// ---------------- directed cycle witness search ----------------

// Finds an embedded directed cycle through arc1 then arc2 (immediately after
// when `adjacent`); optionally restricted to one sign. Returns arc indices
// starting at arc1, or empty.
std::vector<int> find_cycle_through(const TotalView& view, int arc1, int arc2,
                                    bool adjacent, std::optional<Sign> sign_filter) {
    int n = view.nvert;
    std::vector<std::vector<int>> out_arcs(n);
    for (size_t i = 0; i < view.arcs.size(); ++i) {
        if (static_cast<int>(i) == arc1 || static_cast<int>(i) == arc2) continue;
        if (sign_filter && view.arcs[i].sign != *sign_filter) continue;
        out_arcs[view.arcs[i].from].push_back(static_cast<int>(i));
    }
    const auto& A = view.arcs;
    int t1 = A[arc1].from, h1 = A[arc1].to, t2 = A[arc2].from, h2 = A[arc2].to;
    // embeddedness: the backbone vertices must be distinct except for the
    // legal coincidences h1 == t2 and h2 == t1
    if (t1 == h1 || t2 == h2 || t1 == t2 || h1 == h2) return {};
    if (adjacent && h1 != t2) return {};

    std::vector<char> used(n, 0);
    used[t1] = used[h1] = used[t2] = used[h2] = 1;
    std::vector<int> p1, p2;

    std::function<bool(int)> dfs_p2 = [&](int v) -> bool {
        for (int ai : out_arcs[v]) {
            int w = A[ai].to;
            if (w == t1) { p2.push_back(ai); return true; }
            if (used[w]) continue;
            used[w] = 1;
            p2.push_back(ai);
            if (dfs_p2(w)) return true;
            p2.pop_back();
            used[w] = 0;
        }
        return false;
    };
    auto try_p2 = [&]() -> bool {
        if (h2 == t1) return true;
        return dfs_p2(h2);
    };
    std::function<bool(int)> dfs_p1 = [&](int v) -> bool {
        for (int ai : out_arcs[v]) {
            int w = A[ai].to;
            if (w == t2) {
                p1.push_back(ai);
                if (try_p2()) return true;
                p1.pop_back();
                continue;
            }
            if (used[w]) continue;
            used[w] = 1;
            p1.push_back(ai);
            if (dfs_p1(w)) return true;
            p1.pop_back();
            used[w] = 0;
        }
        return false;
    };
    bool ok = (h1 == t2) ? try_p2() : (!adjacent && dfs_p1(h1));
    if (!ok) return {};
    std::vector<int> cyc{arc1};
    for (int ai : p1) cyc.push_back(ai);
    cyc.push_back(arc2);
    for (int ai : p2) cyc.push_back(ai);
    return cyc;
}

int arc_index_of_edge(const TotalView& view, const TotalFlowGraph& t, EdgeRef e) {
    auto ec = t.pieces[e.piece].surf.edge_class();
    for (size_t i = 0; i < view.arcs.size(); ++i)
        if (view.arcs[i].piece == e.piece && ec[view.arcs[i].slot] == ec[e.slot])
            return static_cast<int>(i);
    fail("move-error", "edge not found");
}

// ---------------- slide with tracking ----------------

TotalFlowGraph slide_tracked(const TotalFlowGraph& t, EdgeRef e1, EdgeRef e2,
                             std::vector<Move>* log, EdgeRef* out_e1, EdgeRef* out_e2) {
    require(is_strongly_connected(t), "precondition-error",
            "transport needs a strongly connected graph");
    Sign sgn = t.pieces[e1.piece].sign_slot[e1.slot];
    require(sgn == t.pieces[e2.piece].sign_slot[e2.slot], "move-error",
            "transported edges must share a sign");
    TotalView view = make_view(t);
    int a1 = arc_index_of_edge(view, t, e1);
    int a2 = arc_index_of_edge(view, t, e2);
    auto cyc_arcs = find_cycle_through(view, a1, a2, false, sgn);
    require(!cyc_arcs.empty(), "precondition-error",
            "edges are not on a common monochromatic embedded directed cycle");

    std::vector<EdgeRef> cyc_edges;
    size_t pos2 = 0;
    for (size_t i = 0; i < cyc_arcs.size(); ++i) {
        cyc_edges.push_back({view.arcs[cyc_arcs[i]].piece, view.arcs[cyc_arcs[i]].slot});
        if (cyc_arcs[i] == a2) pos2 = i;
    }
    TotalFlowGraph cur = t;
    while (pos2 > 1) {
        EdgeRef cur_e1 = cyc_edges[0];
        EdgeRef f = cyc_edges[1];
        if (log) log->push_back(mk_glue(cur_e1, f, 0));
        GlueDetail gd = glue_move_impl(cur, cur_e1, f, 0);
        const TotalFlowGraph& mid = gd.outcome.graph;
        const IndividualFlowGraph& gm = mid.pieces[0];
        int s1 = gd.outcome.copy1_e1slot;
        int s2 = gd.outcome.copy2_e1slot;
        EdgeCycle cyc;
        cyc.push_back({s1, gm.dir_along[s1] != 0});
        cyc.push_back({s2, gm.dir_along[s2] == 0});
        // cutting with the minus side on the e1 copies recovers the input;
        // the opposite coorientation slides e1 past f
        int slide_side = gd.outcome.copy1_e2slot;
        SlotMap cut_sm;
        TotalFlowGraph nxt = cut_move_impl(mid, 0, cyc, slide_side, &cut_sm);
        if (log) log->push_back(mk_cut(0, cyc, slide_side));
        for (auto& er : cyc_edges) {
            auto [p1, sl1] = gd.sm(er.piece, er.slot);
            auto [p2, sl2] = cut_sm(p1, sl1);
            er = {p2, sl2};
        }
        cur = std::move(nxt);
        // e1 slid past f: f leaves the remaining transport route
        cyc_edges.erase(cyc_edges.begin() + 1);
        --pos2;
    }
    require(is_strongly_connected(cur), "move-invariant-error",
            "transport must preserve strong connectedness");
    if (out_e1) *out_e1 = cyc_edges[0];
    if (out_e2) *out_e2 = cyc_edges[pos2];
    return cur;
}

}  // namespace

TotalFlowGraph cut_move(const TotalFlowGraph& t, int piece, const EdgeCycle& cyc,
                        int minus_side_slot) {
    return cut_move_impl(t, piece, cyc, minus_side_slot, nullptr);
}

GlueOutcome glue_move(const TotalFlowGraph& t, EdgeRef e1, EdgeRef e2, int variant) {
    return glue_move_impl(t, e1, e2, variant).outcome;
}

TotalFlowGraph cyclic_glue_move(const TotalFlowGraph& t, EdgeRef e1, EdgeRef e2, int variant) {
    require(is_strongly_connected(t), "precondition-error",
            "cyclic glue needs a strongly connected graph");
    TotalView view = make_view(t);
    int a1 = arc_index_of_edge(view, t, e1);
    int a2 = arc_index_of_edge(view, t, e2);
    auto cyc = find_cycle_through(view, a1, a2, true, std::nullopt);
    require(!cyc.empty(), "precondition-error",
            "no embedded directed cycle through the glued pair");
    auto out = glue_move_impl(t, e1, e2, variant);
    require(out.outcome.strongly_connected, "move-invariant-error",
            "cyclic glue result must be strongly connected");
    return out.outcome.graph;
}

TotalFlowGraph slide_move(const TotalFlowGraph& t, EdgeRef e1, EdgeRef e2,
                          std::vector<Move>* log) {
    return slide_tracked(t, e1, e2, log, nullptr, nullptr);
}

TotalFlowGraph insert_1qp_move(const TotalFlowGraph& t, VertexRef v) {
    require(is_strongly_connected(t), "precondition-error",
            "insertion needs a strongly connected graph");
    TotalView view = make_view(t);
    JointRef j = joint_of_corner(t, view, v);
    int tv = view.vertex_of.at(j);
    TotalFlowGraph out = t;
    out.pieces.push_back(make_1qp());
    int np = static_cast<int>(out.pieces.size()) - 1;
    int nv1;
    auto vc1 = out.pieces[np].surf.vertex_class(&nv1);
    auto role1 = joint_roles(out.pieces[np], vc1, nv1);
    JointRef qin{np, -1}, qout{np, -1};
    for (int x = 0; x < nv1; ++x) (role1[x] == -1 ? qin : qout).vclass = x;
    std::vector<std::pair<JointRef, JointRef>> matching;
    for (auto& pr : t.matching) {
        if (view.vertex_of.at(pr.first) == tv) {
            matching.push_back({qin, pr.second});
            matching.push_back({pr.first, qout});
        } else {
            matching.push_back(pr);
        }
    }
    out.matching = std::move(matching);
    check_result(out, "insert-1qp");
    require(is_strongly_connected(out), "move-invariant-error",
            "insertion must preserve strong connectedness");
    return out;
}

TotalFlowGraph remove_1qp_move(const TotalFlowGraph& t, int piece) {
    require(piece >= 0 && piece < static_cast<int>(t.pieces.size()), "move-error", "bad piece");
    require(is_1qp(t.pieces[piece]), "move-error", "piece is not a (1QP)");
    require(t.pieces.size() >= 2, "move-error", "cannot remove the last piece");
    JointRef far_out{-1, -1}, far_in{-1, -1};
    for (auto& [in_j, out_j] : t.matching) {
        if (in_j.piece == piece) {
            require(out_j.piece != piece, "move-error", "self-matched (1QP) cannot be removed");
            far_out = out_j;
        }
        if (out_j.piece == piece) {
            require(in_j.piece != piece, "move-error", "self-matched (1QP) cannot be removed");
            far_in = in_j;
        }
    }
    TotalFlowGraph out;
    std::vector<int> newidx(t.pieces.size(), -1);
    for (int p = 0; p < static_cast<int>(t.pieces.size()); ++p) {
        if (p == piece) continue;
        newidx[p] = static_cast<int>(out.pieces.size());
        out.pieces.push_back(t.pieces[p]);
    }
    auto remap = [&](JointRef j) { return JointRef{newidx[j.piece], j.vclass}; };
    for (auto& [in_j, out_j] : t.matching) {
        if (in_j.piece == piece || out_j.piece == piece) continue;
        out.matching.push_back({remap(in_j), remap(out_j)});
    }
    out.matching.push_back({remap(far_in), remap(far_out)});
    check_result(out, "remove-1qp");
    require(is_strongly_connected(out), "move-error",
            "removal must leave a strongly connected graph");
    return out;
}

TotalFlowGraph bridge_move(const TotalFlowGraph& t, VertexRef v, VertexRef w, Sign splice_sign,
                           std::vector<Move>* log) {
    (void)log;
    require(is_strongly_connected(t), "precondition-error",
            "bridge needs a strongly connected graph");
    TotalView view = make_view(t);
    JointRef jv = joint_of_corner(t, view, v);
    JointRef jw = joint_of_corner(t, view, w);
    int tv = view.vertex_of.at(jv), tw = view.vertex_of.at(jw);
    require(tv != tw, "move-error", "bridge endpoints must be distinct vertices");

    TotalFlowGraph out = t;
    out.pieces.push_back(make_2qs());
    int np = static_cast<int>(out.pieces.size()) - 1;
    auto vc2 = out.pieces[np].surf.vertex_class();
    // equator vertices in construction order: A=corner0 (in), B=corner1 (out),
    // C=corner2 (in), D=corner3 (out); positive edges A->B and C->D
    JointRef A{np, vc2[0]}, B{np, vc2[1]}, C{np, vc2[2]}, D{np, vc2[3]};

    JointRef v_in{-1, -1}, v_out{-1, -1}, w_in{-1, -1}, w_out{-1, -1};
    std::vector<std::pair<JointRef, JointRef>> matching;
    for (auto& pr : t.matching) {
        int x = view.vertex_of.at(pr.first);
        if (x == tv) { v_in = pr.first; v_out = pr.second; continue; }
        if (x == tw) { w_in = pr.first; w_out = pr.second; continue; }
        matching.push_back(pr);
    }
    if (splice_sign == Sign::Pos) {
        matching.push_back({A, v_out});
        matching.push_back({v_in, B});
        matching.push_back({C, w_out});
        matching.push_back({w_in, D});
    } else {
        matching.push_back({A, v_out});
        matching.push_back({v_in, D});
        matching.push_back({C, w_out});
        matching.push_back({w_in, B});
    }
    out.matching = std::move(matching);
    check_result(out, "bridge");
    require(is_strongly_connected(out), "move-invariant-error",
            "bridge output must be strongly connected");
    return out;
}

TotalFlowGraph unbridge_move(const TotalFlowGraph& t, int piece) {
    require(piece >= 0 && piece < static_cast<int>(t.pieces.size()), "move-error", "bad piece");
    require(is_2qs(t.pieces[piece]), "move-error", "unbridge expects a (2QS)");
    require(t.pieces.size() >= 2, "move-error", "cannot unbridge the last piece");
    // positive edges of every (2QS) decompose into directed cycles through
    // the matching; deleting the piece's two positive arcs shortcuts those
    // cycles past it
    TotalView view = make_view(t);
    std::map<int, size_t> out_pos;  // total vertex -> its outgoing positive arc
    for (size_t i = 0; i < view.arcs.size(); ++i)
        if (view.arcs[i].sign == Sign::Pos) {
            require(!out_pos.count(view.arcs[i].from), "move-error",
                    "unbridge expects an all-(2QS) graph");
            out_pos[view.arcs[i].from] = i;
        }
    auto tail_joint = [&](size_t arc) {
        const auto& a = view.arcs[arc];
        const IndividualFlowGraph& g = t.pieces[a.piece];
        return JointRef{a.piece, view.vclass[a.piece][g.tail_corner(a.slot)]};
    };
    auto head_joint = [&](size_t arc) {
        const auto& a = view.arcs[arc];
        const IndividualFlowGraph& g = t.pieces[a.piece];
        return JointRef{a.piece, view.vclass[a.piece][g.head_corner(a.slot)]};
    };
    // walk each positive cycle once; collect replacement links skipping the
    // removed piece's arcs
    std::vector<std::pair<JointRef, JointRef>> new_links;  // (inward, outward)
    std::set<size_t> seen;
    for (auto& [v0, a0] : out_pos) {
        (void)v0;
        if (seen.count(a0)) continue;
        std::vector<size_t> cyc;
        size_t a = a0;
        while (!seen.count(a)) {
            seen.insert(a);
            cyc.push_back(a);
            a = out_pos.at(view.arcs[a].to);
        }
        std::vector<size_t> kept;
        for (size_t x : cyc)
            if (view.arcs[x].piece != piece) kept.push_back(x);
        if (kept.empty() || kept.size() == cyc.size()) continue;  // untouched or vanished
        for (size_t i = 0; i < kept.size(); ++i) {
            size_t u = kept[i], w = kept[(i + 1) % kept.size()];
            new_links.push_back({tail_joint(w), head_joint(u)});
        }
    }
    TotalFlowGraph out;
    std::vector<int> newidx(t.pieces.size(), -1);
    for (int p = 0; p < static_cast<int>(t.pieces.size()); ++p) {
        if (p == piece) continue;
        newidx[p] = static_cast<int>(out.pieces.size());
        out.pieces.push_back(t.pieces[p]);
    }
    auto remap = [&](JointRef j) { return JointRef{newidx[j.piece], j.vclass}; };
    std::set<std::pair<JointRef, JointRef>> added;
    for (auto& [a, b] : t.matching) {
        if (a.piece == piece || b.piece == piece) continue;
        if (added.insert({a, b}).second) out.matching.push_back({remap(a), remap(b)});
    }
    for (auto& [a, b] : new_links) {
        if (a.piece == piece || b.piece == piece) continue;
        if (added.insert({a, b}).second) out.matching.push_back({remap(a), remap(b)});
    }
    check_result(out, "unbridge");
    require(is_strongly_connected(out), "move-error",
            "unbridge must leave a strongly connected graph");
    return out;
}

TotalFlowGraph sign_swap_move(const TotalFlowGraph& t, EdgeRef e, std::vector<Move>* log) {
    require(is_strongly_connected(t), "precondition-error",
            "sign swap needs a strongly connected graph");
    const IndividualFlowGraph& g = t.pieces[e.piece];
    Sign sgn = g.sign_slot[e.slot];
    VertexRef head{e.piece, g.head_corner(e.slot)};
    TotalFlowGraph mid = insert_1qp_move(t, head);
    if (log) log->push_back(mk_insert(head));
    int np = static_cast<int>(mid.pieces.size()) - 1;
    int qslot = sgn == Sign::Pos ? 0 : 1;
    EdgeRef e2{np, qslot};
    if (log) log->push_back(mk_glue(e, e2, 0));
    auto gd = glue_move_impl(mid, e, e2, 0);
    require(gd.outcome.strongly_connected, "move-invariant-error",
            "sign swap must preserve strong connectedness");
    return gd.outcome.graph;
}

TotalFlowGraph distant_glue_move(const TotalFlowGraph& t, EdgeRef e1, EdgeRef e2, int variant,
                                 std::vector<Move>* log) {
    require(is_strongly_connected(t), "precondition-error",
            "distant glue needs a strongly connected graph");
    const IndividualFlowGraph& g1 = t.pieces[e1.piece];
    const IndividualFlowGraph& g2 = t.pieces[e2.piece];
    Sign sgn = g1.sign_slot[e1.slot];
    require(sgn == g2.sign_slot[e2.slot], "move-error", "edges must share a sign");
    auto vtx_of = [](const TotalFlowGraph& g, EdgeRef er, bool head_end) {
        TotalView view = make_view(g);
        const IndividualFlowGraph& gg = g.pieces[er.piece];
        int corner = head_end ? gg.head_corner(er.slot) : gg.tail_corner(er.slot);
        return view.vertex_of.at({er.piece, view.vclass[er.piece][corner]});
    };
    require(vtx_of(t, e1, true) != vtx_of(t, e2, true), "move-error",
            "edges share a forward endpoint");
    require(vtx_of(t, e1, false) != vtx_of(t, e2, false), "move-error",
            "edges share a backward endpoint");

    TotalFlowGraph cur = t;
    EdgeRef te1 = e1, te2 = e2;
    if (vtx_of(cur, te1, true) != vtx_of(cur, te2, false)) {
        VertexRef hv{te1.piece, cur.pieces[te1.piece].head_corner(te1.slot)};
        VertexRef tw{te2.piece, cur.pieces[te2.piece].tail_corner(te2.slot)};
        if (log) log->push_back(mk_bridge(hv, tw, flip(sgn)));
        cur = bridge_move(cur, hv, tw, flip(sgn), nullptr);
    }
    if (vtx_of(cur, te2, true) != vtx_of(cur, te1, false)) {
        VertexRef hv{te2.piece, cur.pieces[te2.piece].head_corner(te2.slot)};
        VertexRef tw{te1.piece, cur.pieces[te1.piece].tail_corner(te1.slot)};
        if (log) log->push_back(mk_bridge(hv, tw, flip(sgn)));
        cur = bridge_move(cur, hv, tw, flip(sgn), nullptr);
    }
    if (vtx_of(cur, te1, true) != vtx_of(cur, te2, false)) {
        if (log) log->push_back(mk_slide(te1, te2));
        cur = slide_tracked(cur, te1, te2, nullptr, &te1, &te2);
    }
    if (log) log->push_back(mk_glue(te1, te2, variant));
    auto gd = glue_move_impl(cur, te1, te2, variant);
    require(gd.outcome.strongly_connected, "move-invariant-error",
            "distant glue result must be strongly connected");
    return gd.outcome.graph;
}

TotalFlowGraph two_qs_split_move(const TotalFlowGraph& t, std::vector<Move>* log) {
    require(t.pieces.size() == 1 && is_2qs(t.pieces[0]), "move-error",
            "2qs-split expects a single self-matched (2QS)");
    TotalView view = make_view(t);
    for (size_t i = 0; i < view.arcs.size(); ++i)
        for (size_t j = 0; j < view.arcs.size(); ++j) {
            if (i == j) continue;
            const auto& x = view.arcs[i];
            const auto& y = view.arcs[j];
            if (x.sign != y.sign) continue;
            if (x.to != y.from || x.to == y.to || x.from == y.from) continue;
            for (int variant : {0, 1}) {
                try {
                    auto gd = glue_move_impl(t, {x.piece, x.slot}, {y.piece, y.slot}, variant);
                    const TotalFlowGraph& mid = gd.outcome.graph;
                    if (!gd.outcome.strongly_connected) continue;
                    const IndividualFlowGraph& gm = mid.pieces[0];
                    std::vector<int> other;
                    for (int s = 0; s < gm.surf.slot_count(); ++s) {
                        int b = gm.surf.partner[s];
                        if (b < s) continue;
                        if (gm.sign_slot[s] != x.sign) other.push_back(s);
                    }
                    if (other.size() != 2) continue;
                    EdgeCycle cyc;
                    cyc.push_back({other[0], gm.dir_along[other[0]] != 0});
                    cyc.push_back({other[1], gm.dir_along[other[1]] == 0});
                    if (!is_two_sided(gm.surf, cyc)) continue;
                    TotalFlowGraph out = cut_move(mid, 0, cyc, other[0]);
                    if (out.pieces.size() != 2 || !is_1qp(out.pieces[0]) || !is_1qp(out.pieces[1]))
                        continue;
                    if (log) {
                        log->push_back(mk_glue({x.piece, x.slot}, {y.piece, y.slot}, variant));
                        log->push_back(mk_cut(0, cyc, other[0]));
                    }
                    return out;
                } catch (const Error&) {
                    continue;
                }
            }
        }
    fail("move-error", "no splitting route found on this (2QS)");
}

// ---------------- records / replay ----------------

Move mk_cut(int piece, const EdgeCycle& cyc, int minus_side_slot) {
    Move m{MoveKind::Cut, {}, rule_tag(MoveKind::Cut)};
    m.params.push_back(piece);
    m.params.push_back(static_cast<long long>(cyc.size()));
    for (auto& st : cyc) {
        m.params.push_back(st.slot);
        m.params.push_back(st.along ? 1 : 0);
    }
    m.params.push_back(minus_side_slot);
    return m;
}
Move mk_glue(EdgeRef e1, EdgeRef e2, int variant) {
    return {MoveKind::Glue, {e1.piece, e1.slot, e2.piece, e2.slot, variant},
            rule_tag(MoveKind::Glue)};
}
Move mk_cyclic_glue(EdgeRef e1, EdgeRef e2, int variant) {
    return {MoveKind::CyclicGlue, {e1.piece, e1.slot, e2.piece, e2.slot, variant},
            rule_tag(MoveKind::CyclicGlue)};
}
Move mk_slide(EdgeRef e1, EdgeRef e2) {
    return {MoveKind::Slide, {e1.piece, e1.slot, e2.piece, e2.slot}, rule_tag(MoveKind::Slide)};
}
Move mk_insert(VertexRef v) {
    return {MoveKind::Insert1QP, {v.piece, v.corner}, rule_tag(MoveKind::Insert1QP)};
}
Move mk_remove(int piece) {
    return {MoveKind::Remove1QP, {piece}, rule_tag(MoveKind::Remove1QP)};
}
Move mk_bridge(VertexRef v, VertexRef w, Sign splice_sign) {
    return {MoveKind::Bridge,
            {0, v.piece, v.corner, w.piece, w.corner, splice_sign == Sign::Pos ? 0 : 1},
            rule_tag(MoveKind::Bridge)};
}
Move mk_unbridge(int piece) {
    return {MoveKind::Bridge, {1, piece}, rule_tag(MoveKind::Bridge)};
}
Move mk_sign_swap(EdgeRef e) {
    return {MoveKind::SignSwap, {e.piece, e.slot}, rule_tag(MoveKind::SignSwap)};
}
Move mk_distant_glue(EdgeRef e1, EdgeRef e2, int variant) {
    return {MoveKind::DistantGlue, {e1.piece, e1.slot, e2.piece, e2.slot, variant},
            rule_tag(MoveKind::DistantGlue)};
}
Move mk_two_qs_split() { return {MoveKind::TwoQSSplit, {}, rule_tag(MoveKind::TwoQSSplit)}; }

TotalFlowGraph apply_move(const TotalFlowGraph& t, const Move& m) {
    const auto& p = m.params;
    switch (m.kind) {
        case MoveKind::Cut: {
            int piece = static_cast<int>(p[0]);
            int k = static_cast<int>(p[1]);
            EdgeCycle cyc;
            for (int i = 0; i < k; ++i)
                cyc.push_back({static_cast<int>(p[2 + 2 * i]), p[3 + 2 * i] != 0});
            return cut_move(t, piece, cyc, static_cast<int>(p[2 + 2 * k]));
        }
        case MoveKind::Glue:
            return glue_move(t, {(int)p[0], (int)p[1]}, {(int)p[2], (int)p[3]}, (int)p[4]).graph;
        case MoveKind::CyclicGlue:
            return cyclic_glue_move(t, {(int)p[0], (int)p[1]}, {(int)p[2], (int)p[3]}, (int)p[4]);
        case MoveKind::Slide:
            return slide_move(t, {(int)p[0], (int)p[1]}, {(int)p[2], (int)p[3]});
        case MoveKind::Insert1QP:
            return insert_1qp_move(t, {(int)p[0], (int)p[1]});
        case MoveKind::Remove1QP:
            return remove_1qp_move(t, (int)p[0]);
        case MoveKind::Bridge:
            if (p[0] == 1) return unbridge_move(t, (int)p[1]);
            return bridge_move(t, {(int)p[1], (int)p[2]}, {(int)p[3], (int)p[4]},
                               p[5] == 0 ? Sign::Pos : Sign::Neg);
        case MoveKind::DistantGlue:
            return distant_glue_move(t, {(int)p[0], (int)p[1]}, {(int)p[2], (int)p[3]},
                                     (int)p[4]);
        case MoveKind::SignSwap:
            return sign_swap_move(t, {(int)p[0], (int)p[1]});
        case MoveKind::TwoQSSplit:
            return two_qs_split_move(t);
    }
    fail("replay-error", "unknown move kind");
}

TotalFlowGraph replay(const MoveCertificate& cert) {
    TotalFlowGraph cur = cert.initial;
    {
        auto rep = validate_total(cur);
        require(rep.ok(), "replay-error", "initial graph invalid: " + rep.first_failure());
    }
    for (size_t k = 0; k < cert.moves.size(); ++k) {
        try {
            cur = apply_move(cur, cert.moves[k]);
        } catch (const Error& e) {
            fail("replay-error", "step " + std::to_string(k) + ": " + e.what());
        }
    }
    return cur;
}

bool verify_certificate(const MoveCertificate& cert) {
    TotalFlowGraph end = replay(cert);
    return isomorphic(end, cert.final_graph);
}

std::vector<Move> expand_move(const TotalFlowGraph& t, const Move& m) {
    std::vector<Move> log;
    switch (m.kind) {
        case MoveKind::Slide:
            slide_move(t, {(int)m.params[0], (int)m.params[1]},
                       {(int)m.params[2], (int)m.params[3]}, &log);
            break;
        case MoveKind::SignSwap:
            sign_swap_move(t, {(int)m.params[0], (int)m.params[1]}, &log);
            break;
        case MoveKind::DistantGlue:
            distant_glue_move(t, {(int)m.params[0], (int)m.params[1]},
                              {(int)m.params[2], (int)m.params[3]}, (int)m.params[4], &log);
            break;
        case MoveKind::TwoQSSplit:
            two_qs_split_move(t, &log);
            break;
        default:
            log.push_back(m);
    }
    return log;
}

}  // namespace vf
