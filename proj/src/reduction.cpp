#include "veerflow/reduction.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>

namespace vf {

QuadClass classify_quad(const IndividualFlowGraph& g, int quad,
                        const std::vector<int>& vclass, const std::vector<int>& role) {
    std::vector<int> in_j, out_j;
    for (int i = 0; i < 4; ++i) {
        int corner = g.surf.slot(quad, i);
        int v = vclass[corner];
        (role[v] == -1 ? in_j : out_j).push_back(v);
    }
    require(in_j.size() == 2 && out_j.size() == 2, "FG-ROLES", "quad corners must alternate roles");
    bool in_same = in_j[0] == in_j[1];
    bool out_same = out_j[0] == out_j[1];
    if (!in_same && !out_same) return QuadClass::Free;
    if (!in_same && out_same) return QuadClass::OutwardlyRigid;
    if (in_same && !out_same) return QuadClass::InwardlyRigid;
    return QuadClass::TotallyRigid;
}

namespace {

// first embedded coorientable monochromatic cycle, searched in a fixed order
std::optional<EdgeCycle> find_coorientable_cycle(const IndividualFlowGraph& g) {
    int nv;
    auto vc = g.surf.vertex_class(&nv);
    auto ec = g.surf.edge_class();
    std::map<int, int> rep;
    for (int s = 0; s < g.surf.slot_count(); ++s)
        if (!rep.count(ec[s])) rep[ec[s]] = s;

    std::optional<EdgeCycle> best;
    std::vector<CycleStep> path;
    std::set<int> used_edges, used_verts;
    std::function<void(int, int, Sign)> dfs = [&](int start_v, int at_v, Sign sgn) {
        if (best) return;
        for (auto& [cls, slot] : rep) {
            if (used_edges.count(cls)) continue;
            if (g.sign_slot[slot] != sgn) continue;
            int tv = vc[g.tail_corner(slot)], hv = vc[g.head_corner(slot)];
            int other;
            CycleStep st{slot, true};
            if (tv == at_v) { other = hv; st.along = g.dir_along[slot] != 0; }
            else if (hv == at_v) { other = tv; st.along = g.dir_along[slot] == 0; }
            else continue;
            if (other == start_v && !path.empty()) {
                path.push_back(st);
                EdgeCycle cand(path.begin(), path.end());
                if (is_two_sided(g.surf, cand)) best = cand;
                path.pop_back();
                if (best) return;
                continue;
            }
            if (used_verts.count(other)) continue;
            used_edges.insert(cls);
            used_verts.insert(other);
            path.push_back(st);
            dfs(start_v, other, sgn);
            path.pop_back();
            used_verts.erase(other);
            used_edges.erase(cls);
            if (best) return;
        }
    };
    for (int v = 0; v < nv && !best; ++v)
        for (Sign sgn : {Sign::Pos, Sign::Neg}) {
            if (best) break;
            used_edges.clear();
            used_verts.clear();
            used_verts.insert(v);
            path.clear();
            dfs(v, v, sgn);
        }
    return best;
}

}  // namespace

GraphCase classify(const IndividualFlowGraph& g) {
    auto rep = validate_individual(g);
    require(rep.ok(), "FG-VALID", rep.first_failure());
    GraphCase out;
    if (is_1qp(g)) { out.case_id = 1; return out; }
    if (is_2qs(g)) { out.case_id = 2; return out; }
    if (auto cyc = find_coorientable_cycle(g)) {
        out.case_id = 3;
        out.cycle = *cyc;
        return out;
    }
    int nv;
    auto vc = g.surf.vertex_class(&nv);
    auto role = joint_roles(g, vc, nv);
    std::vector<QuadClass> qc(g.quad_count());
    for (int q = 0; q < g.quad_count(); ++q) qc[q] = classify_quad(g, q, vc, role);
    for (int q = 0; q < g.quad_count(); ++q)
        if (qc[q] == QuadClass::Free) {
            out.case_id = 4;
            out.quad_a = q;
            return out;
        }
    for (int q = 0; q < g.quad_count(); ++q) {
        if (qc[q] != QuadClass::OutwardlyRigid) continue;
        for (int i = 0; i < 4; ++i) {
            int s = g.surf.slot(q, i);
            int q2 = g.surf.poly_of(g.surf.partner[s]);
            if (qc[q2] == QuadClass::InwardlyRigid) {
                out.case_id = 5;
                out.quad_a = q;
                out.quad_b = q2;
                out.shared_slot = s;
                return out;
            }
        }
    }
    int n_in = 0, n_out = 0;
    for (int v = 0; v < nv; ++v) (role[v] == -1 ? n_in : n_out)++;
    bool all_out_or_tot = true, all_in_or_tot = true, has_out = false, has_in = false;
    for (auto c : qc) {
        if (c == QuadClass::OutwardlyRigid) has_out = true;
        else if (c == QuadClass::InwardlyRigid) has_in = true;
        if (c != QuadClass::OutwardlyRigid && c != QuadClass::TotallyRigid) all_out_or_tot = false;
        if (c != QuadClass::InwardlyRigid && c != QuadClass::TotallyRigid) all_in_or_tot = false;
    }
    if (all_out_or_tot && has_out && n_out == 1 && n_in >= 2) {
        out.case_id = 6;
        return out;
    }
    if (all_in_or_tot && has_in && n_in == 1 && n_out >= 2) {
        out.case_id = 7;
        return out;
    }
    fail("classification-failure", "no case applies to this flow graph");
}

ReductionMeasure measure_of(const TotalFlowGraph& t) {
    ReductionMeasure m;
    for (auto& p : t.pieces) {
        if (is_2qs(p)) continue;
        m.quads += p.quad_count();
        auto og = orientability_and_genus(p.surf);
        m.genus += og.genus - 1;
    }
    return m;
}

// ---------------- phase 1 ----------------

namespace {

// all embedded two-sided monochromatic two-edge cycles of a piece
std::vector<EdgeCycle> parallel_pair_cycles(const IndividualFlowGraph& g) {
    std::vector<EdgeCycle> out;
    auto vc = g.surf.vertex_class();
    std::vector<int> reps;
    for (int s = 0; s < g.surf.slot_count(); ++s)
        if (g.surf.partner[s] > s) reps.push_back(s);
    for (size_t i = 0; i < reps.size(); ++i)
        for (size_t j = i + 1; j < reps.size(); ++j) {
            int a = reps[i], b = reps[j];
            if (g.sign_slot[a] != g.sign_slot[b]) continue;
            if (vc[g.tail_corner(a)] != vc[g.tail_corner(b)]) continue;
            if (vc[g.head_corner(a)] != vc[g.head_corner(b)]) continue;
            EdgeCycle cyc;
            cyc.push_back({a, g.dir_along[a] != 0});
            cyc.push_back({b, g.dir_along[b] == 0});
            try {
                check_embedded_cycle(g.surf, cyc);
            } catch (const Error&) {
                continue;
            }
            if (is_two_sided(g.surf, cyc)) out.push_back(cyc);
        }
    return out;
}

int first_1qp(const TotalFlowGraph& t) {
    for (size_t p = 0; p < t.pieces.size(); ++p)
        if (is_1qp(t.pieces[p])) return static_cast<int>(p);
    return -1;
}

// find a two-sided parallel pair whose cut splits off a (1QP); apply it and
// remove the (1QP)
std::optional<TotalFlowGraph> try_extract_1qp(const TotalFlowGraph& t,
                                              std::vector<Move>* moves) {
    for (size_t p = 0; p < t.pieces.size(); ++p) {
        if (is_2qs(t.pieces[p]) || is_1qp(t.pieces[p])) continue;
        for (auto& cyc : parallel_pair_cycles(t.pieces[p])) {
            for (int side : {cyc[0].slot, t.pieces[p].surf.partner[cyc[0].slot]}) {
                TotalFlowGraph cut;
                try {
                    cut = cut_move(t, static_cast<int>(p), cyc, side);
                } catch (const Error&) {
                    continue;
                }
                int q = first_1qp(cut);
                if (q < 0) continue;
                TotalFlowGraph fin;
                try {
                    fin = remove_1qp_move(cut, q);
                } catch (const Error&) {
                    continue;
                }
                if (moves) {
                    moves->push_back(mk_cut(static_cast<int>(p), cyc, side));
                    moves->push_back(mk_remove(q));
                }
                return fin;
            }
        }
    }
    return std::nullopt;
}

// cut two parallel pairs in sequence so that a new (2QS) splits off
std::optional<TotalFlowGraph> try_extract_2qs(const TotalFlowGraph& t, int n2qs_before,
                                              std::vector<Move>* moves) {
    long long quads_before = measure_of(t).quads;
    for (size_t p = 0; p < t.pieces.size(); ++p) {
        if (is_2qs(t.pieces[p]) || is_1qp(t.pieces[p])) continue;
        for (auto& c1 : parallel_pair_cycles(t.pieces[p])) {
            for (int side1 : {c1[0].slot, t.pieces[p].surf.partner[c1[0].slot]}) {
                TotalFlowGraph mid;
                try {
                    mid = cut_move(t, static_cast<int>(p), c1, side1);
                } catch (const Error&) {
                    continue;
                }
                for (size_t p2 = 0; p2 < mid.pieces.size(); ++p2) {
                    if (is_2qs(mid.pieces[p2]) || is_1qp(mid.pieces[p2])) continue;
                    for (auto& c2 : parallel_pair_cycles(mid.pieces[p2])) {
                        for (int side2 : {c2[0].slot, mid.pieces[p2].surf.partner[c2[0].slot]}) {
                            TotalFlowGraph fin;
                            try {
                                fin = cut_move(mid, static_cast<int>(p2), c2, side2);
                            } catch (const Error&) {
                                continue;
                            }
                            int n2qs = 0;
                            for (auto& q : fin.pieces) n2qs += is_2qs(q);
                            if (n2qs <= n2qs_before) continue;
                            if (measure_of(fin).quads != quads_before - 2) continue;
                            if (moves) {
                                moves->push_back(mk_cut(static_cast<int>(p), c1, side1));
                                moves->push_back(mk_cut(static_cast<int>(p2), c2, side2));
                            }
                            return fin;
                        }
                    }
                }
            }
        }
    }
    return std::nullopt;
}

std::pair<int, int> quad_sides_of_sign(const IndividualFlowGraph& g, int quad, Sign sgn) {
    std::vector<int> s;
    for (int i = 0; i < 4; ++i)
        if (g.sign_slot[g.surf.slot(quad, i)] == sgn) s.push_back(g.surf.slot(quad, i));
    require(s.size() == 2, "FG-SIDEALT", "quad sides do not alternate");
    return {s[0], s[1]};
}

// case 4: glue two same-sign sides of the free quad, then cut off and
// remove the (1QP) this creates
TotalFlowGraph handle_free_quad(const TotalFlowGraph& t, int piece, int quad,
                                std::vector<Move>* moves) {
    for (Sign sgn : {Sign::Pos, Sign::Neg}) {
        auto [sa, sb] = quad_sides_of_sign(t.pieces[piece], quad, sgn);
        for (int variant : {0, 1}) {
            TotalFlowGraph mid;
            std::vector<Move> local;
            try {
                local.push_back(mk_distant_glue({piece, sa}, {piece, sb}, variant));
                mid = distant_glue_move(t, {piece, sa}, {piece, sb}, variant, nullptr);
            } catch (const Error&) {
                continue;
            }
            auto fin = try_extract_1qp(mid, &local);
            if (!fin) continue;
            if (moves) moves->insert(moves->end(), local.begin(), local.end());
            return *fin;
        }
    }
    fail("reduction-error", "no gluing variant separates a (1QP) at the free quad");
}

// case 5 core: glue the outer same-sign sides of the rigid pair and split
// off a (2QS) by two cuts
std::optional<TotalFlowGraph> rigid_pair_glue_and_split(const TotalFlowGraph& t, EdgeRef ea,
                                                        EdgeRef eb, std::vector<Move>* moves) {
    for (int variant : {0, 1}) {
        TotalFlowGraph mid;
        std::vector<Move> local;
        try {
            local.push_back(mk_distant_glue(ea, eb, variant));
            mid = distant_glue_move(t, ea, eb, variant, nullptr);
        } catch (const Error&) {
            continue;
        }
        int mid_2qs = 0;
        for (auto& q : mid.pieces) mid_2qs += is_2qs(q);
        auto fin = try_extract_2qs(mid, mid_2qs, &local);
        if (!fin) continue;
        if (moves) moves->insert(moves->end(), local.begin(), local.end());
        return fin;
    }
    return std::nullopt;
}

TotalFlowGraph handle_rigid_pair(const TotalFlowGraph& t, int piece, int quad_a, int quad_b,
                                 int shared_slot, std::vector<Move>* moves) {
    const IndividualFlowGraph& g = t.pieces[piece];
    Sign sgn = g.sign_slot[shared_slot];
    auto ec = g.surf.edge_class();
    auto pick_outer = [&](int quad) {
        auto [x, y] = quad_sides_of_sign(g, quad, sgn);
        return ec[x] == ec[shared_slot] ? y : x;
    };
    int sa = pick_outer(quad_a);
    int sb = pick_outer(quad_b);
    auto fin = rigid_pair_glue_and_split(t, {piece, sa}, {piece, sb}, moves);
    if (fin) return *fin;
    fail("reduction-error", "no gluing variant separates a (2QS) at the rigid pair");
}

}  // namespace

ReductionResult reduce_phase1(const TotalFlowGraph& t) {
    require(is_strongly_connected(t), "precondition-error",
            "reduction needs a strongly connected graph");
    ReductionResult res;
    res.graph = t;
    int guard = 0;
    while (true) {
        require(++guard < 10000, "reduction-error", "phase 1 did not terminate");
        ReductionMeasure before = measure_of(res.graph);
        if (before.quads == 0) break;
        if (res.graph.pieces.size() == 1 && is_1qp(res.graph.pieces[0])) break;

        std::vector<GraphCase> cases(res.graph.pieces.size());
        for (size_t p = 0; p < res.graph.pieces.size(); ++p)
            cases[p] = classify(res.graph.pieces[p]);
        auto pick = [&](int wanted) {
            for (size_t p = 0; p < res.graph.pieces.size(); ++p)
                if (cases[p].case_id == wanted) return static_cast<int>(p);
            return -1;
        };

        if (int p = pick(1); p >= 0) {
            res.graph = remove_1qp_move(res.graph, p);
            res.moves.push_back(mk_remove(p));
        } else if (int p3 = pick(3); p3 >= 0) {
            const EdgeCycle& cyc = cases[p3].cycle;
            int side = cyc[0].slot;
            res.graph = cut_move(res.graph, p3, cyc, side);
            res.moves.push_back(mk_cut(p3, cyc, side));
        } else if (int p4 = pick(4); p4 >= 0) {
            res.graph = handle_free_quad(res.graph, p4, cases[p4].quad_a, &res.moves);
        } else if (int p5 = pick(5); p5 >= 0) {
            res.graph = handle_rigid_pair(res.graph, p5, cases[p5].quad_a, cases[p5].quad_b,
                                          cases[p5].shared_slot, &res.moves);
        } else {
            int p6 = pick(6), p7 = pick(7);
            require(p6 >= 0 && p7 >= 0, "reduction-error",
                    "rigid graphs must come in outward/inward pairs");
            const IndividualFlowGraph& ga = res.graph.pieces[p6];
            const IndividualFlowGraph& gb = res.graph.pieces[p7];
            int nva, nvb;
            auto vca = ga.surf.vertex_class(&nva);
            auto rla = joint_roles(ga, vca, nva);
            auto vcb = gb.surf.vertex_class(&nvb);
            auto rlb = joint_roles(gb, vcb, nvb);
            int qa = -1, qb = -1;
            for (int q = 0; q < ga.quad_count() && qa < 0; ++q)
                if (classify_quad(ga, q, vca, rla) == QuadClass::OutwardlyRigid) qa = q;
            for (int q = 0; q < gb.quad_count() && qb < 0; ++q)
                if (classify_quad(gb, q, vcb, rlb) == QuadClass::InwardlyRigid) qb = q;
            require(qa >= 0 && qb >= 0, "reduction-error", "rigid quads not found");
            auto [sa1, sa2] = quad_sides_of_sign(ga, qa, Sign::Pos);
            auto [sb1, sb2] = quad_sides_of_sign(gb, qb, Sign::Pos);
            // gluing the rigid pieces together produces a case-5 pair in the
            // merged piece; the case-5 subroutine then takes off a (2QS)
            std::optional<TotalFlowGraph> fin;
            for (int xa : {sa1, sa2})
                for (int xb : {sb1, sb2})
                    for (int variant : {0, 1}) {
                        if (fin) break;
                        TotalFlowGraph mid;
                        std::vector<Move> local;
                        try {
                            local.push_back(mk_distant_glue({p6, xa}, {p7, xb}, variant));
                            mid = distant_glue_move(res.graph, {p6, xa}, {p7, xb}, variant,
                                                    nullptr);
                        } catch (const Error&) {
                            continue;
                        }
                        for (size_t mp = 0; mp < mid.pieces.size() && !fin; ++mp) {
                            const IndividualFlowGraph& gm = mid.pieces[mp];
                            if (is_2qs(gm) || is_1qp(gm)) continue;
                            int nvm;
                            auto vcm = gm.surf.vertex_class(&nvm);
                            auto rlm = joint_roles(gm, vcm, nvm);
                            std::vector<QuadClass> qcm(gm.quad_count());
                            for (int q = 0; q < gm.quad_count(); ++q)
                                qcm[q] = classify_quad(gm, q, vcm, rlm);
                            for (int q = 0; q < gm.quad_count() && !fin; ++q) {
                                if (qcm[q] != QuadClass::OutwardlyRigid) continue;
                                for (int i = 0; i < 4 && !fin; ++i) {
                                    int s = gm.surf.slot(q, i);
                                    int q2 = gm.surf.poly_of(gm.surf.partner[s]);
                                    if (qcm[q2] != QuadClass::InwardlyRigid) continue;
                                    Sign ssg = gm.sign_slot[s];
                                    auto ecm = gm.surf.edge_class();
                                    auto pick_outer = [&](int quad) {
                                        auto [x, y] = quad_sides_of_sign(gm, quad, ssg);
                                        return ecm[x] == ecm[s] ? y : x;
                                    };
                                    std::vector<Move> local2 = local;
                                    auto got = rigid_pair_glue_and_split(
                                        mid, {static_cast<int>(mp), pick_outer(q)},
                                        {static_cast<int>(mp), pick_outer(q2)}, &local2);
                                    if (got) {
                                        fin = got;
                                        res.moves.insert(res.moves.end(), local2.begin(),
                                                         local2.end());
                                    }
                                }
                            }
                        }
                    }
            require(fin.has_value(), "reduction-error",
                    "rigid pairing failed to split off a (2QS)");
            res.graph = *fin;
        }

        ReductionMeasure after = measure_of(res.graph);
        require(after < before, "algorithm-invariant-error",
                "reduction measure did not decrease");
        res.trace.push_back(after);
    }
    return res;
}

// ---------------- fat graph correspondence ----------------

FatGraph fat_graph_of(const TotalFlowGraph& t) {
    for (auto& p : t.pieces)
        require(is_2qs(p), "type-error", "fat graph needs an all-(2QS) graph");
    TotalView view = make_view(t);
    std::map<int, int> next_arc;
    std::vector<int> pos_arcs;
    for (size_t i = 0; i < view.arcs.size(); ++i) {
        if (view.arcs[i].sign != Sign::Pos) continue;
        require(!next_arc.count(view.arcs[i].from), "type-error",
                "vertex with two outgoing positive edges");
        next_arc[view.arcs[i].from] = static_cast<int>(i);
        pos_arcs.push_back(static_cast<int>(i));
    }
    std::map<int, std::pair<int, int>> arc_pos;
    std::vector<std::vector<int>> cycles;
    std::set<int> seen;
    for (int a0 : pos_arcs) {
        if (seen.count(a0)) continue;
        std::vector<int> cyc;
        int a = a0;
        while (!seen.count(a)) {
            seen.insert(a);
            arc_pos[a] = {static_cast<int>(cycles.size()), static_cast<int>(cyc.size())};
            cyc.push_back(a);
            a = next_arc.at(view.arcs[a].to);
        }
        cycles.push_back(std::move(cyc));
    }
    FatGraph fg;
    fg.cyc.assign(cycles.size(), {});
    fg.mate.assign(2 * t.pieces.size(), -1);
    std::map<int, std::vector<int>> piece_arcs;
    for (int a : pos_arcs) piece_arcs[view.arcs[a].piece].push_back(a);
    std::vector<std::vector<std::pair<int, int>>> slots(cycles.size());
    for (auto& [piece, arcs] : piece_arcs) {
        require(arcs.size() == 2, "type-error", "a (2QS) must carry two positive edges");
        for (int k = 0; k < 2; ++k) {
            auto [cyc_id, idx] = arc_pos.at(arcs[k]);
            slots[cyc_id].push_back({idx, 2 * piece + k});
        }
        fg.mate[2 * piece] = 2 * piece + 1;
        fg.mate[2 * piece + 1] = 2 * piece;
    }
    for (size_t c = 0; c < cycles.size(); ++c) {
        std::sort(slots[c].begin(), slots[c].end());
        for (auto& [idx, half] : slots[c]) fg.cyc[c].push_back(half);
    }
    fg.validate();
    return fg;
}

TotalFlowGraph two_qs_graph_of(const FatGraph& fg) {
    fg.validate();
    TotalFlowGraph t;
    require(fg.edge_count() >= 1, "type-error", "empty fat graph");
    std::map<int, int> piece_of_half, which_of_half;
    {
        int np = 0;
        for (int h = 0; h < fg.half_count(); ++h) {
            if (h < fg.mate[h]) {
                piece_of_half[h] = np;
                which_of_half[h] = 0;
                piece_of_half[fg.mate[h]] = np;
                which_of_half[fg.mate[h]] = 1;
                ++np;
            }
        }
        for (int p = 0; p < np; ++p) t.pieces.push_back(make_2qs());
    }
    auto joint = [&](int piece, int corner) {
        auto vc = t.pieces[piece].surf.vertex_class();
        return JointRef{piece, vc[corner]};
    };
    for (int v = 0; v < fg.vertex_count(); ++v) {
        int d = fg.degree(v);
        for (int i = 0; i < d; ++i) {
            int h = fg.cyc[v][i];
            int h2 = fg.cyc[v][(i + 1) % d];
            int p1 = piece_of_half[h], w1 = which_of_half[h];
            int p2 = piece_of_half[h2], w2 = which_of_half[h2];
            JointRef out_j = joint(p1, w1 == 0 ? 1 : 3);
            JointRef in_j = joint(p2, w2 == 0 ? 0 : 2);
            t.matching.push_back({in_j, out_j});
        }
    }
    auto rep = validate_total(t);
    require(rep.ok(), "type-error",
            "fat graph does not define a valid graph: " + rep.first_failure());
    return t;
}

// ---------------- phase 2 ----------------

ReductionResult reduce_phase2(const TotalFlowGraph& t) {
    for (auto& p : t.pieces)
        require(is_2qs(p), "type-error", "phase 2 needs an all-(2QS) graph");
    require(is_strongly_connected(t), "precondition-error",
            "phase 2 needs a strongly connected graph");
    ReductionResult res;
    res.graph = t;
    int guard = 0;
    while (true) {
        require(++guard < 10000, "reduction-error", "phase 2 did not terminate");
        FatGraph fg = fat_graph_of(res.graph);
        require(fg.connected(), "move-invariant-error", "fat graph must stay connected");
        if (fg.edge_count() == 1) break;
        int h = -1;
        for (int x = 0; x < fg.half_count(); x += 2)
            if (fg.edge_non_separating(x)) { h = x; break; }
        if (h >= 0) {
            int piece = h / 2;  // half-edge ids are 2*piece and 2*piece+1
            res.graph = unbridge_move(res.graph, piece);
            res.moves.push_back(mk_unbridge(piece));
            continue;
        }
        // tree with >= 2 edges: bridge two leaves to create removable edges
        std::vector<int> leaves;
        for (int v = 0; v < fg.vertex_count(); ++v)
            if (fg.degree(v) == 1) leaves.push_back(v);
        require(leaves.size() >= 2, "reduction-error", "tree fat graph without two leaves");
        auto vertex_on_cycle = [&](int leaf) {
            int half = fg.cyc[leaf][0];
            int piece = half / 2;
            int which = half % 2;
            int slot = which == 0 ? 0 : 2;  // positive edges sit at slots 0 and 2
            int corner = res.graph.pieces[piece].head_corner(slot);
            return VertexRef{piece, corner};
        };
        VertexRef v = vertex_on_cycle(leaves[0]);
        VertexRef w = vertex_on_cycle(leaves[1]);
        res.moves.push_back(mk_bridge(v, w, Sign::Pos));
        res.graph = bridge_move(res.graph, v, w, Sign::Pos, nullptr);
    }
    // endgame: single self-matched (2QS) -> two (1QP)s -> single (1QP)
    res.graph = two_qs_split_move(res.graph, nullptr);
    res.moves.push_back(mk_two_qs_split());
    int qp = -1;
    for (size_t p = 0; p < res.graph.pieces.size(); ++p)
        if (is_1qp(res.graph.pieces[p])) { qp = static_cast<int>(p); break; }
    res.moves.push_back(mk_remove(qp));
    res.graph = remove_1qp_move(res.graph, qp);
    return res;
}

MoveCertificate reduce_to_1qp(const TotalFlowGraph& t, std::vector<ReductionMeasure>* trace) {
    MoveCertificate cert;
    cert.initial = t;
    ReductionResult r1 = reduce_phase1(t);
    cert.moves = r1.moves;
    if (trace) *trace = r1.trace;
    TotalFlowGraph cur = r1.graph;
    if (!(cur.pieces.size() == 1 && is_1qp(cur.pieces[0]))) {
        ReductionResult r2 = reduce_phase2(cur);
        cert.moves.insert(cert.moves.end(), r2.moves.begin(), r2.moves.end());
        cur = r2.graph;
    }
    require(cur.pieces.size() == 1 && is_1qp(cur.pieces[0]), "reduction-error",
            "reduction did not reach the single (1QP)");
    require(isomorphic(cur, single_1qp_total()), "reduction-error",
            "terminal graph is not the self-matched (1QP)");
    cert.final_graph = cur;
    return cert;
}

}  // namespace vf
