#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "veerflow/moves.hpp"

using namespace vf;

namespace {

// ring of n (2QS)s, strongly connected
TotalFlowGraph ring_2qs(int n) {
    TotalFlowGraph t;
    for (int i = 0; i < n; ++i) t.pieces.push_back(make_2qs());
    for (int i = 0; i < n; ++i) {
        int j = (i + 1) % n;
        auto vci = t.pieces[i].surf.vertex_class();
        auto vcj = t.pieces[j].surf.vertex_class();
        // construction order: corners 0..3 = v0 (in), v1 (out), v2 (in), v3 (out)
        t.matching.push_back({JointRef{j, vcj[0]}, JointRef{i, vci[1]}});
        t.matching.push_back({JointRef{j, vcj[2]}, JointRef{i, vci[3]}});
    }
    return t;
}

// klein-bottle style single piece: cut along one monochromatic cycle gives
// one (2QS), along the other gives two (1QP)s
TotalFlowGraph kb_graph() {
    // glue the two positive edges of a self-matched (2QS)
    TotalFlowGraph t;
    t.pieces.push_back(make_2qs());
    auto vc = t.pieces[0].surf.vertex_class();
    // loop-style matching: B(v1) with C(v2), D(v3) with A(v0)
    t.matching.push_back({JointRef{0, vc[2]}, JointRef{0, vc[1]}});
    t.matching.push_back({JointRef{0, vc[0]}, JointRef{0, vc[3]}});
    // positive edges are the classes of slots 0 and 2
    auto out = glue_move(t, {0, 0}, {0, 2}, 0);
    if (!out.strongly_connected) out = glue_move(t, {0, 0}, {0, 2}, 1);
    REQUIRE(out.strongly_connected);
    return out.graph;
}

int count_1qp(const TotalFlowGraph& t) {
    int c = 0;
    for (auto& p : t.pieces) c += is_1qp(p);
    return c;
}
int count_2qs(const TotalFlowGraph& t) {
    int c = 0;
    for (auto& p : t.pieces) c += is_2qs(p);
    return c;
}

}  // namespace

TEST_CASE("ring fixture is valid and strongly connected") {
    for (int n : {2, 3, 4}) {
        auto t = ring_2qs(n);
        auto rep = validate_total(t);
        INFO(rep.first_failure());
        CHECK(rep.ok());
        CHECK(is_strongly_connected(t));
        CHECK(strongly_connected_oracle(t));
    }
}

TEST_CASE("glue then cut recovers the original graph") {
    auto t = ring_2qs(3);
    EdgeRef e1{0, 0}, e2{1, 0};
    for (int variant : {0, 1}) {
        auto glued = glue_move(t, e1, e2, variant);
        CHECK(validate_total(glued.graph).ok());
        CHECK(glued.graph.pieces.size() == t.pieces.size() - 1);
        // cut the two glued copies with both coorientations; exactly one
        // recovers the original, the other slides
        const auto& gm = glued.graph.pieces[glued.merged_piece];
        EdgeCycle cyc;
        cyc.push_back({glued.copy1_e1slot, gm.dir_along[glued.copy1_e1slot] != 0});
        cyc.push_back({glued.copy2_e1slot, gm.dir_along[glued.copy2_e1slot] == 0});
        auto cut_a = cut_move(glued.graph, glued.merged_piece, cyc, glued.copy1_e1slot);
        auto cut_b = cut_move(glued.graph, glued.merged_piece, cyc, glued.copy1_e2slot);
        bool a_recovers = isomorphic(cut_a, t);
        bool b_recovers = isomorphic(cut_b, t);
        INFO("variant ", variant, " a=", a_recovers, " b=", b_recovers);
        CHECK(a_recovers != b_recovers);
        // the one that does not recover realizes the slide: same piece census
        const TotalFlowGraph& slid = a_recovers ? cut_b : cut_a;
        CHECK(slid.pieces.size() == t.pieces.size());
        CHECK(count_2qs(slid) == count_2qs(t));
        // recovery side: the minus side on the e1 copies
        CHECK(a_recovers);
    }
}

TEST_CASE("insert then remove a (1QP) is the identity") {
    auto t = ring_2qs(2);
    VertexRef v{0, 1};  // corner 1 of piece 0
    auto ins = insert_1qp_move(t, v);
    CHECK(validate_total(ins).ok());
    CHECK(is_strongly_connected(ins));
    CHECK(ins.pieces.size() == 3);
    CHECK(count_1qp(ins) == 1);
    int qp = -1;
    for (size_t p = 0; p < ins.pieces.size(); ++p)
        if (is_1qp(ins.pieces[p])) qp = static_cast<int>(p);
    auto rem = remove_1qp_move(ins, qp);
    CHECK(isomorphic(rem, t));
}

TEST_CASE("bridge output is valid and strongly connected") {
    auto t = ring_2qs(2);
    for (Sign s : {Sign::Pos, Sign::Neg}) {
        auto b = bridge_move(t, {0, 1}, {1, 1}, s, nullptr);
        CHECK(validate_total(b).ok());
        CHECK(is_strongly_connected(b));
        CHECK(b.pieces.size() == 3);
        CHECK(count_2qs(b) == 3);
    }
}

TEST_CASE("distant glue composes and matches its elementary expansion") {
    // generic position: both bridges fire, two (2QS)s added, carriers merged
    {
        auto t = ring_2qs(4);
        EdgeRef e1{0, 0}, e2{2, 0};
        std::vector<Move> log;
        auto out = distant_glue_move(t, e1, e2, 0, &log);
        CHECK(validate_total(out).ok());
        CHECK(is_strongly_connected(out));
        CHECK(out.pieces.size() == t.pieces.size() + 2 - 1);
        CHECK(log.size() >= 2);
        TotalFlowGraph cur = t;
        for (auto& m : log) cur = apply_move(cur, m);
        CHECK(isomorphic(cur, out));
    }
    // half-adjacent position: only one bridge needed
    {
        auto t = ring_2qs(3);
        EdgeRef e1{0, 0}, e2{2, 0};
        std::vector<Move> log;
        auto out = distant_glue_move(t, e1, e2, 0, &log);
        CHECK(validate_total(out).ok());
        CHECK(is_strongly_connected(out));
        CHECK(out.pieces.size() == t.pieces.size() + 1 - 1);
        TotalFlowGraph cur = t;
        for (auto& m : log) cur = apply_move(cur, m);
        CHECK(isomorphic(cur, out));
    }
}

TEST_CASE("sign swap splits an edge and adds the opposite sign") {
    auto t = ring_2qs(2);
    // piece 0 negative edge: slot 1 (E1)
    EdgeRef e{0, 1};
    auto out = sign_swap_move(t, e, nullptr);
    CHECK(validate_total(out).ok());
    CHECK(is_strongly_connected(out));
    // digraph edge counts: one extra negative edge and one extra positive edge
    TotalView v0 = make_view(t), v1 = make_view(out);
    int pos0 = 0, neg0 = 0, pos1 = 0, neg1 = 0;
    for (auto& a : v0.arcs) (a.sign == Sign::Pos ? pos0 : neg0)++;
    for (auto& a : v1.arcs) (a.sign == Sign::Pos ? pos1 : neg1)++;
    CHECK(neg1 == neg0 + 1);
    CHECK(pos1 == pos0 + 1);
}

TEST_CASE("cyclic glue succeeds with a witness and fails without one") {
    auto t = ring_2qs(3);
    auto out = cyclic_glue_move(t, {0, 0}, {1, 0}, 0);
    CHECK(validate_total(out).ok());
    CHECK(is_strongly_connected(out));
    // non-adjacent pair has no immediate cycle witness
    CHECK_THROWS_AS(cyclic_glue_move(t, {0, 0}, {2, 0}, 0), Error);
}

TEST_CASE("kb graph cuts to one (2QS) or two (1QP)s") {
    auto t = kb_graph();
    CHECK(t.pieces.size() == 1);
    CHECK(t.pieces[0].quad_count() == 2);
    auto og = orientability_and_genus(t.pieces[0].surf);
    CHECK(!og.orientable);
    CHECK(og.genus == 2);  // klein bottle
    const auto& g = t.pieces[0];
    std::vector<int> pos, neg;
    for (int s = 0; s < g.surf.slot_count(); ++s) {
        int b = g.surf.partner[s];
        if (b < s) continue;
        (g.sign_slot[s] == Sign::Pos ? pos : neg).push_back(s);
    }
    REQUIRE(pos.size() == 2);
    REQUIRE(neg.size() == 2);
    int splits = 0, merges = 0;
    for (auto& pair : {neg, pos}) {
        EdgeCycle cyc;
        cyc.push_back({pair[0], g.dir_along[pair[0]] != 0});
        cyc.push_back({pair[1], g.dir_along[pair[1]] == 0});
        if (!is_two_sided(g.surf, cyc)) continue;
        auto cut = cut_move(t, 0, cyc, pair[0]);
        CHECK(validate_total(cut).ok());
        if (cut.pieces.size() == 2) {
            CHECK(is_1qp(cut.pieces[0]));
            CHECK(is_1qp(cut.pieces[1]));
            ++splits;
        } else {
            CHECK(cut.pieces.size() == 1);
            CHECK(is_2qs(cut.pieces[0]));
            ++merges;
        }
    }
    CHECK(splits == 1);
    CHECK(merges == 1);
}

TEST_CASE("2qs split reaches two (1QP)s from both self-matchings") {
    for (int style : {0, 1}) {
        TotalFlowGraph t;
        t.pieces.push_back(make_2qs());
        auto vc = t.pieces[0].surf.vertex_class();
        if (style == 0) {
            // loop-style: positive edges form one directed cycle
            t.matching.push_back({JointRef{0, vc[2]}, JointRef{0, vc[1]}});
            t.matching.push_back({JointRef{0, vc[0]}, JointRef{0, vc[3]}});
        } else {
            // two-cycle style: each positive edge closes on itself
            t.matching.push_back({JointRef{0, vc[0]}, JointRef{0, vc[1]}});
            t.matching.push_back({JointRef{0, vc[2]}, JointRef{0, vc[3]}});
        }
        REQUIRE(validate_total(t).ok());
        REQUIRE(is_strongly_connected(t));
        std::vector<Move> log;
        auto out = two_qs_split_move(t, &log);
        CHECK(out.pieces.size() == 2);
        CHECK(count_1qp(out) == 2);
        CHECK(is_strongly_connected(out));
        TotalFlowGraph cur = t;
        for (auto& m : log) cur = apply_move(cur, m);
        CHECK(isomorphic(cur, out));
    }
}

TEST_CASE("certificates replay and corrupted steps fail loudly") {
    auto t = ring_2qs(2);
    MoveCertificate cert;
    cert.initial = t;
    cert.moves.push_back(mk_insert({0, 1}));
    TotalFlowGraph mid = apply_move(t, cert.moves[0]);
    int qp = -1;
    for (size_t p = 0; p < mid.pieces.size(); ++p)
        if (is_1qp(mid.pieces[p])) qp = static_cast<int>(p);
    cert.moves.push_back(mk_remove(qp));
    cert.final_graph = apply_move(mid, cert.moves[1]);
    CHECK(verify_certificate(cert));
    MoveCertificate empty{t, {}, t};
    CHECK(verify_certificate(empty));
    MoveCertificate bad = cert;
    bad.moves[1].params[0] = 99;
    CHECK_THROWS_WITH_AS(replay(bad), doctest::Contains("replay-error"), Error);
}
