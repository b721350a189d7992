#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "veerflow/random_gen.hpp"
#include "veerflow/reduction.hpp"

using namespace vf;

namespace {
TotalFlowGraph ring_2qs(int n) {
    TotalFlowGraph t;
    for (int i = 0; i < n; ++i) t.pieces.push_back(make_2qs());
    for (int i = 0; i < n; ++i) {
        int j = (i + 1) % n;
        auto vci = t.pieces[i].surf.vertex_class();
        auto vcj = t.pieces[j].surf.vertex_class();
        t.matching.push_back({JointRef{j, vcj[0]}, JointRef{i, vci[1]}});
        t.matching.push_back({JointRef{j, vcj[2]}, JointRef{i, vci[3]}});
    }
    return t;
}
}  // namespace

TEST_CASE("classify the atoms") {
    CHECK(classify(make_1qp()).case_id == 1);
    CHECK(classify(make_2qs()).case_id == 2);
}

TEST_CASE("classifier is total on random pieces") {
    Rng rng(12345);
    for (int i = 0; i < 60; ++i) {
        auto g = random_individual(rng, rng.range(1, 5));
        auto c = classify(g);
        CHECK(c.case_id >= 1);
        CHECK(c.case_id <= 7);
        if (c.case_id == 3) {
            CHECK(is_two_sided(g.surf, c.cycle));
            Sign s = g.sign_slot[c.cycle[0].slot];
            for (auto& st : c.cycle) CHECK(g.sign_slot[st.slot] == s);
        }
    }
}

TEST_CASE("quad count law on random pieces") {
    Rng rng(999);
    for (int i = 0; i < 50; ++i) {
        auto g = random_individual(rng, rng.range(1, 6));
        int nv;
        g.surf.vertex_class(&nv);
        int chi = g.surf.euler_characteristic();
        CHECK(g.quad_count() == -(chi - nv));
    }
}

TEST_CASE("fat graph round trips on (2QS) graphs") {
    for (int n : {1, 2, 3, 4}) {
        auto t = ring_2qs(n);
        auto fg = fat_graph_of(t);
        CHECK(fg.edge_count() == n);
        CHECK(fg.connected() == is_strongly_connected(t));
        auto t2 = two_qs_graph_of(fg);
        CHECK(isomorphic(t, t2));
        auto fg2 = fat_graph_of(t2);
        CHECK(isomorphic(fg, fg2));
    }
}

TEST_CASE("single (2QS) self matchings give one-edge fat graphs") {
    for (int style : {0, 1}) {
        TotalFlowGraph t;
        t.pieces.push_back(make_2qs());
        auto vc = t.pieces[0].surf.vertex_class();
        if (style == 0) {
            t.matching.push_back({JointRef{0, vc[2]}, JointRef{0, vc[1]}});
            t.matching.push_back({JointRef{0, vc[0]}, JointRef{0, vc[3]}});
        } else {
            t.matching.push_back({JointRef{0, vc[0]}, JointRef{0, vc[1]}});
            t.matching.push_back({JointRef{0, vc[2]}, JointRef{0, vc[3]}});
        }
        auto fg = fat_graph_of(t);
        CHECK(fg.edge_count() == 1);
        CHECK(fg.vertex_count() == (style == 0 ? 1 : 2));
        CHECK(isomorphic(t, two_qs_graph_of(fg)));
    }
}

TEST_CASE("phase 2 reduces a ring to the single (1QP)") {
    auto t = ring_2qs(3);
    auto r = reduce_phase2(t);
    CHECK(r.graph.pieces.size() == 1);
    CHECK(is_1qp(r.graph.pieces[0]));
    CHECK(isomorphic(r.graph, single_1qp_total()));
    // the recorded moves replay to the same end state
    TotalFlowGraph cur = t;
    for (auto& m : r.moves) cur = apply_move(cur, m);
    CHECK(isomorphic(cur, r.graph));
}

TEST_CASE("terminal single (1QP) reduces to itself with an empty certificate") {
    auto t = single_1qp_total();
    auto cert = reduce_to_1qp(t);
    CHECK(cert.moves.empty());
    CHECK(isomorphic(cert.final_graph, t));
}

TEST_CASE("full reduction on small random instances") {
    Rng rng(777);
    int done = 0;
    for (int i = 0; i < 12; ++i) {
        auto t = random_total(rng, 8, 3);
        std::vector<ReductionMeasure> trace;
        auto cert = reduce_to_1qp(t, &trace);
        CHECK(isomorphic(cert.final_graph, single_1qp_total()));
        for (size_t k = 1; k < trace.size(); ++k) CHECK(trace[k] < trace[k - 1]);
        CHECK(verify_certificate(cert));
        ++done;
    }
    CHECK(done == 12);
}
