#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "veerflow/flow_graph.hpp"

using namespace vf;

TEST_CASE("the (1QP) piece validates") {
    auto g = make_1qp();
    auto rep = validate_individual(g);
    INFO(rep.first_failure());
    CHECK(rep.ok());
    CHECK(g.quad_count() == 1);
    CHECK(g.surf.euler_characteristic() == 1);
    // closed surface chi 1, two joints: chi(S_i) = 1 - 2 = -1
    int nv;
    g.surf.vertex_class(&nv);
    CHECK(nv == 2);
    CHECK(g.quad_count() == -(g.surf.euler_characteristic() - nv));
    CHECK(is_1qp(g));
    CHECK(!is_2qs(g));
}

TEST_CASE("the (2QS) piece validates") {
    auto g = make_2qs();
    auto rep = validate_individual(g);
    INFO(rep.first_failure());
    CHECK(rep.ok());
    CHECK(g.quad_count() == 2);
    CHECK(g.surf.euler_characteristic() == 2);
    CHECK(is_2qs(g));
    CHECK(!is_1qp(g));
    auto og = orientability_and_genus(g.surf);
    CHECK(og.orientable);
    CHECK(og.genus == 0);
}

TEST_CASE("a quad with two adjacent positive sides is invalid") {
    auto g = make_2qs();
    g.sign_slot[1] = Sign::Pos;  // also breaks pairing data
    g.sign_slot[6] = Sign::Pos;
    auto rep = validate_individual(g);
    CHECK(!rep.ok());
    CHECK(rep.first_failure().find("FG-SIDEALT") == 0);
}

TEST_CASE("single (1QP) with joints matched is strongly connected") {
    auto t = single_1qp_total();
    auto rep = validate_total(t);
    INFO(rep.first_failure());
    CHECK(rep.ok());
    CHECK(is_strongly_connected(t));
    CHECK(strongly_connected_oracle(t));
}

TEST_CASE("two pieces matched one-way are not strongly connected") {
    // two (2QS)s; all edges from piece 0 feed piece 1 and vice versa is absent
    TotalFlowGraph t;
    t.pieces.push_back(make_2qs());
    t.pieces.push_back(make_2qs());
    // piece joints: inward {v0, v2}, outward {v1, v3} in construction order
    // match piece0 outward -> piece1 inward, piece1 outward -> piece0 inward:
    // that is the strongly connected wiring; break it by self-matching piece0
    int nv0;
    auto vc0 = t.pieces[0].surf.vertex_class(&nv0);
    auto role0 = joint_roles(t.pieces[0], vc0, nv0);
    std::vector<int> in0, out0, in1, out1;
    for (int v = 0; v < nv0; ++v) (role0[v] == -1 ? in0 : out0).push_back(v);
    int nv1;
    auto vc1 = t.pieces[1].surf.vertex_class(&nv1);
    auto role1 = joint_roles(t.pieces[1], vc1, nv1);
    for (int v = 0; v < nv1; ++v) (role1[v] == -1 ? in1 : out1).push_back(v);

    SUBCASE("one way wiring fails") {
        // all of piece0's outward joints feed piece1, and piece1's outward
        // joints feed piece1 itself; piece0's inward joints are fed by piece1? no:
        // wire piece0 out -> piece1 in, piece1 out -> piece1... must be perfect.
        // Use: piece0.out -> piece1.in (2 pairs), piece1.out -> piece0.in (0):
        // impossible as perfect matching; instead wire piece1.out back to
        // piece1.in is impossible too (counts). Use the valid cross wiring and
        // check it IS strongly connected, then a bad wiring that isolates flow:
        TotalFlowGraph good = t;
        good.matching = {{{1, in1[0]}, {0, out0[0]}},
                         {{1, in1[1]}, {0, out0[1]}},
                         {{0, in0[0]}, {1, out1[0]}},
                         {{0, in0[1]}, {1, out1[1]}}};
        CHECK(validate_total(good).ok());
        CHECK(is_strongly_connected(good) == strongly_connected_oracle(good));
    }
    SUBCASE("self matched pieces are disconnected from each other") {
        TotalFlowGraph bad = t;
        bad.matching = {{{0, in0[0]}, {0, out0[0]}},
                        {{0, in0[1]}, {0, out0[1]}},
                        {{1, in1[0]}, {1, out1[0]}},
                        {{1, in1[1]}, {1, out1[1]}}};
        CHECK(validate_total(bad).ok());
        CHECK(!is_strongly_connected(bad));
        CHECK(!strongly_connected_oracle(bad));
    }
}

TEST_CASE("canonical total form is invariant under piece reordering") {
    TotalFlowGraph a;
    a.pieces.push_back(make_1qp());
    a.pieces.push_back(make_2qs());
    int nv0, nv1;
    auto vc0 = a.pieces[0].surf.vertex_class(&nv0);
    auto role0 = joint_roles(a.pieces[0], vc0, nv0);
    auto vc1 = a.pieces[1].surf.vertex_class(&nv1);
    auto role1 = joint_roles(a.pieces[1], vc1, nv1);
    std::vector<int> in0, out0, in1, out1;
    for (int v = 0; v < nv0; ++v) (role0[v] == -1 ? in0 : out0).push_back(v);
    for (int v = 0; v < nv1; ++v) (role1[v] == -1 ? in1 : out1).push_back(v);
    a.matching = {{{0, in0[0]}, {1, out1[0]}},
                  {{1, in1[0]}, {0, out0[0]}},
                  {{1, in1[1]}, {1, out1[1]}}};
    CHECK(validate_total(a).ok());

    TotalFlowGraph b;
    b.pieces.push_back(a.pieces[1]);
    b.pieces.push_back(a.pieces[0]);
    for (auto [x, y] : a.matching) {
        x.piece = 1 - x.piece;
        y.piece = 1 - y.piece;
        b.matching.push_back({x, y});
    }
    CHECK(isomorphic(a, b));
}

TEST_CASE("spine duality round trips") {
    for (auto base : {make_1qp(), make_2qs()}) {
        auto x = spine_from_flow_graph(base);
        auto rep = validate_spine(x);
        INFO(rep.first_failure());
        CHECK(rep.ok());
        auto g2 = flow_graph_from_spine(x);
        CHECK(validate_individual(g2).ok());
        // duality is an involution up to isomorphism
        CHECK(canonical_form(base.surf) == canonical_form(g2.surf));
        CHECK(is_1qp(base) == is_1qp(g2));
        CHECK(is_2qs(base) == is_2qs(g2));
    }
}
