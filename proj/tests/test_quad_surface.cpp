#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "veerflow/quad_surface.hpp"

using namespace vf;

namespace {

QuadSurface torus_quad() {
    // one quad, opposite sides glued by translation
    QuadSurface s = QuadSurface::from_polygons({4});
    s.pair_slots(0, 2, true);
    s.pair_slots(1, 3, true);
    return s;
}

QuadSurface rp2_quad() {
    // one quad, opposite sides glued antipodally
    QuadSurface s = QuadSurface::from_polygons({4});
    s.pair_slots(0, 2, false);
    s.pair_slots(1, 3, false);
    return s;
}

QuadSurface sphere_two_quads() {
    QuadSurface s = QuadSurface::from_polygons({4, 4});
    s.pair_slots(0, 7, true);
    s.pair_slots(1, 6, true);
    s.pair_slots(2, 5, true);
    s.pair_slots(3, 4, true);
    return s;
}

}  // namespace

TEST_CASE("euler characteristic of the standard cellulations") {
    CHECK(sphere_two_quads().euler_characteristic() == 2);
    CHECK(torus_quad().euler_characteristic() == 0);
    CHECK(rp2_quad().euler_characteristic() == 1);
}

TEST_CASE("vertex classes") {
    int nv;
    torus_quad().vertex_class(&nv);
    CHECK(nv == 1);
    rp2_quad().vertex_class(&nv);
    CHECK(nv == 2);
    sphere_two_quads().vertex_class(&nv);
    CHECK(nv == 4);
}

TEST_CASE("orientability and genus") {
    auto t = orientability_and_genus(torus_quad());
    CHECK(t.orientable);
    CHECK(t.genus == 1);
    auto p = orientability_and_genus(rp2_quad());
    CHECK(!p.orientable);
    CHECK(p.genus == 1);  // one crosscap
    auto s = orientability_and_genus(sphere_two_quads());
    CHECK(s.orientable);
    CHECK(s.genus == 0);
}

TEST_CASE("subdividing an edge keeps the euler characteristic") {
    // torus quad with one side split in two: one pentagon-like polygon pair is
    // simulated by a 5-gon and matching pairings
    QuadSurface s = QuadSurface::from_polygons({6});
    // hexagon with sides a b c a' b' c' glued as a torus (standard hexagonal torus)
    s.pair_slots(0, 3, true);
    s.pair_slots(1, 4, true);
    s.pair_slots(2, 5, true);
    CHECK(s.euler_characteristic() == 0);
}

TEST_CASE("two sidedness") {
    {
        // any cycle on the torus is two-sided; use the meridian edge of the quad
        QuadSurface s = torus_quad();
        EdgeCycle c{{0, true}};
        CHECK(is_two_sided(s, c));
    }
    {
        // core cycle on RP^2 (both edges of the quad cellulation) is one-sided
        QuadSurface s = rp2_quad();
        EdgeCycle c{{0, true}, {1, true}};
        CHECK(!is_two_sided(s, c));
    }
    {
        // boundary of a quad inside the sphere: the equator cycle of the
        // two-quad sphere, which bounds a disc
        QuadSurface s = sphere_two_quads();
        EdgeCycle c;
        c.push_back({0, true});
        c.push_back({1, true});
        c.push_back({2, true});
        c.push_back({3, true});
        CHECK(is_two_sided(s, c));
    }
}

TEST_CASE("cut along meridian of torus gives an annulus") {
    QuadSurface s = torus_quad();
    EdgeCycle c{{0, true}};
    auto cut = cut_along_edge_cycle(s, c);
    CHECK(cut.boundary_circles == 2);
    CHECK(cut.surface.euler_characteristic() == 0);
    auto og = orientability_and_genus(cut.surface);
    CHECK(og.orientable);
}

TEST_CASE("cut along one-sided core cycle gives one boundary circle") {
    QuadSurface s = rp2_quad();
    EdgeCycle c{{0, true}, {1, true}};
    auto cut = cut_along_edge_cycle(s, c);
    CHECK(cut.boundary_circles == 1);
}

TEST_CASE("cut then reglue reproduces the surface") {
    QuadSurface s = torus_quad();
    EdgeCycle c{{0, true}};
    auto cut = cut_along_edge_cycle(s, c);
    QuadSurface t = cut.surface;
    t.pair_slots(0, 2, true);
    CHECK(isomorphic(s, t));
}

TEST_CASE("canonical form distinguishes torus from klein bottle and rp2") {
    QuadSurface kb = QuadSurface::from_polygons({4});
    kb.pair_slots(0, 2, true);
    kb.pair_slots(1, 3, false);
    CHECK(canonical_form(torus_quad()) != canonical_form(kb));
    CHECK(canonical_form(torus_quad()) != canonical_form(rp2_quad()));
    CHECK(isomorphic(torus_quad(), torus_quad()));
    // relabeled torus: start gluing from a rotated slot
    QuadSurface t2 = QuadSurface::from_polygons({4});
    t2.pair_slots(1, 3, true);
    t2.pair_slots(2, 0, true);
    CHECK(isomorphic(torus_quad(), t2));
}
