#include <doctest.h>

#include "flatdeg/cylsurface.hpp"
#include "flatdeg/surface.hpp"
#include "oracles.hpp"

using namespace flatdeg;

namespace {

PolygonSpec unit_square_torus() {
    PolygonSpec s;
    Polygon P;
    P.name = "0";
    P.v = {Vec2(0, 0), Vec2(1, 0), Vec2(1, 1), Vec2(0, 1)};
    s.polygons.push_back(P);
    s.glue = {{EdgeRef{0, 0}, EdgeRef{0, 2}}, {EdgeRef{0, 1}, EdgeRef{0, 3}}};
    return s;
}

std::vector<int> perm(const char* s, int n = 0) { return parse_permutation(s, n); }

}  // namespace

TEST_CASE("torus from a square") {
    PolySurface t = build_from_polygons(unit_square_torus());
    CHECK(t.signature().str() == "H(0)");
    CHECK(t.genus(0) == 1);
    CHECK(t.area(0) == 1);
    CHECK(t.warnings.size() == 1);  // regular vertex auto-marked
}

TEST_CASE("non-translation gluing is rejected") {
    PolygonSpec s = unit_square_torus();
    s.glue = {{EdgeRef{0, 3}, EdgeRef{0, 2}}, {EdgeRef{0, 0}, EdgeRef{0, 1}}};
    CHECK_THROWS_AS(build_from_polygons(s), Error);
    try {
        build_from_polygons(s);
    } catch (const Error& e) {
        CHECK(e.code() == "GluingMismatch");
    }
}

TEST_CASE("declared component that splits") {
    PolygonSpec s = unit_square_torus();
    Polygon P = s.polygons[0];
    P.name = "1";
    s.polygons.push_back(P);
    s.glue.push_back({EdgeRef{1, 0}, EdgeRef{1, 2}});
    s.glue.push_back({EdgeRef{1, 1}, EdgeRef{1, 3}});
    s.component_names = {"A"};
    try {
        build_from_polygons(s);
        FAIL("expected NotConnected");
    } catch (const Error& e) {
        CHECK(e.code() == "NotConnected");
    }
    s.component_names.clear();
    PolySurface two = build_from_polygons(s);
    CHECK(two.num_components() == 2);
    CHECK(two.signature().str() == "H(0)xH(0)");
}

TEST_CASE("L origami") {
    auto h = perm("(1 2)(3)"), v = perm("(1 3)(2)");
    PolySurface L = build_origami(h, v);
    CHECK(L.signature().str() == "H(2)");
    CHECK(L.genus(0) == 2);
    CHECK(L.area(0) == 3);
    // oracle: corner walk on squares
    CHECK(oracle::origami_zero_orders(h, v) == std::vector<int>{2});
    PolySurface sq = build_from_polygons(oracle::origami_squares(h, v));
    CHECK(sq.signature().str() == "H(2)");
    CylSurface cs = origami_cylinders(h, v);
    CHECK(cs.num_cyls() == 2);
    CHECK(cs.signature().str() == "H(2)");
}

TEST_CASE("origami with two orbits") {
    auto h = perm("(1 2)(3 4)"), v = perm("(1 3)(2)(4)");
    // the group generated acts transitively: 1-2 via h, 1-3 via v, 3-4 via h
    CHECK(oracle::transitive(h, v));
    PolySurface s = build_origami(h, v);
    CHECK(s.num_components() == 1);
    auto z = oracle::origami_zero_orders(h, v);
    StratumSignature sig = s.signature();
    CHECK(sig.parts[0].zeros == z);
    auto h2 = perm("(1 2)(3)(4)"), v2 = perm("(1)(2)(3 4)");
    PolySurface s2 = build_origami(h2, v2);
    CHECK(s2.num_components() == 2);
}

TEST_CASE("origami signatures agree with the square corner walk") {
    std::mt19937_64 rng(7);
    int checked = 0;
    for (int trial = 0; trial < 300; ++trial) {
        int n = 1 + static_cast<int>(rng() % 9);
        auto h = oracle::random_perm(n, rng), v = oracle::random_perm(n, rng);
        if (!oracle::transitive(h, v)) continue;
        CylSurface cs = origami_cylinders(h, v);
        PolySurface sq = build_from_polygons(oracle::origami_squares(h, v));
        auto sig = cs.signature();
        REQUIRE(sig.parts.size() == 1);
        CHECK(sig.parts[0].zeros == oracle::origami_zero_orders(h, v));
        CHECK(sq.signature().parts[0].zeros == sig.parts[0].zeros);
        CHECK(cs.area() == n);
        int g = cs.genus(0);
        int sum = 0;
        for (int k : sig.parts[0].zeros) sum += k;
        CHECK(sum == 2 * g - 2);
        PolySurface p = cs.to_poly();
        CHECK(p.signature().str() == sig.str());
        ++checked;
    }
    CHECK(checked > 100);
}

TEST_CASE("gl2 action") {
    auto L = build_origami(perm("(1 2)(3)"), perm("(1 3)(2)"));
    auto S = apply_gl2(L, Mat2{Q(1), Q(1), Q(0), Q(1)});
    CHECK(S.signature().str() == "H(2)");
    CHECK(S.area(0) == 3);
    auto D = apply_gl2(build_from_polygons(unit_square_torus()), Mat2{Q(2), Q(0), Q(0), Q(1)});
    CHECK(D.area(0) == 2);
    CHECK_THROWS_AS(apply_gl2(L, Mat2{Q(1), Q(0), Q(0), Q(-1)}), Error);
    CHECK(canonical_key(apply_gl2(L, Mat2{Q(1), Q(0), Q(0), Q(1)})) == canonical_key(L));
}

TEST_CASE("canonical form ignores labels") {
    auto h = perm("(1 2 3)(4)"), v = perm("(1 4)(2)(3)");
    PolySurface a = build_from_polygons(oracle::origami_squares(h, v));
    // relabel squares by a conjugating permutation
    std::vector<int> c = {2, 0, 3, 1}, ci(4);
    for (int i = 0; i < 4; ++i) ci[c[i]] = i;
    std::vector<int> h2(4), v2(4);
    for (int i = 0; i < 4; ++i) {
        h2[c[i]] = c[h[i]];
        v2[c[i]] = c[v[i]];
    }
    PolySurface b = build_from_polygons(oracle::origami_squares(h2, v2));
    CHECK(canonical_key(a) == canonical_key(b));
    PolySurface d = build_from_polygons(oracle::origami_squares(perm("(1 2 3 4)"), perm("(1)(2)(3)(4)", 4)));
    CHECK(canonical_key(a) != canonical_key(d));
}

TEST_CASE("cylinder key is invariant under re-cutting") {
    CylSurface a = origami_cylinders(perm("(1 2)(3)"), perm("(1 3)(2)"));
    CylSurface b = a;
    // shift the top start of cylinder 0 by one saddle connection
    auto& C = b.cyls[0];
    Q first = b.hscs[C.top[0]].len;
    std::rotate(C.top.begin(), C.top.begin() + 1, C.top.end());
    C.twist += first;
    b.finalize();
    CHECK(a.key() == b.key());
    CylSurface c = a;
    c.cyls[1].twist += Q(1, 2);
    c.finalize();
    CHECK(a.key() != c.key());
}
