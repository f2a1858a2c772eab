#pragma once
// Shared test surfaces.

#include "flatdeg/cylsurface.hpp"
#include "flatdeg/surface.hpp"

#include <utility>
#include <vector>

namespace fixtures {

using namespace flatdeg;

inline PolySurface torus() {
    PolygonSpec s;
    Polygon P;
    P.name = "0";
    P.v = {Vec2(0, 0), Vec2(1, 0), Vec2(1, 1), Vec2(0, 1)};
    s.polygons.push_back(P);
    s.glue = {{EdgeRef{0, 0}, EdgeRef{0, 2}}, {EdgeRef{0, 1}, EdgeRef{0, 3}}};
    s.marks = {EdgeRef{0, 0}};
    return build_from_polygons(s);
}

inline std::vector<int> perm(const char* s, int n = 0) { return parse_permutation(s, n); }

inline PolySurface l_origami() { return build_origami(perm("(1 2)(3)"), perm("(1 3)(2)")); }
inline CylSurface l_cyl() { return origami_cylinders(perm("(1 2)(3)"), perm("(1 3)(2)")); }

// Rectangle [0,n]x[0,1] cut into unit edges on top and bottom; sides glued by a
// translation, bottom and top unit edges paired by half-translations.
// bottom pairs index bottom unit edges 0..n-1 from the left; top pairs likewise.
inline PolySurface folded_rectangle(int n, const std::vector<std::pair<int, int>>& bottom,
                                    const std::vector<std::pair<int, int>>& top) {
    PolygonSpec s;
    Polygon P;
    P.name = "R";
    for (int k = 0; k <= n; ++k) P.v.push_back(Vec2(k, 0));
    for (int k = n; k >= 0; --k) P.v.push_back(Vec2(k, 1));
    s.polygons.push_back(P);
    // edges: bottom k -> k, right side n, top unit edge at x in [k,k+1] -> index 2n - k, left side 2n+1
    auto bot = [&](int k) { return EdgeRef{0, k}; };
    auto tp = [&](int k) { return EdgeRef{0, 2 * n - k}; };
    s.glue.push_back({EdgeRef{0, n}, EdgeRef{0, 2 * n + 1}});
    s.flip.push_back(false);
    for (auto [a, b] : bottom) {
        s.glue.push_back({bot(a), bot(b)});
        s.flip.push_back(true);
    }
    for (auto [a, b] : top) {
        s.glue.push_back({tp(a), tp(b)});
        s.flip.push_back(true);
    }
    return build_from_polygons(s);
}

inline PolySurface pillowcase() { return folded_rectangle(2, {{0, 1}}, {{0, 1}}); }

}  // namespace fixtures

namespace fixtures {

// Quotient of the L origami by its hyperelliptic involution: Q(1,-1^5).
inline PolySurface q_one_minus_five() {
    PolygonSpec s;
    Polygon A, B;
    A.name = "A";
    A.v = {Vec2(0, 0), Vec2(1, 0), Vec2(Q(3, 2), 0), Vec2(2, 0), Vec2(2, Q(1, 2)), Vec2(1, Q(1, 2)),
           Vec2(0, Q(1, 2))};
    B.name = "B";
    B.v = {Vec2(0, 0), Vec2(1, 0), Vec2(1, Q(1, 2)), Vec2(Q(1, 2), Q(1, 2)), Vec2(0, Q(1, 2))};
    s.polygons = {A, B};
    s.glue = {{EdgeRef{0, 1}, EdgeRef{0, 2}}, {EdgeRef{0, 3}, EdgeRef{0, 6}}, {EdgeRef{0, 4}, EdgeRef{0, 5}},
              {EdgeRef{0, 0}, EdgeRef{1, 0}}, {EdgeRef{1, 1}, EdgeRef{1, 4}}, {EdgeRef{1, 2}, EdgeRef{1, 3}}};
    s.flip = {true, false, true, true, false, true};
    return build_from_polygons(s);
}

}  // namespace fixtures
