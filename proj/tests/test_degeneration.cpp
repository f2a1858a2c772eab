#include <doctest.h>

#include "fixtures.hpp"
#include "flatdeg/degeneration.hpp"
#include "oracles.hpp"

#include <set>

using namespace flatdeg;
using fixtures::perm;

namespace {

TangentSpace stratum_of(const CylSurface& cs) { return stratum_tangent(cs.complex()); }

std::vector<int> nonzero_orders(const CylSurface& cs) {
    std::vector<int> z;
    for (int k : cs.vertex_order)
        if (k > 0) z.push_back(k);
    std::sort(z.rbegin(), z.rend());
    return z;
}

// Vertical collapse of whole rows of an origami: a square is glued to the first
// square above it outside the removed rows.
struct RowRemoval {
    std::vector<int> h, v;
};

RowRemoval remove_squares(const std::vector<int>& h, const std::vector<int>& v, const std::set<int>& gone) {
    int n = static_cast<int>(h.size());
    std::vector<int> keep, id(n, -1);
    for (int i = 0; i < n; ++i)
        if (!gone.count(i)) {
            id[i] = static_cast<int>(keep.size());
            keep.push_back(i);
        }
    RowRemoval r;
    for (int i : keep) {
        r.h.push_back(id[h[i]]);
        int j = v[i];
        while (gone.count(j)) j = v[j];
        r.v.push_back(id[j]);
    }
    return r;
}

int origami_components(const std::vector<int>& h, const std::vector<int>& v) {
    int n = static_cast<int>(h.size());
    std::vector<int> comp(n, -1);
    int k = 0;
    for (int s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> st{s};
        comp[s] = k;
        while (!st.empty()) {
            int x = st.back();
            st.pop_back();
            for (int y : {h[x], v[x]})
                if (comp[y] < 0) {
                    comp[y] = k;
                    st.push_back(y);
                }
        }
        ++k;
    }
    return k;
}

// Squares of the cylinder whose bottom starts at the square named by the tag.
std::set<int> cylinder_squares(const CylSurface& cs, int c, const std::vector<int>& h, const std::vector<int>& v) {
    int sq = std::stoi(cs.hscs[cs.cyls[c].bottom[0]].tag.substr(2)) - 1;
    std::set<int> out;
    for (int k = 0; k < cs.cyls[c].height; ++k) {
        int j = sq;
        do {
            out.insert(j);
            j = h[j];
        } while (j != sq);
        sq = v[sq];
    }
    return out;
}

Subspace face_span(const CellComplex& cx) {
    CMat b;
    for (auto& f : cx.faces) {
        CVec x = zeros(cx.num_edges());
        for (auto [e, sg] : f) x[e] += QI(sg);
        b.push_back(x);
    }
    return Subspace(cx.num_edges(), b);
}

CylSurface with_heights(CylSurface cs, const std::vector<Q>& h) {
    for (size_t c = 0; c < h.size(); ++c) cs.cyls[c].height = h[c];
    cs.finalize();
    return cs;
}

}  // namespace

TEST_CASE("collapse time formula") {
    CylSurface cs = with_heights(fixtures::l_cyl(), {Q(1), Q(2)});
    auto a = collapse_time(cs, {0, 1}, {QI(Q(0), Q(-1)), QI(Q(0), Q(-1))});
    CHECK(a.t == 1);
    CHECK(a.cyls == std::vector<int>{0});
    auto b = collapse_time(cs, {0, 1}, {QI(Q(0), Q(-1)), QI(Q(0), Q(-2))});
    CHECK(b.t == 1);
    CHECK(b.cyls == std::vector<int>{0, 1});
    auto s = collapse_time(cs, {0, 1}, {QI(Q(0), Q(-1)), QI(Q(0), Q(-2))});
    CHECK(s.t == 1);
    CHECK_THROWS_AS(collapse_time(cs, {0, 1}, {QI(1), QI(Q(0), Q(1))}), Error);
    // minus i sigma collapses everything at time one
    std::vector<QI> sig;
    for (int c = 0; c < 2; ++c) sig.push_back(QI(Q(0), -cs.cyls[c].height));
    auto w = collapse_time(cs, {0, 1}, sig);
    CHECK(w.t == 1);
    CHECK(w.cyls.size() == 2);
}

TEST_CASE("collapsing the whole torus is refused") {
    CylSurface torus = origami_cylinders(perm("(1)"), perm("(1)"));
    TangentSpace t = stratum_of(torus);
    try {
        collapse(t, torus, {0}, {QI(Q(0), Q(-1))});
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == "WholeSurface");
    }
}

TEST_CASE("simple cylinder of the L origami") {
    CylSurface cs = fixtures::l_cyl();
    TangentSpace t = stratum_of(cs);
    int top = cs.circumference(0) == 1 ? 0 : 1;
    Degeneration d = collapse(t, cs, {top}, {QI(Q(0), Q(-1))});
    CHECK(d.map.divergent);
    CHECK(d.map.limit.num_components == 1);
    CHECK(d.map.limit.genus(0) == 1);
    CHECK(d.map.limit.area() == 2);
    CHECK(d.boundary.rank() == 1);
    CHECK(d.boundary.dim() == t.dim() - 1);
    DichotomyResult r = classify_dichotomy(d);
    CHECK(r.violations.empty());
    CHECK(r.verdict == Verdict::RankReducing);
    CHECK(r.acyclic);
    REQUIRE(r.certificate);
    for (auto& e : d.map.graph) CHECK((*r.certificate)[e.hsc] == QI(e.length));
    CHECK(is_rank_reducing_by_cycles(d));
    // sheared so the cylinder contains no vertical saddle connection: the path stays in H(2)
    CylSurface sh = cs;
    sh.cyls[top].twist = Q(1, 3);
    sh.finalize();
    Degeneration n = collapse(stratum_of(sh), sh, {top}, {QI(Q(0), Q(-1))});
    CHECK(!n.map.divergent);
    CHECK(n.map.limit.signature().str() == "H(2)");
    CHECK(!is_rank_reducing_by_cycles(n));
    CHECK(face_span(sh.complex()).contains(n.vanishing));
}

TEST_CASE("vertical collapse of origami rows matches square removal") {
    std::mt19937_64 rng(21);
    int done = 0, pinched = 0;
    for (int tries = 0; tries < 5000 && done < 40; ++tries) {
        int n = 3 + static_cast<int>(rng() % 8);
        auto h = oracle::random_perm(n, rng), v = oracle::random_perm(n, rng);
        if (!oracle::transitive(h, v)) continue;
        if (oracle::origami_zero_orders(h, v).empty()) continue;
        CylSurface cs = origami_cylinders(h, v);
        if (cs.num_cyls() < 2) continue;
        int c = static_cast<int>(rng() % cs.num_cyls());
        std::vector<Q> hs, tw;
        for (int k = 0; k < cs.num_cyls(); ++k) {
            hs.push_back(k == c ? Q(0) : cs.cyls[k].height);
            tw.push_back(cs.cyls[k].twist);
        }
        std::set<int> gone = cylinder_squares(cs, c, h, v);
        // a vertical cycle of squares inside the removed rows pinches
        bool pinch = false;
        for (int i : gone) {
            int j = v[i];
            while (j != i && gone.count(j)) j = v[j];
            if (j == i) pinch = true;
        }
        if (pinch) {
            try {
                collapse_engine(cs, hs, tw);
                FAIL("pinched vertical loop not reported");
            } catch (const Error& e) {
                CHECK(e.code() == "PinchedCurve");
            }
            ++pinched;
            continue;
        }
        CollapseMap m = collapse_engine(cs, hs, tw);
        RowRemoval rr = remove_squares(h, v, gone);
        CHECK(m.limit.num_components == origami_components(rr.h, rr.v));
        CHECK(nonzero_orders(m.limit) == oracle::origami_zero_orders(rr.h, rr.v));
        CHECK(m.limit.area() == Q(static_cast<long>(rr.h.size())));
        // period of the limit pulls back to the deformed period
        CVec py = pull_back(m.limit.complex().period(), m.chains);
        for (int s = 0; s < cs.num_hscs(); ++s) CHECK(py[s] == QI(cs.hscs[s].len));
        ++done;
    }
    CHECK(done == 40);
    CHECK(pinched > 0);
}

TEST_CASE("collapses in the stratum satisfy the dichotomy") {
    std::mt19937_64 rng(5);
    int done = 0, preserving = 0, reducing = 0;
    for (int tries = 0; tries < 5000 && done < 40; ++tries) {
        int n = 3 + static_cast<int>(rng() % 6);
        auto h = oracle::random_perm(n, rng), v = oracle::random_perm(n, rng);
        if (!oracle::transitive(h, v)) continue;
        if (oracle::origami_zero_orders(h, v).empty()) continue;
        CylSurface cs = origami_cylinders(h, v);
        TangentSpace t = stratum_of(cs);
        auto classes = equivalence_classes(t, cs);
        auto& k = classes[rng() % classes.size()];
        if (!k.cylinders_generic) continue;
        std::vector<QI> a;
        try {
            a = find_typical_vector(t, cs, k.cyls, rng);
        } catch (const Error& e) {
            CHECK(e.code() == "NoDegeneration");
            continue;
        }
        Degeneration d = collapse(t, cs, k.cyls, a);
        DichotomyResult r = classify_dichotomy(d);
        CHECK(r.violations.empty());
        for (auto& s : r.violations) MESSAGE(s);
        (r.verdict == Verdict::RankReducing ? reducing : preserving)++;
        ++done;
    }
    CHECK(done == 40);
    CHECK(reducing > 0);
    CHECK(preserving > 0);
}

TEST_CASE("graph utilities") {
    CollapseMap empty;
    CHECK(export_graph(empty) == "digraph collapse {\n}\n");
    CollapseMap one;
    one.graph.push_back(GraphEdge{0, 0, 1, Q(1), Q(2)});
    std::string dot = export_graph(one);
    CHECK(dot.find("v0 -> v1 [label=\"2\"") != std::string::npos);
    CHECK(graph_acyclic(one.graph));
    std::vector<GraphEdge> cyc{{0, 0, 1, Q(1), Q(1)}, {1, 1, 0, Q(1), Q(1)}};
    CHECK(!graph_acyclic(cyc));
    CHECK(strongly_connected_components(cyc).size() == 1);
    CollapseMap bal;
    bal.graph = cyc;
    CHECK(export_graph(bal).find("// balanced: 1 1") != std::string::npos);
    std::vector<GraphEdge> loop{{0, 2, 2, Q(1), Q(1)}};
    CHECK(!graph_acyclic(loop));
}

TEST_CASE("collapse onto a cylinder") {
    CylSurface torus = origami_cylinders(perm("(1)"), perm("(1)"));
    CHECK(collapse_complement_onto(torus, 0).key() == torus.key());
    CylSurface cs = fixtures::l_cyl();
    int top = cs.circumference(0) == 1 ? 0 : 1;
    cs.cyls[top].twist = Q(1, 2);
    cs.finalize();
    CylSurface one = collapse_complement_onto(cs, 1 - top);
    CHECK(one.num_cyls() == 1);
    CHECK(one.circumference(0) == 2);
    CHECK(one.signature().str() == "H(2)");
}
