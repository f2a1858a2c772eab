#include "flatdeg/rel_flow.hpp"

#include <algorithm>
#include <map>

namespace flatdeg {

namespace {

Q real_value(const QI& z, const char* what) {
    if (!z.is_real()) fail("BadArgument", std::string(what) + " must be real");
    return z.re;
}

// Lengths len - dxi(s) and twists tw - dxi(c) applied in place; no positivity check.
void shift_periods(CylSurface& cs, const CVec& d) {
    for (int s = 0; s < cs.num_hscs(); ++s) cs.hscs[s].len -= real_value(d[s], "rel deformation");
    for (int c = 0; c < cs.num_cyls(); ++c) cs.cyls[c].twist -= real_value(d[cs.cross_edge(c)], "rel deformation");
}

CVec coboundary(const CylSurface& cs, const std::vector<QI>& lambda) {
    CVec d = zeros(cs.num_hscs() + cs.num_cyls());
    for (int s = 0; s < cs.num_hscs(); ++s) d[s] = lambda[cs.end_vertex[s]] - lambda[cs.start_vertex[s]];
    for (int c = 0; c < cs.num_cyls(); ++c)
        d[cs.cross_edge(c)] = lambda[cs.start_vertex[cs.cyls[c].top[0]]] - lambda[cs.start_vertex[cs.cyls[c].bottom[0]]];
    return d;
}

}  // namespace

SchifferData lambda_from_rel(const CellComplex& cx, const CVec& xi) {
    if (static_cast<int>(xi.size()) != cx.num_edges()) fail("BadArgument", "cocycle has the wrong length");
    if (!cx.is_cocycle(xi)) fail("NotCocycle", "xi does not vanish on face boundaries");
    if (!cx.ker_p().contains(xi)) fail("NotRel", "xi has nonzero absolute periods");
    int n = cx.num_vertices;
    std::vector<std::vector<std::pair<int, int>>> adj(n);
    for (int e = 0; e < cx.num_edges(); ++e) {
        adj[cx.edges[e].from].push_back({e, +1});
        adj[cx.edges[e].to].push_back({e, -1});
    }
    SchifferData out;
    out.lambda.assign(n, QI());
    std::vector<bool> seen(n, false);
    for (int r = 0; r < n; ++r) {
        if (seen[r]) continue;
        std::vector<int> comp{r}, st{r};
        seen[r] = true;
        while (!st.empty()) {
            int x = st.back();
            st.pop_back();
            for (auto [e, sg] : adj[x]) {
                int y = sg > 0 ? cx.edges[e].to : cx.edges[e].from;
                if (seen[y]) continue;
                seen[y] = true;
                out.lambda[y] = sg > 0 ? out.lambda[x] + xi[e] : out.lambda[x] - xi[e];
                comp.push_back(y);
                st.push_back(y);
            }
        }
        QI mean;
        for (int v : comp) mean += out.lambda[v];
        mean /= QI(static_cast<int>(comp.size()));
        for (int v : comp) out.lambda[v] -= mean;
    }
    for (int e = 0; e < cx.num_edges(); ++e)
        if (out.lambda[cx.edges[e].to] - out.lambda[cx.edges[e].from] != xi[e])
            fail("InternalError", "lambda does not reproduce xi");
    return out;
}

CylSurface schiffer(const CylSurface& cs, const SchifferData& d) {
    if (static_cast<int>(d.lambda.size()) != cs.num_vertices) fail("BadArgument", "one lambda per point of Sigma");
    std::vector<Q> lam;
    for (auto& z : d.lambda) lam.push_back(real_value(z, "horizontal Schiffer data"));
    for (int s = 0; s < cs.num_hscs(); ++s) {
        Q from_left = std::max(lam[cs.start_vertex[s]], Q(0));
        Q from_right = std::max(Q(-lam[cs.end_vertex[s]]), Q(0));
        const Q& len = cs.hscs[s].len;
        if (from_left >= len || from_right >= len)
            fail("StarNotEmbedded", "a star segment reaches the far end of saddle connection " + std::to_string(s));
        if (from_left + from_right >= len)
            fail("StarsOverlap", "star segments meet on saddle connection " + std::to_string(s));
    }
    CylSurface out = cs;
    CVec delta = coboundary(cs, d.lambda);
    for (auto& x : delta) x = -x;
    shift_periods(out, delta);
    out.finalize();
    return out;
}

PolySurface schiffer(const PolySurface& s, const SchifferData& d) {
    if (static_cast<int>(d.lambda.size()) != s.num_classes) fail("BadArgument", "one lambda per point of Sigma");
    const QI* dir = nullptr;
    for (auto& z : d.lambda)
        if (!z.is_zero()) {
            dir = &z;
            break;
        }
    if (!dir) return s;
    for (auto& z : d.lambda)
        if (sgn(z.re * dir->im - z.im * dir->re) != 0)
            fail("BadArgument", "Schiffer data must be collinear");
    Periodic p = decompose_or_throw(s, Vec2::from(*dir));
    SchifferData local;
    QI rot = dir->conj() / QI(dir->norm());
    for (int v = 0; v < p.cyl.num_vertices; ++v) local.lambda.push_back(rot * d.lambda[p.vertex_map[v]]);
    CylSurface moved = schiffer(p.cyl, local);
    return apply_gl2(moved.to_poly(), p.inverse);
}

CylSurface rel_flow_at(const CylSurface& cs, const CVec& xi, const Q& t) {
    lambda_from_rel(cs.complex(), xi);
    CylSurface out = cs;
    shift_periods(out, scale(QI(t), xi));
    for (int s = 0; s < out.num_hscs(); ++s)
        if (sgn(out.hscs[s].len) <= 0) fail("BadArgument", "time is not below the stopping time");
    out.finalize();
    return out;
}

RelFlowResult rel_flow_limit(const CylSurface& cs, const CVec& xi) {
    CellComplex cx = cs.complex();
    RelFlowResult r;
    r.schiffer = lambda_from_rel(cx, xi);
    if (!is_real(xi)) fail("BadArgument", "the flow direction must be real");
    bool have = false;
    for (int s = 0; s < cs.num_hscs(); ++s) {
        if (sgn(xi[s].re) <= 0) continue;
        Q ratio = cs.hscs[s].len / xi[s].re;
        if (!have || ratio < r.tau) {
            r.tau = ratio;
            have = true;
        }
    }
    if (!have) return r;
    r.bounded = true;
    for (int s = 0; s < cs.num_hscs(); ++s)
        if (cs.hscs[s].len == r.tau * xi[s].re) r.collapsing.push_back(s);

    CylSurface moved = cs;
    shift_periods(moved, scale(QI(r.tau), xi));
    std::vector<int> id(cs.num_hscs(), -1);
    CylSurface& y = r.limit;
    for (int s = 0; s < cs.num_hscs(); ++s)
        if (sgn(moved.hscs[s].len) > 0) {
            id[s] = y.num_hscs();
            y.hscs.push_back(moved.hscs[s]);
        }
    for (auto& c : moved.cyls) {
        Cyl n{c.height, c.twist, {}, {}};
        for (int s : c.bottom)
            if (id[s] >= 0) n.bottom.push_back(id[s]);
        for (int s : c.top)
            if (id[s] >= 0) n.top.push_back(id[s]);
        if (n.bottom.empty() || n.top.empty()) fail("InternalError", "a cylinder lost its boundary");
        y.cyls.push_back(n);
    }
    y.finalize();

    int ny = y.num_hscs() + y.num_cyls();
    r.chains.assign(cs.num_hscs() + cs.num_cyls(), zeros(ny));
    for (int s = 0; s < cs.num_hscs(); ++s)
        if (id[s] >= 0) r.chains[s][id[s]] = QI(1);
    for (int c = 0; c < cs.num_cyls(); ++c) r.chains[cs.cross_edge(c)][y.cross_edge(c)] = QI(1);

    CVec py = pull_back(y.complex().period(), r.chains);
    CVec expect = sub(cx.period(), scale(QI(r.tau), xi));
    if (py != expect) fail("InternalError", "limit periods differ from the flowed periods");

    CMat v;
    for (int s : r.collapsing) v.push_back(unit(cx.num_edges(), s));
    r.vanishing = Subspace(cx.num_edges(), v);
    return r;
}

bool DoubleDegeneration::all_hold() const {
    for (auto& [name, ok] : postconditions)
        if (!ok) return false;
    return true;
}

DoubleDegeneration double_degeneration(const TangentSpace& t, const CylSurface& cs, const std::vector<int>& cls,
                                       const std::vector<QI>& a) {
    DoubleDegeneration dd;
    dd.inner = collapse(t, cs, cls, a);
    dd.verdict = classify_dichotomy(dd.inner);
    if (!dd.verdict.violations.empty())
        fail("NotReducing", "collapse violates the dichotomy: " + dd.verdict.violations.front());
    if (dd.verdict.verdict != Verdict::RankReducing) fail("NotReducing", "collapse preserves rank");
    if (!dd.verdict.certificate) fail("NoCertificate", "no rel vector scales the graph");

    const CylSurface& y = dd.inner.map.limit;
    const TangentSpace& ty = dd.inner.boundary;
    const auto& graph = dd.inner.map.graph;
    CellComplex cy = y.complex();
    dd.eta = real_part(*dd.verdict.certificate);
    if (!ty.T.contains(dd.eta) || !cy.ker_p().contains(dd.eta))
        fail("NoCertificate", "real part of the certificate left the rel subspace");
    for (auto& e : graph)
        if (dd.eta[e.hsc] != QI(e.length)) fail("NoCertificate", "certificate does not match a graph edge");
    dd.eta_unique = ty.rel() == 1;

    // cylinders collapsing together must keep their height ratios
    const auto& cv = dd.inner.when.cyls;
    for (size_t i = 1; i < cv.size(); ++i)
        if (!height_ratio_constant(t, cs, cv[0], cv[i]))
            fail("AssumptionFails", "heights of the collapsing cylinders are not generically proportional");
    // everything the flow contracts must move with the graph, nothing else may shrink away first
    if (graph.empty()) fail("NoCertificate", "empty graph");
    int e0 = graph.front().hsc;
    CVec f0 = functional(ty, unit(cy.num_edges(), e0));
    for (int s = 0; s < y.num_hscs(); ++s) {
        Q eta_s = real_value(dd.eta[s], "certificate");
        if (eta_s > y.hscs[s].len)
            fail("AssumptionFails", "saddle connection " + std::to_string(s) + " reaches zero length before the graph");
        if (eta_s != y.hscs[s].len) continue;
        CVec fs = functional(ty, unit(cy.num_edges(), s));
        if (scale(QI(y.hscs[e0].len), fs) != scale(QI(y.hscs[s].len), f0))
            fail("AssumptionFails", "saddle connection " + std::to_string(s) + " is parallel to the graph but not generically");
    }

    dd.outer = rel_flow_limit(y, dd.eta);
    if (!dd.outer.bounded || dd.outer.tau != 1) fail("InternalError", "rel flow does not stop at time one");

    BoundaryTangent second = boundary_tangent(ty, dd.outer.limit, dd.outer.chains);
    dd.doub = second.boundary;

    int nx = cs.num_hscs() + cs.num_cyls();
    int nz = dd.outer.limit.num_hscs() + dd.outer.limit.num_cyls();
    CMat comp(nx, zeros(nz));
    for (int e = 0; e < nx; ++e)
        for (int j = 0; j < static_cast<int>(dd.outer.chains.size()); ++j)
            if (!dd.inner.map.chains[e][j].is_zero()) axpy(comp[e], dd.inner.map.chains[e][j], dd.outer.chains[j]);
    BoundaryTangent both = boundary_tangent(t, dd.outer.limit, comp);
    dd.doub_in_source = both.in_source;

    CMat lc;
    for (int c : cls) {
        lc.push_back(unit(nx, cs.cross_edge(c)));
        for (int s : cs.cyls[c].bottom) lc.push_back(unit(nx, s));
        for (int s : cs.cyls[c].top) lc.push_back(unit(nx, s));
    }
    for (int s = 0; s < cs.num_hscs(); ++s)
        if (generically_parallel(t, cs, s, cls.front())) lc.push_back(unit(nx, s));
    dd.lc = Subspace(nx, lc);

    CellComplex cx = cs.complex();
    CMat faces, cores;
    for (auto& f : cx.faces) {
        CVec x = zeros(nx);
        for (auto [e, sg] : f) x[e] += QI(sg);
        faces.push_back(x);
    }
    int face_dim = Subspace(nx, faces).dim();
    for (int c : cls) faces.push_back(cs.core_chain(c));
    dd.core_dim = Subspace(nx, faces).dim() - face_dim;
    dd.genus_drop = cx.total_genus() - dd.outer.limit.complex().total_genus();

    dd.postconditions = {
        {"inner graph acyclic", dd.verdict.acyclic},
        {"dimension drops by one", dd.doub.dim() == ty.dim() - 1},
        {"rank drops by one", dd.doub.rank() == t.rank() - 1},
        {"rel stays zero", t.rel() != 0 || dd.doub.rel() == 0},
        {"certificate unique", t.rel() != 0 || dd.eta_unique},
        {"tangent is the annihilator of L_C", dd.doub_in_source == t.T.annihilated_by(dd.lc.basis())},
        {"genus drop bounded by core curves", dd.genus_drop >= dd.core_dim},
    };
    return dd;
}

}  // namespace flatdeg
