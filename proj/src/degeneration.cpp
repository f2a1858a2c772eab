#include "flatdeg/degeneration.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace flatdeg {

namespace {

Q pmod(const Q& x, const Q& m) {
    Q q = x / m;
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return x - m * Q(f);
}

class Engine {
public:
    Engine(const CylSurface& cs, const std::vector<Q>& h, const std::vector<Q>& tw) : cs_(cs), h_(h), tw_(tw) {
        int nc = cs.num_cyls();
        if (static_cast<int>(h.size()) != nc || static_cast<int>(tw.size()) != nc)
            fail("BadArgument", "one height and twist per cylinder");
        coll_.assign(nc, false);
        for (int c = 0; c < nc; ++c) {
            if (sgn(h[c]) < 0) fail("BadArgument", "negative height");
            coll_[c] = sgn(h[c]) == 0;
            circ_.push_back(cs.circumference(c));
        }
        std::vector<bool> alive(cs.num_components, false);
        for (int c = 0; c < nc; ++c)
            if (!coll_[c]) alive[cs.cyl_component[c]] = true;
        for (int k = 0; k < cs.num_components; ++k)
            if (!alive[k]) fail("WholeSurface", "every cylinder of a component collapses");
    }

    CollapseMap run() {
        int ns = cs_.num_hscs(), nc = cs_.num_cyls();
        crit_b_.assign(nc, {});
        crit_t_.assign(nc, {});
        for (int s = 0; s < ns; ++s) {
            int a = cs_.above[s];
            Q p = cs_.off_bottom[s];
            if (!coll_[a]) {
                crit_b_[a].insert(p);
            } else {
                Q r = pmod(p - tw_[a], circ_[a]);
                if (top_start_at(a, r) >= 0) divergent_ = true;
                else up_from_top(a, r);
            }
            int g = cs_.below[s];
            Q q = cs_.off_top[s];
            if (!coll_[g]) {
                crit_t_[g].insert(q);
            } else {
                Q r = pmod(q + tw_[g], circ_[g]);
                if (bottom_start_at(g, r) >= 0) divergent_ = true;
                else down_from_bottom(g, r);
            }
        }
        build_limit();
        build_chains();
        check_periods();
        CollapseMap m;
        for (int c = 0; c < nc; ++c)
            if (coll_[c]) m.collapsing.push_back(c);
        m.divergent = divergent_;
        m.limit = y_;
        m.chains = chains_;
        m.cyl_map = cyl_map_;
        m.graph = graph_;
        return m;
    }

private:
    const CylSurface& cs_;
    std::vector<Q> h_, tw_, circ_;
    std::vector<bool> coll_;
    std::vector<std::set<Q>> crit_b_, crit_t_;
    bool divergent_ = false;

    CylSurface y_;
    std::vector<int> cyl_map_;
    std::vector<std::vector<Q>> bpts_, tpts_;
    std::vector<std::vector<int>> bid_, tid_;  // limit saddle connection per segment
    CMat chains_;
    std::vector<GraphEdge> graph_;

    int start_at(const std::vector<int>& side, const Q& p) const {
        Q x = 0;
        for (int s : side) {
            if (x == p) return s;
            x += cs_.hscs[s].len;
        }
        return -1;
    }
    int bottom_start_at(int c, const Q& p) const { return start_at(cs_.cyls[c].bottom, p); }
    int top_start_at(int c, const Q& p) const { return start_at(cs_.cyls[c].top, p); }

    std::pair<int, Q> locate(const std::vector<int>& side, const Q& p) const {
        Q x = 0;
        for (int s : side) {
            const Q& len = cs_.hscs[s].len;
            if (p < x + len) return {s, p - x};
            x += len;
        }
        fail("InternalError", "position outside a circle");
    }

    void up_from_top(int c, Q p) {
        std::set<std::pair<int, Q>> seen;
        while (seen.insert({c, p}).second) {
            auto [s, o] = locate(cs_.cyls[c].top, p);
            int a = cs_.above[s];
            Q q = pmod(cs_.off_bottom[s] + o, circ_[a]);
            if (!coll_[a]) {
                crit_b_[a].insert(q);
                return;
            }
            Q r = pmod(q - tw_[a], circ_[a]);
            if (top_start_at(a, r) >= 0) {
                divergent_ = true;
                return;
            }
            c = a;
            p = r;
        }
        fail("PinchedCurve", "a vertical loop stays inside the collapsing cylinders");
    }

    void down_from_bottom(int c, Q p) {
        std::set<std::pair<int, Q>> seen;
        while (seen.insert({c, p}).second) {
            auto [s, o] = locate(cs_.cyls[c].bottom, p);
            int g = cs_.below[s];
            Q q = pmod(cs_.off_top[s] + o, circ_[g]);
            if (!coll_[g]) {
                crit_t_[g].insert(q);
                return;
            }
            Q r = pmod(q + tw_[g], circ_[g]);
            if (bottom_start_at(g, r) >= 0) {
                divergent_ = true;
                return;
            }
            c = g;
            p = r;
        }
        fail("PinchedCurve", "a vertical loop stays inside the collapsing cylinders");
    }

    static int index_of(const std::vector<Q>& pts, const Q& p) {
        auto it = std::lower_bound(pts.begin(), pts.end(), p);
        if (it == pts.end() || *it != p) return -1;
        return static_cast<int>(it - pts.begin());
    }

    Q seg_len(const std::vector<Q>& pts, int k, const Q& circ) const {
        if (k + 1 < static_cast<int>(pts.size())) return pts[k + 1] - pts[k];
        return circ - pts[k] + pts[0];
    }

    void build_limit() {
        int nc = cs_.num_cyls();
        cyl_map_.assign(nc, -1);
        bpts_.assign(nc, {});
        tpts_.assign(nc, {});
        bid_.assign(nc, {});
        tid_.assign(nc, {});
        for (int c = 0; c < nc; ++c) {
            if (coll_[c]) continue;
            bpts_[c].assign(crit_b_[c].begin(), crit_b_[c].end());
            tpts_[c].assign(crit_t_[c].begin(), crit_t_[c].end());
            if (bpts_[c].empty() || bpts_[c][0] != 0 || tpts_[c].empty() || tpts_[c][0] != 0)
                fail("InternalError", "circle without its base point");
            bid_[c].assign(bpts_[c].size(), -1);
            tid_[c].assign(tpts_[c].size(), -1);
        }
        struct Seg {
            Q len;
            std::vector<int> passed;
        };
        std::vector<Seg> segs;
        for (int d = 0; d < nc; ++d) {
            if (coll_[d]) continue;
            for (int k = 0; k < static_cast<int>(bpts_[d].size()); ++k) {
                Q len = seg_len(bpts_[d], k, circ_[d]);
                Q p = pmod(bpts_[d][k] + len / 2, circ_[d]);
                int c = d;
                std::vector<int> passed;
                int g = -1;
                Q q;
                std::set<std::pair<int, Q>> seen;
                for (;;) {
                    if (!seen.insert({c, p}).second)
                        fail("PinchedCurve", "a vertical loop stays inside the collapsing cylinders");
                    auto [s, o] = locate(cs_.cyls[c].bottom, p);
                    g = cs_.below[s];
                    q = pmod(cs_.off_top[s] + o, circ_[g]);
                    if (!coll_[g]) break;
                    passed.push_back(g);
                    p = pmod(q + tw_[g], circ_[g]);
                    c = g;
                }
                int j = index_of(tpts_[g], pmod(q - len / 2, circ_[g]));
                if (j < 0 || seg_len(tpts_[g], j, circ_[g]) != len)
                    fail("InternalError", "collapsed segments do not match");
                if (tid_[g][j] >= 0) fail("InternalError", "top segment matched twice");
                int id = static_cast<int>(segs.size());
                segs.push_back({len, passed});
                bid_[d][k] = id;
                tid_[g][j] = id;
            }
        }
        for (int c = 0; c < nc; ++c)
            for (int id : tid_[c])
                if (id < 0) fail("InternalError", "unmatched top segment");
        for (auto& sg : segs) y_.hscs.push_back({sg.len, ""});
        for (int c = 0; c < nc; ++c) {
            if (coll_[c]) continue;
            cyl_map_[c] = y_.num_cyls();
            Cyl yc;
            yc.height = h_[c];
            yc.twist = tw_[c];
            yc.bottom = bid_[c];
            yc.top = tid_[c];
            y_.cyls.push_back(yc);
        }
        y_.finalize();
        for (int id = 0; id < static_cast<int>(segs.size()); ++id) {
            if (segs[id].passed.empty()) continue;
            GraphEdge e;
            e.hsc = id;
            e.from = y_.start_vertex[id];
            e.to = y_.end_vertex[id];
            e.length = segs[id].len;
            e.weight = 0;
            for (int c : segs[id].passed) e.weight += cs_.cyls[c].height;
            graph_.push_back(e);
        }
    }

    int ny_edges() const { return y_.num_hscs() + y_.num_cyls(); }

    // Chain on the limit for the interval [a, b) of a circle, a <= b.
    using Trail = std::set<std::tuple<int, Q, Q>>;

    CVec image(int c, bool top, const Q& a, const Q& b, Trail trail = {}) const {
        CVec out = zeros(ny_edges());
        if (a == b) return out;
        if (!coll_[c]) {
            const auto& pts = top ? tpts_[c] : bpts_[c];
            const auto& ids = top ? tid_[c] : bid_[c];
            int k = index_of(pts, pmod(a, circ_[c]));
            if (k < 0) fail("InternalError", "interval does not start at a cut point");
            Q x = a;
            int n = static_cast<int>(pts.size());
            while (x < b) {
                out[ids[k]] += QI(1);
                x += seg_len(pts, k, circ_[c]);
                k = (k + 1) % n;
            }
            if (x != b) fail("InternalError", "interval does not end at a cut point");
            return out;
        }
        if (top) return image(c, false, a + tw_[c], b + tw_[c], trail);
        if (!trail.insert({c, pmod(a, circ_[c]), b - a}).second)
            fail("PinchedCurve", "a vertical loop stays inside the collapsing cylinders");
        Q x = a;
        while (x < b) {
            auto [s, o] = locate(cs_.cyls[c].bottom, pmod(x, circ_[c]));
            Q piece = cs_.hscs[s].len - o;
            if (b - x < piece) piece = b - x;
            Q start = cs_.off_top[s] + o;
            out = add(out, image(cs_.below[s], true, start, start + piece, trail));
            x += piece;
        }
        return out;
    }

    void build_chains() {
        int ns = cs_.num_hscs(), nc = cs_.num_cyls();
        chains_.clear();
        for (int s = 0; s < ns; ++s) {
            int a = cs_.above[s];
            const Q& len = cs_.hscs[s].len;
            if (!coll_[a]) chains_.push_back(image(a, false, cs_.off_bottom[s], cs_.off_bottom[s] + len));
            else chains_.push_back(image(cs_.below[s], true, cs_.off_top[s], cs_.off_top[s] + len));
        }
        for (int c = 0; c < nc; ++c) {
            if (!coll_[c]) {
                chains_.push_back(unit(ny_edges(), y_.cross_edge(cyl_map_[c])));
            } else if (sgn(tw_[c]) >= 0) {
                chains_.push_back(image(c, false, Q(0), tw_[c]));
            } else {
                chains_.push_back(scale(QI(-1), image(c, false, tw_[c], Q(0))));
            }
        }
    }

    void check_periods() const {
        CVec py = y_.complex().period();
        CVec pulled = pull_back(py, chains_);
        for (int s = 0; s < cs_.num_hscs(); ++s)
            if (pulled[s] != QI(cs_.hscs[s].len)) fail("InternalError", "collapse map changes a saddle connection");
        for (int c = 0; c < cs_.num_cyls(); ++c)
            if (pulled[cs_.cross_edge(c)] != QI(tw_[c], h_[c])) fail("InternalError", "collapse map changes a cross curve");
    }
};

CylSurface component_surface(const CylSurface& cs, int comp) {
    CylSurface out;
    std::map<int, int> hmap;
    for (int s = 0; s < cs.num_hscs(); ++s) {
        if (cs.cyl_component[cs.above[s]] != comp) continue;
        hmap[s] = out.num_hscs();
        out.hscs.push_back(cs.hscs[s]);
    }
    for (int c = 0; c < cs.num_cyls(); ++c) {
        if (cs.cyl_component[c] != comp) continue;
        Cyl y = cs.cyls[c];
        for (int& s : y.bottom) s = hmap.at(s);
        for (int& s : y.top) s = hmap.at(s);
        out.cyls.push_back(y);
    }
    out.finalize();
    return out;
}

}  // namespace

CollapseMap collapse_engine(const CylSurface& cs, const std::vector<Q>& heights, const std::vector<Q>& twists) {
    Engine e(cs, heights, twists);
    return e.run();
}

CollapseTime collapse_time(const CylSurface& cs, const std::vector<int>& cls, const std::vector<QI>& a) {
    if (cls.size() != a.size()) fail("BadArgument", "one coefficient per cylinder of the class");
    CollapseTime out;
    bool any = false;
    for (size_t k = 0; k < cls.size(); ++k) {
        if (sgn(a[k].im) >= 0) continue;
        Q t = -cs.cyls[cls[k]].height / a[k].im;
        if (!any || t < out.t) {
            out.t = t;
            out.cyls.clear();
        }
        if (!any || t == out.t) out.cyls.push_back(cls[k]);
        any = true;
    }
    if (!any) fail("NoCollapse", "no cylinder of the class loses height");
    std::sort(out.cyls.begin(), out.cyls.end());
    return out;
}

BoundaryTangent boundary_tangent(const TangentSpace& t, const CylSurface& y, const CMat& chains) {
    int nx = t.cx.num_edges();
    if (static_cast<int>(chains.size()) != nx) fail("BadArgument", "one chain per source edge");
    CellComplex cy = y.complex();
    int ny = cy.num_edges();
    int nf = static_cast<int>(cy.faces.size());
    BoundaryTangent out;

    CMat sys(ny, zeros(nx + nf));
    for (int e = 0; e < nx; ++e)
        for (int j = 0; j < ny; ++j) sys[j][e] = chains[e][j];
    for (int f = 0; f < nf; ++f)
        for (auto [e, sg] : cy.faces[f]) sys[e][nx + f] -= QI(sg);
    CMat alphas;
    for (auto& k : nullspace(sys, nx + nf)) alphas.emplace_back(k.begin(), k.begin() + nx);
    out.vanishing = Subspace(nx, alphas);
    out.in_source = t.T.annihilated_by(out.vanishing.basis());

    Subspace zy = cy.cocycles();
    CMat pulled;
    for (auto& u : zy.basis()) pulled.push_back(pull_back(u, chains));
    Subspace image(nx, pulled);
    if (image.dim() != zy.dim()) fail("InternalError", "limit map is not surjective in homology");
    if (!(t.T.intersect(image) == out.in_source))
        fail("InternalError", "annihilator of vanishing cycles differs from the pulled back classes");
    int m = static_cast<int>(pulled.size());
    CMat cols(nx, zeros(m));
    for (int i = 0; i < m; ++i)
        for (int e = 0; e < nx; ++e) cols[e][i] = pulled[i][e];
    CMat ybasis;
    for (auto& b : out.in_source.basis()) {
        auto x = solve(cols, b, m);
        if (!x) fail("InternalError", "boundary class has no preimage");
        CVec u = zeros(ny);
        for (int i = 0; i < m; ++i) axpy(u, (*x)[i], zy.basis()[i]);
        ybasis.push_back(u);
    }
    out.boundary = make_tangent(cy, ybasis);
    return out;
}

Degeneration collapse(const TangentSpace& t, const CylSurface& cs, const std::vector<int>& cls,
                      const std::vector<QI>& a) {
    if (t.cx.num_edges() != cs.num_hscs() + cs.num_cyls())
        fail("BadArgument", "tangent space lives on a different complex");
    Degeneration d;
    d.cls = cls;
    d.a = a;
    d.source = t;
    d.when = collapse_time(cs, cls, a);
    CVec v = twist_cocycle(cs, cls, a);
    if (!t.T.contains(v)) fail("NotInTangent", "deformation is not tangent");
    std::vector<Q> h, tw;
    for (int c = 0; c < cs.num_cyls(); ++c) {
        h.push_back(cs.cyls[c].height);
        tw.push_back(cs.cyls[c].twist);
    }
    for (size_t k = 0; k < cls.size(); ++k) {
        h[cls[k]] += d.when.t * a[k].im;
        tw[cls[k]] += d.when.t * a[k].re;
    }
    d.map = collapse_engine(cs, h, tw);
    d.map.time = d.when.t;
    d.class_generic = class_generic(t, cs, cls);

    BoundaryTangent bt = boundary_tangent(t, d.map.limit, d.map.chains);
    d.vanishing = bt.vanishing;
    d.boundary_in_source = bt.in_source;
    d.boundary = bt.boundary;
    return d;
}

std::vector<std::vector<int>> strongly_connected_components(const std::vector<GraphEdge>& g) {
    std::map<int, std::vector<int>> adj;
    for (auto& e : g) {
        adj[e.from].push_back(e.to);
        adj[e.to];
    }
    std::map<int, int> index, low;
    std::map<int, bool> on;
    std::vector<int> stack;
    std::vector<std::vector<int>> out;
    int counter = 0;
    std::function<void(int)> visit = [&](int v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on[v] = true;
        for (int w : adj[v]) {
            if (!index.count(w)) {
                visit(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on[w]) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            std::vector<int> comp;
            int w;
            do {
                w = stack.back();
                stack.pop_back();
                on[w] = false;
                comp.push_back(w);
            } while (w != v);
            std::sort(comp.begin(), comp.end());
            out.push_back(comp);
        }
    };
    for (auto& [v, _] : adj)
        if (!index.count(v)) visit(v);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

std::map<int, int> scc_of(const std::vector<GraphEdge>& g) {
    std::map<int, int> id;
    auto comps = strongly_connected_components(g);
    for (int k = 0; k < static_cast<int>(comps.size()); ++k)
        for (int v : comps[k]) id[v] = k;
    return id;
}

}  // namespace

bool graph_acyclic(const std::vector<GraphEdge>& g) {
    auto id = scc_of(g);
    for (auto& e : g)
        if (e.from == e.to || id[e.from] == id[e.to]) return false;
    return true;
}

namespace {

bool every_edge_on_cycle(const std::vector<GraphEdge>& g) {
    auto id = scc_of(g);
    for (auto& e : g)
        if (id[e.from] != id[e.to]) return false;
    return true;
}

bool weights_balanced(const std::vector<GraphEdge>& g) {
    std::map<int, Q> net;
    for (auto& e : g) {
        if (sgn(e.weight) <= 0) return false;
        net[e.from] += e.weight;
        net[e.to] -= e.weight;
    }
    for (auto& [v, w] : net)
        if (sgn(w) != 0) return false;
    return true;
}

}  // namespace

DichotomyResult classify_dichotomy(const Degeneration& d) {
    DichotomyResult r;
    r.rank_before = d.source.rank();
    r.rank_after = d.boundary.rank();
    r.conditional = !d.class_generic;
    std::vector<int> cls = d.cls;
    std::sort(cls.begin(), cls.end());
    r.class_collapses = d.when.cyls == cls;
    const auto& g = d.map.graph;
    r.acyclic = graph_acyclic(g);
    r.strongly_connected = every_edge_on_cycle(g);
    r.balanced = weights_balanced(g);
    int drop = r.rank_before - r.rank_after;
    if (!d.map.divergent) r.violations.push_back("collapse path does not leave the stratum");
    if (drop != 0 && drop != 1) r.violations.push_back("rank drops by " + std::to_string(drop));
    if (drop > 0) {
        r.verdict = Verdict::RankReducing;
        if (!r.class_collapses) r.violations.push_back("rank reducing but only part of the class collapses");
        if (!r.acyclic) r.violations.push_back("rank reducing but the graph has a cycle");
        Subspace rel = d.boundary.rel_part();
        int m = rel.dim();
        CMat sys;
        CVec rhs;
        for (auto& e : g) {
            CVec row(m);
            for (int j = 0; j < m; ++j) row[j] = rel.basis()[j][e.hsc];
            sys.push_back(row);
            rhs.push_back(QI(e.length));
        }
        auto x = solve(sys, rhs, m);
        if (!x) {
            r.violations.push_back("no rel-scalability certificate");
        } else {
            CVec s = zeros(d.boundary.cx.num_edges());
            for (int j = 0; j < m; ++j) axpy(s, (*x)[j], rel.basis()[j]);
            r.certificate = s;
        }
    } else {
        r.verdict = Verdict::RankPreserving;
        if (!r.strongly_connected) r.violations.push_back("rank preserving but an edge lies on no cycle");
        if (!r.balanced) r.violations.push_back("rank preserving but weights do not balance");
    }
    if (is_rank_reducing_by_cycles(d) != (drop > 0))
        r.violations.push_back("vanishing cycle test disagrees with rank comparison");
    return r;
}

bool is_rank_reducing_by_cycles(const Degeneration& d) {
    Subspace rel = d.source.rel_part();
    Subspace quiet = d.vanishing.annihilated_by(rel.basis());
    for (auto& a : quiet.basis())
        for (auto& u : d.source.T.basis())
            if (!dotc(u, a).is_zero()) return true;
    return false;
}

std::vector<QI> find_typical_vector(const TangentSpace& t, const CylSurface& cs, const std::vector<int>& cls,
                                    std::mt19937_64& rng) {
    Subspace tw = twist_space(t, cs, cls);
    CMat basis = real_basis(tw);
    if (basis.empty()) fail("NoDegeneration", "twist space is zero");
    CVec sigma = standard_deformation(cs, cls);
    bool sigma_ok = t.T.contains(sigma);
    std::uniform_int_distribution<int> coef(-4, 4);
    for (int attempt = 0; attempt < 200; ++attempt) {
        CVec w = zeros(t.cx.num_edges());
        for (auto& b : basis) axpy(w, QI(coef(rng)), b);
        std::vector<QI> a;
        bool down = false;
        for (int c : cls) {
            Q wc = w[cs.cross_edge(c)].re;
            a.push_back(QI(Q(0), wc));
            if (sgn(wc) < 0) down = true;
        }
        if (!down) continue;
        CollapseTime when = collapse_time(cs, cls, a);
        bool typical = true;
        for (size_t i = 1; i < when.cyls.size() && typical; ++i)
            typical = height_ratio_constant(t, cs, when.cyls[0], when.cyls[i]);
        if (!typical) continue;
        auto diverges = [&](const std::vector<QI>& av) {
            std::vector<Q> h, tv;
            for (int c = 0; c < cs.num_cyls(); ++c) {
                h.push_back(cs.cyls[c].height);
                tv.push_back(cs.cyls[c].twist);
            }
            for (size_t k = 0; k < cls.size(); ++k) {
                h[cls[k]] += when.t * av[k].im;
                tv[cls[k]] += when.t * av[k].re;
            }
            try {
                return collapse_engine(cs, h, tv).divergent;
            } catch (const Error& e) {
                if (e.code() == "WholeSurface" || e.code() == "PinchedCurve") return false;
                throw;
            }
        };
        if (diverges(a)) return a;
        if (!sigma_ok) continue;
        for (int e : when.cyls) {
            const Cyl& E = cs.cyls[e];
            Q c = -E.twist / (when.t * E.height);
            std::vector<QI> b = a;
            for (size_t k = 0; k < cls.size(); ++k) b[k].re += c * cs.cyls[cls[k]].height;
            if (diverges(b)) return b;
        }
    }
    fail("NoDegeneration", "no typical divergent twist vector found");
}

CylSurface collapse_complement_onto(const CylSurface& cs, int h) {
    if (h < 0 || h >= cs.num_cyls()) fail("BadArgument", "no such cylinder");
    std::vector<Q> heights, tw;
    for (int c = 0; c < cs.num_cyls(); ++c) {
        bool gone = c != h && cs.cyl_component[c] == cs.cyl_component[h];
        heights.push_back(gone ? Q(0) : cs.cyls[c].height);
        tw.push_back(cs.cyls[c].twist);
    }
    CollapseMap m;
    try {
        m = collapse_engine(cs, heights, tw);
    } catch (const Error& e) {
        fail("FirstReturnHitsSingularity", e.what());
    }
    int yh = m.cyl_map[h];
    CylSurface out = component_surface(m.limit, m.limit.cyl_component[yh]);
    if (out.num_cyls() != 1) fail("FirstReturnHitsSingularity", "quotient is not a single cylinder");
    return out;
}

std::string export_graph(const CollapseMap& m) {
    std::ostringstream os;
    os << "digraph collapse {\n";
    std::set<int> verts;
    for (auto& e : m.graph) {
        verts.insert(e.from);
        verts.insert(e.to);
    }
    for (int v : verts) os << "  v" << v << ";\n";
    for (auto& e : m.graph)
        os << "  v" << e.from << " -> v" << e.to << " [label=\"" << to_string(e.weight) << "\", hsc=" << e.hsc
           << "];\n";
    if (!m.graph.empty() && every_edge_on_cycle(m.graph) && weights_balanced(m.graph)) {
        os << "  // balanced:";
        for (auto& e : m.graph) os << " " << to_string(e.weight);
        os << "\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace flatdeg
