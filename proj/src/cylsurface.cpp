#include "flatdeg/cylsurface.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace flatdeg {

namespace {

struct UF {
    std::vector<int> p;
    explicit UF(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

Q mod_pos(const Q& x, const Q& m) {
    // x mod m in [0, m)
    mpz_class k;
    Q t = x / m;
    mpz_fdiv_q(k.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
    return x - Q(k) * m;
}

}  // namespace

Q CylSurface::circumference(int c) const {
    Q s = 0;
    for (int h : cyls[c].bottom) s += hscs[h].len;
    return s;
}

Q CylSurface::area() const {
    Q a = 0;
    for (int c = 0; c < num_cyls(); ++c) a += circumference(c) * cyls[c].height;
    return a;
}

int CylSurface::next_bottom(int s) const {
    const auto& b = cyls[above[s]].bottom;
    return b[(idx_bottom[s] + 1) % b.size()];
}
int CylSurface::prev_bottom(int s) const {
    const auto& b = cyls[above[s]].bottom;
    return b[(idx_bottom[s] + b.size() - 1) % b.size()];
}
int CylSurface::next_top(int s) const {
    const auto& t = cyls[below[s]].top;
    return t[(idx_top[s] + 1) % t.size()];
}
int CylSurface::prev_top(int s) const {
    const auto& t = cyls[below[s]].top;
    return t[(idx_top[s] + t.size() - 1) % t.size()];
}

void CylSurface::finalize() {
    int ns = num_hscs(), nc = num_cyls();
    if (ns == 0 || nc == 0) fail("EmptySurface", "cylinder diagram is empty");
    above.assign(ns, -1);
    below.assign(ns, -1);
    idx_bottom.assign(ns, -1);
    idx_top.assign(ns, -1);
    off_bottom.assign(ns, Q(0));
    off_top.assign(ns, Q(0));
    for (int s = 0; s < ns; ++s)
        if (sgn(hscs[s].len) <= 0) fail("BadDiagram", "saddle connection " + std::to_string(s) + " has length <= 0");
    for (int c = 0; c < nc; ++c) {
        const auto& C = cyls[c];
        if (sgn(C.height) <= 0) fail("BadDiagram", "cylinder " + std::to_string(c) + " has height <= 0");
        if (C.bottom.empty() || C.top.empty()) fail("BadDiagram", "cylinder " + std::to_string(c) + " has an empty side");
        Q x = 0;
        for (size_t k = 0; k < C.bottom.size(); ++k) {
            int s = C.bottom[k];
            if (s < 0 || s >= ns) fail("BadDiagram", "bad saddle connection index");
            if (above[s] >= 0) fail("BadDiagram", "saddle connection " + std::to_string(s) + " on two bottoms");
            above[s] = c;
            idx_bottom[s] = static_cast<int>(k);
            off_bottom[s] = x;
            x += hscs[s].len;
        }
        Q y = 0;
        for (size_t k = 0; k < C.top.size(); ++k) {
            int s = C.top[k];
            if (s < 0 || s >= ns) fail("BadDiagram", "bad saddle connection index");
            if (below[s] >= 0) fail("BadDiagram", "saddle connection " + std::to_string(s) + " on two tops");
            below[s] = c;
            idx_top[s] = static_cast<int>(k);
            off_top[s] = y;
            y += hscs[s].len;
        }
        if (x != y) fail("BadDiagram", "cylinder " + std::to_string(c) + " has sides of different length");
    }
    for (int s = 0; s < ns; ++s)
        if (above[s] < 0 || below[s] < 0)
            fail("BadDiagram", "saddle connection " + std::to_string(s) + " is not on a top and a bottom");
    start_vertex.assign(ns, -1);
    vertex_order.clear();
    num_vertices = 0;
    for (int s = 0; s < ns; ++s) {
        if (start_vertex[s] >= 0) continue;
        int v = num_vertices++;
        int t = s, size = 0;
        while (start_vertex[t] < 0) {
            start_vertex[t] = v;
            ++size;
            t = next_top(prev_bottom(t));
        }
        vertex_order.push_back(size - 1);
    }
    end_vertex.assign(ns, -1);
    for (int s = 0; s < ns; ++s) end_vertex[s] = start_vertex[next_bottom(s)];
    UF uf(nc);
    for (int s = 0; s < ns; ++s) uf.unite(above[s], below[s]);
    std::map<int, int> comp;
    cyl_component.assign(nc, -1);
    for (int c = 0; c < nc; ++c) {
        int r = uf.find(c);
        if (!comp.count(r)) {
            int id = static_cast<int>(comp.size());
            comp[r] = id;
        }
        cyl_component[c] = comp[r];
    }
    num_components = static_cast<int>(comp.size());
    vertex_component.assign(num_vertices, -1);
    for (int s = 0; s < ns; ++s) vertex_component[start_vertex[s]] = cyl_component[above[s]];
}

CellComplex CylSurface::complex() const {
    CellComplex cx;
    cx.num_vertices = num_vertices;
    cx.num_components = num_components;
    cx.vertex_component = vertex_component;
    cx.vertex_order = vertex_order;
    for (int s = 0; s < num_hscs(); ++s) {
        CellComplex::Edge e;
        e.from = start_vertex[s];
        e.to = end_vertex[s];
        e.hol = QI(hscs[s].len);
        e.name = "s" + std::to_string(s);
        cx.edges.push_back(e);
    }
    for (int c = 0; c < num_cyls(); ++c) {
        CellComplex::Edge e;
        e.from = start_vertex[cyls[c].bottom[0]];
        e.to = start_vertex[cyls[c].top[0]];
        e.hol = QI(cyls[c].twist, cyls[c].height);
        e.name = "c" + std::to_string(c);
        cx.edges.push_back(e);
        CellComplex::Face f;
        for (int s : cyls[c].bottom) f.push_back({s, 1});
        f.push_back({cross_edge(c), 1});
        for (auto it = cyls[c].top.rbegin(); it != cyls[c].top.rend(); ++it) f.push_back({*it, -1});
        f.push_back({cross_edge(c), -1});
        cx.faces.push_back(f);
        cx.face_component.push_back(cyl_component[c]);
    }
    return cx;
}

int CylSurface::genus(int comp) const { return complex().genus(comp); }

StratumSignature CylSurface::signature() const {
    StratumSignature sig;
    sig.parts.resize(num_components);
    for (int v = 0; v < num_vertices; ++v) {
        auto& p = sig.parts[vertex_component[v]];
        if (vertex_order[v] == 0)
            p.marked++;
        else
            p.zeros.push_back(vertex_order[v]);
    }
    for (auto& p : sig.parts) std::sort(p.zeros.rbegin(), p.zeros.rend());
    // order components for a stable string
    std::sort(sig.parts.begin(), sig.parts.end(), [](const auto& a, const auto& b) {
        if (a.zeros != b.zeros) return a.zeros > b.zeros;
        return a.marked > b.marked;
    });
    return sig;
}

CVec CylSurface::core_chain(int c) const {
    CVec v(num_hscs() + num_cyls());
    for (int s : cyls[c].bottom) v[s] += QI(1);
    return v;
}

CVec CylSurface::core_dual(int c) const { return unit(num_hscs() + num_cyls(), cross_edge(c)); }

PolySurface CylSurface::to_poly() const {
    PolySurface p;
    int nc = num_cyls();
    p.polys.resize(nc);
    p.glue.resize(nc);
    for (int c = 0; c < num_components; ++c) p.component_names.push_back("c" + std::to_string(c));
    std::vector<int> nb(nc), nt(nc);
    for (int c = 0; c < nc; ++c) {
        nb[c] = static_cast<int>(cyls[c].bottom.size());
        nt[c] = static_cast<int>(cyls[c].top.size());
    }
    for (int c = 0; c < nc; ++c) {
        const auto& C = cyls[c];
        Polygon P;
        P.name = "C" + std::to_string(c);
        P.component = cyl_component[c];
        Q circ = circumference(c);
        for (int s : C.bottom) P.v.push_back(Vec2(off_bottom[s], 0));
        P.v.push_back(Vec2(circ, 0));
        P.v.push_back(Vec2(circ + C.twist, C.height));
        for (int k = nt[c] - 1; k >= 1; --k) P.v.push_back(Vec2(C.twist + off_top[C.top[k]], C.height));
        P.v.push_back(Vec2(C.twist, C.height));
        p.polys[c] = P;
        int n = P.size();
        p.glue[c].resize(n);
        for (int k = 0; k < nb[c]; ++k) {
            int s = C.bottom[k];
            int b = below[s];
            int e = nb[b] + 1 + (nt[b] - 1 - idx_top[s]);
            p.glue[c][k] = Gluing{EdgeRef{b, e}, false};
        }
        p.glue[c][nb[c]] = Gluing{EdgeRef{c, n - 1}, false};
        p.glue[c][n - 1] = Gluing{EdgeRef{c, nb[c]}, false};
        for (int m = 0; m < nt[c]; ++m) {
            int s = C.top[nt[c] - 1 - m];
            p.glue[c][nb[c] + 1 + m] = Gluing{EdgeRef{above[s], idx_bottom[s]}, false};
        }
    }
    p.validate();
    return p;
}

CMat CylSurface::poly_edge_to_cyl_edge() const {
    PolySurface p = to_poly();
    int ne = num_hscs() + num_cyls();
    CMat rows;
    for (auto& r : p.edge_class_reps()) {
        CVec row(ne);
        int c = r.poly;
        int nb = static_cast<int>(cyls[c].bottom.size());
        int nt = static_cast<int>(cyls[c].top.size());
        if (r.edge < nb)
            row[cyls[c].bottom[r.edge]] = QI(1);
        else if (r.edge == nb)
            row[cross_edge(c)] = QI(1);
        else if (r.edge == nb + nt + 1)
            row[cross_edge(c)] = QI(-1);
        else
            row[cyls[c].top[nt - 1 - (r.edge - nb - 1)]] = QI(-1);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string CylSurface::key() const {
    int nc = num_cyls(), ns = num_hscs();
    auto code_from = [&](int c0, int b0, int comp) {
        std::vector<int> cid(nc, -1), bstart(nc, 0), sid(ns, -1);
        std::vector<int> order{c0};
        cid[c0] = 0;
        bstart[c0] = b0;
        int next_s = 0;
        std::vector<std::string> code;
        auto name = [&](int s) {
            if (sid[s] < 0) sid[s] = next_s++;
            return std::to_string(sid[s]);
        };
        for (size_t qi = 0; qi < order.size(); ++qi) {
            int c = order[qi];
            const auto& C = cyls[c];
            Q circ = circumference(c);
            int nb = static_cast<int>(C.bottom.size()), nt = static_cast<int>(C.top.size());
            Q x0 = off_bottom[C.bottom[bstart[c]]];
            // top start: top breakpoint with smallest position mod circ relative to x0
            int tbest = 0;
            Q twbest;
            for (int k = 0; k < nt; ++k) {
                Q x = mod_pos(C.twist + off_top[C.top[k]] - x0, circ);
                if (k == 0 || x < twbest) {
                    twbest = x;
                    tbest = k;
                }
            }
            std::string tok = "C" + C.height.get_str() + ":" + twbest.get_str() + ":";
            for (int k = 0; k < nb; ++k) {
                int s = C.bottom[(bstart[c] + k) % nb];
                tok += name(s) + "=" + hscs[s].len.get_str() + ",";
            }
            tok += "|";
            for (int k = 0; k < nt; ++k) tok += name(C.top[(tbest + k) % nt]) + ",";
            code.push_back(tok);
            for (int k = 0; k < nt; ++k) {
                int s = C.top[(tbest + k) % nt];
                int a = above[s];
                if (cid[a] < 0) {
                    cid[a] = static_cast<int>(order.size());
                    bstart[a] = idx_bottom[s];
                    order.push_back(a);
                }
            }
            for (int k = 0; k < nb; ++k) {
                int s = C.bottom[(bstart[c] + k) % nb];
                int b = below[s];
                if (cid[b] < 0) {
                    const auto& B = cyls[b];
                    Q cb = circumference(b);
                    Q X = B.twist + off_top[s];
                    int best = 0;
                    Q bd;
                    for (size_t m = 0; m < B.bottom.size(); ++m) {
                        Q d = mod_pos(X - off_bottom[B.bottom[m]], cb);
                        if (m == 0 || d < bd) {
                            bd = d;
                            best = static_cast<int>(m);
                        }
                    }
                    cid[b] = static_cast<int>(order.size());
                    bstart[b] = best;
                    order.push_back(b);
                }
            }
        }
        (void)comp;
        return code;
    };
    std::vector<std::vector<std::string>> comps;
    for (int comp = 0; comp < num_components; ++comp) {
        std::vector<std::string> best;
        bool have = false;
        for (int c = 0; c < nc; ++c) {
            if (cyl_component[c] != comp) continue;
            for (size_t b = 0; b < cyls[c].bottom.size(); ++b) {
                auto code = code_from(c, static_cast<int>(b), comp);
                if (!have || code < best) {
                    best = code;
                    have = true;
                }
            }
        }
        comps.push_back(best);
    }
    std::sort(comps.begin(), comps.end());
    std::string key;
    for (auto& c : comps) {
        for (auto& t : c) key += t + ";";
        key += "|";
    }
    return key;
}

std::string CylSurface::describe() const {
    std::ostringstream os;
    for (int c = 0; c < num_cyls(); ++c) {
        os << "cyl " << c << " h=" << cyls[c].height << " circ=" << circumference(c) << " tw=" << cyls[c].twist
           << " bottom=[";
        for (int s : cyls[c].bottom) os << " s" << s << "(" << hscs[s].len << ")";
        os << " ] top=[";
        for (int s : cyls[c].top) os << " s" << s;
        os << " ]\n";
    }
    return os.str();
}

CylSurface origami_cylinders(const std::vector<int>& h, const std::vector<int>& v) {
    int n = static_cast<int>(h.size());
    if (n == 0 || static_cast<int>(v.size()) != n) fail("BadOrigami", "permutations must have the same positive size");
    for (const auto* p : {&h, &v}) {
        std::vector<bool> seen(n, false);
        for (int x : *p) {
            if (x < 0 || x >= n || seen[x]) fail("BadOrigami", "not a permutation");
            seen[x] = true;
        }
    }
    // bottom-left corners: BL(v h i) ~ BL(h v i)
    UF uf(n);
    for (int i = 0; i < n; ++i) uf.unite(v[h[i]], h[v[i]]);
    std::map<int, int> csize;
    for (int i = 0; i < n; ++i) csize[uf.find(i)]++;
    std::vector<bool> dist(n, false);
    for (int i = 0; i < n; ++i) dist[i] = csize[uf.find(i)] > 1;
    // components of <h, v>
    UF comp(n);
    for (int i = 0; i < n; ++i) {
        comp.unite(i, h[i]);
        comp.unite(i, v[i]);
    }
    std::map<int, bool> comp_has;
    for (int i = 0; i < n; ++i) comp_has[comp.find(i)] = comp_has[comp.find(i)] || dist[i];
    for (int i = 0; i < n; ++i)
        if (!comp_has[comp.find(i)]) {
            // torus component: mark the corner class of its first square
            int r = comp.find(i);
            for (int j = 0; j < n; ++j)
                if (uf.find(j) == uf.find(i)) dist[j] = true;
            comp_has[r] = true;
        }
    // rows = h-cycles
    std::vector<int> row(n, -1), pos(n, 0);
    std::vector<std::vector<int>> rows;
    for (int i = 0; i < n; ++i) {
        if (row[i] >= 0) continue;
        std::vector<int> r;
        int j = i;
        do {
            row[j] = static_cast<int>(rows.size());
            pos[j] = static_cast<int>(r.size());
            r.push_back(j);
            j = h[j];
        } while (j != i);
        rows.push_back(r);
    }
    int nr = static_cast<int>(rows.size());
    // a row's top line is free of distinguished points: stack the row above onto it
    std::vector<bool> top_free(nr, true);
    for (int r = 0; r < nr; ++r)
        for (int i : rows[r])
            if (dist[v[i]]) top_free[r] = false;
    std::vector<bool> bottom_row(nr, false);
    for (int r = 0; r < nr; ++r)
        for (int i : rows[r])
            if (dist[i]) bottom_row[r] = true;
    CylSurface cs;
    std::map<int, int> hsc_of;  // starting square -> saddle connection id
    for (int r = 0; r < nr; ++r) {
        if (!bottom_row[r]) continue;
        for (int i : rows[r]) {
            if (!dist[i]) continue;
            int len = 1;
            int j = h[i];
            while (!dist[j]) {
                ++len;
                j = h[j];
            }
            hsc_of[i] = cs.num_hscs();
            cs.hscs.push_back(HSC{Q(len), "sq" + std::to_string(i + 1)});
        }
    }
    for (int r = 0; r < nr; ++r) {
        if (!bottom_row[r]) continue;
        const auto& R0 = rows[r];
        int L = static_cast<int>(R0.size());
        int p0 = 0;
        while (!dist[R0[p0]]) ++p0;
        Cyl C;
        for (int k = 0; k < L; ++k) {
            int i = R0[(p0 + k) % L];
            if (dist[i]) C.bottom.push_back(hsc_of.at(i));
        }
        // climb through free top lines, tracking the horizontal shift
        int cur = r, height = 1;
        Q shift = 0;  // R_cur coordinate = stacked R0 coordinate + shift
        while (top_free[cur]) {
            int up = row[v[rows[cur][0]]];
            shift += Q(pos[v[rows[cur][0]]]);
            cur = up;
            ++height;
            if (height > n + 1) fail("InternalError", "row stacking does not terminate");
        }
        C.height = Q(height);
        // distinguished points on the top line of `cur` at R_cur coordinate k
        const auto& Rm = rows[cur];
        std::vector<std::pair<Q, int>> tops;
        for (int k = 0; k < L; ++k) {
            int above_sq = v[Rm[k]];
            if (!dist[above_sq]) continue;
            Q x = mod_pos(Q(k) - shift - Q(p0), Q(L));
            tops.push_back({x, hsc_of.at(above_sq)});
        }
        std::sort(tops.begin(), tops.end());
        C.twist = tops[0].first;
        for (auto& t : tops) C.top.push_back(t.second);
        cs.cyls.push_back(C);
    }
    cs.finalize();
    return cs;
}

PolySurface build_origami(const std::vector<int>& h, const std::vector<int>& v) {
    return origami_cylinders(h, v).to_poly();
}

}  // namespace flatdeg
