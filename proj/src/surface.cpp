#include "flatdeg/surface.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

namespace flatdeg {

namespace {

int orient(const Vec2& a, const Vec2& b, const Vec2& c) { return sgn(cross(b - a, c - a)); }

bool on_segment(const Vec2& a, const Vec2& b, const Vec2& p) {
    return orient(a, b, p) == 0 && std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

bool segments_meet(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
    if (o1 * o2 < 0 && o3 * o4 < 0) return true;
    return on_segment(a, b, c) || on_segment(a, b, d) || on_segment(c, d, a) || on_segment(c, d, b);
}

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace

Q signed_area(const std::vector<Vec2>& v) {
    Q s = 0;
    for (size_t i = 0; i < v.size(); ++i) s += cross(v[i], v[(i + 1) % v.size()]);
    return s / 2;
}

bool polygon_is_simple(const std::vector<Vec2>& v) {
    int n = static_cast<int>(v.size());
    if (n < 3) return false;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (v[i] == v[j]) return false;
    for (int i = 0; i < n; ++i) {
        const Vec2 &a = v[i], &b = v[(i + 1) % n];
        // adjacent edge must not fold back
        const Vec2& c = v[(i + 2) % n];
        if (orient(a, b, c) == 0 && sgn(dot(b - a, c - b)) < 0) return false;
        for (int j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue;
            if (segments_meet(a, b, v[j], v[(j + 1) % n])) return false;
        }
    }
    return true;
}

std::string StratumSignature::str() const {
    std::string out;
    for (size_t c = 0; c < parts.size(); ++c) {
        if (c) out += "x";
        out += quadratic ? "Q(" : "H(";
        std::vector<int> all = parts[c].zeros;
        for (int i = 0; i < parts[c].marked; ++i) all.push_back(0);
        std::sort(all.rbegin(), all.rend());
        for (size_t i = 0; i < all.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(all[i]);
        }
        out += ")";
    }
    return out;
}

bool PolySurface::half_translation() const {
    for (auto& g : glue)
        for (auto& x : g)
            if (x.flip) return true;
    return false;
}

Q PolySurface::area(int comp) const {
    Q a = 0;
    for (auto& p : polys)
        if (p.component == comp) a += signed_area(p.v);
    return a;
}

Q PolySurface::total_area() const {
    Q a = 0;
    for (auto& p : polys) a += signed_area(p.v);
    return a;
}

int PolySurface::genus(int comp) const {
    int v = 0, e = 0, f = 0;
    for (int c = 0; c < num_classes; ++c) v += class_component[c] == comp;
    for (auto& p : polys)
        if (p.component == comp) {
            f += 1;
            e += p.size();
        }
    int chi = v - e / 2 + f;
    return (2 - chi) / 2;
}

StratumSignature PolySurface::signature() const {
    StratumSignature s;
    s.parts.resize(num_components());
    bool quad = half_translation();
    s.quadratic = quad;
    for (int c = 0; c < num_classes; ++c) {
        auto& part = s.parts[class_component[c]];
        int a = class_angle_pi[c];
        if (a == 2) {
            part.marked++;
            continue;
        }
        part.zeros.push_back(quad ? a - 2 : a / 2 - 1);
    }
    for (auto& p : s.parts) std::sort(p.zeros.rbegin(), p.zeros.rend());
    return s;
}

std::vector<int> PolySurface::marked_classes() const {
    std::vector<int> out;
    for (int c = 0; c < num_classes; ++c)
        if (class_angle_pi[c] == 2) out.push_back(c);
    return out;
}

std::vector<EdgeRef> PolySurface::edge_class_reps() const {
    std::vector<EdgeRef> reps;
    for (int p = 0; p < static_cast<int>(polys.size()); ++p)
        for (int j = 0; j < polys[p].size(); ++j) {
            EdgeRef e{p, j};
            if (e < glue[p][j].partner) reps.push_back(e);
        }
    return reps;
}

std::pair<int, int> PolySurface::edge_class(const EdgeRef& e) const {
    // index by counting representatives before it
    EdgeRef rep = e < glue[e.poly][e.edge].partner ? e : glue[e.poly][e.edge].partner;
    int idx = 0;
    for (int p = 0; p < static_cast<int>(polys.size()); ++p)
        for (int j = 0; j < polys[p].size(); ++j) {
            EdgeRef f{p, j};
            if (f == rep) return {idx, rep == e ? 1 : -1};
            if (f < glue[p][j].partner) ++idx;
        }
    fail("InternalError", "edge class not found");
}

CellComplex PolySurface::complex() const {
    if (half_translation()) fail("NotTranslation", "cell complex with periods needs a translation surface");
    CellComplex cx;
    cx.num_vertices = num_classes;
    cx.num_components = num_components();
    cx.vertex_component = class_component;
    for (int c = 0; c < num_classes; ++c) cx.vertex_order.push_back(class_angle_pi[c] / 2 - 1);
    std::map<EdgeRef, int> idx;
    for (auto& r : edge_class_reps()) {
        CellComplex::Edge e;
        const auto& P = polys[r.poly];
        e.from = corner_class[r.poly][r.edge];
        e.to = corner_class[r.poly][(r.edge + 1) % P.size()];
        e.hol = P.edge_vec(r.edge).as_complex();
        e.name = P.name + "." + std::to_string(r.edge);
        idx[r] = cx.num_edges();
        cx.edges.push_back(e);
    }
    for (int p = 0; p < static_cast<int>(polys.size()); ++p) {
        CellComplex::Face f;
        for (int j = 0; j < polys[p].size(); ++j) {
            EdgeRef e{p, j};
            auto it = idx.find(e);
            if (it != idx.end())
                f.push_back({it->second, 1});
            else
                f.push_back({idx.at(glue[p][j].partner), -1});
        }
        cx.faces.push_back(f);
        cx.face_component.push_back(polys[p].component);
    }
    return cx;
}

void PolySurface::validate() {
    int np = static_cast<int>(polys.size());
    if (np == 0) fail("EmptySurface", "no polygons");
    if (static_cast<int>(glue.size()) != np) fail("GluingMismatch", "gluing table size");
    for (int p = 0; p < np; ++p) {
        const auto& P = polys[p];
        if (P.size() < 3) fail("BadPolygon", "polygon " + P.name + " has fewer than 3 vertices");
        if (!polygon_is_simple(P.v)) fail("BadPolygon", "polygon " + P.name + " is not simple");
        if (sgn(signed_area(P.v)) <= 0) fail("BadPolygon", "polygon " + P.name + " is not counterclockwise");
        if (static_cast<int>(glue[p].size()) != P.size()) fail("GluingMismatch", "gluing table size");
    }
    for (int p = 0; p < np; ++p)
        for (int j = 0; j < polys[p].size(); ++j) {
            const auto& g = glue[p][j];
            std::string here = polys[p].name + "." + std::to_string(j);
            if (g.partner.poly < 0 || g.partner.poly >= np || g.partner.edge < 0 ||
                g.partner.edge >= polys[g.partner.poly].size())
                fail("GluingMismatch", "edge " + here + " is not glued");
            if (g.partner == EdgeRef{p, j}) fail("GluingMismatch", "edge " + here + " glued to itself");
            const auto& back = glue[g.partner.poly][g.partner.edge];
            if (!(back.partner == EdgeRef{p, j}) || back.flip != g.flip)
                fail("GluingMismatch", "edge " + here + " glued inconsistently");
            Vec2 a = polys[p].edge_vec(j), b = polys[g.partner.poly].edge_vec(g.partner.edge);
            if (g.flip ? a != b : a != -b)
                fail("GluingMismatch", "edge " + here + " and its partner are not related by " +
                                           std::string(g.flip ? "a half-translation" : "a translation"));
            if (polys[p].component != polys[g.partner.poly].component)
                fail("GluingMismatch", "edge " + here + " is glued across components");
        }
    // connectivity of each component
    UnionFind uf(np);
    for (int p = 0; p < np; ++p)
        for (auto& g : glue[p]) uf.unite(p, g.partner.poly);
    int nc = num_components();
    std::vector<int> root(nc, -1);
    for (int p = 0; p < np; ++p) {
        int c = polys[p].component;
        if (c < 0 || c >= nc) fail("BadComponent", "polygon component index out of range");
        if (root[c] < 0)
            root[c] = uf.find(p);
        else if (root[c] != uf.find(p))
            fail("NotConnected", "component " + component_names[c] + " splits");
    }
    for (int c = 0; c < nc; ++c)
        if (root[c] < 0) fail("NotConnected", "component " + component_names[c] + " is empty");
    // corner walks
    corner_class.assign(np, {});
    for (int p = 0; p < np; ++p) corner_class[p].assign(polys[p].size(), -1);
    class_angle_pi.clear();
    class_component.clear();
    class_rep.clear();
    num_classes = 0;
    const Vec2 east(1, 0), west(-1, 0);
    for (int p = 0; p < np; ++p)
        for (int j = 0; j < polys[p].size(); ++j) {
            if (corner_class[p][j] >= 0) continue;
            int cls = num_classes++;
            int angle = 0;
            EdgeRef c{p, j};
            int guard = 0;
            while (corner_class[c.poly][c.edge] < 0) {
                corner_class[c.poly][c.edge] = cls;
                const auto& P = polys[c.poly];
                int n = P.size();
                Vec2 a = P.edge_vec(c.edge), b = -P.edge_vec((c.edge + n - 1) % n);
                angle += in_sector(east, a, b);
                angle += in_sector(west, a, b);
                c = glue[c.poly][(c.edge + n - 1) % n].partner;
                if (++guard > 1000000) fail("InternalError", "corner walk does not close");
            }
            if (!(c == EdgeRef{p, j})) fail("GluingMismatch", "corner walk does not close up");
            class_angle_pi.push_back(angle);
            class_component.push_back(polys[p].component);
            class_rep.push_back(EdgeRef{p, j});
        }
    bool quad = half_translation();
    for (int c = 0; c < num_classes; ++c) {
        int a = class_angle_pi[c];
        if (a <= 0 || (!quad && a % 2 != 0))
            fail("AngleError", "cone angle " + std::to_string(a) + "pi at vertex " + polys[class_rep[c].poly].name +
                                   "." + std::to_string(class_rep[c].edge));
    }
}

PolySurface build_from_polygons(const PolygonSpec& spec) {
    PolySurface s;
    s.polys = spec.polygons;
    int np = static_cast<int>(s.polys.size());
    s.glue.assign(np, {});
    for (int p = 0; p < np; ++p) s.glue[p].assign(s.polys[p].size(), Gluing{});
    auto check_ref = [&](const EdgeRef& e) {
        if (e.poly < 0 || e.poly >= np || e.edge < 0 || e.edge >= s.polys[e.poly].size())
            fail("GluingMismatch", "edge reference out of range");
    };
    for (size_t i = 0; i < spec.glue.size(); ++i) {
        auto [a, b] = spec.glue[i];
        check_ref(a);
        check_ref(b);
        bool fl = i < spec.flip.size() && spec.flip[i];
        auto set = [&](const EdgeRef& x, const EdgeRef& y) {
            if (s.glue[x.poly][x.edge].partner.poly >= 0)
                fail("GluingMismatch", "edge " + s.polys[x.poly].name + "." + std::to_string(x.edge) +
                                           " glued twice");
            s.glue[x.poly][x.edge] = Gluing{y, fl};
        };
        set(a, b);
        set(b, a);
    }
    if (spec.component_names.empty()) {
        UnionFind uf(np);
        for (auto& [a, b] : spec.glue) uf.unite(a.poly, b.poly);
        std::map<int, int> comp;
        for (int p = 0; p < np; ++p) {
            int r = uf.find(p);
            if (!comp.count(r)) {
                int id = static_cast<int>(comp.size());
                comp[r] = id;
                s.component_names.push_back("c" + std::to_string(id));
            }
            s.polys[p].component = comp[r];
        }
    } else {
        s.component_names = spec.component_names;
    }
    s.validate();
    std::set<int> marked;
    for (auto& m : spec.marks) {
        if (m.poly < 0 || m.poly >= np || m.edge < 0 || m.edge >= s.polys[m.poly].size())
            fail("BadMark", "marked vertex out of range");
        int c = s.corner_class[m.poly][m.edge];
        if (s.class_angle_pi[c] != 2)
            s.warnings.push_back("mark on cone point " + s.polys[m.poly].name + "." + std::to_string(m.edge) +
                                 " ignored");
        marked.insert(c);
    }
    for (int c = 0; c < s.num_classes; ++c)
        if (s.class_angle_pi[c] == 2 && !marked.count(c))
            s.warnings.push_back("regular vertex " + s.polys[s.class_rep[c].poly].name + "." +
                                 std::to_string(s.class_rep[c].edge) + " marked automatically");
    return s;
}

PolySurface apply_gl2(const PolySurface& s, const Mat2& given) {
    Mat2 m = given;
    for (Q* q : {&m.a, &m.b, &m.c, &m.d}) q->canonicalize();
    if (sgn(m.det()) <= 0) fail("DegenerateMatrix", "determinant must be positive");
    PolySurface r = s;
    for (auto& p : r.polys)
        for (auto& v : p.v) v = m.apply(v);
    r.warnings.clear();
    r.validate();
    return r;
}

PolySurface translate_polygons_to_origin(const PolySurface& s) {
    PolySurface r = s;
    for (auto& p : r.polys) {
        Vec2 o = p.v[0];
        for (auto& v : p.v) v -= o;
    }
    return r;
}

namespace {

using Code = std::vector<std::string>;

// BFS relabeling of one component starting at polygon p0 with vertex k0 first.
Code component_code(const PolySurface& s, int p0, int k0, std::vector<int>* order, std::vector<int>* rot) {
    int np = static_cast<int>(s.polys.size());
    std::vector<int> id(np, -1), r(np, 0);
    std::vector<int> ord;
    id[p0] = 0;
    r[p0] = k0;
    ord.push_back(p0);
    Code code;
    for (size_t qi = 0; qi < ord.size(); ++qi) {
        int p = ord[qi];
        const auto& P = s.polys[p];
        int n = P.size();
        code.push_back("P" + std::to_string(n));
        for (int j = 0; j < n; ++j) {
            int e = (r[p] + j) % n;
            const auto& g = s.glue[p][e];
            int q = g.partner.poly;
            if (id[q] < 0) {
                id[q] = static_cast<int>(ord.size());
                r[q] = g.partner.edge;
                ord.push_back(q);
            }
            int nq = s.polys[q].size();
            int eq = ((g.partner.edge - r[q]) % nq + nq) % nq;
            code.push_back(to_string(P.edge_vec(e)) + ">" + std::to_string(id[q]) + "." + std::to_string(eq) +
                           (g.flip ? "f" : ""));
        }
    }
    if (order) *order = ord;
    if (rot) *rot = r;
    return code;
}

}  // namespace

PolySurface canonical_form(const PolySurface& s) {
    int np = static_cast<int>(s.polys.size());
    struct Best {
        Code code;
        std::vector<int> order, rot;
    };
    std::vector<Best> comps;
    for (int c = 0; c < s.num_components(); ++c) {
        Best best;
        bool have = false;
        for (int p = 0; p < np; ++p) {
            if (s.polys[p].component != c) continue;
            for (int k = 0; k < s.polys[p].size(); ++k) {
                std::vector<int> ord, rot;
                Code code = component_code(s, p, k, &ord, &rot);
                if (!have || code < best.code) {
                    best = Best{code, ord, rot};
                    have = true;
                }
            }
        }
        comps.push_back(best);
    }
    std::sort(comps.begin(), comps.end(), [](const Best& a, const Best& b) { return a.code < b.code; });
    PolySurface r;
    std::vector<int> newid(np, -1);
    int next = 0;
    for (auto& b : comps)
        for (int p : b.order) newid[p] = next++;
    r.polys.resize(np);
    r.glue.resize(np);
    for (size_t c = 0; c < comps.size(); ++c) {
        r.component_names.push_back("c" + std::to_string(c));
        for (int p : comps[c].order) {
            const auto& P = s.polys[p];
            int n = P.size(), k = comps[c].rot[p];
            Polygon Q;
            Q.name = std::to_string(newid[p]);
            Q.component = static_cast<int>(c);
            for (int j = 0; j < n; ++j) Q.v.push_back(P.v[(k + j) % n] - P.v[k]);
            r.polys[newid[p]] = Q;
            std::vector<Gluing> g(n);
            for (int j = 0; j < n; ++j) {
                const auto& old = s.glue[p][(k + j) % n];
                int q = old.partner.poly, nq = s.polys[q].size();
                int rq = comps[c].rot[q];
                g[j] = Gluing{EdgeRef{newid[q], ((old.partner.edge - rq) % nq + nq) % nq}, old.flip};
            }
            r.glue[newid[p]] = g;
        }
    }
    r.validate();
    return r;
}

std::string canonical_key(const PolySurface& s) {
    PolySurface c = canonical_form(s);
    std::string key;
    for (int comp = 0; comp < c.num_components(); ++comp) {
        int first = -1;
        for (int p = 0; p < static_cast<int>(c.polys.size()); ++p)
            if (c.polys[p].component == comp) {
                first = p;
                break;
            }
        for (auto& t : component_code(c, first, 0, nullptr, nullptr)) key += t + ";";
        key += "|";
    }
    return key;
}

DoubleCover holonomy_double_cover(const PolySurface& q) {
    if (!q.half_translation()) fail("AlreadyOrientable", "surface has no half-translation gluing");
    int np = static_cast<int>(q.polys.size());
    DoubleCover dc;
    PolySurface& s = dc.cover;
    s.component_names = q.component_names;
    s.polys.resize(2 * np);
    s.glue.resize(2 * np);
    dc.poly_involution.resize(2 * np);
    for (int p = 0; p < np; ++p) {
        Polygon plus = q.polys[p], minus = q.polys[p];
        plus.name = q.polys[p].name + "+";
        minus.name = q.polys[p].name + "-";
        for (auto& v : minus.v) v = -v;
        s.polys[2 * p] = plus;
        s.polys[2 * p + 1] = minus;
        dc.poly_involution[2 * p] = 2 * p + 1;
        dc.poly_involution[2 * p + 1] = 2 * p;
        int n = q.polys[p].size();
        s.glue[2 * p].resize(n);
        s.glue[2 * p + 1].resize(n);
        for (int j = 0; j < n; ++j) {
            const auto& g = q.glue[p][j];
            int t = g.partner.poly;
            s.glue[2 * p][j] = Gluing{EdgeRef{2 * t + (g.flip ? 1 : 0), g.partner.edge}, false};
            s.glue[2 * p + 1][j] = Gluing{EdgeRef{2 * t + (g.flip ? 0 : 1), g.partner.edge}, false};
        }
    }
    // each component must lift to a connected cover
    UnionFind uf(2 * np);
    for (int p = 0; p < 2 * np; ++p)
        for (auto& g : s.glue[p]) uf.unite(p, g.partner.poly);
    for (int p = 0; p < np; ++p)
        if (uf.find(2 * p) != uf.find(2 * p + 1))
            fail("AlreadyOrientable", "component " + q.component_names[q.polys[p].component] +
                                          " has trivial holonomy");
    s.validate();
    return dc;
}

}  // namespace flatdeg
