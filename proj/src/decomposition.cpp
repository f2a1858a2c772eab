#include "flatdeg/decomposition.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

namespace flatdeg {

namespace {

struct NotPeriodicSignal {
    std::string msg;
};

// A straight segment inside one polygon. Entry/exit: a vertex index or an edge index.
struct Piece {
    int poly = 0;
    bool in_vertex = true, out_vertex = true;
    int in_idx = 0, out_idx = 0;
    Vec2 a, b;
};

struct Hit {
    Q t;
    bool vertex = false;
    int idx = -1;  // vertex index or edge index
};

// First boundary contact of the ray P + t u (t > 0) inside polygon P.
Hit first_exit(const Polygon& poly, const Vec2& p, const Vec2& u) {
    Hit best;
    bool have = false;
    int n = poly.size();
    Q uu = dot(u, u);
    for (int k = 0; k < n; ++k) {
        Vec2 w = poly.v[k] - p;
        if (sgn(cross(w, u)) != 0 || sgn(dot(w, u)) <= 0) continue;
        Q t = dot(w, u) / uu;
        if (!have || t < best.t) {
            best = Hit{t, true, k};
            have = true;
        }
    }
    for (int k = 0; k < n; ++k) {
        Vec2 A = poly.v[k], e = poly.edge_vec(k);
        Q den = cross(u, e);
        if (sgn(den) == 0) continue;
        Vec2 ap = A - p;
        Q t = cross(ap, e) / den;
        Q s = cross(ap, u) / den;
        if (sgn(t) <= 0 || sgn(s) <= 0 || s >= 1) continue;
        if (!have || t < best.t) {
            best = Hit{t, false, k};
            have = true;
        }
    }
    if (!have) fail("InternalError", "ray leaves polygon " + poly.name + " without hitting its boundary");
    return best;
}

Vec2 sector_start(const Polygon& P, int j) { return P.edge_vec(j); }
Vec2 sector_end(const Polygon& P, int j) { return -P.edge_vec((j + P.size() - 1) % P.size()); }

// Angular order inside the sector of a corner starting at direction a.
bool before_in_sector(const Vec2& a, const Vec2& w1, const Vec2& w2) {
    auto rel = [&](const Vec2& w) { return Vec2(w.x * a.x + w.y * a.y, w.y * a.x - w.x * a.y); };
    return angle_less(rel(w1), rel(w2));
}

class Tracer {
public:
    explicit Tracer(const PolySurface& s, long bound) : S(s), bound_(bound) {}

    EdgeRef next_corner(const EdgeRef& c) const {
        const auto& P = S.polys[c.poly];
        return S.glue[c.poly][(c.edge + P.size() - 1) % P.size()].partner;
    }

    // Corner at vertex `b` of polygon p (or a later one around the vertex) containing direction w.
    EdgeRef corner_containing(EdgeRef c, const Vec2& w) const {
        for (int guard = 0; guard < 100000; ++guard) {
            const auto& P = S.polys[c.poly];
            if (in_sector(w, sector_start(P, c.edge), sector_end(P, c.edge))) return c;
            c = next_corner(c);
        }
        fail("InternalError", "no corner contains the direction");
    }

    // Straight trace from corner c in direction u until a vertex (or a stop predicate).
    // Returns pieces and arrival corner.
    template <class StopFn>
    std::vector<Piece> trace(EdgeRef c, const Vec2& u, StopFn&& stop, EdgeRef* arrival) const {
        std::vector<Piece> out;
        int poly = c.poly;
        Vec2 p = S.polys[poly].v[c.edge];
        bool in_vertex = true;
        int in_idx = c.edge;
        long steps = 0;
        for (;;) {
            if (++steps > bound_) throw NotPeriodicSignal{"separatrix did not close within the step bound"};
            const auto& P = S.polys[poly];
            Hit h = first_exit(P, p, u);
            Piece pc;
            pc.poly = poly;
            pc.in_vertex = in_vertex;
            pc.in_idx = in_idx;
            pc.a = p;
            if (stop(pc, h)) {
                out.push_back(pc);
                return out;
            }
            pc.out_vertex = h.vertex;
            pc.out_idx = h.idx;
            pc.b = p + h.t * u;
            out.push_back(pc);
            if (h.vertex) {
                *arrival = corner_containing(EdgeRef{poly, h.idx}, -u);
                return out;
            }
            // cross edge h.idx
            const auto& g = S.glue[poly][h.idx];
            const auto& R = S.polys[g.partner.poly];
            Vec2 A = P.v[h.idx];
            Vec2 off = pc.b - A;
            Vec2 B = R.v[(g.partner.edge + 1) % R.size()];
            p = B + off;
            poly = g.partner.poly;
            in_vertex = false;
            in_idx = g.partner.edge;
        }
    }

    const PolySurface& S;

private:
    long bound_;
};

struct Ray {
    bool right = true;
    EdgeRef corner;
};

void add_edge(const PolySurface& S, CVec& chain, int poly, int edge, int sign) {
    auto [idx, sg] = S.edge_class(EdgeRef{poly, edge});
    chain[idx] += QI(sg * sign);
}

// Homotopy of a concatenation of pieces to a boundary chain.
CVec pieces_to_chain(const PolySurface& S, const std::vector<Piece>& ps, int ne) {
    CVec chain(ne);
    for (const auto& pc : ps) {
        int n = S.polys[pc.poly].size();
        int i = pc.in_idx, j = pc.out_idx;
        for (int k = i; k != j; k = (k + 1) % n) add_edge(S, chain, pc.poly, k, 1);
        if (!pc.out_vertex) add_edge(S, chain, pc.poly, j, 1);
    }
    return chain;
}

Periodic decompose_horizontal(const PolySurface& S, long bound) {
    if (S.half_translation()) fail("NotTranslation", "cylinder decompositions need a translation surface");
    Tracer tr(S, bound);
    const Vec2 east(1, 0), west(-1, 0), north(0, 1), south(0, -1);
    int ncls = S.num_classes;

    // horizontal rays around each vertex class, ccw, starting with a right ray
    std::vector<std::vector<Ray>> rays(ncls);
    std::map<std::pair<EdgeRef, bool>, std::pair<int, int>> ray_at;  // (corner, right) -> (class, index)
    for (int cls = 0; cls < ncls; ++cls) {
        EdgeRef c0 = S.class_rep[cls], c = c0;
        std::vector<Ray> rs;
        do {
            const auto& P = S.polys[c.poly];
            Vec2 a = sector_start(P, c.edge), b = sector_end(P, c.edge);
            std::vector<Ray> here;
            if (in_sector(east, a, b)) here.push_back(Ray{true, c});
            if (in_sector(west, a, b)) here.push_back(Ray{false, c});
            if (here.size() == 2 && before_in_sector(a, west, east)) std::swap(here[0], here[1]);
            for (auto& r : here) rs.push_back(r);
            c = tr.next_corner(c);
        } while (!(c == c0));
        auto it = std::find_if(rs.begin(), rs.end(), [](const Ray& r) { return r.right; });
        std::rotate(rs.begin(), it, rs.end());
        for (size_t k = 0; k < rs.size(); ++k)
            if (rs[k].right != (k % 2 == 0)) fail("InternalError", "horizontal rays do not alternate");
        for (size_t k = 0; k < rs.size(); ++k) ray_at[{rs[k].corner, rs[k].right}] = {cls, static_cast<int>(k)};
        rays[cls] = rs;
    }

    // one saddle connection per right ray
    std::map<std::pair<int, int>, int> hsc_of;  // (class, ray index) -> hsc
    std::vector<std::pair<int, int>> hsc_ray;
    for (int cls = 0; cls < ncls; ++cls)
        for (size_t k = 0; k < rays[cls].size(); k += 2) {
            hsc_of[{cls, static_cast<int>(k)}] = static_cast<int>(hsc_ray.size());
            hsc_ray.push_back({cls, static_cast<int>(k)});
        }
    int ns = static_cast<int>(hsc_ray.size());
    std::vector<std::vector<Piece>> hsc_pieces(ns);
    std::vector<Q> hsc_len(ns);
    std::vector<int> nb(ns), nt(ns);
    auto no_stop = [](const Piece&, const Hit&) { return false; };
    for (int s = 0; s < ns; ++s) {
        auto [cls, k] = hsc_ray[s];
        EdgeRef c = rays[cls][k].corner;
        EdgeRef arr;
        std::vector<Piece> ps;
        const auto& P = S.polys[c.poly];
        if (same_direction(P.edge_vec(c.edge), east)) {
            Piece pc;
            pc.poly = c.poly;
            pc.in_idx = c.edge;
            pc.out_idx = (c.edge + 1) % P.size();
            pc.a = P.v[c.edge];
            pc.b = P.v[pc.out_idx];
            ps.push_back(pc);
            arr = tr.corner_containing(EdgeRef{c.poly, pc.out_idx}, west);
        } else {
            ps = tr.trace(c, east, no_stop, &arr);
        }
        Q len = 0;
        for (auto& pc : ps) len += pc.b.x - pc.a.x;
        hsc_len[s] = len;
        hsc_pieces[s] = ps;
        auto it = ray_at.find({arr, false});
        if (it == ray_at.end()) fail("InternalError", "arrival is not a left ray");
        auto [acls, ak] = it->second;
        int m = static_cast<int>(rays[acls].size());
        nb[s] = hsc_of.at({acls, (ak - 1 + m) % m});
        nt[s] = hsc_of.at({acls, (ak + 1) % m});
    }

    // pieces indexed by polygon for the vertical traces
    struct PieceRef {
        int hsc, piece;
        Q offset;  // along the saddle connection at piece start
        Piece geom;
    };
    std::vector<std::vector<PieceRef>> by_poly(S.polys.size());
    for (int s = 0; s < ns; ++s) {
        Q off = 0;
        for (size_t k = 0; k < hsc_pieces[s].size(); ++k) {
            const auto& pc = hsc_pieces[s][k];
            by_poly[pc.poly].push_back(PieceRef{s, static_cast<int>(k), off, pc});
            if (pc.in_vertex && pc.out_vertex && pc.out_idx == (pc.in_idx + 1) % S.polys[pc.poly].size()) {
                // along a polygon edge: also seen from the glued polygon
                const auto& g = S.glue[pc.poly][pc.in_idx];
                const auto& R = S.polys[g.partner.poly];
                Piece m;
                m.poly = g.partner.poly;
                m.in_idx = (g.partner.edge + 1) % R.size();
                m.out_idx = g.partner.edge;
                m.a = R.v[m.in_idx];
                m.b = R.v[m.out_idx];
                by_poly[m.poly].push_back(PieceRef{s, static_cast<int>(k), off, m});
            }
            off += pc.b.x - pc.a.x;
        }
    }

    CylSurface cs;
    for (int s = 0; s < ns; ++s) cs.hscs.push_back(HSC{hsc_len[s], ""});
    std::vector<bool> seen_b(ns, false), seen_t(ns, false);
    int ne_poly = static_cast<int>(S.edge_class_reps().size());
    std::vector<CVec> cross_chain;
    for (int s0 = 0; s0 < ns; ++s0) {
        if (seen_b[s0]) continue;
        Cyl C;
        int s = s0;
        do {
            if (seen_b[s]) fail("InternalError", "bottom cycles overlap");
            seen_b[s] = true;
            C.bottom.push_back(s);
            s = nb[s];
        } while (s != s0);
        // vertical trace from the left end of bottom[0]
        auto [cls, k] = hsc_ray[s0];
        EdgeRef c = rays[cls][k].corner;
        c = tr.corner_containing(c, north);
        int hit_hsc = -1, hit_piece = -1;
        Piece hit_geom;
        Q hit_pos;
        EdgeRef arr{-1, -1};
        auto stop = [&](Piece& pc, const Hit& h) {
            const auto& P = S.polys[pc.poly];
            Q best_t;
            bool have = false;
            for (const auto& r : by_poly[pc.poly]) {
                const auto& hp = r.geom;
                Q y = hp.a.y - pc.a.y;
                if (sgn(y) <= 0) continue;
                if (pc.a.x < hp.a.x || pc.a.x > hp.b.x) continue;
                if (have && y >= best_t) continue;
                best_t = y;
                have = true;
                hit_hsc = r.hsc;
                hit_piece = r.piece;
                hit_geom = hp;
                hit_pos = r.offset + (pc.a.x - hp.a.x);
            }
            if (!have || best_t > h.t) return false;
            if (best_t == h.t && h.vertex) return false;  // vertex takes precedence
            pc.b = pc.a + best_t * north;
            (void)P;
            return true;
        };
        Q height = 0;
        std::vector<Piece> up = tr.trace(c, north, stop, &arr);
        for (auto& pc : up) height += pc.b.y - pc.a.y;
        std::vector<Piece> chain_pieces(up.begin(), up.end() - 1);
        Piece last = up.back();
        int top0;
        if (arr.poly >= 0) {
            // reached a vertex from below: first right ray after the downward direction
            const auto& P = S.polys[arr.poly];
            EdgeRef cc = arr;
            int found = -1;
            {
                Vec2 a = sector_start(P, cc.edge);
                auto itR = ray_at.find({cc, true});
                if (itR != ray_at.end() && before_in_sector(a, south, east)) found = itR->second.second;
            }
            int acls = S.corner_class[arr.poly][arr.edge];
            if (found < 0) {
                cc = tr.next_corner(cc);
                for (int guard = 0; found < 0 && guard < 100000; ++guard) {
                    auto itR = ray_at.find({cc, true});
                    if (itR != ray_at.end()) found = itR->second.second;
                    cc = tr.next_corner(cc);
                }
            }
            if (found < 0) fail("InternalError", "no right ray above the vertex");
            top0 = hsc_of.at({acls, found});
            hit_pos = 0;
            chain_pieces.push_back(last);
        } else {
            top0 = hit_hsc;
            const auto& hp = hit_geom;
            Piece merged = last;
            merged.out_vertex = hp.in_vertex;
            merged.out_idx = hp.in_idx;
            chain_pieces.push_back(merged);
            for (int m = hit_piece - 1; m >= 0; --m) {
                Piece rv = hsc_pieces[hit_hsc][m];
                std::swap(rv.in_vertex, rv.out_vertex);
                std::swap(rv.in_idx, rv.out_idx);
                std::swap(rv.a, rv.b);
                chain_pieces.push_back(rv);
            }
        }
        // twist: top[0] starts hit_pos to the left of the vertical
        C.height = height;
        C.twist = -hit_pos;
        int t = top0;
        do {
            if (seen_t[t]) fail("InternalError", "top cycles overlap");
            seen_t[t] = true;
            C.top.push_back(t);
            t = nt[t];
        } while (t != top0);
        cs.cyls.push_back(C);
        cross_chain.push_back(pieces_to_chain(S, chain_pieces, ne_poly));
    }
    cs.finalize();
    for (int s = 0; s < ns; ++s)
        if (cs.next_bottom(s) != nb[s] || cs.next_top(s) != nt[s])
            fail("InternalError", "cylinder diagram disagrees with the traced separatrices");
    for (int c = 0; c < cs.num_cyls(); ++c) {
        Q tl = 0;
        for (int s : cs.cyls[c].top) tl += cs.hscs[s].len;
        if (tl != cs.circumference(c)) fail("InternalError", "cylinder top and bottom lengths differ");
    }

    Periodic out;
    out.rotated = S;
    out.cyl = cs;
    for (int s = 0; s < ns; ++s) out.chains.push_back(pieces_to_chain(S, hsc_pieces[s], ne_poly));
    for (auto& ch : cross_chain) out.chains.push_back(ch);
    out.vertex_map.assign(cs.num_vertices, -1);
    for (int s = 0; s < ns; ++s) {
        int v = cs.start_vertex[s];
        int cls = hsc_ray[s].first;
        if (out.vertex_map[v] >= 0 && out.vertex_map[v] != cls)
            fail("InternalError", "vertex correspondence is not a function");
        out.vertex_map[v] = cls;
    }
    if (cs.num_vertices != ncls) fail("InternalError", "vertex count changed under decomposition");
    CVec per = pull_back(S.complex().period(), out.chains);
    if (per != cs.complex().period()) fail("InternalError", "chain map does not preserve periods");
    return out;
}

Q max_denominator(const PolySurface& s) {
    Q m = 1;
    for (auto& p : s.polys)
        for (auto& v : p.v)
            for (const Q* q : {&v.x, &v.y}) {
                Q d = q->get_den();
                if (d > m) m = d;
            }
    return m;
}

}  // namespace

TangentSpace Periodic::to_cyl(const TangentSpace& t) const { return TangentSpace{cyl.complex(), to_cyl(t.T)}; }

CVec Periodic::to_poly(const CVec& u_cyl) const {
    CellComplex pc = rotated.complex();
    int ne = pc.num_edges();
    CMat m = chains;
    CVec rhs = u_cyl;
    for (auto& f : pc.faces) {
        CVec row(ne);
        for (auto [e, sg] : f) row[e] += QI(sg);
        m.push_back(row);
        rhs.push_back(QI(0));
    }
    auto x = solve(m, rhs, ne);
    if (!x) fail("NotCocycle", "cocycle does not come from the polygon complex");
    return *x;
}

long default_step_bound(const PolySurface& s) {
    long e = static_cast<long>(s.edge_class_reps().size());
    Q d = max_denominator(s);
    long den = d.get_num().fits_slong_p() ? d.get_num().get_si() : 1000000;
    long b = 10 * e * std::max(1L, den);
    return std::max(b, 100L);
}

long configured_step_bound(const PolySurface& s) {
    if (const char* env = std::getenv("FLATDEG_STEP_BOUND")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) return v;
    }
    return default_step_bound(s);
}

std::optional<Periodic> decompose(const PolySurface& s, const Vec2& direction, long step_bound,
                                  DecompositionFailure* why) {
    Mat2 f = rotation_to_horizontal(direction);
    PolySurface r = apply_gl2(s, f);
    if (step_bound <= 0) step_bound = configured_step_bound(r);
    try {
        Periodic p = decompose_horizontal(r, step_bound);
        p.direction = direction;
        p.frame = f;
        p.inverse = Mat2{direction.x, -direction.y, direction.y, direction.x};
        return p;
    } catch (const NotPeriodicSignal& e) {
        if (why) *why = DecompositionFailure{"NotPeriodic", e.msg};
        return std::nullopt;
    }
}

Periodic decompose_or_throw(const PolySurface& s, const Vec2& direction, long step_bound) {
    DecompositionFailure why;
    auto p = decompose(s, direction, step_bound, &why);
    if (!p) fail(why.code, why.message + " in direction " + to_string(direction));
    return *p;
}

Periodic periodic_from_cyl(const CylSurface& cs) {
    Periodic p;
    p.direction = Vec2(1, 0);
    p.frame = Mat2{Q(1), Q(0), Q(0), Q(1)};
    p.inverse = p.frame;
    p.rotated = cs.to_poly();
    p.cyl = cs;
    CMat m = cs.poly_edge_to_cyl_edge();  // signed permutation
    int ne = cs.num_hscs() + cs.num_cyls();
    p.chains.assign(ne, CVec(m.size()));
    for (size_t i = 0; i < m.size(); ++i)
        for (int e = 0; e < ne; ++e)
            if (!m[i][e].is_zero()) p.chains[e][i] = m[i][e];
    // vertices: match by saddle connection endpoints
    p.vertex_map.assign(cs.num_vertices, -1);
    for (int c = 0; c < cs.num_cyls(); ++c)
        for (size_t k = 0; k < cs.cyls[c].bottom.size(); ++k)
            p.vertex_map[cs.start_vertex[cs.cyls[c].bottom[k]]] = p.rotated.corner_class[c][k];
    return p;
}

}  // namespace flatdeg
