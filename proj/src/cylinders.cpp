#include "flatdeg/cylinders.hpp"

#include <algorithm>
#include <numeric>

namespace flatdeg {

namespace {

int find(std::vector<int>& p, int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
}

int ne_of(const CylSurface& cs) { return cs.num_hscs() + cs.num_cyls(); }

bool vanishes_on(const TangentSpace& t, const CVec& chain) { return is_zero(functional(t, chain)); }

}  // namespace

Shape cylinder_shape(const CylSurface& cs, int c) {
    const auto& C = cs.cyls[c];
    size_t nb = C.bottom.size(), nt = C.top.size();
    if (nb == 1 && nt == 1) return Shape::Simple;
    auto two_equal = [&](const std::vector<int>& side) {
        return side.size() == 2 && cs.hscs[side[0]].len == cs.hscs[side[1]].len;
    };
    if ((nb == 1 && two_equal(C.top)) || (nt == 1 && two_equal(C.bottom))) return Shape::HalfSimple;
    return Shape::Other;
}

std::string shape_name(Shape s) {
    switch (s) {
        case Shape::Simple: return "simple";
        case Shape::HalfSimple: return "half_simple";
        default: return "other";
    }
}

CVec functional(const TangentSpace& t, const CVec& chain) {
    CVec out;
    for (auto& u : t.T.basis()) out.push_back(dotc(u, chain));
    return out;
}

CVec core_functional(const TangentSpace& t, const CylSurface& cs, int c) {
    return functional(t, cs.core_chain(c));
}

bool is_parallel(const TangentSpace& t, const CylSurface& cs, int c1, int c2) {
    CVec f1 = core_functional(t, cs, c1), f2 = core_functional(t, cs, c2);
    return scale(QI(cs.circumference(c1)), f2) == scale(QI(cs.circumference(c2)), f1);
}

bool generically_parallel(const TangentSpace& t, const CylSurface& cs, int s, int c) {
    CVec fs = functional(t, unit(ne_of(cs), s));
    CVec fc = core_functional(t, cs, c);
    return scale(QI(cs.circumference(c)), fs) == scale(QI(cs.hscs[s].len), fc);
}

bool cylinder_generic(const TangentSpace& t, const CylSurface& cs, int c) {
    for (const auto* side : {&cs.cyls[c].bottom, &cs.cyls[c].top})
        for (int s : *side)
            if (!generically_parallel(t, cs, s, c)) return false;
    return true;
}

bool class_generic(const TangentSpace& t, const CylSurface& cs, const std::vector<int>& cls) {
    for (int c : cls)
        if (!cylinder_generic(t, cs, c)) return false;
    if (t.rel() == 0) return true;
    int comp = cs.cyl_component[cls[0]];
    for (int s = 0; s < cs.num_hscs(); ++s) {
        if (cs.cyl_component[cs.above[s]] != comp) continue;
        if (!generically_parallel(t, cs, s, cls[0])) return false;
    }
    return true;
}

std::vector<CylClass> equivalence_classes(const TangentSpace& t, const CylSurface& cs) {
    int nc = cs.num_cyls();
    std::vector<int> parent(nc);
    std::iota(parent.begin(), parent.end(), 0);
    std::vector<CVec> f(nc);
    for (int c = 0; c < nc; ++c) f[c] = core_functional(t, cs, c);
    for (int a = 0; a < nc; ++a)
        for (int b = a + 1; b < nc; ++b)
            if (scale(QI(cs.circumference(a)), f[b]) == scale(QI(cs.circumference(b)), f[a]))
                parent[find(parent, b)] = find(parent, a);
    std::vector<CylClass> out;
    std::vector<int> slot(nc, -1);
    for (int c = 0; c < nc; ++c) {
        int r = find(parent, c);
        if (slot[r] < 0) {
            slot[r] = static_cast<int>(out.size());
            out.push_back({});
        }
        out[slot[r]].cyls.push_back(c);
    }
    for (auto& k : out) {
        k.cylinders_generic = true;
        for (int c : k.cyls) k.cylinders_generic = k.cylinders_generic && cylinder_generic(t, cs, c);
        k.generic = k.cylinders_generic && class_generic(t, cs, k.cyls);
    }
    return out;
}

CVec standard_deformation(const CylSurface& cs, const std::vector<int>& cls) {
    CVec s(ne_of(cs));
    for (int c : cls) s[cs.cross_edge(c)] += QI(cs.cyls[c].height);
    return s;
}

CVec twist_cocycle(const CylSurface& cs, const std::vector<int>& cls, const std::vector<QI>& a) {
    if (a.size() != cls.size()) fail("DimensionMismatch", "one coefficient per cylinder of the class");
    CVec s(ne_of(cs));
    for (size_t k = 0; k < cls.size(); ++k) s[cs.cross_edge(cls[k])] += a[k];
    return s;
}

Subspace twist_space(const TangentSpace& t, const CylSurface& cs, const std::vector<int>& cls) {
    CMat duals;
    for (int c : cls) duals.push_back(cs.core_dual(c));
    return Subspace(ne_of(cs), duals).intersect(t.T);
}

int twist_absolute_dim(const TangentSpace& t, const Subspace& twist) {
    Subspace kp = t.cx.ker_p();
    return twist.plus(kp).dim() - kp.dim();
}

CMat real_basis(const Subspace& s) {
    if (!s.closed_under_conj()) fail("NotReal", "subspace is not defined over the reals");
    CMat parts;
    for (auto& u : s.basis()) {
        parts.push_back(real_part(u));
        parts.push_back(imag_part(u));
    }
    // real row reduction keeps real vectors
    CMat m = parts;
    rref(m, s.ambient());
    return m;
}

TwistDecomposition twist_decomposition(const TangentSpace& t, const CylSurface& cs, const std::vector<int>& cls,
                                       const CVec& eta, const CVec& w) {
    if (!class_generic(t, cs, cls)) fail("NotGeneric", "the class is not certified generic");
    if (!t.T.contains(eta)) fail("NotInTangent", "eta is not in T");
    if (!t.T.contains(w)) fail("NotInTangent", "w is not in T");
    int pivot = -1;
    for (int c : cls)
        if (!dotc(w, cs.core_chain(c)).is_zero()) {
            pivot = c;
            break;
        }
    if (pivot < 0) fail("BadPivot", "w vanishes on every core curve of the class");
    TwistDecomposition d;
    d.a = dotc(eta, cs.core_chain(pivot)) / dotc(w, cs.core_chain(pivot));
    CVec rest = sub(eta, scale(d.a, w));
    for (int c : cls)
        if (!dotc(rest, cs.core_chain(c)).is_zero())
            fail("NotGeneric", "core curves of the class are not generically parallel");
    d.eta_c = CVec(ne_of(cs));
    for (int c : cls) d.eta_c[cs.cross_edge(c)] = rest[cs.cross_edge(c)];
    if (!t.T.contains(d.eta_c)) fail("TwistDecompositionFails", "twist part is not in T");
    d.eta_rest = sub(rest, d.eta_c);
    for (int c : cls) {
        if (!d.eta_rest[cs.cross_edge(c)].is_zero()) fail("InternalError", "remainder is nonzero on a cross curve");
        for (const auto* side : {&cs.cyls[c].bottom, &cs.cyls[c].top})
            for (int s : *side)
                if (!d.eta_rest[s].is_zero())
                    fail("TwistDecompositionFails", "remainder is nonzero on a boundary saddle connection");
    }
    return d;
}

CVec height_chain(const CylSurface& cs, int c) {
    CVec x = unit(ne_of(cs), cs.cross_edge(c));
    axpy(x, QI(-cs.cyls[c].twist / cs.circumference(c)), cs.core_chain(c));
    return x;
}

bool height_ratio_constant(const TangentSpace& t, const CylSurface& cs, int c1, int c2) {
    // Real directions in T keeping every horizontal saddle connection horizontal; along these the
    // cylinders persist and the height of C moves by Im u(s_C).
    CMat real_basis;
    for (auto& b : t.T.basis()) {
        real_basis.push_back(b);
        real_basis.push_back(scale(QI(Q(0), Q(1)), b));
    }
    int k = static_cast<int>(real_basis.size());
    CMat m;
    for (int s = 0; s < cs.num_hscs(); ++s) {
        CVec row(k);
        for (int j = 0; j < k; ++j) row[j] = QI(real_basis[j][s].im);
        m.push_back(row);
    }
    for (auto& x : nullspace(m, k)) {
        Q a1 = 0, a2 = 0;
        for (int j = 0; j < k; ++j) {
            a1 += x[j].re * real_basis[j][cs.cross_edge(c1)].im;
            a2 += x[j].re * real_basis[j][cs.cross_edge(c2)].im;
        }
        if (cs.cyls[c2].height * a1 != cs.cyls[c1].height * a2) return false;
    }
    return true;
}

bool is_free(const TangentSpace& t, const CylSurface& cs, int c) { return t.T.contains(cs.core_dual(c)); }

bool are_twins(const TangentSpace& t, const CylSurface& cs, int c1, int c2) {
    if (c1 == c2) return false;
    if (cs.cyls[c1].height != cs.cyls[c2].height) return false;
    if (cs.circumference(c1) != cs.circumference(c2)) return false;
    if (core_functional(t, cs, c1) != core_functional(t, cs, c2)) return false;
    if (!vanishes_on(t, sub(height_chain(cs, c1), height_chain(cs, c2)))) return false;
    return t.T.contains(add(cs.core_dual(c1), cs.core_dual(c2)));
}

GeminalReport geminal_report(const TangentSpace& t, const CylSurface& cs) {
    int nc = cs.num_cyls();
    GeminalReport r;
    r.status.assign(nc, GeminalStatus::Violation);
    r.partner.assign(nc, -1);
    for (int c = 0; c < nc; ++c) {
        if (is_free(t, cs, c)) {
            r.status[c] = GeminalStatus::Free;
            continue;
        }
        for (int d = 0; d < nc; ++d)
            if (are_twins(t, cs, c, d)) {
                r.status[c] = GeminalStatus::Twin;
                r.partner[c] = d;
                break;
            }
        if (r.status[c] == GeminalStatus::Violation) r.geminal = false;
    }
    return r;
}

StabilityReport cylindrical_stability(const TangentSpace& t, const CylSurface& cs) {
    StabilityReport r;
    CMat duals, cores;
    for (int c = 0; c < cs.num_cyls(); ++c) {
        duals.push_back(cs.core_dual(c));
        cores.push_back(cs.core_chain(c));
    }
    Subspace tw = Subspace(ne_of(cs), duals).intersect(t.T);
    Subspace pres = t.T.annihilated_by(cores);
    r.twist_dim = tw.dim();
    r.preserving_dim = pres.dim();
    r.num_classes = static_cast<int>(equivalence_classes(t, cs).size());
    r.rank = t.rank();
    r.rel = t.rel();
    if (!pres.contains(tw)) r.consistent = false;
    r.stable = r.twist_dim == r.preserving_dim;
    if (r.stable != (r.twist_dim == r.rank + r.rel)) r.consistent = false;
    if (r.rel == 0 && r.stable != (r.num_classes == r.rank)) r.consistent = false;
    return r;
}

bool involved_with_rel(const TangentSpace& t, const CylSurface& cs, const std::vector<int>& cls) {
    Subspace rp = t.rel_part();
    for (auto& u : rp.basis())
        for (int c : cls)
            if (!u[cs.cross_edge(c)].is_zero()) return true;
    return false;
}

std::vector<int> free_marked_points(const TangentSpace& t) {
    std::vector<int> out;
    CMat d = t.cx.ker_p_generators();
    for (int p = 0; p < t.cx.num_vertices; ++p)
        if (t.cx.vertex_order[p] == 0 && !is_zero(d[p]) && t.T.contains(d[p])) out.push_back(p);
    return out;
}

std::vector<std::vector<int>> hat_complement(const TangentSpace& t, const CylSurface& cs,
                                             const std::vector<int>& cls) {
    int nc = cs.num_cyls();
    std::vector<bool> in(nc, false);
    for (int c : cls) in[c] = true;
    std::vector<int> parent(nc);
    std::iota(parent.begin(), parent.end(), 0);
    for (int s = 0; s < cs.num_hscs(); ++s) {
        int a = cs.above[s], b = cs.below[s];
        if (in[a] || in[b]) continue;
        if (generically_parallel(t, cs, s, cls[0])) continue;
        parent[find(parent, a)] = find(parent, b);
    }
    std::vector<std::vector<int>> out;
    std::vector<int> slot(nc, -1);
    for (int c = 0; c < nc; ++c) {
        if (in[c]) continue;
        int r = find(parent, c);
        if (slot[r] < 0) {
            slot[r] = static_cast<int>(out.size());
            out.push_back({});
        }
        out[slot[r]].push_back(c);
    }
    return out;
}

bool is_nested(const Periodic& pc, int c, const Periodic& ph, int h) {
    if (sgn(cross(pc.direction, ph.direction)) == 0) fail("NotTransverse", "cylinders are parallel");
    // core of C as a chain on the polygon complex
    int np = static_cast<int>(pc.chains[0].size());
    CVec core(np);
    CVec cc = pc.cyl.core_chain(c);
    for (size_t e = 0; e < cc.size(); ++e)
        if (!cc[e].is_zero()) axpy(core, cc[e], pc.chains[e]);
    // intersection with the core of H: the dual of H evaluated on it
    CVec dual_h = ph.to_poly(ph.cyl.core_dual(h));
    QI crossings = dotc(dual_h, core);
    if (!(crossings == QI(1) || crossings == QI(-1))) return false;
    // inside the closure of H: transverse length equals the height of H
    Vec2 hol_c = pc.inverse.apply(Vec2(pc.cyl.circumference(c), 0));
    Vec2 hol_h = ph.inverse.apply(Vec2(ph.cyl.circumference(h), 0));
    Q area_h = ph.cyl.cyls[h].height * ph.cyl.circumference(h) * dot(ph.direction, ph.direction);
    Q x = cross(hol_c, hol_h);
    if (sgn(x) < 0) x = -x;
    return x == area_h;
}

}  // namespace flatdeg
