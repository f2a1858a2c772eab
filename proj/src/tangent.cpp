#include "flatdeg/tangent.hpp"

#include <functional>

namespace flatdeg {

namespace {

int rank_of(const CellComplex& cx, const Subspace& s) {
    CMat m = cx.pairing_matrix(s.basis());
    int r = flatdeg::rank(m, s.dim());
    if (r % 2 != 0) fail("InternalError", "pairing rank is odd");
    return r / 2;
}

}  // namespace

int TangentSpace::rank() const { return rank_of(cx, T); }

int TangentSpace::rel() const { return rel_part().dim(); }

TangentSpace make_tangent(const CellComplex& cx, const CMat& basis) {
    for (auto& u : basis) {
        if (static_cast<int>(u.size()) != cx.num_edges()) fail("DimensionMismatch", "cocycle has wrong length");
        if (!cx.is_cocycle(u)) fail("NotCocycle", "tangent vector does not vanish on a face boundary");
    }
    TangentSpace t{cx, Subspace(cx.num_edges(), basis)};
    if (!t.T.contains(cx.period())) fail("MissingPeriod", "tangent space does not contain omega");
    if (!t.T.contains(conj(cx.period()))) fail("MissingPeriod", "tangent space does not contain Re omega and Im omega");
    return t;
}

TangentSpace stratum_tangent(const CellComplex& cx) { return TangentSpace{cx, cx.cocycles()}; }

TangentSpace quadratic_double_tangent(const DoubleCover& dc) {
    const PolySurface& s = dc.cover;
    int np = static_cast<int>(s.polys.size());
    const auto& J = dc.poly_involution;
    if (static_cast<int>(J.size()) != np) fail("InvolutionMismatch", "involution size");
    for (int p = 0; p < np; ++p) {
        int q = J[p];
        if (q < 0 || q >= np || J[q] != p || q == p) fail("InvolutionMismatch", "not a fixed-point-free involution on polygons");
        const auto &P = s.polys[p], &R = s.polys[q];
        if (P.size() != R.size()) fail("InvolutionMismatch", "polygon sizes differ");
        for (int j = 0; j < P.size(); ++j) {
            if (R.v[j] - R.v[0] != -(P.v[j] - P.v[0])) fail("InvolutionMismatch", "involution is not z -> -z");
            const auto& g = s.glue[p][j];
            const auto& gj = s.glue[q][j];
            if (!(gj.partner == EdgeRef{J[g.partner.poly], g.partner.edge}))
                fail("InvolutionMismatch", "involution does not respect gluings");
        }
    }
    CellComplex cx = s.complex();
    int ne = cx.num_edges();
    CMat cons;
    for (int p = 0; p < np; ++p)
        for (int j = 0; j < s.polys[p].size(); ++j) {
            auto [a, sa] = s.edge_class(EdgeRef{p, j});
            auto [b, sb] = s.edge_class(EdgeRef{J[p], j});
            CVec row(ne);
            row[b] += QI(sb);
            row[a] += QI(sa);
            cons.push_back(row);
        }
    for (auto& f : cx.faces) {
        CVec row(ne);
        for (auto [e, sg] : f) row[e] += QI(sg);
        cons.push_back(row);
    }
    TangentSpace t{cx, Subspace(ne, nullspace(cons, ne))};
    if (!t.T.contains(cx.period())) fail("InvolutionMismatch", "involution does not negate omega");
    return t;
}

bool is_high_rank(const TangentSpace& t) {
    if (t.cx.num_components != 1) fail("NotConnected", "high rank is defined for connected surfaces");
    int g = t.cx.genus(0);
    return 2 * t.rank() >= g + 2;
}

int riemann_hurwitz_bound(int g) { return (g + 1) / 2; }

bool easy_rank_predicate(const TangentSpace& t) {
    if (t.cx.num_components != 1) fail("NotConnected", "predicate is defined for connected surfaces");
    int g = t.cx.genus(0);
    int s = t.cx.num_vertices;
    return 2 * t.rank() > g + s - 1;
}

PrimeFactorization prime_factorization(const TangentSpace& t) {
    const CellComplex& cx = t.cx;
    int nc = cx.num_components;
    Subspace coc = cx.cocycles();
    if (!coc.contains(t.T)) fail("NotProduct", "tangent space is not inside the cocycle space");
    auto block_part = [&](const std::vector<int>& block) {
        std::vector<bool> in(nc, false);
        for (int c : block) in[c] = true;
        CMat outside;
        for (int e = 0; e < cx.num_edges(); ++e)
            if (!in[cx.edge_component(e)]) outside.push_back(unit(cx.num_edges(), e));
        return t.T.annihilated_by(outside);
    };
    PrimeFactorization best;
    size_t best_blocks = 0;
    std::vector<int> label(nc, 0);
    std::function<void(int, int)> rec = [&](int i, int used) {
        if (i == nc) {
            std::vector<std::vector<int>> blocks(used);
            for (int c = 0; c < nc; ++c) blocks[label[c]].push_back(c);
            if (blocks.size() <= best_blocks) return;
            std::vector<Subspace> parts;
            int total = 0;
            for (auto& b : blocks) {
                parts.push_back(block_part(b));
                total += parts.back().dim();
            }
            if (total != t.T.dim()) return;
            best_blocks = blocks.size();
            best.blocks = blocks;
            best.parts = parts;
            return;
        }
        for (int l = 0; l <= used; ++l) {
            label[i] = l;
            rec(i + 1, std::max(used, l + 1));
        }
    };
    rec(0, 0);
    if (best.blocks.empty()) fail("NotProduct", "no component partition reconstructs the space");
    for (size_t b = 0; b < best.blocks.size(); ++b) {
        best.block_rank.push_back(rank_of(cx, best.parts[b]));
        if (best.blocks[b].size() < 2) continue;
        int r0 = -1;
        for (int c : best.blocks[b]) {
            CMat proj;
            for (auto& u : best.parts[b].basis()) proj.push_back(cx.restrict_to_component(u, c));
            int r = rank_of(cx, Subspace(cx.num_edges(), proj));
            if (r0 < 0) r0 = r;
            if (r != r0) fail("RankMismatch", "components of a prime factor have different ranks");
        }
    }
    return best;
}

CVec pull_back(const CVec& u, const CMat& chains) {
    CVec r(chains.size());
    for (size_t e = 0; e < chains.size(); ++e) r[e] = dotc(u, chains[e]);
    return r;
}

Subspace pull_back(const Subspace& T, const CMat& chains, int target_edges) {
    CMat out;
    for (auto& u : T.basis()) out.push_back(pull_back(u, chains));
    return Subspace(target_edges, out);
}

}  // namespace flatdeg
