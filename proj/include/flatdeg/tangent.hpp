#pragma once

#include "flatdeg/homology.hpp"
#include "flatdeg/surface.hpp"

#include <vector>

namespace flatdeg {

// A complex subspace T of H^1(X, Sigma; C) on a fixed cell complex.
struct TangentSpace {
    CellComplex cx;
    Subspace T;

    int dim() const { return T.dim(); }
    int rank() const;
    int rel() const;
    Subspace rel_part() const { return T.intersect(cx.ker_p()); }
};

// Checks that the vectors are cocycles and that omega lies in their span.
TangentSpace make_tangent(const CellComplex& cx, const CMat& basis);
TangentSpace stratum_tangent(const CellComplex& cx);
TangentSpace quadratic_double_tangent(const DoubleCover& dc);

bool is_high_rank(const TangentSpace& t);
int riemann_hurwitz_bound(int g);
// rank > (g + s - 1)/2 with s the number of points of Sigma; meaningful for rel 0.
bool easy_rank_predicate(const TangentSpace& t);

struct PrimeFactorization {
    std::vector<std::vector<int>> blocks;  // component indices
    std::vector<Subspace> parts;           // T restricted to each block
    std::vector<int> block_rank;
};
PrimeFactorization prime_factorization(const TangentSpace& t);

// Pull a tangent space back along a chain map: rows of `chains` are images of
// the target complex edges as chains on the source complex (u -> u o chains).
Subspace pull_back(const Subspace& T, const CMat& chains, int target_edges);
CVec pull_back(const CVec& u, const CMat& chains);

}  // namespace flatdeg
