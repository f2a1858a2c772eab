#pragma once

#include "flatdeg/degeneration.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace flatdeg {

// Schiffer data: one complex number per point of Sigma, summing to zero on
// each component, with lambda_j - lambda_i = xi(path from z_i to z_j).
struct SchifferData {
    std::vector<QI> lambda;
};

SchifferData lambda_from_rel(const CellComplex& cx, const CVec& xi);

// Moves the zeros horizontally by real lambda: a zero with lambda > 0 is slid
// to the right. Stars are the horizontal segments from each zero in the
// direction of -lambda along its outgoing or incoming saddle connections.
CylSurface schiffer(const CylSurface& cs, const SchifferData& s);
// Same on polygons; all lambda must be real multiples of one direction. The
// surface is decomposed in that direction first.
PolySurface schiffer(const PolySurface& s, const SchifferData& d);

// (X, omega) - t xi for 0 <= t < tau.
CylSurface rel_flow_at(const CylSurface& cs, const CVec& xi, const Q& t);

struct RelFlowResult {
    bool bounded = false;
    Q tau;
    SchifferData schiffer;
    std::vector<int> collapsing;  // saddle connections with omega(s) = tau xi(s)
    CylSurface limit;
    CMat chains;          // row e: image of source edge e on the limit
    Subspace vanishing;   // chains on the source complex
};

// Horizontal real rel flow until the first saddle connection shrinks to zero.
// ξ must be real and purely relative. Unbounded is reported through `bounded`.
RelFlowResult rel_flow_limit(const CylSurface& cs, const CVec& xi);

struct DoubleDegeneration {
    Degeneration inner;
    DichotomyResult verdict;
    CVec eta;  // on the inner limit complex
    bool eta_unique = false;
    RelFlowResult outer;
    TangentSpace doub;         // on outer.limit.complex()
    Subspace doub_in_source;   // T cap Ann(V), V the chains killed by both steps
    Subspace lc;               // chains on the source complex
    int genus_drop = 0;
    int core_dim = 0;
    std::vector<std::pair<std::string, bool>> postconditions;
    bool all_hold() const;
};

DoubleDegeneration double_degeneration(const TangentSpace& t, const CylSurface& cs, const std::vector<int>& cls,
                                       const std::vector<QI>& a);

}  // namespace flatdeg
