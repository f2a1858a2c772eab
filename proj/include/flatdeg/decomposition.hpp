#pragma once

#include "flatdeg/cylsurface.hpp"
#include "flatdeg/tangent.hpp"

#include <optional>
#include <string>
#include <vector>

namespace flatdeg {

// A periodic direction of a polygon surface, presented as a horizontal
// cylinder surface in the frame that takes `direction` to (1,0).
struct Periodic {
    Vec2 direction;
    Mat2 frame;    // z -> conj(d) z / |d|^2
    Mat2 inverse;  // z -> d z
    PolySurface rotated;
    CylSurface cyl;
    // Row e: edge e of cyl.complex() as a chain on the polygon complex.
    CMat chains;
    std::vector<int> vertex_map;  // cylinder vertex -> polygon vertex class

    CVec to_cyl(const CVec& u_poly) const { return pull_back(u_poly, chains); }
    Subspace to_cyl(const Subspace& t) const { return pull_back(t, chains, cyl.num_hscs() + cyl.num_cyls()); }
    TangentSpace to_cyl(const TangentSpace& t) const;
    CVec to_poly(const CVec& u_cyl) const;
};

struct DecompositionFailure {
    std::string code;  // NotPeriodic
    std::string message;
};

long default_step_bound(const PolySurface& s);
// Reads FLATDEG_STEP_BOUND when set.
long configured_step_bound(const PolySurface& s);

// Separatrix tracing. Returns nullopt (and fills `why`) when some separatrix
// does not reach a singularity within `step_bound` polygon crossings.
std::optional<Periodic> decompose(const PolySurface& s, const Vec2& direction, long step_bound = 0,
                                  DecompositionFailure* why = nullptr);
// Throws NotPeriodic instead.
Periodic decompose_or_throw(const PolySurface& s, const Vec2& direction, long step_bound = 0);

// Decomposition of a surface that is already a CylSurface in some frame:
// identity chains.
Periodic periodic_from_cyl(const CylSurface& cs);

}  // namespace flatdeg
