#pragma once

#include "flatdeg/cylsurface.hpp"
#include "flatdeg/decomposition.hpp"
#include "flatdeg/tangent.hpp"

#include <string>
#include <vector>

namespace flatdeg {

// All functions below work on a horizontal cylinder surface `cs` and a tangent
// space whose complex is cs.complex().

enum class Shape { Simple, HalfSimple, Other };
Shape cylinder_shape(const CylSurface& cs, int c);
std::string shape_name(Shape s);

// Values of the basis vectors of T on a chain.
CVec functional(const TangentSpace& t, const CVec& chain);
CVec core_functional(const TangentSpace& t, const CylSurface& cs, int c);

// M-parallel: v(gamma_2) = (circ_2 / circ_1) v(gamma_1) on T.
bool is_parallel(const TangentSpace& t, const CylSurface& cs, int c1, int c2);
// A horizontal saddle connection whose functional is a real multiple of the core functional of c.
bool generically_parallel(const TangentSpace& t, const CylSurface& cs, int s, int c);
// Boundary saddle connections stay parallel to the core.
bool cylinder_generic(const TangentSpace& t, const CylSurface& cs, int c);

struct CylClass {
    std::vector<int> cyls;
    bool cylinders_generic = false;  // every cylinder generic
    bool generic = false;            // certified generic class (otherwise "unknown")
};
std::vector<CylClass> equivalence_classes(const TangentSpace& t, const CylSurface& cs);
bool class_generic(const TangentSpace& t, const CylSurface& cs, const std::vector<int>& cls);

CVec standard_deformation(const CylSurface& cs, const std::vector<int>& cls);
CVec twist_cocycle(const CylSurface& cs, const std::vector<int>& cls, const std::vector<QI>& a);
Subspace twist_space(const TangentSpace& t, const CylSurface& cs, const std::vector<int>& cls);
// dim p(Twist), which is 1 for a class of a genuine invariant subvariety.
int twist_absolute_dim(const TangentSpace& t, const Subspace& twist);
// Real basis of a subspace closed under conjugation.
CMat real_basis(const Subspace& s);

struct TwistDecomposition {
    QI a;
    CVec eta_c, eta_rest;
};
TwistDecomposition twist_decomposition(const TangentSpace& t, const CylSurface& cs, const std::vector<int>& cls,
                                       const CVec& eta, const CVec& w);

// Height of C as a functional: Im u(s_C - (tw/circ) gamma_C).
CVec height_chain(const CylSurface& cs, int c);
// Heights of c1 and c2 keep their ratio along every deformation in T on which both persist.
bool height_ratio_constant(const TangentSpace& t, const CylSurface& cs, int c1, int c2);

enum class GeminalStatus { Free, Twin, Violation };
struct GeminalReport {
    std::vector<GeminalStatus> status;
    std::vector<int> partner;  // twin partner or -1
    bool geminal = true;
};
GeminalReport geminal_report(const TangentSpace& t, const CylSurface& cs);
bool is_free(const TangentSpace& t, const CylSurface& cs, int c);
bool are_twins(const TangentSpace& t, const CylSurface& cs, int c1, int c2);

struct StabilityReport {
    int twist_dim = 0;      // span of all core duals, intersected with T
    int preserving_dim = 0;  // kernel of all core functionals on T
    int num_classes = 0;
    int rank = 0, rel = 0;
    bool stable = false;
    bool consistent = true;  // cross-checks agree
};
StabilityReport cylindrical_stability(const TangentSpace& t, const CylSurface& cs);

bool involved_with_rel(const TangentSpace& t, const CylSurface& cs, const std::vector<int>& cls);
// Vertex ids of marked points p with the unit relative deformation at p in T.
std::vector<int> free_marked_points(const TangentSpace& t);

// Components of the complement of the class and the saddle connections generically
// parallel to it; each entry lists the cylinders of that component.
std::vector<std::vector<int>> hat_complement(const TangentSpace& t, const CylSurface& cs,
                                             const std::vector<int>& cls);

// C (cylinder c of periodic direction pc) is nested in H (cylinder h of ph):
// their cores cross once and C stays inside the closure of H. Both decompositions
// must come from the same polygon surface.
bool is_nested(const Periodic& pc, int c, const Periodic& ph, int h);

}  // namespace flatdeg
