#pragma once

#include "flatdeg/homology.hpp"
#include "flatdeg/surface.hpp"

#include <string>
#include <vector>

namespace flatdeg {

// Horizontal saddle connection.
struct HSC {
    Q len;
    std::string tag;
};

// Horizontal cylinder. bottom/top list saddle connections left to right; the
// cross edge runs from the left end of bottom[0] to the left end of top[0] and
// has holonomy twist + i*height.
struct Cyl {
    Q height;
    Q twist;
    std::vector<int> bottom, top;
};

// A horizontally periodic surface given by its cylinder diagram with lengths.
// Cell complex edges: saddle connections first, then one cross edge per cylinder.
class CylSurface {
public:
    std::vector<HSC> hscs;
    std::vector<Cyl> cyls;

    // derived by finalize()
    std::vector<int> above, below;         // cylinder with the saddle connection on its bottom / top
    std::vector<int> idx_bottom, idx_top;  // position in those lists
    std::vector<Q> off_bottom, off_top;    // left end: along bottom of `above`, along top of `below` (relative to top[0])
    std::vector<int> start_vertex, end_vertex;
    int num_vertices = 0;
    std::vector<int> vertex_order;  // k with angle 2pi(k+1)
    std::vector<int> vertex_component, cyl_component;
    int num_components = 0;

    void finalize();

    int num_hscs() const { return static_cast<int>(hscs.size()); }
    int num_cyls() const { return static_cast<int>(cyls.size()); }
    int cross_edge(int c) const { return num_hscs() + c; }
    Q circumference(int c) const;
    Q area() const;
    int next_bottom(int s) const;
    int prev_bottom(int s) const;
    int next_top(int s) const;
    int prev_top(int s) const;

    CellComplex complex() const;
    StratumSignature signature() const;
    int genus(int comp) const;
    // Coefficients of the core curve (sum of bottom saddle connections) in edge basis.
    CVec core_chain(int c) const;
    // Dual cocycle gamma_C^*: 1 on the cross edge of C.
    CVec core_dual(int c) const;
    // Cylinder polygons with the matching chain map, see CylPolygons.
    PolySurface to_poly() const;
    // Signed map from poly complex edge classes (of to_poly()) to edges here.
    CMat poly_edge_to_cyl_edge() const;
    // Rotate/reflect-free relabeling invariant (via canonical polygons).
    std::string key() const;
    std::string describe() const;
};

CylSurface origami_cylinders(const std::vector<int>& h, const std::vector<int>& v);

}  // namespace flatdeg
