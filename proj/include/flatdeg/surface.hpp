#pragma once

#include "flatdeg/homology.hpp"
#include "flatdeg/numeric.hpp"

#include <map>
#include <string>
#include <vector>

namespace flatdeg {

struct EdgeRef {
    int poly = -1, edge = -1;
    bool operator==(const EdgeRef& o) const { return poly == o.poly && edge == o.edge; }
    bool operator<(const EdgeRef& o) const { return poly != o.poly ? poly < o.poly : edge < o.edge; }
};

struct Polygon {
    std::string name;
    int component = 0;
    std::vector<Vec2> v;  // counterclockwise; edge j runs v[j] -> v[j+1]
    int size() const { return static_cast<int>(v.size()); }
    Vec2 edge_vec(int j) const { return v[(j + 1) % size()] - v[j]; }
};

struct Gluing {
    EdgeRef partner;
    bool flip = false;  // z -> -z + c
};

struct StratumSignature {
    struct Part {
        std::vector<int> zeros;  // orders k >= 1, sorted descending
        int marked = 0;
        bool operator==(const Part& o) const { return zeros == o.zeros && marked == o.marked; }
    };
    std::vector<Part> parts;
    bool quadratic = false;
    std::string str() const;  // e.g. "H(1,1)", "H(0)xH(0)"
};

// Raw input for build_from_polygons.
struct PolygonSpec {
    std::vector<Polygon> polygons;
    std::vector<std::string> component_names;  // empty: components inferred
    std::vector<std::pair<EdgeRef, EdgeRef>> glue;
    std::vector<bool> flip;
    std::vector<EdgeRef> marks;  // (poly, vertex)
};

// Polygons with edge gluings by z -> z + c, or z -> -z + c for half-translation surfaces.
class PolySurface {
public:
    std::vector<Polygon> polys;
    std::vector<std::vector<Gluing>> glue;
    std::vector<std::string> component_names;
    std::vector<std::string> warnings;

    // derived by validation
    std::vector<std::vector<int>> corner_class;  // [poly][vertex] -> vertex class
    std::vector<int> class_angle_pi;             // total cone angle / pi
    std::vector<int> class_component;
    std::vector<EdgeRef> class_rep;              // first corner of each class
    int num_classes = 0;

    int num_components() const { return static_cast<int>(component_names.size()); }
    bool half_translation() const;
    const Gluing& partner(const EdgeRef& e) const { return glue[e.poly][e.edge]; }

    Q area(int comp) const;
    Q total_area() const;
    int genus(int comp) const;
    StratumSignature signature() const;
    std::vector<int> marked_classes() const;  // regular (angle 2pi) classes

    // Edge classes: one per glued pair, representative is the smaller EdgeRef.
    std::vector<EdgeRef> edge_class_reps() const;
    // Class index and sign of an oriented polygon edge relative to its representative.
    std::pair<int, int> edge_class(const EdgeRef& e) const;
    CellComplex complex() const;

    void validate();  // recomputes derived data, throws on invalid input
};

PolySurface build_from_polygons(const PolygonSpec& spec);
PolySurface build_origami(const std::vector<int>& h, const std::vector<int>& v);
PolySurface apply_gl2(const PolySurface& s, const Mat2& m);
PolySurface translate_polygons_to_origin(const PolySurface& s);

// Lexicographically minimal relabeling; polygons start at the origin.
PolySurface canonical_form(const PolySurface& s);
std::string canonical_key(const PolySurface& s);

struct DoubleCover {
    PolySurface cover;
    std::vector<int> poly_involution;  // J on polygons; vertex j of P maps to vertex j of J(P)
};
DoubleCover holonomy_double_cover(const PolySurface& q);

bool polygon_is_simple(const std::vector<Vec2>& v);
Q signed_area(const std::vector<Vec2>& v);

}  // namespace flatdeg
