#pragma once

#include "flatdeg/linalg.hpp"

#include <string>
#include <utility>
#include <vector>

namespace flatdeg {

// Cell structure of (X, Sigma): vertices are the points of Sigma, edges carry
// their holonomy, faces are signed edge cycles.
struct CellComplex {
    struct Edge {
        int from = 0, to = 0;
        QI hol;
        std::string name;
    };
    using Face = std::vector<std::pair<int, int>>;  // (edge, +1 / -1)

    int num_vertices = 0;
    int num_components = 0;
    std::vector<int> vertex_component;
    std::vector<int> vertex_order;  // zero order k (angle 2pi(k+1))
    std::vector<Edge> edges;
    std::vector<Face> faces;
    std::vector<int> face_component;

    int num_edges() const { return static_cast<int>(edges.size()); }
    int edge_component(int e) const { return vertex_component[edges[e].from]; }
    int genus(int comp) const;
    int total_genus() const;

    // Cocycles: functions on edges vanishing on face boundaries.
    Subspace cocycles() const;
    CVec period() const;
    CMat ker_p_generators() const;  // coboundaries of vertex indicators
    Subspace ker_p() const;
    QI pairing(const CVec& u, const CVec& w) const;
    CMat pairing_matrix(const CMat& basis) const;
    QI evaluate(const CVec& cocycle, const CVec& chain) const { return dotc(cocycle, chain); }
    bool is_cocycle(const CVec& u) const;
    // Restrict to the edges of one component (others zeroed).
    CVec restrict_to_component(const CVec& u, int comp) const;
    int edge_index(const std::string& name) const;
};

// JSON text helpers for cocycles: {"edge-name": "a/b+c/d i", ...}
std::string cocycle_to_json(const CellComplex& cx, const CVec& u);
CVec cocycle_from_json(const CellComplex& cx, const std::string& text);
std::string cocycles_to_json(const CellComplex& cx, const CMat& us);
CMat cocycles_from_json(const CellComplex& cx, const std::string& text);

}  // namespace flatdeg
