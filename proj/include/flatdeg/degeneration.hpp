#pragma once

#include "flatdeg/cylinders.hpp"

#include <optional>
#include <random>
#include <string>
#include <vector>

namespace flatdeg {

struct GraphEdge {
    int hsc = -1;  // saddle connection of the limit
    int from = -1, to = -1;
    Q length;
    Q weight;  // total height of the collapsed cylinders above it
};

// Limit of a horizontal surface when some cylinders reach height zero.
struct CollapseMap {
    Q time;
    std::vector<int> collapsing;
    bool divergent = false;
    CylSurface limit;
    CMat chains;               // row e: image of edge e of the source as a chain on the limit
    std::vector<int> cyl_map;  // source cylinder -> limit cylinder, -1 if collapsed
    std::vector<GraphEdge> graph;
};

// Heights and twists are the values at the collapse time; cylinders of height 0 collapse.
CollapseMap collapse_engine(const CylSurface& cs, const std::vector<Q>& heights, const std::vector<Q>& twists);

// Tangent space of a limit reached through a chain map (rows: source edges as
// chains on the limit). Vanishing cycles are chains whose image bounds.
struct BoundaryTangent {
    Subspace vanishing;
    Subspace in_source;  // T cap Ann(V)
    TangentSpace boundary;
};
BoundaryTangent boundary_tangent(const TangentSpace& t, const CylSurface& limit, const CMat& chains);

struct CollapseTime {
    Q t;
    std::vector<int> cyls;  // C_v
};
// a[k] is the coefficient of the core dual of cls[k].
CollapseTime collapse_time(const CylSurface& cs, const std::vector<int>& cls, const std::vector<QI>& a);

struct Degeneration {
    std::vector<int> cls;
    std::vector<QI> a;
    CollapseTime when;
    CollapseMap map;
    TangentSpace source;
    TangentSpace boundary;  // on map.limit.complex()
    Subspace boundary_in_source;  // T cap Ann(V), in source coordinates
    Subspace vanishing;           // chains on the source complex
    bool class_generic = false;
};

Degeneration collapse(const TangentSpace& t, const CylSurface& cs, const std::vector<int>& cls,
                      const std::vector<QI>& a);

enum class Verdict { RankReducing, RankPreserving };
struct DichotomyResult {
    Verdict verdict = Verdict::RankPreserving;
    int rank_before = 0, rank_after = 0;
    bool conditional = false;     // class not certified generic
    bool class_collapses = false;  // C_v = C
    bool acyclic = false;
    bool strongly_connected = false;
    bool balanced = false;
    std::optional<CVec> certificate;  // on the limit complex
    std::vector<std::string> violations;
};
DichotomyResult classify_dichotomy(const Degeneration& d);
bool is_rank_reducing_by_cycles(const Degeneration& d);

// Tarjan strongly connected components on the graph vertices.
std::vector<std::vector<int>> strongly_connected_components(const std::vector<GraphEdge>& g);
bool graph_acyclic(const std::vector<GraphEdge>& g);

// A twist vector whose collapse is typical: cylinders reaching zero together
// have generically constant height ratios, and the collapse diverges.
std::vector<QI> find_typical_vector(const TangentSpace& t, const CylSurface& cs, const std::vector<int>& cls,
                                    std::mt19937_64& rng);

// First-return collapse of everything except cylinder h onto h.
CylSurface collapse_complement_onto(const CylSurface& cs, int h);

std::string export_graph(const CollapseMap& m);

}  // namespace flatdeg
