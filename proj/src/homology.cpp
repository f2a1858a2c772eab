#include "flatdeg/homology.hpp"

#include <json.hpp>

namespace flatdeg {

int CellComplex::genus(int comp) const {
    int v = 0, e = 0, f = 0;
    for (int i = 0; i < num_vertices; ++i) v += vertex_component[i] == comp;
    for (int i = 0; i < num_edges(); ++i) e += edge_component(i) == comp;
    for (size_t i = 0; i < faces.size(); ++i) f += face_component[i] == comp;
    int chi = v - e + f;
    return (2 - chi) / 2;
}

int CellComplex::total_genus() const {
    int g = 0;
    for (int c = 0; c < num_components; ++c) g += genus(c);
    return g;
}

Subspace CellComplex::cocycles() const {
    CMat rel;
    for (auto& f : faces) {
        CVec row(num_edges());
        for (auto [e, s] : f) row[e] += QI(s);
        rel.push_back(std::move(row));
    }
    return Subspace(num_edges(), nullspace(rel, num_edges()));
}

CVec CellComplex::period() const {
    CVec w(num_edges());
    for (int e = 0; e < num_edges(); ++e) w[e] = edges[e].hol;
    return w;
}

CMat CellComplex::ker_p_generators() const {
    CMat out;
    for (int z = 0; z < num_vertices; ++z) {
        CVec d(num_edges());
        for (int e = 0; e < num_edges(); ++e) {
            int c = (edges[e].to == z) - (edges[e].from == z);
            d[e] = QI(c);
        }
        out.push_back(std::move(d));
    }
    return out;
}

Subspace CellComplex::ker_p() const { return Subspace(num_edges(), ker_p_generators()); }

QI CellComplex::pairing(const CVec& u, const CVec& w) const {
    if (static_cast<int>(u.size()) != num_edges() || static_cast<int>(w.size()) != num_edges())
        fail("DimensionMismatch", "cocycle length differs from edge count");
    QI total;
    for (auto& f : faces) {
        QI U, W;
        for (auto [e, s] : f) {
            QI uk = s > 0 ? u[e] : -u[e];
            QI wk = s > 0 ? w[e] : -w[e];
            total += U * wk - W * uk;
            U += uk;
            W += wk;
        }
    }
    return total * QI(Q(1, 2));
}

CMat CellComplex::pairing_matrix(const CMat& basis) const {
    size_t k = basis.size();
    CMat m(k, CVec(k));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = i + 1; j < k; ++j) {
            m[i][j] = pairing(basis[i], basis[j]);
            m[j][i] = -m[i][j];
        }
    return m;
}

bool CellComplex::is_cocycle(const CVec& u) const {
    for (auto& f : faces) {
        QI s;
        for (auto [e, sg] : f) s += sg > 0 ? u[e] : -u[e];
        if (!s.is_zero()) return false;
    }
    return true;
}

CVec CellComplex::restrict_to_component(const CVec& u, int comp) const {
    CVec r(u.size());
    for (int e = 0; e < num_edges(); ++e)
        if (edge_component(e) == comp) r[e] = u[e];
    return r;
}

int CellComplex::edge_index(const std::string& name) const {
    for (int e = 0; e < num_edges(); ++e)
        if (edges[e].name == name) return e;
    return -1;
}

namespace {

nlohmann::ordered_json cocycle_obj(const CellComplex& cx, const CVec& u) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (int e = 0; e < cx.num_edges(); ++e) j[cx.edges[e].name] = to_string(u[e]);
    return j;
}

CVec cocycle_from_obj(const CellComplex& cx, const nlohmann::json& j) {
    if (!j.is_object()) fail("SyntaxError", "cocycle must be a JSON object");
    CVec u(cx.num_edges());
    for (auto it = j.begin(); it != j.end(); ++it) {
        int e = cx.edge_index(it.key());
        if (e < 0) fail("DimensionMismatch", "unknown edge id '" + it.key() + "'");
        if (it->is_string())
            u[e] = parse_qi(it->get<std::string>());
        else if (it->is_number_integer())
            u[e] = QI(Q(it->get<long>()));
        else
            fail("SyntaxError", "cocycle value for '" + it.key() + "' must be a string");
    }
    if (!cx.is_cocycle(u)) fail("NotCocycle", "values do not vanish on a face boundary");
    return u;
}

}  // namespace

std::string cocycle_to_json(const CellComplex& cx, const CVec& u) { return cocycle_obj(cx, u).dump(); }

CVec cocycle_from_json(const CellComplex& cx, const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail("SyntaxError", e.what());
    }
    return cocycle_from_obj(cx, j);
}

std::string cocycles_to_json(const CellComplex& cx, const CMat& us) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (auto& u : us) arr.push_back(cocycle_obj(cx, u));
    return arr.dump();
}

CMat cocycles_from_json(const CellComplex& cx, const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail("SyntaxError", e.what());
    }
    if (!j.is_array()) fail("SyntaxError", "tangent-space file must be a JSON list");
    CMat out;
    for (auto& x : j) out.push_back(cocycle_from_obj(cx, x));
    return out;
}

}  // namespace flatdeg
