#include "flatdeg/surf_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace flatdeg {

namespace {

struct Token {
    std::string text;
    int column;
};

std::vector<Token> split_line(const std::string& line) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#') break;
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) && line[j] != '#') ++j;
        out.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
        i = j;
    }
    return out;
}

Q rational_at(const std::string& s, int line, int column) {
    try {
        return parse_q(s);
    } catch (const Error&) {
        throw SyntaxError(line, column, "bad rational '" + s + "'");
    }
}

int integer_at(const std::string& s, int line, int column) {
    if (s.empty() || s.size() > 9) throw SyntaxError(line, column, "bad index '" + s + "'");
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) throw SyntaxError(line, column, "bad index '" + s + "'");
    return std::stoi(s);
}

PolySurface parse_origami_line(const std::string& line, int lineno) {
    auto hp = line.find("h=");
    auto vp = line.find("v=");
    if (hp == std::string::npos) throw SyntaxError(lineno, 1, "origami needs h=(...)");
    if (vp == std::string::npos || vp < hp) throw SyntaxError(lineno, static_cast<int>(hp) + 1, "origami needs v=(...) after h=");
    std::string hs = line.substr(hp + 2, vp - hp - 2), vs = line.substr(vp + 2);
    auto cut = vs.find('#');
    if (cut != std::string::npos) vs = vs.substr(0, cut);
    std::vector<int> h, v;
    try {
        h = parse_permutation(hs);
    } catch (const Error& e) {
        throw SyntaxError(lineno, static_cast<int>(hp) + 3, e.what());
    }
    try {
        v = parse_permutation(vs);
    } catch (const Error& e) {
        throw SyntaxError(lineno, static_cast<int>(vp) + 3, e.what());
    }
    int n = static_cast<int>(std::max(h.size(), v.size()));
    h = parse_permutation(hs, n);
    v = parse_permutation(vs, n);
    return build_origami(h, v);
}

}  // namespace

PolySurface parse_surf(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0, last_line = 1, last_end = 1;
    bool header = false;
    PolygonSpec spec;
    std::map<std::string, int> poly_id;
    std::map<std::string, int> comp_id;
    int current_comp = -1;

    auto edge_ref = [&](const Token& t, int lno, bool vertex) {
        auto dot = t.text.rfind('.');
        if (dot == std::string::npos || dot == 0 || dot + 1 == t.text.size())
            throw SyntaxError(lno, t.column, "expected <polygon>.<" + std::string(vertex ? "vertex" : "edge") + ">");
        std::string name = t.text.substr(0, dot);
        auto it = poly_id.find(name);
        if (it == poly_id.end()) throw SyntaxError(lno, t.column, "unknown polygon '" + name + "'");
        int k = integer_at(t.text.substr(dot + 1), lno, t.column + static_cast<int>(dot) + 1);
        if (k >= spec.polygons[it->second].size())
            throw SyntaxError(lno, t.column, "index out of range in '" + t.text + "'");
        return EdgeRef{it->second, k};
    };

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto toks = split_line(line);
        if (toks.empty()) continue;
        last_line = lineno;
        last_end = toks.back().column + static_cast<int>(toks.back().text.size());
        const std::string& kw = toks[0].text;
        if (!header) {
            if (kw == "origami") {
                PolySurface s = parse_origami_line(line, lineno);
                while (std::getline(in, line)) {
                    ++lineno;
                    auto rest = split_line(line);
                    if (!rest.empty()) throw SyntaxError(lineno, rest[0].column, "unexpected text after origami line");
                }
                return s;
            }
            if (kw != "surf") throw SyntaxError(lineno, toks[0].column, "expected 'surf 1' header");
            if (toks.size() != 2 || toks[1].text != "1")
                throw SyntaxError(lineno, toks.size() > 1 ? toks[1].column : toks[0].column, "unsupported SURF version");
            header = true;
            continue;
        }
        if (kw == "component") {
            if (toks.size() != 2) throw SyntaxError(lineno, toks[0].column, "component takes one name");
            if (!spec.polygons.empty() && current_comp < 0)
                throw SyntaxError(lineno, toks[0].column, "component declared after polygons without one");
            if (comp_id.count(toks[1].text)) throw SyntaxError(lineno, toks[1].column, "duplicate component");
            current_comp = static_cast<int>(spec.component_names.size());
            comp_id[toks[1].text] = current_comp;
            spec.component_names.push_back(toks[1].text);
        } else if (kw == "polygon") {
            if (toks.size() < 2) throw SyntaxError(lineno, toks[0].column, "polygon needs a name");
            if (toks.size() < 5) throw SyntaxError(lineno, toks.back().column, "polygon needs at least three vertices");
            if (!spec.component_names.empty() && current_comp < 0)
                throw SyntaxError(lineno, toks[0].column, "polygon outside a component");
            Polygon P;
            P.name = toks[1].text;
            if (P.name.find('.') != std::string::npos) throw SyntaxError(lineno, toks[1].column, "polygon names cannot contain '.'");
            if (poly_id.count(P.name)) throw SyntaxError(lineno, toks[1].column, "duplicate polygon '" + P.name + "'");
            P.component = std::max(current_comp, 0);
            for (size_t i = 2; i < toks.size(); ++i) {
                auto comma = toks[i].text.find(',');
                if (comma == std::string::npos) throw SyntaxError(lineno, toks[i].column, "expected x,y");
                Q x = rational_at(toks[i].text.substr(0, comma), lineno, toks[i].column);
                Q y = rational_at(toks[i].text.substr(comma + 1), lineno, toks[i].column + static_cast<int>(comma) + 1);
                P.v.push_back(Vec2(x, y));
            }
            poly_id[P.name] = static_cast<int>(spec.polygons.size());
            spec.polygons.push_back(P);
        } else if (kw == "glue") {
            if (toks.size() != 3 && !(toks.size() == 4 && toks[3].text == "flip"))
                throw SyntaxError(lineno, toks[0].column, "expected glue <poly>.<edge> <poly>.<edge> [flip]");
            spec.glue.push_back({edge_ref(toks[1], lineno, false), edge_ref(toks[2], lineno, false)});
            spec.flip.push_back(toks.size() == 4);
        } else if (kw == "mark") {
            if (toks.size() != 2) throw SyntaxError(lineno, toks[0].column, "expected mark <poly>.<vertex>");
            spec.marks.push_back(edge_ref(toks[1], lineno, true));
        } else {
            throw SyntaxError(lineno, toks[0].column, "unknown keyword '" + kw + "'");
        }
    }
    if (!header) throw SyntaxError(last_line, 1, "missing 'surf 1' header");
    if (spec.polygons.empty()) throw SyntaxError(last_line, last_end, "no polygons");
    int expected_edges = 0;
    for (auto& P : spec.polygons) expected_edges += P.size();
    if (static_cast<int>(spec.glue.size()) * 2 < expected_edges)
        throw SyntaxError(last_line, last_end, "file ends before every edge is glued");
    return build_from_polygons(spec);
}

std::string serialize_surf(const PolySurface& in) {
    PolySurface s = canonical_form(in);
    std::ostringstream out;
    out << "surf 1\n";
    for (int c = 0; c < s.num_components(); ++c) {
        out << "component " << s.component_names[c] << "\n";
        for (auto& P : s.polys) {
            if (P.component != c) continue;
            out << "polygon " << P.name;
            for (auto& v : P.v) out << " " << to_string(v.x) << "," << to_string(v.y);
            out << "\n";
        }
    }
    for (int p = 0; p < static_cast<int>(s.polys.size()); ++p)
        for (int j = 0; j < s.polys[p].size(); ++j) {
            EdgeRef a{p, j};
            const Gluing& g = s.partner(a);
            if (g.partner < a) continue;
            out << "glue " << s.polys[p].name << "." << j << " " << s.polys[g.partner.poly].name << "."
                << g.partner.edge << (g.flip ? " flip" : "") << "\n";
        }
    for (int c = 0; c < s.num_classes; ++c)
        if (s.class_angle_pi[c] == 2)
            out << "mark " << s.polys[s.class_rep[c].poly].name << "." << s.class_rep[c].edge << "\n";
    return out.str();
}

PolySurface load_surface(const std::string& arg) {
    if (arg.rfind("origami", 0) == 0) return parse_surf(arg);
    std::ifstream f(arg);
    if (!f) fail("IOError", "cannot read " + arg);
    std::stringstream buf;
    buf << f.rdbuf();
    return parse_surf(buf.str());
}

}  // namespace flatdeg
