// flatdeg: command line front end for the flatdeg library.

#include "flatdeg/rel_flow.hpp"
#include "flatdeg/surf_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <random>

using namespace flatdeg;
using Json = nlohmann::ordered_json;

namespace {

struct Options {
    std::string surface;
    std::string subvariety = "stratum";
    std::string direction = "1,0";
    bool json = false;
    unsigned long seed = 0;
    int cylinder = 0;
    std::string vector;
    bool typical = false;
    int vertex = -1;
};

struct Usage : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Vec2 parse_direction(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos) throw Usage("--direction expects a/b,c/d");
    Vec2 d;
    try {
        d = Vec2(parse_q(s.substr(0, comma)), parse_q(s.substr(comma + 1)));
    } catch (const Error&) {
        throw Usage("--direction expects a/b,c/d");
    }
    if (sgn(d.x) == 0 && sgn(d.y) == 0) throw Usage("--direction must be nonzero");
    return d;
}

std::string str(const Q& q) { return to_string(q); }
std::string str(const QI& z) { return to_string(z); }

Json cocycle(const CellComplex& cx, const CVec& u) { return Json::parse(cocycle_to_json(cx, u)); }

// The surface the tangent space lives on (the cover for quadratic doubles) and T on its polygons.
struct Loaded {
    PolySurface input;
    PolySurface surface;
    TangentSpace tangent;
};

Loaded load(const Options& o) {
    if (o.surface.empty()) throw Usage("--surface is required");
    Loaded l;
    l.input = load_surface(o.surface);
    if (o.subvariety == "stratum") {
        if (l.input.half_translation()) fail("HalfTranslation", "use --subvariety quaddouble for half-translation input");
        l.surface = l.input;
        l.tangent = stratum_tangent(l.surface.complex());
    } else if (o.subvariety == "quaddouble") {
        DoubleCover dc = holonomy_double_cover(l.input);
        l.surface = dc.cover;
        l.tangent = quadratic_double_tangent(dc);
    } else if (o.subvariety.rfind("file:", 0) == 0) {
        l.surface = l.input;
        std::ifstream f(o.subvariety.substr(5));
        if (!f) fail("IOError", "cannot read " + o.subvariety.substr(5));
        std::stringstream buf;
        buf << f.rdbuf();
        CellComplex cx = l.surface.complex();
        l.tangent = make_tangent(cx, cocycles_from_json(cx, buf.str()));
    } else {
        throw Usage("--subvariety must be stratum, quaddouble or file:<path>");
    }
    return l;
}

struct Direction {
    Periodic p;
    TangentSpace t;
};

Direction periodic(const Options& o, const Loaded& l) {
    Direction d{decompose_or_throw(l.surface, parse_direction(o.direction)), {}};
    d.t = d.p.to_cyl(l.tangent);
    return d;
}

Json signature_info(const PolySurface& s) {
    Json j;
    j["signature"] = s.signature().str();
    Json comps = Json::array();
    for (int c = 0; c < s.num_components(); ++c)
        comps.push_back(Json{{"name", s.component_names[c]}, {"genus", s.genus(c)}, {"area", str(s.area(c))}});
    j["components"] = comps;
    return j;
}

Json rank_info(const TangentSpace& t) {
    return Json{{"dim", t.dim()}, {"rank", t.rank()}, {"rel", t.rel()}, {"high_rank", is_high_rank(t)}};
}

const CylClass& class_of(const std::vector<CylClass>& classes, int c) {
    for (auto& k : classes)
        for (int x : k.cyls)
            if (x == c) return k;
    throw Usage("--cylinder out of range");
}

std::vector<QI> collapse_vector(const Options& o, const Direction& d, const std::vector<int>& cls) {
    if (o.typical) {
        std::mt19937_64 rng(o.seed);
        return find_typical_vector(d.t, d.p.cyl, cls, rng);
    }
    std::vector<QI> a;
    if (o.vector.empty()) {
        for (int c : cls) a.push_back(QI(Q(0), -d.p.cyl.cyls[c].height));
        return a;
    }
    std::stringstream ss(o.vector);
    std::string item;
    while (std::getline(ss, item, ';')) {
        try {
            a.push_back(parse_qi(item));
        } catch (const Error&) {
            throw Usage("--vector expects complex rationals separated by ';'");
        }
    }
    if (a.size() != cls.size()) throw Usage("--vector needs one coefficient per cylinder of the class");
    return a;
}

Json graph_json(const std::vector<GraphEdge>& g) {
    Json arr = Json::array();
    for (auto& e : g)
        arr.push_back(Json{{"hsc", e.hsc}, {"from", e.from}, {"to", e.to}, {"length", str(e.length)}, {"weight", str(e.weight)}});
    return arr;
}

Json limit_info(const CylSurface& y) {
    Json comps = Json::array();
    for (int c = 0; c < y.num_components; ++c) comps.push_back(y.genus(c));
    return Json{{"signature", y.signature().str()}, {"genus", comps}, {"area", str(y.area())}};
}

Json degeneration_json(const Degeneration& d) {
    Json j;
    Json a = Json::array();
    for (auto& z : d.a) a.push_back(str(z));
    j["class"] = d.cls;
    j["vector"] = a;
    j["time"] = str(d.when.t);
    j["collapsing"] = d.when.cyls;
    j["divergent"] = d.map.divergent;
    j["limit"] = limit_info(d.map.limit);
    j["rank_before"] = d.source.rank();
    j["rank_after"] = d.boundary.rank();
    j["dim_after"] = d.boundary.dim();
    j["rel_after"] = d.boundary.rel();
    j["vanishing_dim"] = d.vanishing.dim();
    j["graph"] = graph_json(d.map.graph);
    return j;
}

Json run(const std::string& cmd, const Options& o) {
    Json j;
    j["schema"] = 1;
    j["command"] = cmd;
    if (cmd == "validate") {
        if (o.surface.empty()) throw Usage("--surface is required");
        PolySurface s = load_surface(o.surface);
        j["valid"] = true;
        j["half_translation"] = s.half_translation();
        j.update(signature_info(s));
        j["warnings"] = s.warnings;
        return j;
    }
    if (cmd == "cover") {
        if (o.surface.empty()) throw Usage("--surface is required");
        PolySurface q = load_surface(o.surface);
        DoubleCover dc = holonomy_double_cover(q);
        j.update(signature_info(dc.cover));
        j["surf"] = serialize_surf(dc.cover);
        return j;
    }
    Loaded l = load(o);
    if (cmd == "rank") {
        j.update(rank_info(l.tangent));
        return j;
    }
    Direction d = periodic(o, l);
    const CylSurface& cs = d.p.cyl;
    auto classes = equivalence_classes(d.t, cs);
    if (cmd == "cyl" || cmd == "analyze") {
        if (cmd == "analyze") {
            j.update(signature_info(l.surface));
            j.update(rank_info(l.tangent));
        }
        Json cyls = Json::array();
        for (int c = 0; c < cs.num_cyls(); ++c) {
            int k = 0;
            while (std::find(classes[k].cyls.begin(), classes[k].cyls.end(), c) == classes[k].cyls.end()) ++k;
            cyls.push_back(Json{{"index", c},
                                {"height", str(cs.cyls[c].height)},
                                {"circumference", str(cs.circumference(c))},
                                {"twist", str(cs.cyls[c].twist)},
                                {"modulus", str(cs.cyls[c].height / cs.circumference(c))},
                                {"shape", shape_name(cylinder_shape(cs, c))},
                                {"generic", cylinder_generic(d.t, cs, c)},
                                {"class", k}});
        }
        j["cylinders"] = cyls;
        Json ks = Json::array();
        for (auto& k : classes)
            ks.push_back(Json{{"cylinders", k.cyls}, {"cylinders_generic", k.cylinders_generic}, {"generic", k.generic}});
        j["classes"] = ks;
        if (cmd == "cyl") return j;
        StabilityReport st = cylindrical_stability(d.t, cs);
        j["stable"] = st.stable;
        j["geminal"] = geminal_report(d.t, cs).geminal;
        return j;
    }
    if (cmd == "geminal") {
        GeminalReport g = geminal_report(d.t, cs);
        j["geminal"] = g.geminal;
        Json status = Json::array();
        for (int c = 0; c < cs.num_cyls(); ++c) {
            const char* name = g.status[c] == GeminalStatus::Free ? "free" : g.status[c] == GeminalStatus::Twin ? "twin" : "violation";
            status.push_back(Json{{"cylinder", c}, {"status", name}, {"partner", g.partner[c]}});
        }
        j["cylinders"] = status;
        j["free_marked_points"] = free_marked_points(d.t).size();
        return j;
    }
    if (cmd == "stable") {
        StabilityReport st = cylindrical_stability(d.t, cs);
        j["stable"] = st.stable;
        j["classes"] = st.num_classes;
        j["rank"] = st.rank;
        j["rel"] = st.rel;
        j["twist_dim"] = st.twist_dim;
        j["preserving_dim"] = st.preserving_dim;
        j["consistent"] = st.consistent;
        return j;
    }
    if (cmd == "relflow") {
        CellComplex cx = cs.complex();
        int v = o.vertex < 0 ? cx.num_vertices - 1 : o.vertex;
        if (v >= cx.num_vertices) throw Usage("--vertex out of range");
        CVec xi = zeros(cx.num_edges());
        for (int e = 0; e < cx.num_edges(); ++e)
            xi[e] = QI((cx.edges[e].to == v ? 1 : 0) - (cx.edges[e].from == v ? 1 : 0));
        if (!d.t.T.contains(xi)) fail("NotInTangent", "the rel vector of this point is not in the tangent space");
        RelFlowResult r = rel_flow_limit(cs, xi);
        Json lam = Json::array();
        for (auto& z : r.schiffer.lambda) lam.push_back(str(z));
        j["lambda"] = lam;
        j["bounded"] = r.bounded;
        if (!r.bounded) return j;
        j["tau"] = str(r.tau);
        j["collapsing"] = r.collapsing;
        j["limit"] = limit_info(r.limit);
        return j;
    }
    const std::vector<int>& cls = class_of(classes, o.cylinder).cyls;
    std::vector<QI> a = collapse_vector(o, d, cls);
    if (cmd == "collapse" || cmd == "graph-dot") {
        Degeneration deg = collapse(d.t, cs, cls, a);
        if (cmd == "graph-dot") {
            j["dot"] = export_graph(deg.map);
            return j;
        }
        j.update(degeneration_json(deg));
        return j;
    }
    if (cmd == "dichotomy") {
        Degeneration deg = collapse(d.t, cs, cls, a);
        DichotomyResult r = classify_dichotomy(deg);
        j["verdict"] = r.verdict == Verdict::RankReducing ? "rank_reducing" : "rank_preserving";
        j["rank_before"] = r.rank_before;
        j["rank_after"] = r.rank_after;
        j["conditional"] = r.conditional;
        j["acyclic"] = r.acyclic;
        j["strongly_connected"] = r.strongly_connected;
        j["balanced"] = r.balanced;
        j["certificate"] = r.certificate ? cocycle(deg.map.limit.complex(), *r.certificate) : Json();
        j["violations"] = r.violations;
        j["graph"] = graph_json(deg.map.graph);
        return j;
    }
    if (cmd == "double-collapse") {
        DoubleDegeneration dd = double_degeneration(d.t, cs, cls, a);
        j["inner"] = limit_info(dd.inner.map.limit);
        j["eta"] = cocycle(dd.inner.map.limit.complex(), dd.eta);
        j["tau"] = str(dd.outer.tau);
        j["limit"] = limit_info(dd.outer.limit);
        j["dim"] = dd.doub.dim();
        j["rank"] = dd.doub.rank();
        j["rel"] = dd.doub.rel();
        Json post = Json::object();
        for (auto& [name, ok] : dd.postconditions) post[name] = ok;
        j["postconditions"] = post;
        if (!dd.all_hold()) fail("PostconditionFails", "a double degeneration postcondition does not hold");
        return j;
    }
    throw Usage("unknown command " + cmd);
}

void print_text(const Json& j) {
    if (j.contains("dot")) {
        std::cout << j["dot"].get<std::string>();
        return;
    }
    if (j.contains("surf")) {
        std::cout << j["surf"].get<std::string>();
        return;
    }
    for (auto& [k, v] : j.items()) {
        if (k == "schema") continue;
        std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computations with translation surfaces and their degenerations"};
    app.require_subcommand(1);
    Options o;
    const std::vector<std::pair<std::string, std::string>> names = {
        {"validate", "check a surface and print its stratum"},
        {"analyze", "cylinders, classes and tangent data in one direction"},
        {"cyl", "cylinder decomposition"},
        {"rank", "dimension, rank and rel of the tangent space"},
        {"geminal", "free/twin status of every cylinder"},
        {"stable", "cylindrical stability"},
        {"collapse", "collapse a cylinder class and describe the limit"},
        {"dichotomy", "rank reducing or rank preserving verdict with evidence"},
        {"relflow", "flow in a rel direction until a saddle connection vanishes"},
        {"double-collapse", "rank reducing collapse followed by the rel flow"},
        {"cover", "holonomy double cover of a half-translation surface, as SURF"},
        {"graph-dot", "collapse graph in Graphviz dot"}};
    for (auto& [n, help] : names) {
        CLI::App* sub = app.add_subcommand(n, help);
        sub->add_option("--surface", o.surface, "SURF file or inline 'origami h=(...) v=(...)'");
        sub->add_option("--subvariety", o.subvariety, "stratum, quaddouble or file:<path>");
        sub->add_option("--direction", o.direction, "periodic direction a/b,c/d");
        sub->add_flag("--json", o.json, "JSON output");
        sub->add_option("--seed", o.seed, "random seed");
        sub->add_option("--cylinder", o.cylinder, "cylinder whose class collapses");
        sub->add_option("--vector", o.vector, "class coefficients a1;a2;... (default -i h)");
        sub->add_flag("--typical", o.typical, "random typical collapse vector");
        sub->add_option("--vertex", o.vertex, "point whose rel vector drives relflow");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    std::string cmd = app.get_subcommands().front()->get_name();
    try {
        Json j = run(cmd, o);
        if (o.json)
            std::cout << j.dump() << "\n";
        else
            print_text(j);
        return 0;
    } catch (const Usage& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        if (o.json)
            std::cout << Json{{"schema", 1}, {"command", cmd}, {"error", e.code()}, {"message", e.what()}}.dump() << "\n";
        else
            std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
