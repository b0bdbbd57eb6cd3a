#include "kepoly/config.hpp"

#include <fstream>
#include <set>

#include "kepoly/catalog.hpp"

namespace kepoly::cli {

namespace {

std::vector<std::vector<std::string>> parse_vertex_lists(const nlohmann::json& arr,
                                                         const std::string& field) {
    if (!arr.is_array() || arr.empty())
        throw ConfigError(field, "expected a non-empty array of vertices");
    std::vector<std::vector<std::string>> out;
    for (const auto& v : arr) {
        if (!v.is_array() || v.empty())
            throw ConfigError(field, "each vertex must be a non-empty array of rational strings");
        std::vector<std::string> comps;
        for (const auto& c : v) {
            if (c.is_number_integer())
                comps.push_back(std::to_string(c.get<long long>()));
            else if (c.is_string())
                comps.push_back(c.get<std::string>());
            else
                throw ConfigError(field, "vertex entries must be rational strings like \"5/2\"");
        }
        out.push_back(std::move(comps));
    }
    return out;
}

nlohmann::ordered_json echo_of(const Config& cfg) {
    nlohmann::ordered_json e;
    e["group"]["factors"] = cfg.group.factors;
    e["group"]["torus_rank"] = cfg.group.torus_rank;
    if (!cfg.group.normalization.empty()) {
        std::vector<std::string> norm;
        for (const Rat& q : cfg.group.normalization) norm.push_back(rat_to_string(q));
        e["group"]["normalization"] = norm;
    }
    switch (cfg.source) {
        case PolytopeSource::PplusVertices:
            e["polytope"]["pplus_vertices"] = cfg.vertex_strings;
            break;
        case PolytopeSource::PVertices:
            e["polytope"]["p_vertices"] = cfg.vertex_strings;
            break;
        case PolytopeSource::Wonderful:
            e["polytope"]["wonderful"] = true;
            break;
    }
    e["coordinates"] = cfg.coords == CoordinateMode::SimpleRoots ? "simple_roots" : "realization";
    return e;
}

}  // namespace

Config parse_config(const nlohmann::json& j) {
    Config cfg;
    if (!j.is_object()) throw ConfigError("(root)", "config must be a JSON object");

    if (!j.contains("group") || !j["group"].is_object())
        throw ConfigError("group", "missing group object");
    const auto& g = j["group"];
    if (g.contains("factors")) {
        if (!g["factors"].is_array()) throw ConfigError("group.factors", "expected an array");
        for (const auto& f : g["factors"]) {
            if (!f.is_string()) throw ConfigError("group.factors", "labels must be strings");
            cfg.group.factors.push_back(f.get<std::string>());
        }
    }
    if (g.contains("torus_rank")) {
        if (!g["torus_rank"].is_number_integer())
            throw ConfigError("group.torus_rank", "expected an integer");
        cfg.group.torus_rank = g["torus_rank"].get<int>();
    }
    if (g.contains("normalization")) {
        if (!g["normalization"].is_array())
            throw ConfigError("group.normalization", "expected an array of rational strings");
        for (const auto& s : g["normalization"]) {
            try {
                cfg.group.normalization.push_back(rat_from_string(
                    s.is_number_integer() ? std::to_string(s.get<long long>()) : s.get<std::string>()));
            } catch (const std::exception& e) {
                throw ConfigError("group.normalization", e.what());
            }
        }
    }

    if (!j.contains("polytope") || !j["polytope"].is_object())
        throw ConfigError("polytope", "missing polytope object");
    const auto& p = j["polytope"];
    int sources = static_cast<int>(p.contains("pplus_vertices")) +
                  static_cast<int>(p.contains("p_vertices")) +
                  static_cast<int>(p.contains("wonderful"));
    if (sources != 1)
        throw ConfigError("polytope",
                          "exactly one of pplus_vertices, p_vertices, wonderful is required");
    if (p.contains("pplus_vertices")) {
        cfg.source = PolytopeSource::PplusVertices;
        cfg.vertex_strings = parse_vertex_lists(p["pplus_vertices"], "polytope.pplus_vertices");
    } else if (p.contains("p_vertices")) {
        cfg.source = PolytopeSource::PVertices;
        cfg.vertex_strings = parse_vertex_lists(p["p_vertices"], "polytope.p_vertices");
    } else {
        if (!p["wonderful"].is_boolean() || !p["wonderful"].get<bool>())
            throw ConfigError("polytope.wonderful", "must be true when present");
        cfg.source = PolytopeSource::Wonderful;
    }

    if (j.contains("coordinates")) {
        std::string c = j["coordinates"].get<std::string>();
        if (c == "simple_roots")
            cfg.coords = CoordinateMode::SimpleRoots;
        else if (c == "realization")
            cfg.coords = CoordinateMode::Realization;
        else
            throw ConfigError("coordinates", "expected \"simple_roots\" or \"realization\"");
    }

    if (j.contains("options")) {
        const auto& o = j["options"];
        if (!o.is_object()) throw ConfigError("options", "expected an object");
        if (o.contains("radius")) cfg.quad.radius = o["radius"].get<double>();
        if (o.contains("wall_offset")) cfg.quad.wall_offset = o["wall_offset"].get<double>();
        if (o.contains("subdivisions")) cfg.quad.subdivisions = o["subdivisions"].get<int>();
        if (o.contains("max_cells")) cfg.quad.max_cells = o["max_cells"].get<long>();
        if (cfg.quad.wall_offset <= 0) throw ConfigError("options.wall_offset", "must be positive");
        if (cfg.quad.radius < 0) throw ConfigError("options.radius", "must be nonnegative");
        if (cfg.quad.subdivisions < 0) throw ConfigError("options.subdivisions", "must be nonnegative");
    }

    cfg.echo = echo_of(cfg);
    return cfg;
}

Config parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("(file)", "cannot open '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("(file)", std::string("not valid JSON: ") + e.what());
    }
    return parse_config(j);
}

Config config_for_builtin(const std::string& name) {
    catalog::NamedExample ex = catalog::builtin(name);
    Config cfg;
    cfg.group = ex.group;
    cfg.source = PolytopeSource::PplusVertices;
    for (const QVec& v : ex.pplus_vertices_alpha) {
        std::vector<std::string> comps;
        for (const Rat& c : v.c) comps.push_back(rat_to_string(c));
        cfg.vertex_strings.push_back(std::move(comps));
    }
    cfg.coords = CoordinateMode::SimpleRoots;
    cfg.echo = echo_of(cfg);
    return cfg;
}

Realization realize(const Config& cfg, bool need_full_polytope) {
    Realization out{roots::build_root_system(cfg.group), {}, std::nullopt};
    const std::string vfield = cfg.source == PolytopeSource::PVertices
                                   ? "polytope.p_vertices"
                                   : "polytope.pplus_vertices";

    std::vector<QVec> verts;
    for (const auto& comps : cfg.vertex_strings) {
        if (static_cast<int>(comps.size()) != out.rs.rank)
            throw ConfigError(vfield, "vertex has " + std::to_string(comps.size()) +
                                          " coordinates, expected rank " +
                                          std::to_string(out.rs.rank));
        QVec v(out.rs.rank);
        for (int i = 0; i < out.rs.rank; ++i) {
            try {
                v[i] = rat_from_string(comps[static_cast<size_t>(i)]);
            } catch (const std::exception& e) {
                throw ConfigError(vfield, e.what());
            }
        }
        if (cfg.coords == CoordinateMode::SimpleRoots) v = roots::from_alpha_coordinates(out.rs, v);
        verts.push_back(v);
    }

    switch (cfg.source) {
        case PolytopeSource::PplusVertices: {
            out.pplus = geom::convex_hull(verts);
            for (const QVec& v : out.pplus.vertices)
                if (!out.rs.in_closed_chamber(v))
                    throw ConfigError(vfield, "vertex " + to_string(v) +
                                                  " lies outside the closed positive chamber");
            if (need_full_polytope) {
                std::vector<QVec> orbit_pts;
                for (const QVec& v : out.pplus.vertices)
                    for (const QVec& w : roots::weyl_orbit(out.rs, v)) orbit_pts.push_back(w);
                out.p_full = geom::convex_hull(orbit_pts);
                geom::RationalPolytope back =
                    geom::intersect_with_chamber(out.rs, *out.p_full);
                if (back.vertices != out.pplus.vertices)
                    throw ConfigError(vfield,
                                      "vertices are not the chamber part of a W-invariant "
                                      "polytope (clipping the W-hull back gives a different set)");
            }
            break;
        }
        case PolytopeSource::PVertices: {
            geom::RationalPolytope P = geom::convex_hull(verts);
            std::set<QVec, QVecLess> vset(P.vertices.begin(), P.vertices.end());
            for (const QVec& v : P.vertices)
                for (const QVec& w : roots::weyl_orbit(out.rs, v))
                    if (!vset.count(w))
                        throw ConfigError(vfield, "polytope is not Weyl-invariant");
            out.pplus = geom::intersect_with_chamber(out.rs, P);
            if (need_full_polytope) out.p_full = std::move(P);
            break;
        }
        case PolytopeSource::Wonderful: {
            geom::RationalPolytope P = catalog::wonderful_polytope(out.rs);
            if (!P.full_dim)
                throw ConfigError("polytope.wonderful",
                                  "wonderful polytope is degenerate (torus factors present)");
            out.pplus = geom::intersect_with_chamber(out.rs, P);
            if (need_full_polytope) out.p_full = std::move(P);
            break;
        }
    }
    return out;
}

}  // namespace kepoly::cli
