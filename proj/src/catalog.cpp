#include "kepoly/catalog.hpp"

#include <stdexcept>

namespace kepoly::catalog {

geom::RationalPolytope wonderful_polytope(const roots::RootSystem& rs) {
    QVec weight = rs.two_rho;
    for (const QVec& alpha : rs.simple_roots) weight = weight + alpha;
    return geom::convex_hull(roots::weyl_orbit(rs, weight));
}

std::vector<std::string> builtin_names() { return {"X0", "X1", "X2", "P2", "P1xP1", "Bl1P2"}; }

namespace {

QVec qv(std::initializer_list<const char*> comps) {
    QVec v(static_cast<int>(comps.size()));
    int i = 0;
    for (const char* s : comps) v[i++] = rat_from_string(s);
    return v;
}

}  // namespace

NamedExample builtin(const std::string& name) {
    NamedExample ex;
    ex.name = name;
    if (name == "X0") {
        ex.group = {{"A1"}, 0, {}};
        ex.pplus_vertices_alpha = {qv({"0"}), qv({"2"})};
        ex.provenance = "wonderful compactification of PGL2(C); P = [-2,2] in the root coordinate";
    } else if (name == "X1") {
        ex.group = {{"A2"}, 0, {}};
        ex.pplus_vertices_alpha = {qv({"0", "0"}), qv({"3", "3/2"}), qv({"3", "3"}),
                                   qv({"3/2", "3"})};
        ex.provenance = "wonderful compactification of PGL3(C); chamber part of the hexagon "
                        "hull(W.(3(a1+a2)))";
    } else if (name == "X2") {
        ex.group = {{"B2"}, 0, {}};
        ex.pplus_vertices_alpha = {qv({"0", "0"}), qv({"5", "5/2"}), qv({"5", "3"}),
                                   qv({"4", "7/2"}), qv({"7/2", "7/2"})};
        ex.provenance = "blow-up of the wonderful compactification of Sp4(C) along the closed "
                        "orbit (Ruzzi's rank-two classification)";
    } else if (name == "P2") {
        ex.group = {{}, 2, {}};
        ex.pplus_vertices_alpha = {qv({"-1", "-1"}), qv({"2", "-1"}), qv({"-1", "2"})};
        ex.provenance = "projective plane, anticanonical triangle";
    } else if (name == "P1xP1") {
        ex.group = {{}, 2, {}};
        ex.pplus_vertices_alpha = {qv({"-1", "-1"}), qv({"1", "-1"}), qv({"-1", "1"}),
                                   qv({"1", "1"})};
        ex.provenance = "product of two projective lines, anticanonical square";
    } else if (name == "Bl1P2") {
        ex.group = {{}, 2, {}};
        ex.pplus_vertices_alpha = {qv({"-1", "0"}), qv({"0", "-1"}), qv({"2", "-1"}),
                                   qv({"-1", "2"})};
        ex.provenance = "blow-up of the projective plane at one fixed point, anticanonical "
                        "polygon";
    } else {
        throw std::invalid_argument("unknown builtin example '" + name +
                                    "' (known: X0, X1, X2, P2, P1xP1, Bl1P2)");
    }
    return ex;
}

RealizedExample realize(const NamedExample& ex) {
    RealizedExample out{roots::build_root_system(ex.group), {}};
    std::vector<QVec> verts;
    for (const QVec& a : ex.pplus_vertices_alpha)
        verts.push_back(roots::from_alpha_coordinates(out.rs, a));
    out.pplus = geom::convex_hull(verts);
    for (const QVec& v : out.pplus.vertices)
        if (!out.rs.in_closed_chamber(v))
            throw std::logic_error("catalog: stored example leaves the closed chamber");
    return out;
}

}  // namespace kepoly::catalog
