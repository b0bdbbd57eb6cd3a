#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "kepoly/catalog.hpp"

using namespace kepoly;
using namespace kepoly::catalog;

namespace {
Rat rq(const char* s) { return rat_from_string(s); }
}

TEST_CASE("wonderful polytope of A1 is [-2, 2]") {
    roots::RootSystem rs = roots::build_root_system({{"A1"}, 0, {}});
    geom::RationalPolytope P = wonderful_polytope(rs);
    CHECK(P.vertices == std::vector<QVec>{QVec{rq("-2")}, QVec{rq("2")}});
    geom::RationalPolytope pplus = geom::intersect_with_chamber(rs, P);
    CHECK(pplus.vertices == std::vector<QVec>{QVec{rq("0")}, QVec{rq("2")}});
}

TEST_CASE("wonderful polytope of A2 is the hexagon, clipped to the stored X1") {
    roots::RootSystem rs = roots::build_root_system({{"A2"}, 0, {}});
    geom::RationalPolytope P = wonderful_polytope(rs);
    CHECK(P.vertices.size() == 6);
    CHECK(P.halfspaces.size() == 6);
    geom::RationalPolytope pplus = geom::intersect_with_chamber(rs, P);
    auto [rs1, stored] = realize(builtin("X1"));
    CHECK(pplus.vertices == stored.vertices);
}

TEST_CASE("wonderful polytope is W-invariant") {
    for (const char* label : {"A2", "B2", "G2"}) {
        roots::RootSystem rs = roots::build_root_system({{label}, 0, {}});
        geom::RationalPolytope P = wonderful_polytope(rs);
        std::set<QVec, QVecLess> vset(P.vertices.begin(), P.vertices.end());
        for (const QVec& v : P.vertices)
            for (const QVec& w : roots::weyl_orbit(rs, v)) CHECK(vset.count(w) == 1);
    }
}

TEST_CASE("wonderful polytope of A1^3 is the cube [-2,2]^3") {
    roots::RootSystem rs = roots::build_root_system({{"A1", "A1", "A1"}, 0, {}});
    geom::RationalPolytope P = wonderful_polytope(rs);
    CHECK(P.vertices.size() == 8);
    CHECK(P.halfspaces.size() == 6);
    CHECK(geom::volume(P) == 64);
}

TEST_CASE("all builtins are clipped idempotently and lie in the chamber") {
    for (const std::string& name : builtin_names()) {
        auto [rs, pplus] = realize(builtin(name));
        CHECK(pplus.full_dim);
        geom::RationalPolytope again = geom::intersect_with_chamber(rs, pplus);
        CHECK(again.vertices == pplus.vertices);
    }
}

TEST_CASE("stored X2 equals the chamber part of the 16-vertex W-invariant polytope") {
    auto [rs, stored] = realize(builtin("X2"));
    std::vector<QVec> orbit_pts;
    for (const QVec& v : stored.vertices)
        for (const QVec& w : roots::weyl_orbit(rs, v)) orbit_pts.push_back(w);
    geom::RationalPolytope P = geom::convex_hull(orbit_pts);
    CHECK(P.vertices.size() == 16);
    CHECK(geom::intersect_with_chamber(rs, P).vertices == stored.vertices);
}

TEST_CASE("unknown builtin name is rejected") {
    CHECK_THROWS_WITH_AS(builtin("X9"), doctest::Contains("unknown builtin"),
                         std::invalid_argument);
}

TEST_CASE("P2 data sanity") {
    NamedExample ex = builtin("P2");
    CHECK(ex.group.torus_rank == 2);
    CHECK(ex.group.factors.empty());
    auto [rs, pplus] = realize(ex);
    CHECK(geom::volume(pplus) == rq("9/2"));
}
