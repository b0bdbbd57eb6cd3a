#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "kepoly/geometry.hpp"
#include "kepoly/lp.hpp"

using namespace kepoly;
using namespace kepoly::geom;

namespace {

Rat rq(const char* s) { return rat_from_string(s); }

QVec v2(const char* x, const char* y) { return QVec{rq(x), rq(y)}; }

// Boundary ring of a 2D polytope, reconstructed by walking facet edges.
std::vector<int> ring_of(const RationalPolytope& P) {
    std::map<int, std::vector<int>> adj;
    for (const auto& e : P.facet_vertices) {
        adj[e[0]].push_back(e[1]);
        adj[e[1]].push_back(e[0]);
    }
    std::vector<int> ring{0};
    int prev = -1;
    while (true) {
        int cur = ring.back();
        int next = (adj[cur][0] != prev) ? adj[cur][0] : adj[cur][1];
        if (next == 0) break;
        ring.push_back(next);
        prev = cur;
    }
    return ring;
}

Rat shoelace_area(const RationalPolytope& P) {
    std::vector<int> ring = ring_of(P);
    Rat s = 0;
    for (size_t i = 0; i < ring.size(); ++i) {
        const QVec& a = P.vertices[static_cast<size_t>(ring[i])];
        const QVec& b = P.vertices[static_cast<size_t>(ring[(i + 1) % ring.size()])];
        s += a[0] * b[1] - b[0] * a[1];
    }
    if (s < 0) s = -s;
    return s / 2;
}

QVec random_point(int dim, std::mt19937_64& rng, int span) {
    std::uniform_int_distribution<int> num(-span, span), den(1, 9);
    QVec v(dim);
    for (int i = 0; i < dim; ++i) v[i] = frac(num(rng), den(rng));
    return v;
}

}  // namespace

TEST_CASE("2D hull: triangle kept, interior and collinear points absorbed") {
    RationalPolytope t =
        convex_hull({v2("0", "0"), v2("1", "0"), v2("0", "1"), v2("1/4", "1/4"), v2("1/2", "0")});
    CHECK(t.full_dim);
    CHECK(t.vertices == std::vector<QVec>{v2("0", "0"), v2("0", "1"), v2("1", "0")});
    CHECK(t.halfspaces.size() == 3);
}

TEST_CASE("collinear input: flagged 1-dimensional segment with endpoints only") {
    RationalPolytope s = convex_hull({v2("0", "0"), v2("2", "0"), v2("1", "0")});
    CHECK(!s.full_dim);
    CHECK(s.affine_dim == 1);
    CHECK(s.vertices == std::vector<QVec>{v2("0", "0"), v2("2", "0")});
    CHECK(s.halfspaces.empty());
    // membership still works through the LP fallback
    CHECK(s.contains(v2("1", "0")));
    CHECK(!s.contains(v2("1", "1/9")));
}

TEST_CASE("hull idempotence") {
    std::mt19937_64 rng(5);
    std::vector<QVec> pts;
    for (int i = 0; i < 14; ++i) pts.push_back(random_point(2, rng, 8));
    RationalPolytope P = convex_hull(pts);
    RationalPolytope Q = convex_hull(P.vertices);
    CHECK(P.vertices == Q.vertices);
    CHECK(P.halfspaces.size() == Q.halfspaces.size());
}

TEST_CASE("1D hull and interval clipping") {
    RationalPolytope i = convex_hull({QVec{rq("3")}, QVec{rq("-1")}, QVec{rq("2")}});
    CHECK(i.full_dim);
    CHECK(i.vertices == std::vector<QVec>{QVec{rq("-1")}, QVec{rq("3")}});
    RationalPolytope c = clip(i, canonical_halfspace(QVec{rq("1")}, rq("1/2")));
    CHECK(c.vertices == std::vector<QVec>{QVec{rq("-1")}, QVec{rq("1/2")}});
    CHECK_THROWS_AS(clip(i, canonical_halfspace(QVec{rq("1")}, rq("-7"))), std::invalid_argument);
}

TEST_CASE("3D hull: cube with interior noise") {
    std::vector<QVec> pts;
    for (int x = -1; x <= 1; x += 2)
        for (int y = -1; y <= 1; y += 2)
            for (int z = -1; z <= 1; z += 2) pts.push_back(QVec{Rat(x), Rat(y), Rat(z)});
    pts.push_back(QVec{rq("1/3"), rq("0"), rq("0")});
    RationalPolytope cube = convex_hull(pts);
    CHECK(cube.full_dim);
    CHECK(cube.vertices.size() == 8);
    CHECK(cube.halfspaces.size() == 6);
    for (const auto& ring : cube.facet_vertices) CHECK(ring.size() == 4);
    CHECK(volume(cube) == 8);
    CHECK(cube.contains(QVec{rq("1"), rq("1"), rq("1")}));
    CHECK(!cube.contains(QVec{rq("1"), rq("1"), rq("1")}, /*strict=*/true));
    CHECK(cube.contains(QVec(3), true));
}

TEST_CASE("3D degenerate: coplanar points are flagged, vertices right") {
    std::vector<QVec> pts = {QVec{Rat(0), Rat(0), Rat(1)}, QVec{Rat(1), Rat(0), Rat(1)},
                             QVec{Rat(0), Rat(1), Rat(1)}, QVec{Rat(1), Rat(1), Rat(1)},
                             QVec{rq("1/2"), rq("1/2"), Rat(1)}};
    RationalPolytope P = convex_hull(pts);
    CHECK(!P.full_dim);
    CHECK(P.affine_dim == 2);
    CHECK(P.vertices.size() == 4);
}

TEST_CASE("H/V duality: H-rep membership agrees with exact LP over vertices") {
    std::mt19937_64 rng(99);
    for (int dim : {2, 3}) {
        std::vector<QVec> pts;
        for (int i = 0; i < (dim == 2 ? 12 : 16); ++i) pts.push_back(random_point(dim, rng, 6));
        RationalPolytope P = convex_hull(pts);
        if (!P.full_dim) continue;
        for (int k = 0; k < 60; ++k) {
            QVec q = random_point(dim, rng, 7);
            CHECK(P.contains(q) == lp::member_vrep(P.vertices, {}, q));
        }
    }
}

TEST_CASE("triangulation: areas and simplex counts") {
    RationalPolytope tri = convex_hull({v2("0", "0"), v2("1", "0"), v2("0", "1")});
    CHECK(triangulate(tri).size() == 1);

    RationalPolytope sq = convex_hull({v2("0", "0"), v2("1", "0"), v2("0", "1"), v2("1", "1")});
    auto ts = triangulate(sq);
    CHECK(ts.size() == 2);
    Rat area = 0;
    for (const Simplex& s : ts) area += s.abs_det() / 2;
    CHECK(area == 1);
}

TEST_CASE("triangulation matches the shoelace oracle and is base-independent") {
    RationalPolytope p = convex_hull(
        {v2("0", "0"), v2("5/2", "5/2"), v2("2", "3"), v2("1/2", "7/2"), v2("0", "7/2")});
    CHECK(p.vertices.size() == 5);
    Rat oracle = shoelace_area(p);
    for (int base = 0; base < 5; ++base) {
        auto ts = triangulate_from(p, base);
        CHECK(ts.size() == 3);
        Rat area = 0;
        for (const Simplex& s : ts) area += s.abs_det() / 2;
        CHECK(area == oracle);
    }
    CHECK(volume(p) == oracle);
}

TEST_CASE("3D triangulation volume additivity") {
    std::mt19937_64 rng(123);
    std::vector<QVec> pts;
    for (int i = 0; i < 15; ++i) pts.push_back(random_point(3, rng, 5));
    RationalPolytope P = convex_hull(pts);
    REQUIRE(P.full_dim);
    Rat v1 = 0;
    for (const Simplex& s : triangulate_from(P, 0)) v1 += s.abs_det();
    Rat v2_ = 0;
    for (const Simplex& s : triangulate_from(P, static_cast<int>(P.vertices.size()) - 1))
        v2_ += s.abs_det();
    CHECK(v1 == v2_);
    CHECK(volume(P) == v1 / 6);
}

TEST_CASE("chamber clipping: A2 wonderful hexagon to P+") {
    roots::RootSystem rs = roots::build_root_system({{"A2"}, 0, {}});
    QVec w = Rat(3) * (rs.simple_roots[0] + rs.simple_roots[1]);
    RationalPolytope hex = convex_hull(roots::weyl_orbit(rs, w));
    CHECK(hex.vertices.size() == 6);
    CHECK(hex.halfspaces.size() == 6);
    RationalPolytope pplus = intersect_with_chamber(rs, hex);
    CHECK(pplus.vertices ==
          std::vector<QVec>{v2("0", "0"), v2("3/2", "3"), v2("3", "3/2"), v2("3", "3")});
    // clipping something already inside the chamber changes nothing
    RationalPolytope again = intersect_with_chamber(rs, pplus);
    CHECK(again.vertices == pplus.vertices);
}

TEST_CASE("chamber clipping: the X2 polytope from its 16 Euclidean vertices") {
    roots::RootSystem rs = roots::build_root_system({{"B2"}, 0, {}});
    // W(B2) orbit of (2,3) and (1/2,7/2)
    std::vector<QVec> verts;
    for (const QVec& seed : {v2("2", "3"), v2("1/2", "7/2")})
        for (const QVec& p : roots::weyl_orbit(rs, seed)) verts.push_back(p);
    RationalPolytope P = convex_hull(verts);
    CHECK(P.vertices.size() == 16);
    RationalPolytope pplus = intersect_with_chamber(rs, P);
    CHECK(pplus.vertices == std::vector<QVec>{v2("0", "0"), v2("0", "7/2"), v2("1/2", "7/2"),
                                              v2("2", "3"), v2("5/2", "5/2")});
}

TEST_CASE("chamber clipping rejects polytopes missing the chamber") {
    roots::RootSystem rs = roots::build_root_system({{"A1"}, 0, {}});
    RationalPolytope off = convex_hull({QVec{rq("-3")}, QVec{rq("-1")}});
    CHECK_THROWS_AS(intersect_with_chamber(rs, off), std::invalid_argument);
}

TEST_CASE("minkowski: single point with one negative ray gives a half line") {
    roots::RootSystem rs = roots::build_root_system({{"A1"}, 0, {}});
    RationalPolytope pt = convex_hull({rs.two_rho});  // the point 1
    RationalPolyhedron Q = minkowski_with_negative_root_cone(rs, pt);
    REQUIRE(Q.has_hrep);
    REQUIRE(Q.halfspaces.size() == 1);
    CHECK(Q.halfspaces[0].normal == QVec{Rat(1)});
    CHECK(Q.halfspaces[0].offset == 1);
    CHECK(Q.contains(QVec{rq("-100")}));
    CHECK(!Q.contains(QVec{rq("3/2")}));
    RayExit forward = ray_exit(Q, rs.two_rho, QVec{Rat(1)});
    CHECK((!forward.unbounded && forward.s == 0));
    CHECK(ray_exit(Q, rs.two_rho, QVec{Rat(-1)}).unbounded);
}

TEST_CASE("minkowski: Q contains P+ and recession rays are valid") {
    roots::RootSystem rs = roots::build_root_system({{"B2"}, 0, {}});
    RationalPolytope p = convex_hull({v2("0", "0"), v2("0", "7/2"), v2("1/2", "7/2"),
                                      v2("2", "3"), v2("5/2", "5/2")});
    RationalPolyhedron Q = minkowski_with_negative_root_cone(rs, p);
    REQUIRE(Q.has_hrep);
    for (const QVec& v : p.vertices) CHECK(Q.contains(v));
    for (const Halfspace& h : Q.halfspaces)
        for (const QVec& d : Q.rays) CHECK(dot(h.normal, d) <= 0);
    // 2rho = 4a1+3a2 = (1,3) in the Euclidean chart; interior by the Fano property
    CHECK(Q.contains(QVec{rq("1"), rq("3")}, /*strict=*/true));
}

TEST_CASE("minkowski falls back to LP when Q is lower-dimensional") {
    roots::RootSystem rs = roots::build_root_system({{}, 2, {}});  // pure torus: no rays
    RationalPolytope seg = convex_hull({v2("0", "0"), v2("1", "0")});
    RationalPolyhedron Q = minkowski_with_negative_root_cone(rs, seg);
    CHECK(!Q.has_hrep);
    CHECK(Q.contains(v2("1/2", "0")));
    CHECK(!Q.contains(v2("1/2", "1/7")));
}

TEST_CASE("ray_exit: unit square from the center") {
    RationalPolytope sq = convex_hull({v2("0", "0"), v2("1", "0"), v2("0", "1"), v2("1", "1")});
    RationalPolyhedron Q{2, true, sq.vertices, {}, sq.halfspaces};
    RayExit e = ray_exit(Q, v2("1/2", "1/2"), v2("1", "0"));
    REQUIRE(!e.unbounded);
    CHECK(e.s == rq("1/2"));

    // membership flips exactly at s*
    for (const char* s : {"49/100", "1/2"})
        CHECK(Q.contains(v2("1/2", "1/2") + rq(s) * v2("1", "0")));
    CHECK(!Q.contains(v2("1/2", "1/2") + rq("51/100") * v2("1", "0")));

    CHECK_THROWS_WITH_AS(ray_exit(Q, v2("2", "0"), v2("1", "0")),
                         doctest::Contains("origin violates"), std::invalid_argument);
}

TEST_CASE("ray_exit agrees with the exact LP route") {
    std::mt19937_64 rng(2024);
    roots::RootSystem rs = roots::build_root_system({{"B2"}, 0, {}});
    RationalPolytope p = convex_hull({v2("0", "0"), v2("0", "7/2"), v2("1/2", "7/2"),
                                      v2("2", "3"), v2("5/2", "5/2")});
    RationalPolyhedron Q = minkowski_with_negative_root_cone(rs, p);
    QVec origin{rq("1"), rq("3")};
    for (int k = 0; k < 12; ++k) {
        QVec dir = random_point(2, rng, 4);
        if (dir.is_zero()) continue;
        RayExit e = ray_exit(Q, origin, dir);
        auto via_lp = lp::ray_exit_vrep(Q.generators, Q.rays, origin, dir);
        if (e.unbounded) {
            CHECK(!via_lp.has_value());
        } else {
            REQUIRE(via_lp.has_value());
            CHECK(*via_lp == e.s);
        }
    }
}

TEST_CASE("dim 4: vertex pruning without an H-rep, LP membership") {
    // 4D cross-polytope plus interior noise
    std::vector<QVec> pts;
    for (int i = 0; i < 4; ++i)
        for (int s = -1; s <= 1; s += 2) {
            QVec v(4);
            v[i] = s;
            pts.push_back(v);
        }
    pts.push_back(QVec{rq("1/8"), rq("1/8"), rq("0"), rq("0")});
    RationalPolytope P = convex_hull(pts);
    CHECK(P.full_dim);
    CHECK(!P.has_hrep);
    CHECK(P.vertices.size() == 8);
    CHECK(P.contains(QVec{rq("1/4"), rq("1/4"), rq("1/4"), rq("1/4")}));
    CHECK(!P.contains(QVec{rq("1/2"), rq("1/2"), rq("1/2"), rq("1/2")}));
    CHECK_THROWS_AS(triangulate(P), std::invalid_argument);

    // rank-4 Minkowski sum runs in LP mode
    roots::RootSystem rs = roots::build_root_system({{"A1", "A1", "A1", "A1"}, 0, {}});
    RationalPolyhedron Q = minkowski_with_negative_root_cone(rs, P);
    CHECK(!Q.has_hrep);
    QVec origin(4);
    CHECK(Q.contains(origin));
    RayExit e = ray_exit(Q, origin, QVec{rq("1"), rq("0"), rq("0"), rq("0")});
    REQUIRE(!e.unbounded);
    CHECK(e.s == 1);
    CHECK(ray_exit(Q, origin, QVec{rq("-1"), rq("0"), rq("0"), rq("0")}).unbounded);
}

TEST_CASE("polyhedron membership: H-rep agrees with LP over generators and rays") {
    roots::RootSystem rs = roots::build_root_system({{"B2"}, 0, {}});
    RationalPolytope p = convex_hull({v2("0", "0"), v2("0", "7/2"), v2("1/2", "7/2"),
                                      v2("2", "3"), v2("5/2", "5/2")});
    RationalPolyhedron Q = minkowski_with_negative_root_cone(rs, p);
    std::mt19937_64 rng(321);
    for (int k = 0; k < 40; ++k) {
        QVec q = random_point(2, rng, 6);
        CHECK(Q.contains(q) == lp::member_vrep(Q.generators, Q.rays, q));
    }
}

TEST_CASE("canonical halfspaces are primitive integer") {
    Halfspace h = canonical_halfspace(QVec{rq("2/3"), rq("-4/9")}, rq("5/3"));
    CHECK(h.normal == v2("3", "-2"));
    CHECK(h.offset == rq("15/2"));
    CHECK_THROWS_AS(canonical_halfspace(QVec(2), rq("0")), std::invalid_argument);
}

TEST_CASE("scale dilates vertices and volume") {
    RationalPolytope sq = convex_hull({v2("0", "0"), v2("1", "0"), v2("0", "1"), v2("1", "1")});
    RationalPolytope big = scale(sq, rq("3/2"));
    CHECK(volume(big) == rq("9/4"));
    CHECK_THROWS_AS(scale(sq, rq("0")), std::invalid_argument);
}
