#ifndef KEPOLY_GEOMETRY_HPP
#define KEPOLY_GEOMETRY_HPP

#include <optional>
#include <string>
#include <vector>

#include "kepoly/linalg.hpp"
#include "kepoly/roots.hpp"

namespace kepoly::geom {

/// The closed halfspace { x : <normal, x> <= offset } (plain coordinate dot
/// product). Normals are kept as primitive integer vectors so representations
/// are canonical and comparable.
struct Halfspace {
    QVec normal;
    Rat offset;

    Rat slack(const QVec& x) const { return offset - dot(normal, x); }
};

Halfspace canonical_halfspace(QVec normal, Rat offset);

/// Exact convex polytope with cross-validated V- and H-representations.
///
/// Full H-rep (and facet incidence) is built for ambient dimension <= 3; in
/// higher dimension only the vertex set is computed and membership queries
/// fall back to exact LP over the V-representation.
struct RationalPolytope {
    int dim = 0;
    int affine_dim = 0;
    bool full_dim = false;
    bool has_hrep = false;
    std::vector<QVec> vertices;           // minimal, lexicographically sorted
    std::vector<Halfspace> halfspaces;    // canonical order; empty unless has_hrep
    std::vector<std::vector<int>> facet_vertices;  // aligned with halfspaces; 3D rings are in
                                                   // boundary order

    bool contains(const QVec& p, bool strict = false) const;
};

/// A simplex given by dim+1 affinely independent vertices.
struct Simplex {
    std::vector<QVec> vertices;

    int dim() const { return static_cast<int>(vertices.size()) - 1; }
    /// |det| of the edge matrix; volume is this over dim()!.
    Rat abs_det() const;
};

/// Polytope + recession cone, as needed for -Xi + P^+.
struct RationalPolyhedron {
    int dim = 0;
    bool has_hrep = false;
    std::vector<QVec> generators;  // vertices of the base polytope
    std::vector<QVec> rays;
    std::vector<Halfspace> halfspaces;

    bool contains(const QVec& p, bool strict = false) const;
};

RationalPolytope convex_hull(const std::vector<QVec>& points);

/// Dilate by a positive rational factor.
RationalPolytope scale(const RationalPolytope& P, const Rat& lambda);

/// P cut down to the closed positive Weyl chamber (adds <alpha_i, x> >= 0).
/// Throws when the intersection is empty.
RationalPolytope intersect_with_chamber(const roots::RootSystem& rs, const RationalPolytope& P);

RationalPolytope clip(const RationalPolytope& P, const Halfspace& h);

/// Fan triangulation from the lexicographically smallest vertex (default) or
/// from a chosen vertex index; facets are triangulated by pulling their own
/// smallest vertex.
std::vector<Simplex> triangulate(const RationalPolytope& P);
std::vector<Simplex> triangulate_from(const RationalPolytope& P, int base_vertex);

/// Lebesgue volume in working coordinates.
Rat volume(const RationalPolytope& P);

/// Q = P^+ + cone(-alpha_i : alpha_i simple). The closure of -Xi is used; the
/// boundary parameter computed by ray_exit is unchanged by taking closures.
RationalPolyhedron minkowski_with_negative_root_cone(const roots::RootSystem& rs,
                                                     const RationalPolytope& Pplus);

struct RayExit {
    bool unbounded = false;
    Rat s;  // valid when !unbounded; the boundary parameter, >= 0
};

/// Largest s with origin + s*dir still in Q; requires origin in Q.
RayExit ray_exit(const RationalPolyhedron& Q, const QVec& origin, const QVec& dir);

}  // namespace kepoly::geom

#endif
