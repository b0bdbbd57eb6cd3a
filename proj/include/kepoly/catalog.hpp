#ifndef KEPOLY_CATALOG_HPP
#define KEPOLY_CATALOG_HPP

#include <string>
#include <vector>

#include "kepoly/geometry.hpp"
#include "kepoly/roots.hpp"

namespace kepoly::catalog {

/// Built-in example input: group data plus the P+ vertices in simple-root
/// coordinates (toric coordinates last).
struct NamedExample {
    std::string name;
    roots::GroupSpec group;
    std::vector<QVec> pplus_vertices_alpha;
    std::string provenance;
};

/// Anticanonical polytope of the wonderful compactification: the convex hull
/// of the Weyl orbit of 2rho + sum of simple roots. Built formally for any
/// supported root system (degenerate when a torus factor is present).
geom::RationalPolytope wonderful_polytope(const roots::RootSystem& rs);

std::vector<std::string> builtin_names();
NamedExample builtin(const std::string& name);

/// Realize a stored example: build the root system and the P+ polytope in
/// working coordinates.
struct RealizedExample {
    roots::RootSystem rs;
    geom::RationalPolytope pplus;
};
RealizedExample realize(const NamedExample& ex);

}  // namespace kepoly::catalog

#endif
