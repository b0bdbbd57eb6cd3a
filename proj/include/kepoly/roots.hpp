#ifndef KEPOLY_ROOTS_HPP
#define KEPOLY_ROOTS_HPP

#include <string>
#include <vector>

#include "kepoly/linalg.hpp"

namespace kepoly::roots {

/// A reductive group given by its Cartan labels and a central torus rank.
/// Supported labels: A1..A4, B2..B4, C2..C4, D2..D4, G2.
struct GroupSpec {
    std::vector<std::string> factors;
    int torus_rank = 0;
    /// Optional per-factor positive scaling of the pairing; empty means all 1.
    std::vector<Rat> normalization;
};

/// Explicit rational realization of the root data of a reductive group.
///
/// Vectors live in Q^r in a fixed working basis (one coordinate block per
/// semisimple factor, torus coordinates last). The scalar product is carried
/// by `gram`; it is positive definite on the root span, the identity on the
/// torus block, and the two blocks are orthogonal.
struct RootSystem {
    int rank = 0;             // dim of the working space (r)
    int semisimple_rank = 0;  // number of simple roots
    std::vector<QVec> simple_roots;
    std::vector<QVec> positive_roots;
    QMat gram;
    QVec two_rho;  // sum of positive roots
    std::vector<QVec> toric_basis;
    /// (offset, size) of each semisimple factor's coordinate block.
    std::vector<std::pair<int, int>> factor_blocks;

    Rat pairing(const QVec& a, const QVec& b) const;
    /// The covector G·a, so that pairing(a, x) == dot(pairing_form(a), x).
    QVec pairing_form(const QVec& a) const;
    Rat norm2(const QVec& a) const { return pairing(a, a); }

    bool in_closed_chamber(const QVec& x) const;
    bool in_open_chamber(const QVec& x) const;
};

RootSystem build_root_system(const GroupSpec& spec);

Rat pairing(const RootSystem& rs, const QVec& a, const QVec& b);

/// The full Weyl group as explicit exact matrices, generators first.
struct WeylGroup {
    std::vector<QMat> generators;  // one reflection per simple root
    std::vector<QMat> elements;    // closure under composition, generators included
    size_t order() const { return elements.size(); }
};

WeylGroup weyl_group(const RootSystem& rs);

/// Orbit of v under W, deduplicated, in lexicographic order.
std::vector<QVec> weyl_orbit(const RootSystem& rs, const QVec& v);

/// v = sum coeffs[i]*simple_root[i] + toric_residual, exactly and uniquely.
struct SimpleRootCoords {
    std::vector<Rat> coeffs;
    QVec toric_residual;
};

SimpleRootCoords simple_root_coordinates(const RootSystem& rs, const QVec& v);

/// Coordinates (c_1..c_s, t_1..t_k) -> sum c_i alpha_i + sum t_j e_j.
QVec from_alpha_coordinates(const RootSystem& rs, const QVec& coords);
/// Inverse of the above; length-r vector (simple-root coeffs, then toric).
QVec to_alpha_coordinates(const RootSystem& rs, const QVec& v);

}  // namespace kepoly::roots

#endif
