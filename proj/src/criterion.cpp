#include "kepoly/criterion.hpp"

#include <stdexcept>

namespace kepoly::criterion {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::KE_EXISTS: return "KE_EXISTS";
        case Verdict::NO_KE: return "NO_KE";
        case Verdict::BOUNDARY: return "BOUNDARY";
    }
    return "?";
}

KEVerdict ke_verdict_shifted(const roots::RootSystem& rs, const geom::RationalPolytope& Pplus,
                             const QVec& shift) {
    dh::DHResult bar = dh::dh_barycenter(rs, Pplus);

    KEVerdict out;
    out.barycenter = bar.barycenter;
    out.shifted = bar.barycenter - shift;
    roots::SimpleRootCoords sc = roots::simple_root_coordinates(rs, out.shifted);
    out.cone_coeffs = sc.coeffs;
    out.toric_residual = sc.toric_residual;

    if (!out.toric_residual.is_zero()) {
        out.verdict = Verdict::NO_KE;
        return out;
    }
    bool all_positive = true, all_nonnegative = true;
    for (const Rat& c : out.cone_coeffs) {
        if (c <= 0) all_positive = false;
        if (c < 0) all_nonnegative = false;
    }
    if (all_positive)
        out.verdict = Verdict::KE_EXISTS;  // vacuously for a torus: barycenter == shift exactly
    else if (all_nonnegative)
        out.verdict = Verdict::BOUNDARY;
    else
        out.verdict = Verdict::NO_KE;
    return out;
}

KEVerdict ke_verdict(const roots::RootSystem& rs, const geom::RationalPolytope& Pplus) {
    return ke_verdict_shifted(rs, Pplus, rs.two_rho);
}

QVec rlb_query_point(const QVec& shift, const QVec& barycenter, const Rat& t) {
    if (t >= 1) throw std::invalid_argument("rlb_query_point: t must be < 1");
    return (Rat(1) / (Rat(1) - t)) * (shift - t * barycenter);
}

RLBResult greatest_ricci_lower_bound_shifted(const roots::RootSystem& rs,
                                             const geom::RationalPolytope& Pplus,
                                             const QVec& shift) {
    dh::DHResult bar = dh::dh_barycenter(rs, Pplus);
    geom::RationalPolyhedron Q = geom::minkowski_with_negative_root_cone(rs, Pplus);

    if (!Q.contains(shift))
        throw std::invalid_argument(
            "greatest_ricci_lower_bound: 2rho lies outside -Xi + P+; the data cannot come from a "
            "Fano compactification (4rho must be interior to 2P)");

    RLBResult out;
    out.point_A = bar.barycenter;
    out.point_B = shift;

    // Substituting s = t/(1-t) turns the Theorem C query point into
    // 2rho + s*(2rho - bar), a ray from 2rho.
    QVec dir = shift - bar.barycenter;
    if (dir.is_zero()) {
        out.R = 1;
        out.s_unbounded = true;
        out.hypothesis_met = false;
        out.note = "barycenter equals 2rho exactly (boundary of the KE region); R = 1 by the sup "
                   "convention";
        return out;
    }

    geom::RayExit exit = geom::ray_exit(Q, shift, dir);
    if (exit.unbounded) {
        out.R = 1;
        out.s_unbounded = true;
        out.hypothesis_met = false;
        out.note = "the ray from 2rho away from the barycenter stays in -Xi + P+; the no-KE "
                   "hypothesis of the R(X) formula is not met and R = 1";
        return out;
    }

    out.s_star = exit.s;
    out.R = exit.s / (Rat(1) + exit.s);
    out.point_C = shift + exit.s * dir;
    // A, B, C are collinear, so |BC|/|AC| is an exact rational: the common
    // ratio of coordinate differences along the ray.
    for (int i = 0; i < rs.rank; ++i) {
        Rat ca = (*out.point_C)[i] - out.point_A[i];
        if (ca != 0) {
            Rat cb = (*out.point_C)[i] - out.point_B[i];
            out.ratio_BC_AC = (cb < 0 ? -cb : cb) / (ca < 0 ? -ca : ca);
            break;
        }
    }
    return out;
}

RLBResult greatest_ricci_lower_bound(const roots::RootSystem& rs,
                                     const geom::RationalPolytope& Pplus) {
    return greatest_ricci_lower_bound_shifted(rs, Pplus, rs.two_rho);
}

}  // namespace kepoly::criterion
