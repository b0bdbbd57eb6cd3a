#ifndef KEPOLY_CRITERION_HPP
#define KEPOLY_CRITERION_HPP

#include <optional>
#include <string>
#include <vector>

#include "kepoly/dhmeasure.hpp"
#include "kepoly/geometry.hpp"
#include "kepoly/roots.hpp"

namespace kepoly::criterion {

enum class Verdict { KE_EXISTS, NO_KE, BOUNDARY };

std::string to_string(Verdict v);

/// Decomposition of bar_DH(P+) - 2rho against the cone generated by the
/// positive roots: existence holds iff the toric part vanishes exactly and
/// every simple-root coefficient is strictly positive. Coefficients exactly
/// zero (with the rest admissible) are reported as BOUNDARY, where the
/// criterion is silent.
struct KEVerdict {
    QVec barycenter;  // realization coordinates
    QVec shifted;     // barycenter - shift (the shift is 2rho by default)
    std::vector<Rat> cone_coeffs;
    QVec toric_residual;
    Verdict verdict = Verdict::NO_KE;
};

KEVerdict ke_verdict(const roots::RootSystem& rs, const geom::RationalPolytope& Pplus);

/// Same decision run against a dilated pair (lambda*P+, lambda*2rho); the
/// verdict is invariant under lambda > 0, which the tests assert.
KEVerdict ke_verdict_shifted(const roots::RootSystem& rs, const geom::RationalPolytope& Pplus,
                             const QVec& shift);

/// Greatest Ricci lower bound data. With A = bar_DH(P+), B = 2rho and C the
/// exit of the ray from B away from A on the boundary of -Xi + P+, the bound
/// is R = s*/(1+s*) = |BC|/|AC|. When the ray never exits (the KE/boundary
/// regime), R = 1 by the sup convention and `hypothesis_met` is false.
struct RLBResult {
    Rat R;
    bool s_unbounded = false;
    std::optional<Rat> s_star;
    QVec point_A;
    QVec point_B;
    std::optional<QVec> point_C;
    std::optional<Rat> ratio_BC_AC;
    bool hypothesis_met = true;
    std::string note;
};

RLBResult greatest_ricci_lower_bound(const roots::RootSystem& rs,
                                     const geom::RationalPolytope& Pplus);
RLBResult greatest_ricci_lower_bound_shifted(const roots::RootSystem& rs,
                                             const geom::RationalPolytope& Pplus,
                                             const QVec& shift);

/// The Theorem C query point (shift - t*barycenter)/(1-t), for membership-flip
/// tests around R.
QVec rlb_query_point(const QVec& shift, const QVec& barycenter, const Rat& t);

}  // namespace kepoly::criterion

#endif
