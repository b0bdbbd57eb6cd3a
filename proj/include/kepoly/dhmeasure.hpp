#ifndef KEPOLY_DHMEASURE_HPP
#define KEPOLY_DHMEASURE_HPP

#include <optional>
#include <vector>

#include "kepoly/geometry.hpp"
#include "kepoly/roots.hpp"

namespace kepoly::dh {

/// Product of even powers of linear forms, prod <form_i, p>^mult_i, evaluated
/// with the plain coordinate dot product. The Duistermaat-Heckman weight
/// stores form = G*alpha so that <form, p> equals the root pairing <alpha, p>.
struct LinearFormProduct {
    struct Factor {
        QVec form;
        int multiplicity;
    };
    std::vector<Factor> factors;

    int total_degree() const {
        int d = 0;
        for (const auto& f : factors) d += f.multiplicity;
        return d;
    }

    Rat evaluate(const QVec& p) const {
        Rat r = 1;
        for (const auto& f : factors) {
            Rat v = dot(f.form, p);
            for (int k = 0; k < f.multiplicity; ++k) r *= v;
        }
        return r;
    }
};

/// prod_{alpha in Phi+} <alpha, .>^2; the empty product for a torus.
LinearFormProduct dh_weight(const roots::RootSystem& rs);

/// Exact integral of (optional extra coordinate) * w over a simplex, by
/// barycentric substitution, multinomial expansion and the Dirichlet formula
/// int_S prod lambda_i^{a_i} dp = dim! vol(S) prod a_i! / (dim + sum a_i)!.
Rat integrate_over_simplex(const LinearFormProduct& w, std::optional<int> extra_coord,
                           const geom::Simplex& S);

/// DH mass of Pplus in working coordinates.
Rat dh_volume(const roots::RootSystem& rs, const geom::RationalPolytope& Pplus);

struct DHResult {
    Rat volume;
    QVec barycenter;        // realization coordinates
    QVec barycenter_alpha;  // simple-root coefficients, toric coordinates last
};

DHResult dh_barycenter(const roots::RootSystem& rs, const geom::RationalPolytope& Pplus);

}  // namespace kepoly::dh

#endif
