#include "kepoly/dhmeasure.hpp"

#include <map>
#include <stdexcept>

namespace kepoly::dh {

LinearFormProduct dh_weight(const roots::RootSystem& rs) {
    LinearFormProduct w;
    for (const QVec& alpha : rs.positive_roots) w.factors.push_back({rs.pairing_form(alpha), 2});
    return w;
}

namespace {

using Monomials = std::map<std::vector<int>, Rat>;  // exponent vector over barycentric coords

// poly *= sum_i values[i] * lambda_i
Monomials multiply_linear(const Monomials& poly, const std::vector<Rat>& values) {
    Monomials out;
    for (const auto& [expo, coeff] : poly)
        for (size_t i = 0; i < values.size(); ++i) {
            if (values[i] == 0) continue;
            std::vector<int> e = expo;
            e[i] += 1;
            out[e] += coeff * values[i];
        }
    return out;
}

Int factorial(int n) {
    Int f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace

Rat integrate_over_simplex(const LinearFormProduct& w, std::optional<int> extra_coord,
                           const geom::Simplex& S) {
    const int r = S.dim();
    Rat ad = S.abs_det();
    if (ad == 0) throw std::invalid_argument("integrate_over_simplex: degenerate simplex");

    Monomials poly{{std::vector<int>(static_cast<size_t>(r) + 1, 0), Rat(1)}};
    for (const auto& f : w.factors) {
        std::vector<Rat> vals;
        for (const QVec& v : S.vertices) vals.push_back(dot(f.form, v));
        for (int k = 0; k < f.multiplicity; ++k) poly = multiply_linear(poly, vals);
    }
    if (extra_coord) {
        std::vector<Rat> vals;
        for (const QVec& v : S.vertices) vals.push_back(v[*extra_coord]);
        poly = multiply_linear(poly, vals);
    }

    // All monomials share the total degree M; int_S lambda^a dp for |a| = M is
    // |det| * prod a_i! / (r + M)!.
    const int M = w.total_degree() + (extra_coord ? 1 : 0);
    Rat denom{factorial(r + M)};
    Rat total = 0;
    for (const auto& [expo, coeff] : poly) {
        Int num = 1;
        for (int e : expo) num *= factorial(e);
        total += coeff * Rat(num) / denom;
    }
    return ad * total;
}

namespace {

void require_chamber_polytope(const roots::RootSystem& rs, const geom::RationalPolytope& Pplus,
                              const char* who) {
    if (!Pplus.full_dim)
        throw std::invalid_argument(std::string(who) + ": polytope must be full-dimensional");
    for (const QVec& v : Pplus.vertices)
        if (!rs.in_closed_chamber(v))
            throw std::invalid_argument(std::string(who) +
                                        ": polytope leaves the closed chamber at " + to_string(v));
}

}  // namespace

Rat dh_volume(const roots::RootSystem& rs, const geom::RationalPolytope& Pplus) {
    require_chamber_polytope(rs, Pplus, "dh_volume");
    LinearFormProduct w = dh_weight(rs);
    Rat v = 0;
    for (const geom::Simplex& s : geom::triangulate(Pplus)) v += integrate_over_simplex(w, std::nullopt, s);
    return v;
}

DHResult dh_barycenter(const roots::RootSystem& rs, const geom::RationalPolytope& Pplus) {
    require_chamber_polytope(rs, Pplus, "dh_barycenter");
    LinearFormProduct w = dh_weight(rs);
    std::vector<geom::Simplex> tri = geom::triangulate(Pplus);
    Rat volume = 0;
    QVec first_moment(Pplus.dim);
    for (const geom::Simplex& s : tri) {
        volume += integrate_over_simplex(w, std::nullopt, s);
        for (int j = 0; j < Pplus.dim; ++j) first_moment[j] += integrate_over_simplex(w, j, s);
    }
    if (volume == 0)
        throw std::invalid_argument(
            "dh_barycenter: Duistermaat-Heckman mass is zero (polytope lies in a root hyperplane)");

    DHResult res;
    res.volume = volume;
    res.barycenter = (Rat(1) / volume) * first_moment;
    res.barycenter_alpha = roots::to_alpha_coordinates(rs, res.barycenter);
    return res;
}

}  // namespace kepoly::dh
