#include "kepoly/roots.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace kepoly::roots {

namespace {

struct FactorData {
    int dim = 0;
    std::vector<QVec> simple;    // block-local coordinates
    std::vector<QVec> positive;  // block-local coordinates
    QMat gram;                   // block-local pairing
    size_t weyl_order = 0;
};

QVec unit(int dim, int i) {
    QVec v(dim);
    v[i] = 1;
    return v;
}

size_t factorial(int n) {
    size_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<size_t>(i);
    return f;
}

// Type A_n, short roots of square norm 1: basis = simple roots, Gram has 1 on
// the diagonal and -1/2 between adjacent nodes. Positive roots are the
// consecutive sums alpha_i + ... + alpha_j.
FactorData make_type_a(int n) {
    FactorData f;
    f.dim = n;
    f.gram = QMat(n, n);
    for (int i = 0; i < n; ++i) {
        f.gram.at(i, i) = 1;
        if (i + 1 < n) {
            f.gram.at(i, i + 1) = Rat(-1, 2);
            f.gram.at(i + 1, i) = Rat(-1, 2);
        }
        f.simple.push_back(unit(n, i));
    }
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            QVec v(n);
            for (int k = i; k <= j; ++k) v[k] = 1;
            f.positive.push_back(v);
        }
    f.weyl_order = factorial(n + 1);
    return f;
}

// Types B/C/D in the Euclidean block (Gram = identity), with the chamber
// 0 < x_1 < ... < x_n (B/C) resp. |x_1| < x_2 < ... < x_n (D). This matches
// the B2 plane with alpha_1 = (1,0), alpha_2 = (-1,1).
FactorData make_type_bcd(char type, int n) {
    FactorData f;
    f.dim = n;
    f.gram = QMat::identity(n);
    auto e = [&](int i) { return unit(n, i); };
    if (type == 'B') {
        f.simple.push_back(e(0));
        for (int k = 1; k < n; ++k) f.simple.push_back(e(k) - e(k - 1));
        for (int i = 0; i < n; ++i) f.positive.push_back(e(i));
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                f.positive.push_back(e(j) - e(i));
                f.positive.push_back(e(i) + e(j));
            }
        f.weyl_order = factorial(n) << n;
    } else if (type == 'C') {
        f.simple.push_back(Rat(2) * e(0));
        for (int k = 1; k < n; ++k) f.simple.push_back(e(k) - e(k - 1));
        for (int i = 0; i < n; ++i) f.positive.push_back(Rat(2) * e(i));
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                f.positive.push_back(e(j) - e(i));
                f.positive.push_back(e(i) + e(j));
            }
        f.weyl_order = factorial(n) << n;
    } else {  // 'D'
        for (int k = 0; k + 1 < n; ++k) f.simple.push_back(e(k + 1) - e(k));
        f.simple.push_back(e(0) + e(1));
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                f.positive.push_back(e(j) - e(i));
                f.positive.push_back(e(i) + e(j));
            }
        f.weyl_order = factorial(n) << (n - 1);
    }
    return f;
}

// G2 in the simple-root basis, short root alpha_1 of square norm 1.
FactorData make_type_g2() {
    FactorData f;
    f.dim = 2;
    f.gram = QMat(2, 2);
    f.gram.at(0, 0) = 1;
    f.gram.at(0, 1) = Rat(-3, 2);
    f.gram.at(1, 0) = Rat(-3, 2);
    f.gram.at(1, 1) = 3;
    f.simple = {QVec{Rat(1), Rat(0)}, QVec{Rat(0), Rat(1)}};
    const int coeffs[6][2] = {{1, 0}, {0, 1}, {1, 1}, {2, 1}, {3, 1}, {3, 2}};
    for (auto& c : coeffs) f.positive.push_back(QVec{Rat(c[0]), Rat(c[1])});
    f.weyl_order = 12;
    return f;
}

FactorData make_factor(const std::string& label) {
    if (label.size() != 2)
        throw std::invalid_argument("unsupported Cartan label '" + label + "'");
    char type = label[0];
    int n = label[1] - '0';
    if (type == 'G') {
        if (n != 2) throw std::invalid_argument("unsupported Cartan label '" + label + "' (only G2)");
        return make_type_g2();
    }
    if (n < 1 || n > 4)
        throw std::invalid_argument("unsupported Cartan label '" + label + "' (rank must be 1..4)");
    switch (type) {
        case 'A':
            return make_type_a(n);
        case 'B':
        case 'C':
        case 'D':
            if (n < 2)
                throw std::invalid_argument("unsupported Cartan label '" + label +
                                            "' (use A1 for rank one)");
            return make_type_bcd(type, n);
        default:
            throw std::invalid_argument("unsupported Cartan label '" + label +
                                        "' (supported: A1..A4, B2..B4, C2..C4, D2..D4, G2)");
    }
}

QVec embed(const QVec& local, int offset, int dim) {
    QVec v(dim);
    for (int i = 0; i < local.dim(); ++i) v[offset + i] = local[i];
    return v;
}

// Reflection in the root alpha: x -> x - 2<alpha,x>/<alpha,alpha> * alpha.
QMat reflection_matrix(const RootSystem& rs, const QVec& alpha) {
    QMat m = QMat::identity(rs.rank);
    QVec form = rs.pairing_form(alpha);
    Rat scale = Rat(2) / rs.norm2(alpha);
    for (int i = 0; i < rs.rank; ++i)
        for (int j = 0; j < rs.rank; ++j) m.at(i, j) -= scale * alpha[i] * form[j];
    return m;
}

constexpr size_t kMaxWeylOrder = 50000;

}  // namespace

Rat RootSystem::pairing(const QVec& a, const QVec& b) const {
    if (a.dim() != rank || b.dim() != rank)
        throw std::invalid_argument("pairing: dimension mismatch");
    Rat s = 0;
    for (int i = 0; i < rank; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < rank; ++j) s += a[i] * gram.at(i, j) * b[j];
    }
    return s;
}

QVec RootSystem::pairing_form(const QVec& a) const {
    if (a.dim() != rank) throw std::invalid_argument("pairing_form: dimension mismatch");
    return gram.mul(a);
}

bool RootSystem::in_closed_chamber(const QVec& x) const {
    for (const QVec& alpha : simple_roots)
        if (pairing(alpha, x) < 0) return false;
    return true;
}

bool RootSystem::in_open_chamber(const QVec& x) const {
    for (const QVec& alpha : simple_roots)
        if (pairing(alpha, x) <= 0) return false;
    return true;
}

RootSystem build_root_system(const GroupSpec& spec) {
    if (spec.factors.empty() && spec.torus_rank < 1)
        throw std::invalid_argument("GroupSpec: need at least one factor or torus_rank >= 1");
    if (spec.torus_rank < 0) throw std::invalid_argument("GroupSpec: torus_rank must be >= 0");
    if (!spec.normalization.empty() && spec.normalization.size() != spec.factors.size())
        throw std::invalid_argument("GroupSpec: normalization must list one scale per factor");
    for (const Rat& s : spec.normalization)
        if (s <= 0) throw std::invalid_argument("GroupSpec: normalization scales must be positive");

    std::vector<FactorData> factors;
    factors.reserve(spec.factors.size());
    int ss_dim = 0;
    size_t weyl = 1;
    for (const std::string& label : spec.factors) {
        factors.push_back(make_factor(label));
        ss_dim += factors.back().dim;
        weyl *= factors.back().weyl_order;
    }
    if (weyl > kMaxWeylOrder)
        throw std::invalid_argument("GroupSpec: combined Weyl order exceeds supported size");

    RootSystem rs;
    rs.rank = ss_dim + spec.torus_rank;
    rs.gram = QMat(rs.rank, rs.rank);
    int offset = 0;
    for (size_t f = 0; f < factors.size(); ++f) {
        const FactorData& fd = factors[f];
        Rat scale = spec.normalization.empty() ? Rat(1) : spec.normalization[f];
        for (int i = 0; i < fd.dim; ++i)
            for (int j = 0; j < fd.dim; ++j)
                rs.gram.at(offset + i, offset + j) = scale * fd.gram.at(i, j);
        for (const QVec& a : fd.simple) rs.simple_roots.push_back(embed(a, offset, rs.rank));
        for (const QVec& a : fd.positive) rs.positive_roots.push_back(embed(a, offset, rs.rank));
        rs.factor_blocks.emplace_back(offset, fd.dim);
        offset += fd.dim;
    }
    for (int t = 0; t < spec.torus_rank; ++t) {
        rs.gram.at(offset + t, offset + t) = 1;  // pairing on the torus block is the identity
        rs.toric_basis.push_back(unit(rs.rank, offset + t));
    }
    rs.semisimple_rank = static_cast<int>(rs.simple_roots.size());
    rs.two_rho = QVec(rs.rank);
    for (const QVec& a : rs.positive_roots) rs.two_rho = rs.two_rho + a;
    return rs;
}

Rat pairing(const RootSystem& rs, const QVec& a, const QVec& b) { return rs.pairing(a, b); }

WeylGroup weyl_group(const RootSystem& rs) {
    WeylGroup w;
    for (const QVec& alpha : rs.simple_roots) w.generators.push_back(reflection_matrix(rs, alpha));

    auto mat_less = [](const QMat& a, const QMat& b) { return a.a < b.a; };
    std::set<QMat, decltype(mat_less)> seen(mat_less);
    std::vector<QMat> frontier{QMat::identity(rs.rank)};
    seen.insert(frontier[0]);
    while (!frontier.empty()) {
        std::vector<QMat> next;
        for (const QMat& m : frontier)
            for (const QMat& g : w.generators) {
                QMat p = g.mul(m);
                if (seen.insert(p).second) next.push_back(p);
            }
        frontier = std::move(next);
        if (seen.size() > kMaxWeylOrder)
            throw std::runtime_error("weyl_group: closure exceeded supported size");
    }
    w.elements.assign(seen.begin(), seen.end());
    return w;
}

std::vector<QVec> weyl_orbit(const RootSystem& rs, const QVec& v) {
    if (v.dim() != rs.rank) throw std::invalid_argument("weyl_orbit: dimension mismatch");
    std::vector<QMat> gens;
    for (const QVec& alpha : rs.simple_roots) gens.push_back(reflection_matrix(rs, alpha));
    std::set<QVec, QVecLess> seen;
    std::vector<QVec> frontier{v};
    seen.insert(v);
    while (!frontier.empty()) {
        std::vector<QVec> next;
        for (const QVec& x : frontier)
            for (const QMat& g : gens) {
                QVec y = g.mul(x);
                if (seen.insert(y).second) next.push_back(y);
            }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

SimpleRootCoords simple_root_coordinates(const RootSystem& rs, const QVec& v) {
    if (v.dim() != rs.rank) throw std::invalid_argument("simple_root_coordinates: dimension mismatch");
    // Simple roots plus the toric basis form a basis of Q^r.
    QMat basis(rs.rank, rs.rank);
    for (int j = 0; j < rs.semisimple_rank; ++j)
        for (int i = 0; i < rs.rank; ++i) basis.at(i, j) = rs.simple_roots[static_cast<size_t>(j)][i];
    for (size_t t = 0; t < rs.toric_basis.size(); ++t)
        for (int i = 0; i < rs.rank; ++i)
            basis.at(i, rs.semisimple_rank + static_cast<int>(t)) = rs.toric_basis[t][i];
    auto x = solve(basis, v);
    if (!x) throw std::runtime_error("simple_root_coordinates: realization basis is singular");
    SimpleRootCoords out;
    out.coeffs.assign(x->c.begin(), x->c.begin() + rs.semisimple_rank);
    out.toric_residual = QVec(rs.rank);
    for (size_t t = 0; t < rs.toric_basis.size(); ++t)
        out.toric_residual =
            out.toric_residual + (*x)[rs.semisimple_rank + static_cast<int>(t)] * rs.toric_basis[t];
    return out;
}

QVec from_alpha_coordinates(const RootSystem& rs, const QVec& coords) {
    if (coords.dim() != rs.rank)
        throw std::invalid_argument("from_alpha_coordinates: expected one coordinate per rank");
    QVec v(rs.rank);
    for (int i = 0; i < rs.semisimple_rank; ++i) v = v + coords[i] * rs.simple_roots[static_cast<size_t>(i)];
    for (size_t t = 0; t < rs.toric_basis.size(); ++t)
        v = v + coords[rs.semisimple_rank + static_cast<int>(t)] * rs.toric_basis[t];
    return v;
}

QVec to_alpha_coordinates(const RootSystem& rs, const QVec& v) {
    SimpleRootCoords sc = simple_root_coordinates(rs, v);
    QVec out(rs.rank);
    for (int i = 0; i < rs.semisimple_rank; ++i) out[i] = sc.coeffs[static_cast<size_t>(i)];
    for (size_t t = 0; t < rs.toric_basis.size(); ++t)
        out[rs.semisimple_rank + static_cast<int>(t)] = dot(sc.toric_residual, rs.toric_basis[t]);
    return out;
}

}  // namespace kepoly::roots
