#include "kepoly/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <set>
#include <stdexcept>

#include "kepoly/dhmeasure.hpp"

namespace kepoly::analytic {

namespace {

Eigen::VectorXd to_eigen(const QVec& v) {
    Eigen::VectorXd x(v.dim());
    for (int i = 0; i < v.dim(); ++i) x[i] = v[i].get_d();
    return x;
}

Eigen::MatrixXd gram_double(const roots::RootSystem& rs) {
    Eigen::MatrixXd g(rs.rank, rs.rank);
    for (int i = 0; i < rs.rank; ++i)
        for (int j = 0; j < rs.rank; ++j) g(i, j) = rs.gram.at(i, j).get_d();
    return g;
}

// Positive roots and their pairing covectors as doubles.
struct RootsDouble {
    int rank;
    std::vector<Eigen::VectorXd> roots;
    std::vector<Eigen::VectorXd> forms;  // G * root
    Eigen::VectorXd four_rho_form;       // G * 4rho
    Eigen::MatrixXd gram;

    explicit RootsDouble(const roots::RootSystem& rs) : rank(rs.rank), gram(gram_double(rs)) {
        for (const QVec& a : rs.positive_roots) {
            roots.push_back(to_eigen(a));
            forms.push_back(to_eigen(rs.pairing_form(a)));
        }
        four_rho_form = 2.0 * to_eigen(rs.pairing_form(rs.two_rho));
    }
};

// log sinh and log cosh for t > 0, safe against overflow.
double log_sinh(double t) { return t + std::log1p(-std::exp(-2.0 * t)) - M_LN2; }
double log_cosh(double t) { return t + std::log1p(std::exp(-2.0 * t)) - M_LN2; }

double pairwise_sum(const double* v, size_t n) {
    if (n == 0) return 0.0;
    if (n <= 8) {
        double s = 0;
        for (size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    size_t h = n / 2;
    return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

long quad_budget(const QuadratureSpec& q) {
    if (const char* env = std::getenv("KEPOLY_QUAD_BUDGET")) {
        long b = std::atol(env);
        if (b > 0) return b;
    }
    return q.max_cells > 0 ? q.max_cells : 8'000'000L;
}

}  // namespace

// ---- J and j ---------------------------------------------------------------

double J_value(const roots::RootSystem& rs, const Eigen::VectorXd& a) {
    RootsDouble rd(rs);
    double prod = 1.0;
    for (const auto& form : rd.forms) {
        double s = std::sinh(form.dot(a));
        prod *= s * s;
    }
    return prod;
}

namespace {

std::vector<double> chamber_pairings_or_throw(const RootsDouble& rd, const Eigen::VectorXd& a,
                                              const char* who) {
    std::vector<double> t;
    for (const auto& form : rd.forms) {
        double v = form.dot(a);
        if (v <= 0)
            throw std::domain_error(std::string(who) +
                                    ": point must lie strictly inside the positive chamber");
        t.push_back(v);
    }
    return t;
}

}  // namespace

double j_value(const roots::RootSystem& rs, const Eigen::VectorXd& a) {
    RootsDouble rd(rs);
    std::vector<double> t = chamber_pairings_or_throw(rd, a, "j_value");
    double j = 0;
    for (double v : t) j -= 2.0 * log_sinh(v);
    return j;
}

Eigen::VectorXd j_gradient(const roots::RootSystem& rs, const Eigen::VectorXd& a) {
    RootsDouble rd(rs);
    std::vector<double> t = chamber_pairings_or_throw(rd, a, "j_gradient");
    Eigen::VectorXd g = Eigen::VectorXd::Zero(rs.rank);
    for (size_t k = 0; k < rd.forms.size(); ++k) g -= 2.0 / std::tanh(t[k]) * rd.forms[k];
    return g;
}

Eigen::MatrixXd j_hessian(const roots::RootSystem& rs, const Eigen::VectorXd& a) {
    RootsDouble rd(rs);
    std::vector<double> t = chamber_pairings_or_throw(rd, a, "j_hessian");
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(rs.rank, rs.rank);
    for (size_t k = 0; k < rd.forms.size(); ++k) {
        double s = std::sinh(t[k]);
        h += 2.0 / (s * s) * rd.forms[k] * rd.forms[k].transpose();
    }
    return h;
}

// ---- block complex Hessian --------------------------------------------------

Eigen::MatrixXcd complex_hessian_blocks(const roots::RootSystem& rs, const SmoothFn& f,
                                        const Eigen::VectorXd& a) {
    RootsDouble rd(rs);
    std::vector<double> t = chamber_pairings_or_throw(rd, a, "complex_hessian_blocks");
    const int r = rs.rank;
    const int p = static_cast<int>(rd.roots.size());
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(r + 2 * p, r + 2 * p);
    H.topLeftCorner(r, r) = 0.25 * f.hessian(a).cast<std::complex<double>>();
    Eigen::VectorXd grad = f.gradient(a);
    const std::complex<double> I(0.0, 1.0);
    for (int k = 0; k < p; ++k) {
        double g = rd.roots[static_cast<size_t>(k)].dot(grad);  // <alpha, grad f>
        double c = 1.0 / std::tanh(t[static_cast<size_t>(k)]);
        int o = r + 2 * k;
        H(o, o) = 0.5 * g * c;
        H(o, o + 1) = 0.5 * g * I;
        H(o + 1, o) = -0.5 * g * I;
        H(o + 1, o + 1) = 0.5 * g * c;
    }
    return H;
}

double ma_complex(const roots::RootSystem& rs, const SmoothFn& f, const Eigen::VectorXd& a) {
    RootsDouble rd(rs);
    std::vector<double> t = chamber_pairings_or_throw(rd, a, "ma_complex");
    double result = (0.25 * f.hessian(a)).determinant();
    Eigen::VectorXd grad = f.gradient(a);
    for (size_t k = 0; k < rd.roots.size(); ++k) {
        double g = rd.roots[k].dot(grad);
        double s = std::sinh(t[k]);
        result *= 0.25 * g * g / (s * s);
    }
    return result;
}

double ma_complex_direct(const roots::RootSystem& rs, const SmoothFn& f, const Eigen::VectorXd& a) {
    std::complex<double> d = complex_hessian_blocks(rs, f, a).determinant();
    if (std::abs(d.imag()) > 1e-9 * (1.0 + std::abs(d.real())))
        throw std::runtime_error("ma_complex_direct: determinant has a non-real part");
    return d.real();
}

// ---- test potential ---------------------------------------------------------

TestPotential::TestPotential(const roots::RootSystem& rs, std::vector<QVec> generators)
    : generators_(std::move(generators)), gram_(gram_double(rs)) {
    const int r = rs.rank;
    const int m = static_cast<int>(generators_.size());
    gen_.resize(r, m);
    gen_form_.resize(r, m);
    for (int k = 0; k < m; ++k) {
        gen_.col(k) = to_eigen(generators_[static_cast<size_t>(k)]);
        gen_form_.col(k) = to_eigen(rs.pairing_form(generators_[static_cast<size_t>(k)]));
    }
}

Eigen::VectorXd TestPotential::softmax(const Eigen::VectorXd& x, double* logsum) const {
    Eigen::VectorXd e = gen_form_.transpose() * x;
    double mx = e.maxCoeff();
    Eigen::VectorXd w = (e.array() - mx).exp();
    double s = w.sum();
    if (logsum) *logsum = mx + std::log(s);
    return w / s;
}

double TestPotential::value(const Eigen::VectorXd& x) const {
    double ls;
    softmax(x, &ls);
    return ls;
}

Eigen::VectorXd TestPotential::moment(const Eigen::VectorXd& x) const {
    return gen_ * softmax(x, nullptr);
}

Eigen::VectorXd TestPotential::exponents(const Eigen::VectorXd& x) const {
    return gen_form_.transpose() * x;
}

Eigen::VectorXd TestPotential::gradient(const Eigen::VectorXd& x) const {
    return gram_ * moment(x);
}

Eigen::MatrixXd TestPotential::moment_jacobian(const Eigen::VectorXd& x) const {
    Eigen::VectorXd p = softmax(x, nullptr);
    Eigen::VectorXd m = gen_ * p;
    Eigen::MatrixXd cov = gen_ * p.asDiagonal() * gen_.transpose() - m * m.transpose();
    return cov * gram_;
}

Eigen::MatrixXd TestPotential::hessian(const Eigen::VectorXd& x) const {
    return gram_ * moment_jacobian(x);  // G C G
}

TestPotential build_test_potential(const roots::RootSystem& rs, const geom::RationalPolytope& P) {
    if (!P.full_dim)
        throw std::invalid_argument("build_test_potential: polytope must be full-dimensional");
    if (P.dim != rs.rank) throw std::invalid_argument("build_test_potential: dimension mismatch");
    std::set<QVec, QVecLess> vertex_set(P.vertices.begin(), P.vertices.end());
    for (const QVec& v : P.vertices)
        for (const QVec& w : roots::weyl_orbit(rs, v))
            if (!vertex_set.count(w))
                throw std::invalid_argument(
                    "build_test_potential: polytope is not Weyl-invariant (orbit of a vertex "
                    "leaves the vertex set)");
    std::vector<QVec> gens;
    for (const QVec& v : P.vertices) gens.push_back(Rat(2) * v);
    return TestPotential(rs, std::move(gens));
}

// ---- chamber quadrature ------------------------------------------------------

namespace {

struct ChamberGrid {
    int rank;
    double radius;
    double wall_offset;
    Eigen::VectorXd lo, hi;                     // bounding box of chamber-cap-ball
    std::vector<Eigen::VectorXd> simple_forms;  // G*alpha_i, defining the chamber

    bool admits(const Eigen::VectorXd& x) const {
        if (x.squaredNorm() > radius * radius) return false;
        for (const auto& f : simple_forms)
            if (f.dot(x) < wall_offset) return false;
        return true;
    }
};

// Midpoint rule over the grid cells of the bounding box that pass the chamber
// and ball mask; deterministic pairwise reduction of the cell values.
template <typename F>
double masked_midpoint(const ChamberGrid& g, int n, const F& f, long* cells_evaluated) {
    std::vector<double> vals;
    Eigen::VectorXd x(g.rank);
    double cell = 1.0;
    for (int i = 0; i < g.rank; ++i) cell *= (g.hi[i] - g.lo[i]) / n;
    if (g.rank == 1) {
        const double h = (g.hi[0] - g.lo[0]) / n;
        for (int i = 0; i < n; ++i) {
            x[0] = g.lo[0] + (i + 0.5) * h;
            if (!g.admits(x)) continue;
            vals.push_back(f(x));
        }
    } else if (g.rank == 2) {
        const double h0 = (g.hi[0] - g.lo[0]) / n;
        const double h1 = (g.hi[1] - g.lo[1]) / n;
        for (int i = 0; i < n; ++i) {
            x[0] = g.lo[0] + (i + 0.5) * h0;
            for (int j = 0; j < n; ++j) {
                x[1] = g.lo[1] + (j + 0.5) * h1;
                if (!g.admits(x)) continue;
                vals.push_back(f(x));
            }
        }
    } else {
        throw std::invalid_argument("quadrature: supported for rank <= 2 only");
    }
    if (cells_evaluated) *cells_evaluated += static_cast<long>(vals.size());
    return cell * pairwise_sum(vals.data(), vals.size());
}

// Truncation radius from the decay bound (v_{2P} - <4rho, .>)(x) >= target on
// |x| = R, plus the bounding box of the chamber cone capped at that radius.
struct Domain {
    double radius;
    Eigen::VectorXd lo, hi;
};

Domain decay_domain(const RootsDouble& rd, const Eigen::MatrixXd& gen_form,
                    const std::vector<Eigen::VectorXd>& simple_forms, double target) {
    const int r = rd.rank;
    double gap_min = std::numeric_limits<double>::infinity();
    Eigen::VectorXd dir_lo = Eigen::VectorXd::Zero(r), dir_hi = Eigen::VectorXd::Zero(r);
    auto visit = [&](const Eigen::VectorXd& theta) {
        double v = (gen_form.transpose() * theta).maxCoeff();
        gap_min = std::min(gap_min, v - rd.four_rho_form.dot(theta));
        bool in_chamber = true;
        for (const auto& f : simple_forms)
            if (f.dot(theta) < 0) in_chamber = false;
        if (in_chamber) {
            dir_lo = dir_lo.cwiseMin(theta);
            dir_hi = dir_hi.cwiseMax(theta);
        }
    };
    if (r == 1) {
        Eigen::VectorXd t(1);
        t[0] = 1;
        visit(t);
        t[0] = -1;
        visit(t);
    } else {
        const int steps = 1440;
        Eigen::VectorXd t(2);
        for (int i = 0; i < steps; ++i) {
            double phi = 2.0 * M_PI * i / steps;
            t[0] = std::cos(phi);
            t[1] = std::sin(phi);
            visit(t);
        }
    }
    if (!(gap_min > 0))
        throw std::invalid_argument(
            "quadrature: integrand does not decay (4rho must be interior to 2P)");
    Domain d;
    d.radius = std::clamp(target / gap_min, 4.0, 400.0);
    // pad for the angular sampling step so the box surely covers the cap
    double pad = d.radius * 0.006;
    d.lo = d.radius * dir_lo - Eigen::VectorXd::Constant(r, pad);
    d.hi = d.radius * dir_hi + Eigen::VectorXd::Constant(r, pad);
    return d;
}

struct QuadSetup {
    ChamberGrid grid;
    int n_coarse;
    bool within_budget;
};

QuadSetup make_setup(const roots::RootSystem& rs, const RootsDouble& rd,
                     const Eigen::MatrixXd& gen_form, const QuadratureSpec& q, int integrands) {
    if (rs.rank > 2) throw std::invalid_argument("analytic checks support rank <= 2 only");
    QuadSetup s;
    s.grid.rank = rs.rank;
    s.grid.wall_offset = q.wall_offset;
    for (const QVec& a : rs.simple_roots) s.grid.simple_forms.push_back(to_eigen(rs.pairing_form(a)));
    Domain dom = decay_domain(rd, gen_form, s.grid.simple_forms, 30.0);
    if (q.radius > 0) {
        // explicit radius: scale the auto box to it
        double f = q.radius / dom.radius;
        dom.lo *= f;
        dom.hi *= f;
        dom.radius = q.radius;
    }
    s.grid.radius = dom.radius;
    s.grid.lo = dom.lo;
    s.grid.hi = dom.hi;
    s.n_coarse = q.subdivisions > 0 ? q.subdivisions : (rs.rank == 1 ? 8192 : 640);
    s.within_budget = true;

    // Coarse + refined pass over `integrands` integrals; the refined grid has
    // 2^rank times the cells.
    long budget = quad_budget(q);
    auto cost = [&](int n) {
        double c = std::pow(static_cast<double>(n), rs.rank) * (1 + std::pow(2.0, rs.rank));
        return static_cast<long>(c) * integrands;
    };
    while (s.n_coarse > 16 && cost(s.n_coarse) > budget) {
        s.n_coarse /= 2;
        s.within_budget = false;
    }
    return s;
}

double relative(double numeric, double exact) {
    double denom = std::abs(exact);
    if (denom == 0) return std::abs(numeric) == 0 ? 0.0 : std::abs(numeric);
    return std::abs(numeric - exact) / denom;
}

}  // namespace

CheckResult check_pushforward_identity(const roots::RootSystem& rs,
                                       const geom::RationalPolytope& Pplus,
                                       const TestPotential& u, QuadratureSpec q) {
    RootsDouble rd(rs);
    Eigen::MatrixXd gen_form(rs.rank, u.generators().size());
    for (size_t k = 0; k < u.generators().size(); ++k)
        gen_form.col(static_cast<int>(k)) = to_eigen(rs.pairing_form(u.generators()[k]));
    QuadSetup s = make_setup(rs, rd, gen_form, q, 1);

    double exact = dh::dh_volume(rs, geom::scale(Pplus, Rat(2))).get_d();

    auto integrand = [&](const Eigen::VectorXd& x) {
        Eigen::VectorXd m = u.moment(x);
        double w = 1.0;
        for (const auto& form : rd.forms) {
            double t = form.dot(m);
            w *= t * t;
        }
        return w * u.moment_jacobian(x).determinant();
    };

    CheckResult res;
    double coarse = masked_midpoint(s.grid, s.n_coarse, integrand, &res.cells_used);
    double fine = masked_midpoint(s.grid, 2 * s.n_coarse, integrand, &res.cells_used);
    double extrap = (4.0 * fine - coarse) / 3.0;
    res.residual = relative(extrap, exact);
    res.residual_coarse = relative(coarse, exact);
    res.residual_fine = relative(fine, exact);
    res.within_budget = s.within_budget;
    return res;
}

CheckResult check_barycenter_identity(const roots::RootSystem& rs,
                                      const geom::RationalPolytope& Pplus, const TestPotential& u,
                                      const QVec& xi, QuadratureSpec q) {
    RootsDouble rd(rs);
    Eigen::MatrixXd gen_form(rs.rank, u.generators().size());
    for (size_t k = 0; k < u.generators().size(); ++k)
        gen_form.col(static_cast<int>(k)) = to_eigen(rs.pairing_form(u.generators()[k]));
    QuadSetup s = make_setup(rs, rd, gen_form, q, 1);

    dh::DHResult scaled = dh::dh_barycenter(rs, geom::scale(Pplus, Rat(2)));
    double exact = Rat(rs.pairing(xi, scaled.barycenter) * scaled.volume).get_d();
    Eigen::VectorXd xi_form = to_eigen(rs.pairing_form(xi));

    auto integrand = [&](const Eigen::VectorXd& x) {
        Eigen::VectorXd m = u.moment(x);
        double w = xi_form.dot(m);
        for (const auto& form : rd.forms) {
            double t = form.dot(m);
            w *= t * t;
        }
        return w * u.moment_jacobian(x).determinant();
    };

    CheckResult res;
    double coarse = masked_midpoint(s.grid, s.n_coarse, integrand, &res.cells_used);
    double fine = masked_midpoint(s.grid, 2 * s.n_coarse, integrand, &res.cells_used);
    double extrap = (4.0 * fine - coarse) / 3.0;
    res.residual = relative(extrap, exact);
    res.residual_coarse = relative(coarse, exact);
    res.residual_fine = relative(fine, exact);
    res.within_budget = s.within_budget;
    return res;
}

CheckResult check_zero_integral(const roots::RootSystem& rs, const TestPotential& u,
                                const QVec& xi, QuadratureSpec q) {
    if (!rs.in_closed_chamber(xi))
        throw std::invalid_argument("check_zero_integral: xi must lie in the closed chamber");
    RootsDouble rd(rs);
    Eigen::MatrixXd gen_form(rs.rank, u.generators().size());
    for (size_t k = 0; k < u.generators().size(); ++k)
        gen_form.col(static_cast<int>(k)) = to_eigen(rs.pairing_form(u.generators()[k]));
    QuadSetup s = make_setup(rs, rd, gen_form, q, 2);

    Eigen::VectorXd xi_d = to_eigen(xi);
    Eigen::VectorXd xi_form = to_eigen(rs.pairing_form(xi));
    if (xi_d.norm() == 0) return {};  // exact zero, both sides

    const size_t p = rd.forms.size();
    // The two pieces of dnu/dxi e^{-nu}, both finite at the walls: the du part
    // carries the full J, the dj part in the factored cosh*sinh*prod form.
    auto pieces = [&](const Eigen::VectorXd& x, double& dupart, double& djpart) {
        double uval = u.value(x);
        Eigen::VectorXd m = u.moment(x);
        double logJ = 0;
        std::vector<double> t(p), ls(p);
        for (size_t k = 0; k < p; ++k) {
            t[k] = rd.forms[k].dot(x);
            ls[k] = log_sinh(t[k]);
            logJ += 2.0 * ls[k];
        }
        dupart = xi_form.dot(m) * std::exp(-uval + logJ);
        djpart = 0;
        for (size_t k = 0; k < p; ++k) {
            double xi_alpha = rd.forms[k].dot(xi_d);
            if (xi_alpha == 0) continue;
            double lt = log_cosh(t[k]) + ls[k];
            for (size_t b = 0; b < p; ++b)
                if (b != k) lt += 2.0 * ls[b];
            djpart -= 2.0 * xi_alpha * std::exp(-uval + lt);
        }
    };

    auto integrand = [&](const Eigen::VectorXd& x) {
        double a, b;
        pieces(x, a, b);
        return a + b;
    };
    auto normalizer = [&](const Eigen::VectorXd& x) {
        double a, b;
        pieces(x, a, b);
        return std::abs(a + b);
    };

    CheckResult res;
    double coarse = masked_midpoint(s.grid, s.n_coarse, integrand, &res.cells_used);
    double fine = masked_midpoint(s.grid, 2 * s.n_coarse, integrand, &res.cells_used);
    double norm = masked_midpoint(s.grid, s.n_coarse, normalizer, &res.cells_used);
    if (norm == 0) return {};
    double extrap = (4.0 * fine - coarse) / 3.0;
    res.residual = std::abs(extrap) / norm;
    res.residual_coarse = std::abs(coarse) / norm;
    res.residual_fine = std::abs(fine) / norm;
    res.within_budget = s.within_budget;
    return res;
}

JInequalityReport check_j_inequalities(const roots::RootSystem& rs, int samples, unsigned seed) {
    JInequalityReport rep;
    rep.samples = samples;
    if (rs.positive_roots.empty()) {
        rep.skipped_toric = true;  // j is identically zero, nothing to check
        return rep;
    }
    RootsDouble rd(rs);
    const double c = 2.0 * M_LN2 * static_cast<double>(rd.forms.size());
    Eigen::VectorXd rho_d = 0.5 * to_eigen(rs.two_rho);  // xi = rho

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> box(-4.0, 4.0);
    rep.worst_bound_margin = std::numeric_limits<double>::infinity();
    rep.worst_gradient_margin = std::numeric_limits<double>::infinity();

    int accepted = 0;
    while (accepted < samples) {
        Eigen::VectorXd x(rs.rank);
        for (int i = 0; i < rs.rank; ++i) x[i] = box(rng);
        bool interior = true;
        for (const auto& form : rd.forms)
            if (form.dot(x) < 1e-2) interior = false;
        if (!interior) continue;
        ++accepted;

        double j = 0, djdxi = 0;
        for (const auto& form : rd.forms) {
            double t = form.dot(x);
            j -= 2.0 * log_sinh(t);
            djdxi -= 2.0 * form.dot(rho_d) / std::tanh(t);
        }
        double bound_margin = j + rd.four_rho_form.dot(x) - c;
        double grad_margin = -rd.four_rho_form.dot(rho_d) - djdxi;  // <-4rho,xi> - dj/dxi
        rep.worst_bound_margin = std::min(rep.worst_bound_margin, bound_margin);
        rep.worst_gradient_margin = std::min(rep.worst_gradient_margin, grad_margin);
    }
    rep.ok = rep.worst_bound_margin >= -1e-9 && rep.worst_gradient_margin > 0;
    return rep;
}

}  // namespace kepoly::analytic
