#ifndef KEPOLY_ANALYTIC_HPP
#define KEPOLY_ANALYTIC_HPP

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <vector>

#include "kepoly/geometry.hpp"
#include "kepoly/roots.hpp"

namespace kepoly::analytic {

/// A smooth function on the working chart with explicit coordinate gradient
/// and Hessian. Double precision throughout this module.
struct SmoothFn {
    virtual ~SmoothFn() = default;
    virtual double value(const Eigen::VectorXd& x) const = 0;
    virtual Eigen::VectorXd gradient(const Eigen::VectorXd& x) const = 0;
    virtual Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const = 0;
};

/// W-invariant strictly convex potential u(x) = log sum_v exp(<v,x>) over the
/// W-closed vertex set of 2P. Its gradient (as a point of the working chart,
/// i.e. the moment map) ranges over the interior of 2P.
class TestPotential : public SmoothFn {
  public:
    TestPotential(const roots::RootSystem& rs, std::vector<QVec> generators);

    double value(const Eigen::VectorXd& x) const override;
    Eigen::VectorXd gradient(const Eigen::VectorXd& x) const override;
    Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const override;

    /// Moment map m(x) = sum softmax_v(x) * v, a point of Int(2P).
    Eigen::VectorXd moment(const Eigen::VectorXd& x) const;
    /// Jacobian of the moment map; det > 0 on all of the chart.
    Eigen::MatrixXd moment_jacobian(const Eigen::VectorXd& x) const;
    /// The raw exponents <v, x> over the generators.
    Eigen::VectorXd exponents(const Eigen::VectorXd& x) const;

    const std::vector<QVec>& generators() const { return generators_; }
    int ambient_dim() const { return static_cast<int>(gen_.rows()); }

  private:
    std::vector<QVec> generators_;
    Eigen::MatrixXd gen_;       // columns: generators
    Eigen::MatrixXd gen_form_;  // columns: G * generator
    Eigen::MatrixXd gram_;

    Eigen::VectorXd softmax(const Eigen::VectorXd& x, double* logsum) const;
};

/// Builds the potential from the vertex set of 2P; rejects P that is not
/// W-invariant or not full-dimensional.
TestPotential build_test_potential(const roots::RootSystem& rs, const geom::RationalPolytope& P);

/// J(a) = prod_{alpha in Phi+} sinh^2 <alpha, a>; zero on chamber walls.
double J_value(const roots::RootSystem& rs, const Eigen::VectorXd& a);
/// j = -ln J and its coordinate derivatives; rejects points not strictly
/// inside the chamber.
double j_value(const roots::RootSystem& rs, const Eigen::VectorXd& a);
Eigen::VectorXd j_gradient(const roots::RootSystem& rs, const Eigen::VectorXd& a);
Eigen::MatrixXd j_hessian(const roots::RootSystem& rs, const Eigen::VectorXd& a);

/// The block complex Hessian at exp(a): a (r+2p) x (r+2p) matrix with real
/// block Hess(f)/4 and one 2x2 block per positive root.
Eigen::MatrixXcd complex_hessian_blocks(const roots::RootSystem& rs, const SmoothFn& f,
                                        const Eigen::VectorXd& a);
/// Its determinant via the block product formula ...
double ma_complex(const roots::RootSystem& rs, const SmoothFn& f, const Eigen::VectorXd& a);
/// ... and via a dense complex LU of the assembled matrix (cross-check route).
double ma_complex_direct(const roots::RootSystem& rs, const SmoothFn& f, const Eigen::VectorXd& a);

struct QuadratureSpec {
    double radius = 0;        // truncation radius; 0 selects it from the decay bound
    double wall_offset = 1e-3;
    int subdivisions = 0;     // cells per axis at the coarse level; 0 = per-rank default
    double tolerance = 1e-3;  // informational target, recorded in reports
    long max_cells = 0;       // 0 = default budget; KEPOLY_QUAD_BUDGET overrides
};

struct CheckResult {
    double residual = 0;         // Richardson-extrapolated, normalized
    double residual_coarse = 0;  // plain midpoint at n and 2n, for convergence evidence
    double residual_fine = 0;
    bool within_budget = true;
    long cells_used = 0;
};

/// int_{chamber} prod <alpha, grad u>^2 MA(u) dx against the exact DH mass of
/// 2P+ (the change of variables p = grad u).
CheckResult check_pushforward_identity(const roots::RootSystem& rs,
                                       const geom::RationalPolytope& Pplus,
                                       const TestPotential& u, QuadratureSpec q = {});

/// int_{chamber} dnu/dxi e^{-nu} dx with nu = u + j, normalized by
/// int |dnu/dxi| e^{-nu}; exactly zero in the limit.
CheckResult check_zero_integral(const roots::RootSystem& rs, const TestPotential& u,
                                const QVec& xi, QuadratureSpec q = {});

/// int du/dxi prod <alpha, grad u>^2 MA(u) dx against <xi, bar_DH(2P+)> V.
CheckResult check_barycenter_identity(const roots::RootSystem& rs,
                                      const geom::RationalPolytope& Pplus,
                                      const TestPotential& u, const QVec& xi,
                                      QuadratureSpec q = {});

/// Samples the two j-inequalities (lower linear bound with constant
/// 2 ln2 |Phi+|, and the strict gradient bound against -4rho) at random
/// interior points; reports the worst margins.
struct JInequalityReport {
    bool ok = true;
    int samples = 0;
    double worst_bound_margin = 0;     // min of j(x) + <4rho,x> - 2 ln2 |Phi+|
    double worst_gradient_margin = 0;  // min of <-4rho, xi> - dj/dxi(x)
    bool skipped_toric = false;
};
JInequalityReport check_j_inequalities(const roots::RootSystem& rs, int samples, unsigned seed);

}  // namespace kepoly::analytic

#endif
