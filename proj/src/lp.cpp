#include "kepoly/lp.hpp"

#include <stdexcept>

namespace kepoly::lp {

namespace {

// Dense exact tableau. Columns 0..n-1 are the variables, the last column is
// the right hand side. `basis[i]` is the variable basic in row i.
struct Tableau {
    int m = 0, n = 0;
    QMat t;  // m rows, n+1 cols
    std::vector<int> basis;

    Rat& rhs(int i) { return t.at(i, n); }

    void pivot(int row, int col) {
        Rat inv = 1 / t.at(row, col);
        for (int j = 0; j <= n; ++j) t.at(row, j) *= inv;
        for (int i = 0; i < m; ++i) {
            if (i == row || t.at(i, col) == 0) continue;
            Rat f = t.at(i, col);
            for (int j = 0; j <= n; ++j) t.at(i, j) -= f * t.at(row, j);
        }
        basis[static_cast<size_t>(row)] = col;
    }
};

// One simplex phase with Bland's rule on `cost`, considering only the first
// `candidate_cols` columns for entering. Returns false when unbounded below.
bool run_phase(Tableau& tb, const QVec& cost, int candidate_cols) {
    for (;;) {
        int enter = -1;
        for (int j = 0; j < candidate_cols && enter < 0; ++j) {
            Rat r = cost[j];
            for (int i = 0; i < tb.m; ++i) {
                const Rat& cb = cost[tb.basis[static_cast<size_t>(i)]];
                if (cb != 0 && tb.t.at(i, j) != 0) r -= cb * tb.t.at(i, j);
            }
            if (r < 0) enter = j;  // Bland: first improving index
        }
        if (enter < 0) return true;

        int leave = -1;
        Rat best;
        for (int i = 0; i < tb.m; ++i) {
            const Rat& a = tb.t.at(i, enter);
            if (a <= 0) continue;
            Rat ratio = tb.rhs(i) / a;
            if (leave < 0 || ratio < best ||
                (ratio == best &&
                 tb.basis[static_cast<size_t>(i)] < tb.basis[static_cast<size_t>(leave)])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave < 0) return false;  // unbounded
        tb.pivot(leave, enter);
    }
}

Rat objective_value(const Tableau& tb, const QVec& cost) {
    Rat obj = 0;
    for (int i = 0; i < tb.m; ++i)
        obj += cost[tb.basis[static_cast<size_t>(i)]] * tb.t.at(i, tb.n);
    return obj;
}

}  // namespace

Result solve_min(const QMat& A, const QVec& b, const QVec& c) {
    const int m = A.rows, n = A.cols;
    if (b.dim() != m || c.dim() != n) throw std::invalid_argument("solve_min: dimension mismatch");

    // Phase 1 with one artificial variable per row; rows flipped so b >= 0.
    Tableau tb;
    tb.m = m;
    tb.n = n + m;
    tb.t = QMat(m, tb.n + 1);
    tb.basis.resize(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
        int sign = (b[i] < 0) ? -1 : 1;
        for (int j = 0; j < n; ++j) tb.t.at(i, j) = sign * A.at(i, j);
        tb.t.at(i, n + i) = 1;
        tb.t.at(i, tb.n) = sign * b[i];
        tb.basis[static_cast<size_t>(i)] = n + i;
    }

    QVec phase1_cost(tb.n);
    for (int j = n; j < tb.n; ++j) phase1_cost[j] = 1;
    if (!run_phase(tb, phase1_cost, tb.n))
        throw std::runtime_error("solve_min: phase one unbounded (internal error)");
    if (objective_value(tb, phase1_cost) != 0) return {Status::Infeasible, Rat(0), QVec()};

    // Drive leftover artificials out of the basis where possible. A row whose
    // structural part is all zero is redundant; its artificial stays basic at
    // value zero and is harmless since phase 2 never lets artificials enter.
    for (int i = 0; i < m; ++i) {
        if (tb.basis[static_cast<size_t>(i)] < n) continue;
        for (int j = 0; j < n; ++j)
            if (tb.t.at(i, j) != 0) {
                tb.pivot(i, j);
                break;
            }
    }

    QVec phase2_cost(tb.n);
    for (int j = 0; j < n; ++j) phase2_cost[j] = c[j];
    if (!run_phase(tb, phase2_cost, n)) return {Status::Unbounded, Rat(0), QVec()};

    Result res;
    res.status = Status::Optimal;
    res.x = QVec(n);
    for (int i = 0; i < m; ++i)
        if (tb.basis[static_cast<size_t>(i)] < n) res.x[tb.basis[static_cast<size_t>(i)]] = tb.rhs(i);
    res.objective = 0;
    for (int j = 0; j < n; ++j) res.objective += c[j] * res.x[j];
    return res;
}

namespace {

// Equality system for "x in conv(points) + cone(rays) (+ optionally -s*dir)":
// sum l_i p_i + sum u_j r_j (- s dir) = x, sum l_i = 1, all variables >= 0.
void build_vrep_system(const std::vector<QVec>& points, const std::vector<QVec>& rays,
                       const QVec& x, const QVec* dir, QMat& A, QVec& b) {
    const int d = x.dim();
    const int np = static_cast<int>(points.size());
    const int nr = static_cast<int>(rays.size());
    const int n = np + nr + (dir ? 1 : 0);
    A = QMat(d + 1, n);
    b = QVec(d + 1);
    for (int j = 0; j < np; ++j) {
        for (int i = 0; i < d; ++i) A.at(i, j) = points[static_cast<size_t>(j)][i];
        A.at(d, j) = 1;
    }
    for (int j = 0; j < nr; ++j)
        for (int i = 0; i < d; ++i) A.at(i, np + j) = rays[static_cast<size_t>(j)][i];
    if (dir)
        for (int i = 0; i < d; ++i) A.at(i, np + nr) = -(*dir)[i];
    for (int i = 0; i < d; ++i) b[i] = x[i];
    b[d] = 1;
}

}  // namespace

bool member_vrep(const std::vector<QVec>& points, const std::vector<QVec>& rays, const QVec& x) {
    if (points.empty()) return false;
    QMat A;
    QVec b;
    build_vrep_system(points, rays, x, nullptr, A, b);
    QVec c(A.cols);
    return solve_min(A, b, c).status == Status::Optimal;
}

std::optional<Rat> ray_exit_vrep(const std::vector<QVec>& points, const std::vector<QVec>& rays,
                                 const QVec& origin, const QVec& dir) {
    if (!member_vrep(points, rays, origin))
        throw std::invalid_argument("ray_exit_vrep: origin is not a member");
    QMat A;
    QVec b;
    build_vrep_system(points, rays, origin, &dir, A, b);
    QVec c(A.cols);
    c[A.cols - 1] = -1;  // maximize s
    Result r = solve_min(A, b, c);
    if (r.status == Status::Unbounded) return std::nullopt;
    if (r.status != Status::Optimal)
        throw std::runtime_error("ray_exit_vrep: unexpected infeasibility");
    return -r.objective;
}

}  // namespace kepoly::lp
