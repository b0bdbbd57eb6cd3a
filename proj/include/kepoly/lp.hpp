#ifndef KEPOLY_LP_HPP
#define KEPOLY_LP_HPP

#include <optional>
#include <vector>

#include "kepoly/linalg.hpp"

namespace kepoly::lp {

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
    Status status = Status::Infeasible;
    Rat objective;  // valid when Optimal
    QVec x;         // valid when Optimal
};

/// Exact rational simplex: minimize c^T x subject to A x = b, x >= 0.
/// Two-phase with Bland's rule, so it always terminates.
Result solve_min(const QMat& A, const QVec& b, const QVec& c);

/// Does x lie in conv(points) + cone(rays)? Exact feasibility test.
bool member_vrep(const std::vector<QVec>& points, const std::vector<QVec>& rays, const QVec& x);

/// sup { s >= 0 : origin + s*dir in conv(points)+cone(rays) }.
/// Requires the origin to be a member; nullopt means unbounded.
std::optional<Rat> ray_exit_vrep(const std::vector<QVec>& points, const std::vector<QVec>& rays,
                                 const QVec& origin, const QVec& dir);

}  // namespace kepoly::lp

#endif
