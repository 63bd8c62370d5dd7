#include "flexagg/polytope.hpp"

#include "flexagg/errors.hpp"
#include "flexagg/lp.hpp"

#include <string>
#include <utility>

namespace flexagg {

HPolytope::HPolytope(Eigen::MatrixXd A, Eigen::VectorXd b, const Tolerances& tol)
    : A_(std::move(A)), b_(std::move(b)) {
    if (A_.cols() < 1) throw InvalidArgument("HPolytope: dimension must be >= 1");
    if (A_.rows() != b_.size()) throw InvalidArgument("HPolytope: A and b row counts differ");
    for (int i = 0; i < A_.rows(); ++i)
        if (A_.row(i).cwiseAbs().maxCoeff() == 0.0)
            throw InvalidArgument("HPolytope: row " + std::to_string(i) + " of A is zero");
    if (chebyshev_ball(*this, tol).radius < -tol.feasibility) throw EmptyPolytope("HPolytope: empty set");
    bounding_box(*this, tol); // throws when unbounded
}

HPolytope HPolytope::unchecked(Eigen::MatrixXd A, Eigen::VectorXd b) {
    if (A.rows() != b.size()) throw InvalidArgument("HPolytope: A and b row counts differ");
    HPolytope p;
    p.A_ = std::move(A);
    p.b_ = std::move(b);
    return p;
}

HPolytope HPolytope::with_row(const HalfSpace& hs) const {
    if (hs.normal.size() != dim()) throw InvalidArgument("with_row: dimension mismatch");
    HPolytope p;
    p.A_.resize(A_.rows() + 1, A_.cols());
    p.A_ << A_, hs.normal.transpose();
    p.b_.resize(b_.size() + 1);
    p.b_ << b_, hs.offset;
    return p;
}

bool contains(const HPolytope& poly, const Eigen::VectorXd& x, double tol) {
    if (x.size() != poly.dim()) throw InvalidArgument("contains: dimension mismatch");
    return ((poly.A() * x - poly.b()).array() <= tol).all();
}

ChebyshevBall chebyshev_ball(const HPolytope& poly, const Tolerances& tol) {
    const int m = poly.dim();
    LpProblem lp;
    lp.A.resize(poly.rows(), m + 1);
    lp.A.leftCols(m) = poly.A();
    lp.A.col(m) = poly.A().rowwise().norm();
    lp.b = poly.b();
    lp.objective = Eigen::VectorXd::Zero(m + 1);
    lp.objective(m) = 1.0;
    const LpSolution sol = lp_solve(lp, tol);
    if (sol.status == LpStatus::unbounded) throw InvalidArgument("chebyshev_ball: polytope is unbounded");
    if (sol.status == LpStatus::infeasible) throw NumericalFailure("chebyshev_ball: LP reported infeasible");
    return {sol.x.head(m), sol.x(m)};
}

const char* to_string(RegionStatus status) {
    switch (status) {
    case RegionStatus::full: return "full";
    case RegionStatus::degenerate: return "degenerate";
    case RegionStatus::empty: return "empty";
    }
    return "?";
}

RegionStatus classify(const HPolytope& poly, const Tolerances& tol) {
    const double r = chebyshev_ball(poly, tol).radius;
    if (r < -tol.feasibility) return RegionStatus::empty;
    if (r < tol.degeneracy) return RegionStatus::degenerate;
    return RegionStatus::full;
}

Intersection intersect_halfspace(const HPolytope& poly, const HalfSpace& hs, const Tolerances& tol) {
    if (hs.normal.size() != poly.dim()) throw InvalidArgument("intersect_halfspace: dimension mismatch");
    if (hs.normal.cwiseAbs().maxCoeff() == 0.0) throw InvalidArgument("intersect_halfspace: zero normal");
    HPolytope out = poly.with_row(hs);
    const RegionStatus status = classify(out, tol);
    return {std::move(out), status};
}

AlignedBox bounding_box(const HPolytope& poly, const Tolerances& tol) {
    const int m = poly.dim();
    Eigen::VectorXd lo(m), hi(m);
    LpProblem lp{Eigen::VectorXd::Zero(m), poly.A(), poly.b(), false};
    for (int k = 0; k < m; ++k) {
        for (int sign : {1, -1}) {
            lp.objective.setZero();
            lp.objective(k) = sign;
            const LpSolution sol = lp_solve(lp, tol);
            if (sol.status == LpStatus::infeasible) throw EmptyPolytope("bounding_box: empty polytope");
            if (sol.status == LpStatus::unbounded) throw InvalidArgument("bounding_box: polytope is unbounded");
            if (sign > 0) hi(k) = sol.value;
            else lo(k) = -sol.value;
        }
    }
    hi = hi.cwiseMax(lo);
    return AlignedBox(lo, hi);
}

double support(const HPolytope& poly, const Eigen::VectorXd& direction, const Tolerances& tol) {
    if (direction.size() != poly.dim()) throw InvalidArgument("support: dimension mismatch");
    const LpSolution sol = lp_solve({direction, poly.A(), poly.b(), false}, tol);
    if (sol.status == LpStatus::infeasible) throw EmptyPolytope("support: empty polytope");
    if (sol.status == LpStatus::unbounded) throw InvalidArgument("support: polytope is unbounded");
    return sol.value;
}

HPolytope to_hpolytope(const AlignedBox& box) {
    const int m = box.dim();
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2 * m, m);
    Eigen::VectorXd b(2 * m);
    for (int k = 0; k < m; ++k) {
        A(2 * k, k) = -1.0;
        b(2 * k) = -box.lo()(k);
        A(2 * k + 1, k) = 1.0;
        b(2 * k + 1) = box.hi()(k);
    }
    return HPolytope::unchecked(std::move(A), std::move(b));
}

} // namespace flexagg
