#pragma once

#include "flexagg/box.hpp"
#include "flexagg/tolerances.hpp"

#include <Eigen/Dense>

#include <optional>

namespace flexagg {

// { x : normal . x <= offset }
struct HalfSpace {
    Eigen::VectorXd normal;
    double offset = 0.0;
};

// Convex polytope { x : A x <= b } in R^M.
class HPolytope {
public:
    // Validating constructor: every row of A nonzero, set non-empty and bounded.
    // Throws InvalidArgument (bad shape, zero row, unbounded) or EmptyPolytope.
    HPolytope(Eigen::MatrixXd A, Eigen::VectorXd b, const Tolerances& tol = default_tolerances());

    // Skips the LP checks; used for intermediate regions whose emptiness is
    // reported separately (see intersect_halfspace).
    static HPolytope unchecked(Eigen::MatrixXd A, Eigen::VectorXd b);

    int dim() const { return static_cast<int>(A_.cols()); }
    int rows() const { return static_cast<int>(A_.rows()); }
    const Eigen::MatrixXd& A() const { return A_; }
    const Eigen::VectorXd& b() const { return b_; }

    HPolytope with_row(const HalfSpace& hs) const;

private:
    HPolytope() = default;

    Eigen::MatrixXd A_;
    Eigen::VectorXd b_;
};

// True iff A x <= b + tol componentwise. Throws InvalidArgument on dimension mismatch.
bool contains(const HPolytope& poly, const Eigen::VectorXd& x, double tol = default_tolerances().feasibility);

struct ChebyshevBall {
    Eigen::VectorXd center;
    double radius = 0.0;   // negative when the polytope is empty
};

// Largest inscribed Euclidean ball, by LP. Throws InvalidArgument if unbounded.
ChebyshevBall chebyshev_ball(const HPolytope& poly, const Tolerances& tol = default_tolerances());

enum class RegionStatus { full, degenerate, empty };

const char* to_string(RegionStatus status);

RegionStatus classify(const HPolytope& poly, const Tolerances& tol = default_tolerances());

inline bool is_degenerate(const HPolytope& poly, const Tolerances& tol = default_tolerances()) {
    return classify(poly, tol) != RegionStatus::full;
}

struct Intersection {
    HPolytope polytope;
    RegionStatus status;
};

Intersection intersect_halfspace(const HPolytope& poly, const HalfSpace& hs,
                                 const Tolerances& tol = default_tolerances());

// Tight bounding box from 2M LPs. Throws EmptyPolytope / InvalidArgument (unbounded).
AlignedBox bounding_box(const HPolytope& poly, const Tolerances& tol = default_tolerances());

// Support function max_{x in poly} direction . x.
double support(const HPolytope& poly, const Eigen::VectorXd& direction,
               const Tolerances& tol = default_tolerances());

HPolytope to_hpolytope(const AlignedBox& box);

} // namespace flexagg
