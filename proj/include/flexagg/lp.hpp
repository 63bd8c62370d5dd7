#pragma once

#include "flexagg/tolerances.hpp"

#include <Eigen/Dense>

namespace flexagg {

enum class LpStatus { optimal, infeasible, unbounded };

const char* to_string(LpStatus status);

// maximize objective . x  subject to  A x <= b
// Variables are free unless `nonnegative` is set.
struct LpProblem {
    Eigen::VectorXd objective;
    Eigen::MatrixXd A;
    Eigen::VectorXd b;
    bool nonnegative = false;
};

struct LpSolution {
    LpStatus status = LpStatus::infeasible;
    Eigen::VectorXd x;   // valid only when status == optimal
    double value = 0.0;
    int iterations = 0;
};

// Dense two-phase tableau simplex. Dantzig pricing, with Bland's rule taking
// over after a run of degenerate pivots so the method cannot cycle.
// Throws NumericalFailure when the iteration cap is hit or the returned point
// violates a constraint by more than tol.feasibility.
LpSolution lp_solve(const LpProblem& problem, const Tolerances& tol = default_tolerances());

} // namespace flexagg
