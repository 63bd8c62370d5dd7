#include "flexagg/lp.hpp"

#include "flexagg/errors.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace flexagg {

const char* to_string(LpStatus status) {
    switch (status) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
    }
    return "?";
}

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

enum class PhaseResult { optimal, unbounded };

constexpr int kDegenerateRunBeforeBland = 40;

// Tableau in canonical form w.r.t. `basis`; the last column holds the rhs.
struct Tableau {
    RowMatrix T;
    std::vector<int> basis;
    int columns = 0; // excluding rhs

    double rhs(int row) const { return T(row, columns); }

    void pivot(int row, int col, Eigen::VectorXd& reduced) {
        T.row(row) /= T(row, col);
        for (int i = 0; i < T.rows(); ++i) {
            if (i == row) continue;
            const double f = T(i, col);
            if (f != 0.0) T.row(i) -= f * T.row(row);
        }
        const double f = reduced(col);
        if (f != 0.0) reduced -= f * T.row(row).head(columns).transpose();
        basis[row] = col;
    }
};

// Maximizes cost . y over the tableau, only letting columns with allowed[j] enter.
PhaseResult run_simplex(Tableau& tab, const Eigen::VectorXd& cost, const std::vector<char>& allowed,
                        const Tolerances& tol, int& iterations) {
    const int m = static_cast<int>(tab.T.rows());
    Eigen::VectorXd reduced = cost;
    for (int i = 0; i < m; ++i) {
        const double cb = cost(tab.basis[i]);
        if (cb != 0.0) reduced -= cb * tab.T.row(i).head(tab.columns).transpose();
    }

    const double price_eps = 1e-10;
    int degenerate_run = 0;
    while (true) {
        if (++iterations > tol.lp_max_iterations)
            throw NumericalFailure("simplex iteration cap (" + std::to_string(tol.lp_max_iterations) +
                                   ") reached");
        const bool bland = degenerate_run >= kDegenerateRunBeforeBland;

        int enter = -1;
        double best = price_eps;
        for (int j = 0; j < tab.columns; ++j) {
            if (!allowed[j] || reduced(j) <= price_eps) continue;
            if (bland) {
                enter = j;
                break;
            }
            if (reduced(j) > best) {
                best = reduced(j);
                enter = j;
            }
        }
        if (enter < 0) return PhaseResult::optimal;

        int leave = -1;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (int i = 0; i < m; ++i) {
            const double a = tab.T(i, enter);
            if (a <= tol.lp_pivot) continue;
            const double ratio = std::max(0.0, tab.rhs(i)) / a;
            const double slack = 1e-12 * (1.0 + std::abs(best_ratio));
            if (leave < 0 || ratio < best_ratio - slack) {
                leave = i;
                best_ratio = ratio;
            } else if (ratio <= best_ratio + slack) {
                // tie: Bland picks the smallest basic index, otherwise prefer the larger pivot
                const bool take = bland ? tab.basis[i] < tab.basis[leave] : a > tab.T(leave, enter);
                if (take) {
                    leave = i;
                    best_ratio = std::min(best_ratio, ratio);
                }
            }
        }
        if (leave < 0) return PhaseResult::unbounded;

        degenerate_run = (best_ratio <= 1e-12) ? degenerate_run + 1 : 0;
        tab.pivot(leave, enter, reduced);
    }
}

} // namespace

LpSolution lp_solve(const LpProblem& problem, const Tolerances& tol) {
    const Eigen::MatrixXd& A = problem.A;
    const Eigen::VectorXd& b = problem.b;
    const int n = static_cast<int>(A.cols());
    if (problem.objective.size() != n || b.size() != A.rows())
        throw InvalidArgument("lp_solve: inconsistent problem dimensions");
    if (!A.allFinite() || !b.allFinite() || !problem.objective.allFinite())
        throw InvalidArgument("lp_solve: non-finite coefficients");

    LpSolution sol;

    // Row scaling; all-zero rows are either trivially satisfied or prove infeasibility.
    std::vector<int> rows;
    std::vector<double> scale;
    for (int i = 0; i < A.rows(); ++i) {
        const double s = A.row(i).cwiseAbs().maxCoeff();
        if (s == 0.0) {
            if (b(i) < -tol.feasibility) return sol; // 0 <= negative
            continue;
        }
        rows.push_back(i);
        scale.push_back(s);
    }
    const int m = static_cast<int>(rows.size());
    const int ns = problem.nonnegative ? n : 2 * n;

    std::vector<int> needs_artificial;
    for (int r = 0; r < m; ++r)
        if (b(rows[r]) / scale[r] < 0.0) needs_artificial.push_back(r);
    const int na = static_cast<int>(needs_artificial.size());

    Tableau tab;
    tab.columns = ns + m + na;
    tab.T = RowMatrix::Zero(m, tab.columns + 1);
    tab.basis.assign(m, -1);
    for (int r = 0; r < m; ++r) {
        const int i = rows[r];
        const double inv = 1.0 / scale[r];
        for (int j = 0; j < n; ++j) {
            const double a = A(i, j) * inv;
            tab.T(r, j) = a;
            if (!problem.nonnegative) tab.T(r, n + j) = -a;
        }
        tab.T(r, ns + r) = 1.0;
        tab.T(r, tab.columns) = b(i) * inv;
    }
    for (int k = 0; k < na; ++k) {
        const int r = needs_artificial[k];
        tab.T.row(r) *= -1.0;
        tab.T(r, ns + m + k) = 1.0;
        tab.basis[r] = ns + m + k;
    }
    for (int r = 0; r < m; ++r)
        if (tab.basis[r] < 0) tab.basis[r] = ns + r;

    std::vector<char> allowed(tab.columns, 1);
    if (na > 0) {
        Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(tab.columns);
        phase1.tail(na).setConstant(-1.0);
        run_simplex(tab, phase1, allowed, tol, sol.iterations);
        double infeasibility = 0.0;
        double rhs_scale = 1.0;
        for (int r = 0; r < m; ++r) {
            rhs_scale = std::max(rhs_scale, std::abs(tab.rhs(r)));
            if (tab.basis[r] >= ns + m) infeasibility += tab.rhs(r);
        }
        if (infeasibility > 1e-9 * rhs_scale) return sol;

        // Drive remaining (zero-level) artificials out of the basis where possible.
        Eigen::VectorXd dummy = Eigen::VectorXd::Zero(tab.columns);
        for (int r = 0; r < m; ++r) {
            if (tab.basis[r] < ns + m) continue;
            int col = -1;
            double best = 1e-9;
            for (int j = 0; j < ns + m; ++j) {
                if (std::abs(tab.T(r, j)) > best) {
                    best = std::abs(tab.T(r, j));
                    col = j;
                }
            }
            if (col >= 0) tab.pivot(r, col, dummy);
        }
        for (int k = 0; k < na; ++k) allowed[ns + m + k] = 0;
    }

    Eigen::VectorXd cost = Eigen::VectorXd::Zero(tab.columns);
    for (int j = 0; j < n; ++j) {
        cost(j) = problem.objective(j);
        if (!problem.nonnegative) cost(n + j) = -problem.objective(j);
    }
    if (run_simplex(tab, cost, allowed, tol, sol.iterations) == PhaseResult::unbounded) {
        sol.status = LpStatus::unbounded;
        return sol;
    }

    Eigen::VectorXd y = Eigen::VectorXd::Zero(tab.columns);
    for (int r = 0; r < m; ++r) y(tab.basis[r]) = std::max(0.0, tab.rhs(r));
    sol.x = problem.nonnegative ? Eigen::VectorXd(y.head(n)) : Eigen::VectorXd(y.head(n) - y.segment(n, n));
    sol.value = problem.objective.dot(sol.x);
    sol.status = LpStatus::optimal;

    for (int r = 0; r < m; ++r) {
        const int i = rows[r];
        const double violation = (A.row(i).dot(sol.x) - b(i)) / scale[r];
        if (violation > tol.feasibility * std::max(1.0, std::abs(b(i)) / scale[r]))
            throw NumericalFailure("lp_solve: optimal point violates row " + std::to_string(i) + " by " +
                                   std::to_string(violation));
    }
    return sol;
}

} // namespace flexagg
