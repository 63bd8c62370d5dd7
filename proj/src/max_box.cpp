#include "flexagg/max_box.hpp"

#include "flexagg/errors.hpp"
#include "flexagg/lp.hpp"
#include "flexagg/polygon.hpp"
#include "flexagg/volume.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace flexagg {

PrototypeRatios PrototypeRatios::from_box(const AlignedBox& box) {
    const Eigen::VectorXd d = box.edges();
    PrototypeRatios out;
    for (int k = 1; k < box.dim(); ++k) {
        if (!(d(k) > 0.0)) throw DegeneratePolytope("PrototypeRatios: zero-width prototype edge");
        out.r.push_back(d(0) / d(k));
    }
    return out;
}

Eigen::VectorXd PrototypeRatios::weights() const {
    Eigen::VectorXd w(dim());
    w(0) = 1.0;
    for (std::size_t k = 0; k < r.size(); ++k) w(static_cast<Eigen::Index>(k) + 1) = 1.0 / r[k];
    return w;
}

namespace {

// Box with center c and half-widths h lies in {Ax <= b} iff A c + |A| h <= b.
// The variables z are (c, h) in free mode and (c, s) with h = s w in ratio mode;
// D z <= b then collects every constraint, and the objective is sum log of the
// last `n_log` variables (the h's, or the single s).
struct BarrierProblem {
    Eigen::MatrixXd D;
    Eigen::VectorXd b;
    int n_log = 0;
};

double barrier_value(const BarrierProblem& p, const Eigen::VectorXd& z, double t) {
    const Eigen::VectorXd g = p.b - p.D * z;
    const Eigen::VectorXd l = z.tail(p.n_log);
    if ((g.array() <= 0.0).any() || (l.array() <= 0.0).any()) return std::numeric_limits<double>::infinity();
    return -t * l.array().log().sum() - g.array().log().sum();
}

void barrier_solve(const BarrierProblem& p, Eigen::VectorXd& z, const Tolerances& tol) {
    const double constraints = static_cast<double>(p.D.rows());
    double t = 1.0;
    int newton = 0;
    for (;;) {
        for (;;) {
            const Eigen::VectorXd g = p.b - p.D * z;
            const Eigen::VectorXd ig = g.cwiseInverse();
            const Eigen::VectorXd il = z.tail(p.n_log).cwiseInverse();

            Eigen::VectorXd grad = p.D.transpose() * ig;
            grad.tail(p.n_log) -= t * il;
            Eigen::MatrixXd H = p.D.transpose() * ig.cwiseAbs2().asDiagonal() * p.D;
            H.diagonal().tail(p.n_log) += t * il.cwiseAbs2();

            const Eigen::LDLT<Eigen::MatrixXd> ldlt(H);
            if (ldlt.info() != Eigen::Success) throw NumericalFailure("max_box: singular Newton system");
            const Eigen::VectorXd step = -ldlt.solve(grad);
            const double decrement = -grad.dot(step);
            if (!std::isfinite(decrement)) throw NumericalFailure("max_box: non-finite Newton step");
            if (decrement < 1e-9) break;

            const double f0 = barrier_value(p, z, t);
            double alpha = 1.0;
            Eigen::VectorXd next = z + step;
            double f1 = barrier_value(p, next, t);
            while (f1 > f0 - 0.25 * alpha * decrement) {
                alpha *= 0.5;
                if (alpha < 1e-14) break;
                next = z + alpha * step;
                f1 = barrier_value(p, next, t);
            }
            if (alpha < 1e-14 || !(f1 < f0)) break;   // no progress at working precision
            z = next;
            if (++newton > tol.barrier_max_newton) throw NumericalFailure("max_box: Newton iteration cap");
        }
        if (constraints / t < tol.barrier_gap) break;
        t *= 20.0;
    }
}

// Row-normalized copy; the barrier minimizer does not depend on row scaling.
HPolytope normalized(const HPolytope& poly) {
    const Eigen::VectorXd norms = poly.A().rowwise().norm();
    return HPolytope::unchecked(norms.cwiseInverse().asDiagonal() * poly.A(),
                                poly.b().cwiseQuotient(norms));
}

BoxFit point_box(const Eigen::VectorXd& c) { return {AlignedBox(c, c), true}; }

} // namespace

BoxFit max_box(const HPolytope& poly, const std::optional<PrototypeRatios>& ratios, const Tolerances& tol) {
    const int m = poly.dim();
    if (ratios && ratios->dim() != m) throw InvalidArgument("max_box: ratio count does not match dimension");

    const HPolytope q = normalized(poly);
    const ChebyshevBall ball = chebyshev_ball(q, tol);
    if (ball.radius < -tol.feasibility) throw EmptyPolytope("max_box: empty polytope");
    if (ball.radius < tol.degeneracy) return point_box(ball.center);

    const Eigen::MatrixXd absA = q.A().cwiseAbs();
    const double root_m = std::sqrt(static_cast<double>(m));
    BarrierProblem p;
    p.b = q.b();
    Eigen::VectorXd z;
    Eigen::VectorXd w;
    if (ratios) {
        w = ratios->weights();
        p.D.resize(q.rows(), m + 1);
        p.D << q.A(), absA * w;
        p.n_log = 1;
        z.resize(m + 1);
        z << ball.center, 0.5 * ball.radius / (root_m * w.maxCoeff());
    } else {
        p.D.resize(q.rows(), 2 * m);
        p.D << q.A(), absA;
        p.n_log = m;
        z.resize(2 * m);
        z << ball.center, Eigen::VectorXd::Constant(m, 0.5 * ball.radius / root_m);
    }
    barrier_solve(p, z, tol);

    const Eigen::VectorXd c = z.head(m);
    const Eigen::VectorXd h = ratios ? Eigen::VectorXd(z(m) * w) : Eigen::VectorXd(z.tail(m));
    return {AlignedBox(c - h, c + h), false};
}

BoxFit max_box_ratio_lp(const HPolytope& poly, const PrototypeRatios& ratios, const Tolerances& tol) {
    const int m = poly.dim();
    if (ratios.dim() != m) throw InvalidArgument("max_box_ratio_lp: ratio count does not match dimension");
    const Eigen::VectorXd w = ratios.weights();
    LpProblem lp;
    lp.A.resize(poly.rows() + 1, m + 1);
    lp.A.topLeftCorner(poly.rows(), m) = poly.A();
    lp.A.topRightCorner(poly.rows(), 1) = poly.A().cwiseAbs() * w;
    lp.A.bottomRows(1).setZero();
    lp.A(poly.rows(), m) = -1.0;
    lp.b.resize(poly.rows() + 1);
    lp.b << poly.b(), 0.0;
    lp.objective = Eigen::VectorXd::Zero(m + 1);
    lp.objective(m) = 1.0;
    const LpSolution sol = lp_solve(lp, tol);
    if (sol.status == LpStatus::infeasible) throw EmptyPolytope("max_box_ratio_lp: empty polytope");
    if (sol.status == LpStatus::unbounded) throw InvalidArgument("max_box_ratio_lp: unbounded polytope");
    const Eigen::VectorXd c = sol.x.head(m);
    const Eigen::VectorXd h = sol.x(m) * w;
    if (sol.x(m) * 2.0 < tol.degeneracy) return point_box(c);
    return {AlignedBox(c - h, c + h), false};
}

PrototypeSelector parse_prototype_selector(const std::string& name) {
    if (name == "first") return PrototypeSelector::first;
    if (name == "index") return PrototypeSelector::index;
    if (name == "largest-area") return PrototypeSelector::largest_area;
    if (name == "median-ratio") return PrototypeSelector::median_ratio;
    throw InvalidArgument("unknown prototype selector '" + name + "'");
}

const char* to_string(PrototypeSelector selector) {
    switch (selector) {
    case PrototypeSelector::first: return "first";
    case PrototypeSelector::index: return "index";
    case PrototypeSelector::largest_area: return "largest-area";
    case PrototypeSelector::median_ratio: return "median-ratio";
    }
    return "?";
}

namespace {

PrototypeRatios ratios_of(const HPolytope& poly, const Tolerances& tol) {
    const BoxFit fit = max_box(poly, std::nullopt, tol);
    if (fit.degenerate) throw DegeneratePolytope("representative_prototype: degenerate representative");
    return PrototypeRatios::from_box(fit.box);
}

double size_of(const HPolytope& poly, const Tolerances& tol) {
    if (poly.dim() == 2) return polygon_area(vertex_enum_2d(poly, tol));
    if (poly.dim() == 1) return bounding_box(poly, tol).volume();
    return mc_volume(poly, 100000, 0);
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

} // namespace

PrototypeRatios representative_prototype(std::span<const HPolytope> polys, PrototypeSelector selector,
                                         std::size_t selector_index, const Tolerances& tol) {
    if (polys.empty()) throw InvalidArgument("representative_prototype: empty list");
    for (const auto& p : polys)
        if (p.dim() != polys.front().dim()) throw InvalidArgument("representative_prototype: mixed dimensions");

    switch (selector) {
    case PrototypeSelector::first:
        return ratios_of(polys.front(), tol);
    case PrototypeSelector::index:
        if (selector_index >= polys.size()) throw InvalidArgument("representative_prototype: index out of range");
        return ratios_of(polys[selector_index], tol);
    case PrototypeSelector::largest_area: {
        std::size_t best = 0;
        double best_size = -1.0;
        for (std::size_t i = 0; i < polys.size(); ++i) {
            const double s = size_of(polys[i], tol);
            if (s > best_size) best_size = s, best = i;
        }
        return ratios_of(polys[best], tol);
    }
    case PrototypeSelector::median_ratio: {
        const int m = polys.front().dim();
        std::vector<std::vector<double>> cols(static_cast<std::size_t>(std::max(m - 1, 0)));
        for (const auto& p : polys) {
            const BoxFit fit = max_box(p, std::nullopt, tol);
            if (fit.degenerate) continue;
            const PrototypeRatios r = PrototypeRatios::from_box(fit.box);
            for (std::size_t k = 0; k < r.r.size(); ++k) cols[k].push_back(r.r[k]);
        }
        PrototypeRatios out;
        for (auto& col : cols) {
            if (col.empty()) throw DegeneratePolytope("representative_prototype: every polytope is degenerate");
            out.r.push_back(median(col));
        }
        return out;
    }
    }
    throw InvalidArgument("representative_prototype: bad selector");
}

} // namespace flexagg
