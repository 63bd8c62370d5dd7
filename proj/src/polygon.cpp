#include "flexagg/polygon.hpp"

#include "flexagg/errors.hpp"

#include <algorithm>
#include <cmath>

namespace flexagg {

namespace {

double norm(Point2 p) { return std::hypot(p.x, p.y); }

// Relative collinearity: the turn at b is negligible compared to the edge lengths.
bool is_straight(Point2 a, Point2 b, Point2 c) {
    const Point2 u = b - a, v = c - b;
    return std::abs(cross(u, v)) <= 1e-9 * norm(u) * norm(v) + 1e-300;
}

} // namespace

VPolygon::VPolygon(std::vector<Point2> vertices, double dedup) {
    std::vector<Point2> v;
    v.reserve(vertices.size());
    for (const Point2& p : vertices) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw InvalidArgument("VPolygon: non-finite vertex");
        if (v.empty() || norm(p - v.back()) > dedup) v.push_back(p);
    }
    while (v.size() > 1 && norm(v.front() - v.back()) <= dedup) v.pop_back();

    bool changed = true;
    while (changed && v.size() >= 3) {
        changed = false;
        for (std::size_t i = 0; i < v.size() && v.size() >= 3; ++i) {
            const std::size_t n = v.size();
            if (is_straight(v[(i + n - 1) % n], v[i], v[(i + 1) % n])) {
                v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
        }
    }
    if (v.size() < 3) throw InvalidArgument("VPolygon: fewer than 3 vertices");
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i)
        if (cross(v[i], v[(i + 1) % n], v[(i + 2) % n]) <= 0.0)
            throw InvalidArgument("VPolygon: vertices are not strictly convex counter-clockwise");
    vertices_ = std::move(v);
}

VPolygon convex_hull_2d(std::vector<Point2> points, const Tolerances& tol) {
    std::sort(points.begin(), points.end(),
              [](Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    points.erase(std::unique(points.begin(), points.end(),
                             [&](Point2 a, Point2 b) { return norm(a - b) <= tol.vertex_dedup; }),
                 points.end());
    if (points.size() < 3) throw InvalidArgument("convex_hull_2d: fewer than 3 distinct points");

    std::vector<Point2> hull(2 * points.size());
    std::size_t k = 0;
    auto keeps_left_turn = [&](Point2 o, Point2 a, Point2 b) {
        return cross(o, a, b) > 1e-9 * norm(a - o) * norm(b - o);
    };
    for (const Point2& p : points) {
        while (k >= 2 && !keeps_left_turn(hull[k - 2], hull[k - 1], p)) --k;
        hull[k++] = p;
    }
    for (std::size_t i = points.size() - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && !keeps_left_turn(hull[k - 2], hull[k - 1], points[i])) --k;
        hull[k++] = points[i];
    }
    hull.resize(k - 1);
    if (hull.size() < 3) throw InvalidArgument("convex_hull_2d: points are collinear");
    return VPolygon(std::move(hull), tol.vertex_dedup);
}

VPolygon vertex_enum_2d(const HPolytope& poly, const Tolerances& tol) {
    if (poly.dim() != 2) throw InvalidArgument("vertex_enum_2d: polytope is not 2D");
    switch (classify(poly, tol)) {
    case RegionStatus::empty: throw EmptyPolytope("vertex_enum_2d: empty polytope");
    case RegionStatus::degenerate: throw DegeneratePolytope("vertex_enum_2d: polytope has no interior");
    case RegionStatus::full: break;
    }
    const Eigen::MatrixXd& A = poly.A();
    const Eigen::VectorXd& b = poly.b();
    const Eigen::VectorXd norms = A.rowwise().norm();
    std::vector<Point2> pts;
    for (int i = 0; i < A.rows(); ++i) {
        for (int j = i + 1; j < A.rows(); ++j) {
            const double det = A(i, 0) * A(j, 1) - A(i, 1) * A(j, 0);
            if (std::abs(det) <= 1e-12 * norms(i) * norms(j)) continue;
            const Eigen::Vector2d x((b(i) * A(j, 1) - A(i, 1) * b(j)) / det,
                                    (A(i, 0) * b(j) - b(i) * A(j, 0)) / det);
            const Eigen::VectorXd slack = (A * x - b).cwiseQuotient(norms);
            if (slack.maxCoeff() <= 1e-9 * (1.0 + x.cwiseAbs().maxCoeff())) pts.push_back({x(0), x(1)});
        }
    }
    return convex_hull_2d(std::move(pts), tol);
}

double polygon_area(const VPolygon& poly) {
    const auto& v = poly.vertices();
    double twice = 0.0;
    for (std::size_t i = 0, n = v.size(); i < n; ++i) twice += cross(v[i], v[(i + 1) % n]);
    return 0.5 * twice;
}

VPolygon minkowski_sum_2d_exact(const VPolygon& a, const VPolygon& b) {
    auto bottom = [](const std::vector<Point2>& v) {
        return static_cast<std::size_t>(std::min_element(v.begin(), v.end(), [](Point2 p, Point2 q) {
                                            return p.y < q.y || (p.y == q.y && p.x < q.x);
                                        }) - v.begin());
    };
    const auto& P = a.vertices();
    const auto& Q = b.vertices();
    const std::size_t n = P.size(), m = Q.size();
    const std::size_t p0 = bottom(P), q0 = bottom(Q);

    std::vector<Point2> out;
    out.reserve(n + m);
    std::size_t i = 0, j = 0;
    while (i < n || j < m) {
        out.push_back(P[(p0 + i) % n] + Q[(q0 + j) % m]);
        const Point2 ep = P[(p0 + i + 1) % n] - P[(p0 + i) % n];
        const Point2 eq = Q[(q0 + j + 1) % m] - Q[(q0 + j) % m];
        const double turn = cross(ep, eq);
        if (j == m || (i < n && turn > 0.0)) ++i;
        else if (i == n || turn < 0.0) ++j;
        else {
            ++i;
            ++j;
        }
    }
    // Nearly parallel edges may be merged in the wrong order by rounding, which
    // leaves a slightly reflex vertex; the hull pass removes it.
    return convex_hull_2d(std::move(out));
}

HPolytope to_hpolytope(const VPolygon& poly) {
    const auto& v = poly.vertices();
    const auto n = static_cast<int>(v.size());
    Eigen::MatrixXd A(n, 2);
    Eigen::VectorXd b(n);
    for (int i = 0; i < n; ++i) {
        const Point2 p = v[i], q = v[(i + 1) % n];
        // outward normal of a counter-clockwise edge
        A(i, 0) = q.y - p.y;
        A(i, 1) = p.x - q.x;
        b(i) = A(i, 0) * p.x + A(i, 1) * p.y;
    }
    return HPolytope::unchecked(std::move(A), std::move(b));
}

bool contains(const VPolygon& poly, Point2 p, double tol) {
    const auto& v = poly.vertices();
    for (std::size_t i = 0, n = v.size(); i < n; ++i) {
        const Point2 e = v[(i + 1) % n] - v[i];
        if (cross(e, p - v[i]) < -tol * norm(e)) return false;
    }
    return true;
}

} // namespace flexagg
