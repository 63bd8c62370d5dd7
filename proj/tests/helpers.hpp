#pragma once

#include "flexagg/polygon.hpp"
#include "flexagg/polytope.hpp"

#include "oracles.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <vector>

namespace testutil {

inline flexagg::HPolytope unit_box(int dim) {
    Eigen::MatrixXd A(2 * dim, dim);
    Eigen::VectorXd b(2 * dim);
    A.setZero();
    for (int k = 0; k < dim; ++k) {
        A(2 * k, k) = -1.0, b(2 * k) = 0.0;
        A(2 * k + 1, k) = 1.0, b(2 * k + 1) = 1.0;
    }
    return flexagg::HPolytope(A, b);
}

inline flexagg::HPolytope triangle() {
    Eigen::MatrixXd A(3, 2);
    A << -1, 0, 0, -1, 1, 1;
    Eigen::VectorXd b(3);
    b << 0, 0, 1;
    return flexagg::HPolytope(A, b);
}

inline flexagg::HPolytope diamond() {
    Eigen::MatrixXd A(4, 2);
    A << 1, 1, -1, 1, -1, -1, 1, -1;
    return flexagg::HPolytope(A, Eigen::VectorXd::Ones(4));
}

inline Eigen::VectorXd vec(std::initializer_list<double> v) {
    Eigen::VectorXd x(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double d : v) x(i++) = d;
    return x;
}

// Random convex polygon: hull of points on a jittered ellipse.
inline flexagg::VPolygon random_polygon(std::mt19937_64& gen, int max_vertices = 10) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const int n = 3 + static_cast<int>(u(gen) * (max_vertices - 2));
    const double rx = 0.3 + 2.0 * u(gen), ry = 0.3 + 2.0 * u(gen);
    const double cx = 4.0 * u(gen) - 2.0, cy = 4.0 * u(gen) - 2.0;
    std::vector<double> angles(static_cast<std::size_t>(n));
    for (double& a : angles) a = 2.0 * M_PI * u(gen);
    std::sort(angles.begin(), angles.end());
    std::vector<flexagg::Point2> pts;
    for (double a : angles) pts.push_back({cx + rx * std::cos(a), cy + ry * std::sin(a)});
    // keep the hull well away from degenerate slivers
    pts.push_back({cx + rx, cy}), pts.push_back({cx, cy + ry}), pts.push_back({cx - rx, cy}), pts.push_back({cx, cy - ry});
    return flexagg::convex_hull_2d(pts);
}

inline std::vector<oracle::Pt> to_pts(const flexagg::VPolygon& p) {
    std::vector<oracle::Pt> out;
    for (const auto& v : p.vertices()) out.push_back({v.x, v.y});
    return out;
}

} // namespace testutil
