#pragma once

#include "flexagg/polytope.hpp"
#include "flexagg/tolerances.hpp"

#include <span>
#include <vector>

namespace flexagg {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
    friend bool operator==(Point2 a, Point2 b) = default;
};

inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
// > 0 when o -> a -> b turns counter-clockwise
inline double cross(Point2 o, Point2 a, Point2 b) { return cross(a - o, b - o); }

// Strictly convex polygon, vertices counter-clockwise.
class VPolygon {
public:
    // Drops duplicate consecutive vertices (within `dedup`) and collinear middle
    // vertices, then requires >= 3 vertices turning strictly counter-clockwise.
    // Throws InvalidArgument otherwise.
    explicit VPolygon(std::vector<Point2> vertices, double dedup = default_tolerances().vertex_dedup);

    const std::vector<Point2>& vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    const Point2& operator[](std::size_t i) const { return vertices_[i]; }

private:
    std::vector<Point2> vertices_;
};

// Vertices of a bounded full-dimensional 2D polytope, counter-clockwise.
// Pairwise row intersections filtered by feasibility, then hulled.
// Throws EmptyPolytope / DegeneratePolytope / InvalidArgument (dim != 2).
VPolygon vertex_enum_2d(const HPolytope& poly, const Tolerances& tol = default_tolerances());

// Monotone-chain hull, O(n log n); ties broken lexicographically by (x, y).
// Throws InvalidArgument when fewer than three non-collinear points remain.
VPolygon convex_hull_2d(std::vector<Point2> points, const Tolerances& tol = default_tolerances());

// Shoelace area.
double polygon_area(const VPolygon& poly);

// Exact Minkowski sum by merging the two counter-clockwise edge sequences by angle.
VPolygon minkowski_sum_2d_exact(const VPolygon& a, const VPolygon& b);

// One half-space per edge.
HPolytope to_hpolytope(const VPolygon& poly);

bool contains(const VPolygon& poly, Point2 p, double tol = default_tolerances().feasibility);

} // namespace flexagg
