#include "doctest.h"

#include "flexagg/box.hpp"
#include "flexagg/errors.hpp"
#include "flexagg/lp.hpp"
#include "flexagg/polygon.hpp"
#include "flexagg/polytope.hpp"
#include "flexagg/tolerances.hpp"
#include "flexagg/volume.hpp"

#include "helpers.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace flexagg;
using testutil::vec;

TEST_SUITE("geometry") {

TEST_CASE("lp_solve small problems") {
    LpProblem p;
    p.objective = vec({1.0});
    p.A = Eigen::MatrixXd(2, 1);
    p.A << 1, -1;
    p.b = vec({1.0, 0.0});
    LpSolution s = lp_solve(p);
    REQUIRE(s.status == LpStatus::optimal);
    CHECK(s.x(0) == doctest::Approx(1.0));
    CHECK(s.value == doctest::Approx(1.0));

    LpProblem q;
    q.objective = vec({1.0, 1.0});
    q.A = Eigen::MatrixXd(1, 2);
    q.A << 1, 1;
    q.b = vec({1.0});
    q.nonnegative = true;
    s = lp_solve(q);
    REQUIRE(s.status == LpStatus::optimal);
    CHECK(s.value == doctest::Approx(1.0));

    LpProblem u;
    u.objective = vec({1.0});
    u.A = Eigen::MatrixXd(1, 1);
    u.A << -1;
    u.b = vec({0.0});
    CHECK(lp_solve(u).status == LpStatus::unbounded);

    LpProblem inf;
    inf.objective = vec({1.0});
    inf.A = Eigen::MatrixXd(2, 1);
    inf.A << 1, -1;
    inf.b = vec({-1.0, 0.0});
    CHECK(lp_solve(inf).status == LpStatus::infeasible);
}

TEST_CASE("lp_solve optimum beats random feasible points") {
    std::mt19937_64 gen(11);
    std::normal_distribution<double> n(0.0, 1.0);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        const int m = 12;
        LpProblem p;
        p.A = Eigen::MatrixXd(m + 6, 3);
        p.b = Eigen::VectorXd(m + 6);
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < 3; ++j) p.A(i, j) = n(gen);
            p.b(i) = 1.0 + std::abs(n(gen));
        }
        for (int j = 0; j < 3; ++j) {
            p.A.row(m + 2 * j).setZero();
            p.A.row(m + 2 * j + 1).setZero();
            p.A(m + 2 * j, j) = 1.0, p.b(m + 2 * j) = 3.0;
            p.A(m + 2 * j + 1, j) = -1.0, p.b(m + 2 * j + 1) = 3.0;
        }
        p.objective = vec({n(gen), n(gen), n(gen)});
        const LpSolution s = lp_solve(p);
        REQUIRE(s.status == LpStatus::optimal);
        CHECK(((p.A * s.x - p.b).array() <= 1e-7).all());
        int feasible = 0;
        while (feasible < 100) {
            const Eigen::VectorXd x = vec({3 * u(gen), 3 * u(gen), 3 * u(gen)});
            if (((p.A * x - p.b).array() > 0).any()) continue;
            ++feasible;
            CHECK(p.objective.dot(x) <= s.value + 1e-9);
        }
    }
}

TEST_CASE("contains on the unit square") {
    const HPolytope sq = testutil::unit_box(2);
    CHECK(contains(sq, vec({0.5, 0.5})));
    CHECK_FALSE(contains(sq, vec({1.5, 0.0})));
    CHECK(contains(sq, vec({1.0 + 1e-10, 0.0}), 1e-9));
    CHECK_THROWS_AS(contains(sq, vec({0.5})), InvalidArgument);
}

TEST_CASE("HPolytope construction errors") {
    Eigen::MatrixXd A(1, 1);
    A << 1;
    CHECK_THROWS_AS(HPolytope(A, vec({1.0})), InvalidArgument);
    Eigen::MatrixXd B(2, 1);
    B << 1, -1;
    CHECK_THROWS_AS(HPolytope(B, vec({-1.0, 0.0})), EmptyPolytope);
    Eigen::MatrixXd Z(2, 1);
    Z << 0, 1;
    CHECK_THROWS_AS(HPolytope(Z, vec({1.0, 1.0})), InvalidArgument);
}

TEST_CASE("vertex_enum_2d") {
    VPolygon sq = vertex_enum_2d(testutil::unit_box(2));
    REQUIRE(sq.size() == 4);
    CHECK(polygon_area(sq) == doctest::Approx(1.0));

    VPolygon tri = vertex_enum_2d(testutil::triangle());
    REQUIRE(tri.size() == 3);
    CHECK(polygon_area(tri) == doctest::Approx(0.5));

    VPolygon dia = vertex_enum_2d(testutil::diamond());
    REQUIRE(dia.size() == 4);
    for (const Point2& v : dia.vertices()) CHECK(std::abs(v.x) + std::abs(v.y) == doctest::Approx(1.0));

    // redundant row is ignored
    HPolytope red = testutil::unit_box(2).with_row({vec({1.0, 1.0}), 5.0});
    CHECK(vertex_enum_2d(red).size() == 4);

    Eigen::MatrixXd A(4, 2);
    A << 1, 0, -1, 0, 0, 1, 0, -1;
    CHECK_THROWS_AS(vertex_enum_2d(HPolytope(A, vec({0.0, 0.0, 1.0, 0.0}))), DegeneratePolytope);
}

TEST_CASE("vertex_enum_2d round trip through edge half-spaces") {
    std::mt19937_64 gen(5);
    for (int i = 0; i < 50; ++i) {
        const VPolygon p = testutil::random_polygon(gen);
        const HPolytope h = to_hpolytope(p);
        for (const Point2& v : p.vertices()) CHECK(contains(h, vec({v.x, v.y}), 1e-9));
        const VPolygon back = vertex_enum_2d(h);
        CHECK(back.size() == p.size());
        CHECK(polygon_area(back) == doctest::Approx(polygon_area(p)).epsilon(1e-9));
    }
}

TEST_CASE("convex_hull_2d") {
    VPolygon a = convex_hull_2d({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}});
    CHECK(a.size() == 4);
    VPolygon b = convex_hull_2d({{0, 0}, {2, 0}, {1, 1}, {0, 2}, {2, 2}});
    CHECK(b.size() == 4);
    CHECK(polygon_area(b) == doctest::Approx(4.0));
    // two unit boxes offset by (0.5, 0.5): the shared corners fall inside, leaving 6
    std::vector<Point2> two{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}, {1.5, 0.5}, {1.5, 1.5}, {0.5, 1.5}};
    VPolygon c = convex_hull_2d(two);
    CHECK(c.size() == 6);
    CHECK(polygon_area(c) == doctest::Approx(2.0));
    CHECK_THROWS_AS(convex_hull_2d({{0, 0}, {1, 1}, {2, 2}}), InvalidArgument);
}

TEST_CASE("convex_hull_2d matches gift wrapping") {
    std::mt19937_64 gen(8);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Point2> pts;
        std::vector<oracle::Pt> raw;
        for (int i = 0; i < 30; ++i) {
            const double x = u(gen), y = u(gen);
            pts.push_back({x, y});
            raw.push_back({x, y});
        }
        const VPolygon h = convex_hull_2d(pts);
        const auto ref = oracle::jarvis_hull(raw);
        CHECK(h.size() == ref.size());
        CHECK(polygon_area(h) == doctest::Approx(oracle::shoelace(ref)).epsilon(1e-12));
    }
}

TEST_CASE("polygon_area") {
    CHECK(polygon_area(VPolygon({{0, 0}, {1, 0}, {0, 1}})) == doctest::Approx(0.5));
    std::vector<Point2> hex;
    for (int j = 0; j < 6; ++j) hex.push_back({std::cos(j * M_PI / 3), std::sin(j * M_PI / 3)});
    CHECK(polygon_area(VPolygon(hex)) == doctest::Approx(0.5 * 6 * std::sin(2 * M_PI / 6)));
    CHECK(polygon_area(VPolygon(hex)) == doctest::Approx(2.598).epsilon(1e-3));
}

TEST_CASE("VPolygon rejects bad input") {
    CHECK_THROWS_AS(VPolygon({{0, 0}, {1, 0}}), InvalidArgument);
    CHECK_THROWS_AS(VPolygon({{0, 0}, {0, 1}, {1, 0}}), InvalidArgument);   // clockwise
    VPolygon p({{0, 0}, {0.5, 0}, {1, 0}, {1, 1}, {1, 1}, {0, 1}});
    CHECK(p.size() == 4);
}

TEST_CASE("minkowski_sum_2d_exact examples") {
    const VPolygon sq({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    const VPolygon s2 = minkowski_sum_2d_exact(sq, sq);
    CHECK(s2.size() == 4);
    CHECK(polygon_area(s2) == doctest::Approx(4.0));

    const VPolygon dia({{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
    const VPolygon oct = minkowski_sum_2d_exact(sq, dia);
    CHECK(oct.size() == 8);
    CHECK(polygon_area(oct) == doctest::Approx(7.0));
    CHECK(polygon_area(oct) == doctest::Approx(oracle::shoelace(oracle::brute_msum(testutil::to_pts(sq), testutil::to_pts(dia)))));

    auto hexagon = [](double S) {
        std::vector<Point2> v;
        for (int j = 0; j < 6; ++j) v.push_back({S * std::cos(j * M_PI / 3), S * std::sin(j * M_PI / 3)});
        return VPolygon(v);
    };
    const VPolygon h3 = minkowski_sum_2d_exact(hexagon(1), hexagon(2));
    REQUIRE(h3.size() == 6);
    const VPolygon expected = hexagon(3);
    for (const Point2& v : expected.vertices()) {
        bool found = false;
        for (const Point2& w : h3.vertices())
            if (std::abs(v.x - w.x) < 1e-9 && std::abs(v.y - w.y) < 1e-9) found = true;
        CHECK(found);
    }
}

TEST_CASE("minkowski_sum_2d_exact equals hull of pairwise sums") {
    std::mt19937_64 gen(21);
    for (int trial = 0; trial < 200; ++trial) {
        const VPolygon a = testutil::random_polygon(gen), b = testutil::random_polygon(gen);
        const VPolygon s = minkowski_sum_2d_exact(a, b);
        const auto ref = oracle::brute_msum(testutil::to_pts(a), testutil::to_pts(b));
        CHECK(s.size() <= a.size() + b.size());
        REQUIRE(s.size() == ref.size());
        // same vertex set: every reference vertex has a match within 1e-8
        for (const auto& r : ref) {
            bool found = false;
            for (const Point2& v : s.vertices())
                if (std::abs(v.x - r[0]) < 1e-8 && std::abs(v.y - r[1]) < 1e-8) found = true;
            CHECK(found);
        }
    }
}

TEST_CASE("minkowski sum commutes and associates") {
    std::mt19937_64 gen(34);
    for (int trial = 0; trial < 100; ++trial) {
        const VPolygon a = testutil::random_polygon(gen), b = testutil::random_polygon(gen),
                       c = testutil::random_polygon(gen);
        const double ab = polygon_area(minkowski_sum_2d_exact(a, b));
        const double ba = polygon_area(minkowski_sum_2d_exact(b, a));
        CHECK(std::abs(ab - ba) < 1e-9);
        const double l = polygon_area(minkowski_sum_2d_exact(minkowski_sum_2d_exact(a, b), c));
        const double r = polygon_area(minkowski_sum_2d_exact(a, minkowski_sum_2d_exact(b, c)));
        CHECK(std::abs(l - r) < 1e-9);
    }
}

TEST_CASE("mc_volume") {
    CHECK(mc_volume(testutil::unit_box(3), 1000, 7) == 1.0);
    CHECK(mc_volume(testutil::unit_box(3), 1000, 12345) == 1.0);

    Eigen::MatrixXd A(4, 3);
    A << -1, 0, 0, 0, -1, 0, 0, 0, -1, 1, 1, 1;
    const HPolytope simplex(A, vec({0, 0, 0, 1}));
    CHECK(std::abs(mc_volume(simplex, 1000000, 3) - 1.0 / 6.0) < 0.002);

    CHECK_THROWS_AS(mc_volume(simplex, 0, 1), InvalidArgument);
}

TEST_CASE("mc_volume agrees with polygon_area within three sigma") {
    std::mt19937_64 gen(55);
    for (int trial = 0; trial < 20; ++trial) {
        const VPolygon p = testutil::random_polygon(gen);
        const HPolytope h = to_hpolytope(p);
        const std::size_t n = 100000;
        const double est = mc_volume(h, n, static_cast<std::uint64_t>(trial));
        const double bvol = bounding_box(h).volume();
        const double q = polygon_area(p) / bvol;
        const double sigma = bvol * std::sqrt(q * (1 - q) / static_cast<double>(n));
        CHECK(std::abs(est - polygon_area(p)) <= 3.0 * sigma + 1e-12);
    }
}

TEST_CASE("mc_volume does not depend on the thread path") {
    const HPolytope tri = testutil::triangle();
    CHECK(mc_volume(tri, 50000, 9) == mc_volume_serial(tri, 50000, 9));
}

TEST_CASE("intersect_halfspace") {
    const HPolytope sq = testutil::unit_box(2);
    Intersection half = intersect_halfspace(sq, {vec({1.0, 0.0}), 0.5});
    CHECK(half.status == RegionStatus::full);
    const AlignedBox bb = bounding_box(half.polytope);
    CHECK(bb.hi()(0) == doctest::Approx(0.5));
    CHECK(bb.hi()(1) == doctest::Approx(1.0));
    CHECK(intersect_halfspace(sq, {vec({1.0, 0.0}), -1.0}).status == RegionStatus::empty);
    CHECK(intersect_halfspace(sq, {vec({1.0, 0.0}), 0.0}).status == RegionStatus::degenerate);
}

TEST_CASE("chebyshev ball and support") {
    const ChebyshevBall ball = chebyshev_ball(testutil::unit_box(2));
    CHECK(ball.radius == doctest::Approx(0.5));
    CHECK(ball.center(0) == doctest::Approx(0.5));
    CHECK(support(testutil::triangle(), vec({1.0, 1.0})) == doctest::Approx(1.0));
}

TEST_CASE("box basics") {
    const AlignedBox b(vec({0.0, 1.0}), vec({2.0, 4.0}));
    CHECK(b.volume() == doctest::Approx(6.0));
    CHECK(b.corners().size() == 4);
    CHECK(b.corners()[1](0) == 2.0);
    CHECK_THROWS_AS(AlignedBox(vec({1.0}), vec({0.0})), InvalidArgument);
    const AlignedBox boxes[] = {AlignedBox(vec({0.0}), vec({1.0})), AlignedBox(vec({1.0}), vec({2.0}))};
    const AlignedBox s = box_msum(boxes);
    CHECK(s.lo()(0) == 1.0);
    CHECK(s.hi()(0) == 3.0);
    const AlignedBox mixed[] = {AlignedBox(vec({0.0}), vec({1.0})), b};
    CHECK_THROWS_AS(box_msum(mixed), InvalidArgument);
}

TEST_CASE("union_area_2d matches cell counting") {
    std::mt19937_64 gen(77);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<AlignedBox> boxes;
        std::vector<std::array<double, 4>> raw;
        const int n = 1 + trial % 12;
        for (int i = 0; i < n; ++i) {
            const double x = u(gen), y = u(gen), w = 0.5 * u(gen), h = 0.5 * u(gen);
            boxes.emplace_back(vec({x, y}), vec({x + w, y + h}));
            raw.push_back({x, x + w, y, y + h});
        }
        CHECK(union_area_2d(boxes) == doctest::Approx(oracle::union_area(raw)).epsilon(1e-12));
    }
}

TEST_CASE("tolerance profiles") {
    CHECK(tolerance_profile("default").feasibility == default_tolerances().feasibility);
    CHECK(tolerance_profile("strict").feasibility < tolerance_profile("loose").feasibility);
    CHECK_THROWS_AS(tolerance_profile("bogus"), InvalidArgument);
}

}
