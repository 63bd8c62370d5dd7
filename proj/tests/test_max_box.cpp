#include "doctest.h"

#include "flexagg/der.hpp"
#include "flexagg/errors.hpp"
#include "flexagg/max_box.hpp"
#include "flexagg/polygon.hpp"

#include "helpers.hpp"
#include "oracles.hpp"

#include <cmath>
#include <random>

using namespace flexagg;
using testutil::vec;

namespace {

// A+ hi - A- lo <= b, the inscribed-box condition written per row.
bool box_inside(const HPolytope& p, const AlignedBox& box, double tol = 1e-7) {
    const Eigen::MatrixXd Ap = p.A().cwiseMax(0.0), Am = (-p.A()).cwiseMax(0.0);
    return ((Ap * box.hi() - Am * box.lo() - p.b()).array() <= tol).all();
}

PrototypeRatios square_ratios() { return PrototypeRatios{{1.0}}; }

} // namespace

TEST_SUITE("max_box") {

TEST_CASE("unit square and triangle without ratios") {
    BoxFit sq = max_box(testutil::unit_box(2));
    CHECK_FALSE(sq.degenerate);
    CHECK(sq.box.volume() == doctest::Approx(1.0).epsilon(1e-6));

    BoxFit tri = max_box(testutil::triangle());
    CHECK(tri.box.volume() == doctest::Approx(0.25).epsilon(1e-6));
    CHECK(tri.box.lo().norm() < 1e-5);
    CHECK(tri.box.hi()(0) == doctest::Approx(0.5).epsilon(1e-5));
    CHECK(tri.box.hi()(1) == doctest::Approx(0.5).epsilon(1e-5));

    const oracle::GridBox g = oracle::grid_max_box(testutil::triangle().A(), testutil::triangle().b(), 0.0, 1.0, 40);
    CHECK(g.volume == doctest::Approx(0.25));
}

TEST_CASE("diamond with square ratios") {
    const BoxFit fit = max_box(testutil::diamond(), square_ratios());
    CHECK(fit.box.volume() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(fit.box.lo()(0) == doctest::Approx(-0.5).epsilon(1e-6));
    CHECK(fit.box.hi()(1) == doctest::Approx(0.5).epsilon(1e-6));
    const oracle::GridBox g = oracle::grid_max_box(testutil::diamond().A(), testutil::diamond().b(), -1.0, 1.0, 40);
    CHECK(g.volume == doctest::Approx(1.0));
}

TEST_CASE("box in 3D simplex and a 1D interval") {
    Eigen::MatrixXd A(4, 3);
    A << -1, 0, 0, 0, -1, 0, 0, 0, -1, 1, 1, 1;
    const BoxFit s = max_box(HPolytope(A, vec({0, 0, 0, 1})));
    // edges 1/3 each
    CHECK(s.box.volume() == doctest::Approx(1.0 / 27.0).epsilon(1e-6));

    const BoxFit line = max_box(to_hpolytope(AlignedBox(vec({2.0}), vec({5.0}))));
    CHECK(line.box.volume() == doctest::Approx(3.0).epsilon(1e-6));
}

TEST_CASE("degenerate and invalid inputs") {
    Eigen::MatrixXd A(4, 2);
    A << 1, 0, -1, 0, 0, 1, 0, -1;
    const BoxFit fit = max_box(HPolytope(A, vec({0.0, 0.0, 1.0, 0.0})));
    CHECK(fit.degenerate);
    CHECK(fit.box.volume() == 0.0);
    CHECK_THROWS_AS(max_box(testutil::unit_box(2), PrototypeRatios{{1.0, 2.0}}), InvalidArgument);
}

TEST_CASE("max_box against the grid oracle on random polygons") {
    std::mt19937_64 gen(31);
    for (int trial = 0; trial < 25; ++trial) {
        const VPolygon poly = testutil::random_polygon(gen);
        const HPolytope h = to_hpolytope(poly);
        const AlignedBox bb = bounding_box(h);
        const double lo = std::min(bb.lo()(0), bb.lo()(1)), hi = std::max(bb.hi()(0), bb.hi()(1));
        const oracle::GridBox g = oracle::grid_max_box(h.A(), h.b(), lo, hi, 60);
        const BoxFit fit = max_box(h);
        CHECK(box_inside(h, fit.box));
        CHECK(fit.box.volume() >= g.volume * (1 - 1e-9));
    }
}

TEST_CASE("ratio-constrained box agrees with the LP formulation") {
    std::mt19937_64 gen(32);
    std::uniform_real_distribution<double> u(0.2, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
        const HPolytope h = to_hpolytope(testutil::random_polygon(gen));
        const PrototypeRatios r{{u(gen)}};
        const BoxFit barrier = max_box(h, r);
        const BoxFit lp = max_box_ratio_lp(h, r);
        CHECK(box_inside(h, barrier.box));
        CHECK(box_inside(h, lp.box));
        CHECK(barrier.box.volume() == doctest::Approx(lp.box.volume()).epsilon(1e-5));
        const Eigen::VectorXd e = barrier.box.edges();
        CHECK(e(0) / e(1) == doctest::Approx(r.r[0]).epsilon(1e-6));
    }
}

TEST_CASE("ratio-constrained box in six dimensions") {
    der::BatteryParams b;
    b.p_min = 0, b.p_max = 4, b.a = 0.95, b.gamma = 0.045, b.e0 = 0.4, b.horizon = 6;
    const HPolytope h = der::battery_polytope(b);
    const PrototypeRatios r{{1.0, 0.8, 1.2, 1.0, 0.9}};
    const BoxFit barrier = max_box(h, r);
    const BoxFit lp = max_box_ratio_lp(h, r);
    CHECK(box_inside(h, barrier.box));
    CHECK(barrier.box.volume() == doctest::Approx(lp.box.volume()).epsilon(1e-5));
    const Eigen::VectorXd e = barrier.box.edges();
    for (int k = 1; k < 6; ++k) CHECK(e(0) / e(k) == doctest::Approx(r.r[static_cast<std::size_t>(k - 1)]).epsilon(1e-6));

    // free mode never does worse than the ratio-constrained box
    CHECK(max_box(h).box.volume() >= barrier.box.volume() * (1 - 1e-9));
}

TEST_CASE("PrototypeRatios") {
    const PrototypeRatios r = PrototypeRatios::from_box(AlignedBox(vec({0, 0, 0}), vec({2, 1, 4})));
    REQUIRE(r.r.size() == 2);
    CHECK(r.r[0] == doctest::Approx(2.0));
    CHECK(r.r[1] == doctest::Approx(0.5));
    CHECK(r.dim() == 3);
    CHECK(r.weights().isApprox(vec({1.0, 0.5, 2.0})));
}

TEST_CASE("representative_prototype") {
    const HPolytope squares[] = {testutil::unit_box(2), testutil::unit_box(2)};
    CHECK(representative_prototype(squares).r[0] == doctest::Approx(1.0).epsilon(1e-6));
    const HPolytope tri[] = {testutil::triangle()};
    CHECK(representative_prototype(tri).r[0] == doctest::Approx(1.0).epsilon(1e-5));

    std::vector<HPolytope> fleet;
    const double pmax[] = {0.9, 0.8, 0.6, 0.3};
    const double theta[] = {M_PI / 2, 1.37, 1.37, M_PI / 2};
    for (int i = 0; i < 4; ++i) {
        der::InverterParams p;
        p.p_min = 0, p.p_max = pmax[i], p.theta = theta[i];
        fleet.push_back(der::pv_inverter_polytope(p));
    }
    const PrototypeRatios largest = representative_prototype(fleet, PrototypeSelector::largest_area);
    const PrototypeRatios of_a = representative_prototype(fleet, PrototypeSelector::index, 0);
    CHECK(largest.r[0] == doctest::Approx(of_a.r[0]));
    CHECK(representative_prototype(fleet, PrototypeSelector::first).r[0] == doctest::Approx(of_a.r[0]));
    CHECK(representative_prototype(fleet, PrototypeSelector::median_ratio).r[0] == doctest::Approx(0.381875).epsilon(1e-4));

    CHECK_THROWS_AS(representative_prototype(std::span<const HPolytope>{}), InvalidArgument);
    CHECK_THROWS_AS(representative_prototype(fleet, PrototypeSelector::index, 9), InvalidArgument);
    CHECK(parse_prototype_selector("largest-area") == PrototypeSelector::largest_area);
    CHECK(std::string(to_string(PrototypeSelector::median_ratio)) == "median-ratio");
    CHECK_THROWS_AS(parse_prototype_selector("biggest"), InvalidArgument);
}

}
