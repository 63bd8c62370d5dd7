#include "doctest.h"

#include "flexagg/der.hpp"
#include "flexagg/errors.hpp"
#include "flexagg/homothet.hpp"
#include "flexagg/hpd.hpp"
#include "flexagg/lp.hpp"
#include "flexagg/max_box.hpp"
#include "flexagg/msum.hpp"

#include "helpers.hpp"

#include <cmath>
#include <random>

using namespace flexagg;
using testutil::vec;

namespace {

AlignedBox box2(double x0, double y0, double x1, double y1) { return AlignedBox(vec({x0, y0}), vec({x1, y1})); }

// A tree holding the given boxes; the first is the root, the rest its stage-1
// children through faces 1, 2, ...
DecompositionTree flat_tree(const std::vector<AlignedBox>& boxes, std::vector<int> faces = {}) {
    DecompositionTree t;
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        TreeNode n;
        n.box = boxes[i];
        if (i > 0) {
            n.stage = 1;
            n.parent = 0;
            n.faces = {faces.empty() ? static_cast<int>(i) : faces[i - 1]};
        }
        t.nodes.push_back(n);
    }
    return t;
}

std::vector<HPolytope> four_devices() {
    const double pmax[] = {0.9, 0.8, 0.6, 0.3};
    const double theta[] = {M_PI / 2, 1.37, 1.37, M_PI / 2};
    std::vector<HPolytope> out;
    for (int i = 0; i < 4; ++i) {
        der::InverterParams p;
        p.p_min = 0, p.p_max = pmax[i], p.theta = theta[i];
        out.push_back(der::pv_inverter_polytope(p));
    }
    return out;
}

} // namespace

TEST_SUITE("msum") {

TEST_CASE("policy names") {
    CHECK(parse_candidate_policy("stage01-faces") == CandidatePolicy::stage01_faces);
    CHECK(std::string(to_string(CandidatePolicy::full_product)) == "full-product");
    CHECK_THROWS_AS(parse_candidate_policy("all"), InvalidArgument);
}

TEST_CASE("box_msum agrees with the exact polygon sum") {
    const AlignedBox sq[] = {box2(0, 0, 1, 1), box2(0, 0, 1, 1)};
    CHECK(box_msum(sq) == box2(0, 0, 2, 2));
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const AlignedBox pair[] = {box2(u(gen), u(gen), 1 + u(gen), 1 + u(gen)), box2(-u(gen), -u(gen), u(gen), u(gen))};
        const AlignedBox s = box_msum(pair);
        const VPolygon exact = minkowski_sum_2d_exact(VPolygon(corners_2d(pair[0])), VPolygon(corners_2d(pair[1])));
        REQUIRE(exact.size() == 4);
        CHECK(polygon_area(exact) == doctest::Approx(s.volume()));
        for (const Point2& v : exact.vertices()) CHECK(s.contains(vec({v.x, v.y}), 1e-12));
    }
}

TEST_CASE("box_msum equals homothet_msum for a common prototype") {
    std::mt19937_64 gen(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const AlignedBox proto_box = box2(0, 0, 0.5 + u(gen), 0.5 + u(gen));
        const PrototypeRef proto = make_prototype(proto_box);
        std::vector<Homothet> parts;
        std::vector<AlignedBox> boxes;
        for (int i = 0; i < 3; ++i) {
            const double beta = 0.2 + u(gen);
            const Eigen::VectorXd t = vec({u(gen), u(gen)});
            parts.push_back({proto, beta, t});
            boxes.emplace_back(beta * proto_box.lo() + t, beta * proto_box.hi() + t);
        }
        const AlignedBox s = box_msum(boxes);
        const VPolygon h = realize_2d(homothet_msum(parts));
        CHECK(polygon_area(h) == doctest::Approx(s.volume()).epsilon(1e-12));
        for (const Point2& v : h.vertices()) CHECK(s.contains(vec({v.x, v.y}), 1e-12));
    }
}

TEST_CASE("select_candidates counts") {
    std::vector<DecompositionTree> two(3, flat_tree({box2(0, 0, 1, 1), box2(1, 0, 2, 1), box2(0, 1, 1, 2)}, {2, 4}));
    CandidateSelection s0 = select_candidates(two, CandidatePolicy::stage0_only);
    CHECK(s0.tuples.size() == 1);
    CandidateSelection s1 = select_candidates(two, CandidatePolicy::stage01_faces);
    CHECK(s1.tuples.size() == 5);
    // faces 1 and 3 are missing on every device and fall back to the roots
    CHECK(s1.substitutions == 6);
    CHECK(s1.tuples[2] == std::vector<int>{1, 1, 1});
    CHECK(s1.tuples[1] == std::vector<int>{0, 0, 0});

    DecompositionTree six;
    TreeNode root;
    root.box = AlignedBox(Eigen::VectorXd::Zero(6), Eigen::VectorXd::Ones(6));
    six.nodes.push_back(root);
    std::vector<DecompositionTree> fleet6(4, six);
    CHECK(select_candidates(fleet6, CandidatePolicy::stage01_faces).tuples.size() == 13);

    std::vector<DecompositionTree> pair(2, flat_tree({box2(0, 0, 1, 1), box2(1, 0, 2, 1)}));
    CHECK(select_candidates(pair, CandidatePolicy::full_product).tuples.size() == 4);
    CHECK_THROWS_AS(select_candidates(pair, CandidatePolicy::full_product, {}, 3), InvalidArgument);

    CandidateSelection ex = select_candidates(pair, CandidatePolicy::explicit_list, {{0, 1}});
    CHECK(ex.tuples.size() == 1);
    CHECK_THROWS_AS(select_candidates(pair, CandidatePolicy::explicit_list, {{0, 2}}), InvalidArgument);
    CHECK_THROWS_AS(select_candidates(pair, CandidatePolicy::explicit_list, {{0}}), InvalidArgument);
    CHECK_THROWS_AS(select_candidates(std::span<const DecompositionTree>{}, CandidatePolicy::stage0_only), InvalidArgument);
}

TEST_CASE("full product reproduces the distributed sum") {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<AlignedBox> a, b;
        for (int i = 0; i < 2; ++i) {
            a.push_back(box2(u(gen), u(gen), 1 + u(gen), 1 + u(gen)));
            b.push_back(box2(-1 - u(gen), u(gen), -u(gen), 1 + u(gen)));
        }
        std::vector<DecompositionTree> trees{flat_tree(a), flat_tree(b)};
        const CandidateSelection sel = select_candidates(trees, CandidatePolicy::full_product);
        const AggregateApprox approx = union_msum(trees, sel);
        REQUIRE(approx.boxes.size() == 4);
        std::vector<AlignedBox> expected;
        for (const auto& x : a)
            for (const auto& y : b) {
                const AlignedBox pair[] = {x, y};
                expected.push_back(box_msum(pair));
            }
        for (const AlignedBox& e : expected) {
            bool found = false;
            for (const AlignedBox& got : approx.boxes) found = found || got == e;
            CHECK(found);
        }
    }
}

TEST_CASE("union_msum and hull") {
    std::vector<DecompositionTree> squares(3, flat_tree({box2(0, 0, 1, 1)}));
    const AggregateApprox one = union_msum(squares, select_candidates(squares, CandidatePolicy::stage0_only));
    REQUIRE(one.boxes.size() == 1);
    CHECK(one.boxes[0] == box2(0, 0, 3, 3));
    const VPolygon h1 = hull_of_boxes_2d(one);
    CHECK(h1.size() == 4);
    CHECK(polygon_area(h1) == doctest::Approx(9.0));

    AggregateApprox two;
    two.boxes = {box2(0, 0, 1, 1), box2(2, 2, 3, 3)};
    const VPolygon h2 = hull_of_boxes_2d(two);
    CHECK(h2.size() == 6);
    CHECK(polygon_area(h2) == doctest::Approx(5.0));
    CHECK_THROWS_AS(hull_of_boxes_2d(AggregateApprox{}), InvalidArgument);

    AggregateApprox three_d;
    three_d.boxes = {AlignedBox(Eigen::VectorXd::Zero(3), Eigen::VectorXd::Ones(3))};
    CHECK_THROWS_AS(hull_of_boxes_2d(three_d), InvalidArgument);
}

TEST_CASE("exact_fleet_msum_2d") {
    const HPolytope sq[] = {testutil::unit_box(2), testutil::unit_box(2)};
    CHECK(polygon_area(exact_fleet_msum_2d(sq)) == doctest::Approx(4.0));
    const auto fleet = four_devices();
    const std::vector<HPolytope> reversed(fleet.rbegin(), fleet.rend());
    CHECK(polygon_area(exact_fleet_msum_2d(fleet)) == doctest::Approx(polygon_area(exact_fleet_msum_2d(reversed))).epsilon(1e-12));
    CHECK_THROWS_AS(exact_fleet_msum_2d(fleet, 3), InvalidArgument);
    const HPolytope mixed[] = {testutil::unit_box(2), testutil::unit_box(3)};
    CHECK_THROWS_AS(exact_fleet_msum_2d(mixed), InvalidArgument);
}

TEST_CASE("accuracy_ratio") {
    const VPolygon truth({{0, 0}, {2, 0}, {2, 2}, {0, 2}});
    AggregateApprox all;
    all.boxes = {box2(0, 0, 2, 2)};
    CHECK(accuracy_ratio(all, truth) == doctest::Approx(1.0));
    AggregateApprox half;
    half.boxes = {box2(0, 0, 1, 2), box2(0.5, 0, 1, 1)};
    CHECK(accuracy_ratio(half, truth) == doctest::Approx(0.5));
    half.hull = truth;
    CHECK(accuracy_ratio(half, truth) == doctest::Approx(1.0));
    CHECK(accuracy_ratio(AggregateApprox{}, truth) == 0.0);
}

TEST_CASE("optimize_over_union") {
    AggregateApprox a;
    a.boxes = {box2(1, 0, 3, 1)};
    UnionOptimum o = optimize_over_union(vec({1.0, 0.0}), a);
    CHECK(o.x(0) == 1.0);
    CHECK(o.value == 1.0);

    // box 0 reaches 0 at its lower corner, box 1 only reaches -1 + 2 = 1
    AggregateApprox b;
    b.boxes = {box2(0, 0, 1, 1), box2(-1, 2, 0, 3)};
    o = optimize_over_union(vec({1.0, 1.0}), b);
    CHECK(o.box == 0);
    CHECK(o.value == 0.0);
    o = optimize_over_union(vec({1.0, -1.0}), b);
    CHECK(o.box == 1);
    CHECK(o.value == -4.0);
    CHECK(o.x == vec({-1.0, 3.0}));

    CHECK_THROWS_AS(optimize_over_union(vec({1.0, 0.0}), AggregateApprox{}), InvalidArgument);

    const VPolygon tri({{0, 0}, {2, 0}, {0, 2}});
    CHECK(minimize_over_polygon(Eigen::Vector2d(-1, -1), tri) == doctest::Approx(-2.0));
}

TEST_CASE("union optimum never beats the true sum") {
    const auto fleet = four_devices();
    HpdSettings s;
    s.n_s = 1;
    s.ratios = representative_prototype(fleet);
    const auto trees = decompose_fleet(fleet, s);
    const AggregateApprox approx = union_msum(trees, select_candidates(trees, CandidatePolicy::stage01_faces));
    const VPolygon truth = exact_fleet_msum_2d(fleet);
    for (int k = 0; k < 16; ++k) {
        const Eigen::Vector2d c(std::cos(k * M_PI / 8), std::sin(k * M_PI / 8));
        const UnionOptimum o = optimize_over_union(c, approx);
        CHECK(o.value >= minimize_over_polygon(c, truth) - 1e-9);
        CHECK(contains(truth, Point2{o.x(0), o.x(1)}, 1e-7));
    }
    const Eigen::Vector2d max_p(-1, 0);
    const UnionOptimum o = optimize_over_union(max_p, approx);
    CHECK(o.value >= minimize_over_polygon(max_p, truth) - 1e-9);
}

TEST_CASE("serial and parallel union agree") {
    const auto fleet = four_devices();
    HpdSettings s;
    s.n_s = 1;
    const auto trees = decompose_fleet(fleet, s);
    const CandidateSelection sel = select_candidates(trees, CandidatePolicy::full_product);
    const AggregateApprox p = union_msum(trees, sel), q = union_msum_serial(trees, sel);
    REQUIRE(p.boxes.size() == q.boxes.size());
    for (std::size_t i = 0; i < p.boxes.size(); ++i) CHECK(p.boxes[i] == q.boxes[i]);
}

}
