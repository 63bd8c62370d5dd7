#include "flexagg/der.hpp"

#include "flexagg/errors.hpp"

#include <cmath>
#include <numbers>

namespace flexagg::der {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

void check_sides(int N) {
    if (N < 4 || N % 2 != 0) throw InvalidArgument("inverter: N must be even and >= 4");
}

HPolytope assemble(const std::vector<HalfSpace>& rows, int dim) {
    Eigen::MatrixXd A(static_cast<int>(rows.size()), dim);
    Eigen::VectorXd b(static_cast<int>(rows.size()));
    for (int i = 0; i < A.rows(); ++i) {
        A.row(i) = rows[static_cast<std::size_t>(i)].normal.transpose();
        b(i) = rows[static_cast<std::size_t>(i)].offset;
    }
    return HPolytope(std::move(A), std::move(b));
}

HalfSpace row2(double p, double q, double offset) { return {Eigen::Vector2d(p, q), offset}; }

// Integral of 2 sqrt(S^2 - x^2) from 0 to x (area of the disc strip [0, x]).
double strip_area(double S, double x) {
    const double c = std::clamp(x / S, -1.0, 1.0);
    return S * S * (c * std::sqrt(1.0 - c * c) + std::asin(c));
}

} // namespace

void validate(const InverterParams& p) {
    check_sides(p.N);
    if (!(p.S > 0.0)) throw InvalidArgument("inverter: S must be positive");
    if (p.p_min < -1.0 || p.p_max > 1.0) throw InvalidArgument("inverter: normalized bounds must lie in [-1, 1]");
    if (p.p_min > p.p_max) throw InvalidArgument("inverter: p_min > p_max");
    if (p.theta) {
        if (*p.theta < 0.0 || *p.theta > kHalfPi + 1e-12) throw InvalidArgument("inverter: theta outside [0, pi/2]");
        if (p.p_min != 0.0) throw InvalidArgument("inverter: power-factor limit requires p_min = 0");
    }
}

void validate(const BatteryParams& p) {
    if (p.horizon < 1) throw InvalidArgument("battery: horizon must be >= 1");
    if (p.p_min > p.p_max) throw InvalidArgument("battery: p_min > p_max");
    if (!(p.a > 0.0 && p.a <= 1.0)) throw InvalidArgument("battery: a must lie in (0, 1]");
    if (p.e0 < 0.0 || p.e0 > 1.0) throw InvalidArgument("battery: e0 must lie in [0, 1]");
    if (p.gamma < 0.0) throw InvalidArgument("battery: gamma must be non-negative");
}

std::vector<Point2> inverter_vertices(double S, int N) {
    check_sides(N);
    const double alpha = 2.0 * std::numbers::pi / N;
    std::vector<Point2> v;
    v.reserve(static_cast<std::size_t>(N));
    for (int j = 0; j < N; ++j) v.push_back({S * std::cos(j * alpha), S * std::sin(j * alpha)});
    return v;
}

std::vector<HalfSpace> circle_halfspaces(double S, int N) {
    const auto v = inverter_vertices(S, N);
    std::vector<HalfSpace> rows;
    rows.reserve(v.size());
    for (int j = 0; j < N; ++j) {
        const Point2 a = v[static_cast<std::size_t>(j)];
        const Point2 b = v[static_cast<std::size_t>((j + 1) % N)];
        const bool upper = j < N / 2;
        if (std::abs(b.x - a.x) <= 1e-15 * S) {
            // vertical edge: the interior lies toward the centre
            rows.push_back(a.x > 0 ? row2(1.0, 0.0, a.x) : row2(-1.0, 0.0, -a.x));
            continue;
        }
        const double slope = (b.y - a.y) / (b.x - a.x);
        if (upper) rows.push_back(row2(-slope, 1.0, a.y - slope * a.x));   //  (Q - Q_j) <=  m_j (P - P_j)
        else rows.push_back(row2(slope, -1.0, slope * a.x - a.y));         // -(Q - Q_j) <= -m_j (P - P_j)
    }
    return rows;
}

HPolytope storage_inverter_polytope(const InverterParams& p) {
    validate(p);
    if (p.theta) throw InvalidArgument("storage_inverter_polytope: theta must be unset");
    auto rows = circle_halfspaces(p.S, p.N);
    rows.push_back(row2(-1.0, 0.0, -p.S * p.p_min));
    rows.push_back(row2(1.0, 0.0, p.S * p.p_max));
    return assemble(rows, 2);
}

HPolytope pv_inverter_polytope(const InverterParams& p) {
    validate(p);
    if (!p.theta) throw InvalidArgument("pv_inverter_polytope: theta must be set");
    const auto v = inverter_vertices(p.S, p.N);
    const auto circle = circle_halfspaces(p.S, p.N);
    std::vector<HalfSpace> rows;
    // Only edges reaching into P > 0 matter once P >= 0 is imposed.
    for (int j = 0; j < p.N; ++j) {
        const double pa = v[static_cast<std::size_t>(j)].x;
        const double pb = v[static_cast<std::size_t>((j + 1) % p.N)].x;
        if (std::max(pa, pb) > 1e-12 * p.S) rows.push_back(circle[static_cast<std::size_t>(j)]);
    }
    rows.push_back(row2(-1.0, 0.0, 0.0));
    rows.push_back(row2(1.0, 0.0, p.S * p.p_max));
    const double theta = *p.theta;
    if (theta < kHalfPi) {
        const double t = std::tan(theta);
        rows.push_back(row2(-t, 1.0, 0.0));   //  Q <= tan(theta) P
        rows.push_back(row2(-t, -1.0, 0.0));  // -Q <= tan(theta) P
    }
    return assemble(rows, 2);
}

HPolytope inverter_polytope(const InverterParams& p) {
    return p.theta ? pv_inverter_polytope(p) : storage_inverter_polytope(p);
}

double feasible_set_area(const InverterParams& p) {
    validate(p);
    const double S = p.S;
    if (!p.theta) {
        // disc truncated to S p_min <= P <= S p_max
        return strip_area(S, S * p.p_max) - strip_area(S, S * p.p_min);
    }
    // Upper half: Q from 0 to min(tan(theta) P, sqrt(S^2 - P^2)) for 0 <= P <= S p_max.
    // The wedge line meets the circle at P* = S cos(theta); left of P* the set is a
    // triangle, right of it a circular strip.
    const double theta = std::min(*p.theta, kHalfPi);
    const double cap = S * p.p_max;
    const double cross_p = S * std::cos(theta);
    const double wedge_end = std::min(cap, cross_p);
    double upper = 0.5 * std::tan(theta) * wedge_end * wedge_end;
    if (theta >= kHalfPi) upper = 0.0;
    if (cap > cross_p) upper += 0.5 * (strip_area(S, cap) - strip_area(S, cross_p));
    return 2.0 * upper;
}

double area_ratio(const InverterParams& p) {
    const double ax = feasible_set_area(p);
    if (ax <= 0.0) return 0.0;
    const HPolytope poly = inverter_polytope(p);
    if (is_degenerate(poly)) return 0.0;
    return polygon_area(vertex_enum_2d(poly)) / ax;
}

AlignedBox load_interval(double p_min, double p_max) {
    if (p_min > p_max) throw InvalidArgument("load_interval: p_min > p_max");
    return AlignedBox(Eigen::VectorXd::Constant(1, p_min), Eigen::VectorXd::Constant(1, p_max));
}

HPolytope battery_polytope(const BatteryParams& p) {
    validate(p);
    const int M = p.horizon;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(4 * M, M);
    Eigen::VectorXd b(4 * M);
    int r = 0;
    for (int k = 0; k < M; ++k) {
        A(r, k) = 1.0;
        b(r++) = p.p_max;
        A(r, k) = -1.0;
        b(r++) = -p.p_min;
    }
    for (int k = 1; k <= M; ++k) {
        const double decay = std::pow(p.a, k) * p.e0;
        for (int t = 1; t <= k; ++t) A(r, t - 1) = std::pow(p.a, k - t) * p.gamma;
        A.row(r + 1) = -A.row(r);
        b(r) = 1.0 - decay; // upper SOC
        b(r + 1) = decay;   // lower SOC
        r += 2;
    }
    // gamma == 0 leaves the SOC rows without coefficients; they then constrain nothing.
    std::vector<int> rows;
    for (int i = 0; i < A.rows(); ++i)
        if (A.row(i).cwiseAbs().maxCoeff() > 0.0) rows.push_back(i);
    Eigen::MatrixXd Ak(static_cast<int>(rows.size()), M);
    Eigen::VectorXd bk(static_cast<int>(rows.size()));
    for (int i = 0; i < Ak.rows(); ++i) {
        Ak.row(i) = A.row(rows[static_cast<std::size_t>(i)]);
        bk(i) = b(rows[static_cast<std::size_t>(i)]);
    }
    return HPolytope(std::move(Ak), std::move(bk));
}

} // namespace flexagg::der
