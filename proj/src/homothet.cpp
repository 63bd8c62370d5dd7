#include "flexagg/homothet.hpp"

#include "flexagg/errors.hpp"
#include "flexagg/lp.hpp"

#include <algorithm>

namespace flexagg {

PrototypeRef make_prototype(const VPolygon& polygon) {
    auto proto = std::make_shared<Prototype>();
    for (const Point2& p : polygon.vertices()) proto->vertices.push_back(Eigen::Vector2d(p.x, p.y));
    return proto;
}

PrototypeRef make_prototype(const AlignedBox& box) {
    auto proto = std::make_shared<Prototype>();
    proto->vertices = box.corners();
    return proto;
}

Homothet fit_homothet(const PrototypeRef& prototype, const HPolytope& target, const Tolerances& tol) {
    if (!prototype || prototype->vertices.empty()) throw InvalidArgument("fit_homothet: empty prototype");
    const int m = target.dim();
    if (prototype->dim() != m) throw InvalidArgument("fit_homothet: dimension mismatch");

    const auto nv = static_cast<int>(prototype->vertices.size());
    const int rows = target.rows();
    LpProblem lp;
    lp.A.resize(nv * rows + 1, m + 1);
    lp.b.resize(nv * rows + 1);
    for (int j = 0; j < nv; ++j) {
        const Eigen::VectorXd Av = target.A() * prototype->vertices[static_cast<std::size_t>(j)];
        lp.A.block(j * rows, 0, rows, 1) = Av;
        lp.A.block(j * rows, 1, rows, m) = target.A();
        lp.b.segment(j * rows, rows) = target.b();
    }
    lp.A.row(nv * rows).setZero(); // beta >= 0
    lp.A(nv * rows, 0) = -1.0;
    lp.b(nv * rows) = 0.0;
    lp.objective = Eigen::VectorXd::Zero(m + 1);
    lp.objective(0) = 1.0;

    const LpSolution sol = lp_solve(lp, tol);
    if (sol.status == LpStatus::infeasible) throw EmptyPolytope("fit_homothet: target is empty");
    if (sol.status == LpStatus::unbounded) throw InvalidArgument("fit_homothet: target is unbounded");
    if (sol.x(0) <= tol.degeneracy) throw DegeneratePolytope("fit_homothet: no room for a positive scale");
    return {prototype, sol.x(0), sol.x.tail(m)};
}

Homothet homothet_msum(std::span<const Homothet> parts) {
    if (parts.empty()) throw InvalidArgument("homothet_msum: empty list");
    Homothet out = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) {
        if (parts[i].prototype != out.prototype) throw InvalidArgument("homothet_msum: mixed prototypes");
        out.beta += parts[i].beta;
        out.t += parts[i].t;
    }
    return out;
}

std::vector<Eigen::VectorXd> realize(const Homothet& h) {
    std::vector<Eigen::VectorXd> out;
    out.reserve(h.prototype->vertices.size());
    for (const auto& v : h.prototype->vertices) out.push_back(h.beta * v + h.t);
    return out;
}

VPolygon realize_2d(const Homothet& h) {
    if (h.prototype->dim() != 2) throw InvalidArgument("realize_2d: prototype is not 2D");
    std::vector<Point2> pts;
    for (const auto& v : realize(h)) pts.push_back({v(0), v(1)});
    return convex_hull_2d(std::move(pts));
}

namespace {

void require_nonempty(std::span<const der::InverterParams> devices, const char* who) {
    if (devices.empty()) throw InvalidArgument(std::string(who) + ": empty device list");
    for (const auto& d : devices) der::validate(d);
}

void require_same_sides(std::span<const der::InverterParams> devices, const char* who) {
    for (const auto& d : devices)
        if (d.N != devices.front().N) throw InvalidArgument(std::string(who) + ": devices use different N");
}

double total_rating(std::span<const der::InverterParams> devices) {
    double s = 0.0;
    for (const auto& d : devices) s += d.S;
    return s;
}

} // namespace

der::InverterParams aggregate_theorem1(std::span<const der::InverterParams> devices) {
    require_nonempty(devices, "aggregate_theorem1");
    require_same_sides(devices, "aggregate_theorem1");
    const auto& first = devices.front();
    for (const auto& d : devices) {
        if (d.theta) throw InvalidArgument("aggregate_theorem1: PV-form device; use aggregate_corollary1");
        if (d.p_min != first.p_min || d.p_max != first.p_max)
            throw InvalidArgument("aggregate_theorem1: heterogeneous power bounds; use the decomposition path");
    }
    der::InverterParams out = first;
    out.S = total_rating(devices);
    return out;
}

der::InverterParams aggregate_corollary1(std::span<const der::InverterParams> devices) {
    require_nonempty(devices, "aggregate_corollary1");
    require_same_sides(devices, "aggregate_corollary1");
    const auto& first = devices.front();
    for (const auto& d : devices) {
        if (!d.theta) throw InvalidArgument("aggregate_corollary1: device without power-factor limit");
        if (d.p_max != first.p_max || *d.theta != *first.theta)
            throw InvalidArgument("aggregate_corollary1: heterogeneous p_max or theta; use the decomposition path");
    }
    der::InverterParams out = first;
    out.S = total_rating(devices);
    return out;
}

der::InverterParams aggregate_theorem2_lower_bound(std::span<const der::InverterParams> devices) {
    require_nonempty(devices, "aggregate_theorem2_lower_bound");
    require_same_sides(devices, "aggregate_theorem2_lower_bound");
    der::InverterParams out = devices.front();
    for (const auto& d : devices) {
        if (!d.theta) throw InvalidArgument("aggregate_theorem2_lower_bound: device without power-factor limit");
        out.S = std::min(out.S, d.S);
        out.p_max = std::min(out.p_max, d.p_max);
        out.theta = std::min(*out.theta, *d.theta);
    }
    out.S *= static_cast<double>(devices.size());
    return out;
}

} // namespace flexagg
