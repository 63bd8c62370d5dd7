#pragma once

#include "flexagg/box.hpp"
#include "flexagg/polygon.hpp"
#include "flexagg/polytope.hpp"

#include <optional>
#include <vector>

namespace flexagg::der {

inline constexpr int kDefaultSides = 24;

// Inverter operating set in the (P, Q) plane. p_min / p_max are normalized by S.
// With theta set this is the PV form: p_min must be 0 and |Q| <= tan(theta) P.
struct InverterParams {
    double S = 1.0;
    double p_min = -1.0;
    double p_max = 1.0;
    std::optional<double> theta;
    int N = kDefaultSides;
};

// Generalized battery over `horizon` periods: e_{k+1} = a e_k + gamma P_k, 0 <= e_k <= 1.
struct BatteryParams {
    double p_min = 0.0;
    double p_max = 1.0;
    double a = 1.0;
    double gamma = 1.0;
    double e0 = 0.5;
    int horizon = 1;
};

// Throws InvalidArgument when an invariant of the parameter record fails.
void validate(const InverterParams& p);
void validate(const BatteryParams& p);

// Regular N-gon inscribed in the circle of radius S, first vertex at (S, 0).
std::vector<Point2> inverter_vertices(double S, int N);

// One half-space per polygon edge. Upper-half edges (j <= N/2) read
// Q - Q_j <= m_j (P - P_j), lower-half edges the negated form; an edge with
// P_{j+1} == P_j becomes the exact vertical half-space.
std::vector<HalfSpace> circle_halfspaces(double S, int N);

// S p_min <= P <= S p_max intersected with the inscribed N-gon. Requires theta unset.
HPolytope storage_inverter_polytope(const InverterParams& p);

// 0 <= P <= S p_max, |Q| <= tan(theta) P, and the right half of the N-gon.
// theta == pi/2 drops the wedge rows; theta == 0 yields the degenerate segment Q = 0.
HPolytope pv_inverter_polytope(const InverterParams& p);

// Dispatches on whether theta is set.
HPolytope inverter_polytope(const InverterParams& p);

// Closed-form area of the (non-discretized) feasible set.
double feasible_set_area(const InverterParams& p);

// Area of the discretized polytope over the area of the feasible set.
double area_ratio(const InverterParams& p);

// Controllable load: the 1D interval [p_min, p_max]; a single point is allowed.
AlignedBox load_interval(double p_min, double p_max);

// Power bounds plus SOC rows 0 <= a^k e0 + sum_{t<=k} a^{k-t} gamma P_t <= 1.
// Throws EmptyPolytope when the bounds leave no feasible schedule.
HPolytope battery_polytope(const BatteryParams& p);

} // namespace flexagg::der
