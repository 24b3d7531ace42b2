#pragma once

#include "hyperfell/scene.hpp"
#include "hyperfell/setrep.hpp"

namespace hyperfell {

// Right top edge of an ideal in the uv + w - 1 <= 0 solid, anchored in the
// plane u = u0: a flat piece {(u0, v, w0) : v0 >= v >= v2} followed by a
// sloped tail {(u0, v, 1 - u0 v) : v <= v2}, with breakpoint v2 = (1-w0)/u0.
// For u0 = 0 the edge degenerates to the horizontal half line {(0, v, w0)}.
struct EdgePolyline {
    Point x0;
    int flat_axis = 1;  // 1: edge varies in v (right top), 0: varies in u (back top)
    double v2 = -std::numeric_limits<double>::infinity();
    bool half_line = false;

    double anchor() const { return x0[1 - flat_axis]; }
    double param_max() const { return x0[flat_axis]; }

    // Edge point at parameter value t (t <= param_max()).
    Point at(double t) const;

    bool on_edge(const Point& p, double tol) const;

    // Sampler clipped to [t_min, param_max()].
    Curve curve(double t_min) const;
};

EdgePolyline ex42_right_top_edge(const Point& x0);
EdgePolyline ex42_back_top_edge(const Point& x0);

// Both top edges of x0's ideal, clipped to the window. Installed as the ex42
// scene's ideal_edges hook.
std::vector<Curve> ex42_ideal_edges(const Point& x0, const Box& window);

// Closed-form samplers for the ideal's top face (w = w0) and its cap on the
// uv + w - 1 = 0 surface; grids straddle both, which starves nearest-point
// queries near the moving edges.
std::vector<Patch> ex42_ideal_faces(const Point& x0, const Box& window);

// Perpendicular distance from an edge point z to the line w = -u_alpha v + 1
// inside the quarter plane; the sloped-tail regime requires v' < v2 when the
// anchor u0 is negative. Throws on regime violations.
double ex42_edge_distance(const Point& z, double u_alpha, double w0);

// The closed curve used by the Vietoris discontinuity argument: for v0 < 0
// the curve {(u0, v, v/(v - v0) + w0) : v in (v0, 0]}, for u0 < 0 its u-side
// mirror, and for u0 = v0 = 0 > w0 the curve {(0, w/(w - w0), w)}.
// x0 = (0,0,0) has no such curve and throws.
ImplicitClosedSet ex42_vietoris_curve(const Scene& s, const Point& x0);

// Open segment from (0, v0) to (u0, 1), a closed subset of the open square.
ImplicitClosedSet ex41_segment(const Scene& s, double u0, double v0);
Curve ex41_segment_curve(double u0, double v0);

// Top and right boundary edges of an ideal in the open square; installed as
// the ex41 ideal_edges hook so windowed Hausdorff values resolve below the
// grid pitch.
std::vector<Curve> ex41_ideal_edges(const Point& x0, const Box& window);

}  // namespace hyperfell
