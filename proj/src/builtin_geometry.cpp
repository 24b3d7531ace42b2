#include "hyperfell/builtin_geometry.hpp"

#include <cmath>
#include <stdexcept>

#include "hyperfell/util.hpp"

namespace hyperfell {

namespace {

void check_in_ex42(const Point& x) {
    if (x.dim() != 3) throw std::invalid_argument("expected a 3-d point");
    if (x[0] > 0 || x[1] > 0 || x[2] > 0 || x[0] * x[1] + x[2] - 1 > kMembershipTol)
        throw std::invalid_argument("point outside the uv + w - 1 <= 0 solid: " + x.str());
}

EdgePolyline make_edge(const Point& x0, int flat_axis) {
    check_in_ex42(x0);
    EdgePolyline e;
    e.x0 = x0;
    e.flat_axis = flat_axis;
    double anchor = x0[1 - flat_axis];
    double w0 = x0[2];
    if (anchor == 0.0) {
        e.half_line = true;
    } else {
        e.v2 = (1.0 - w0) / anchor;
    }
    return e;
}

}  // namespace

Point EdgePolyline::at(double t) const {
    Point p = x0;
    p[flat_axis] = t;
    if (!half_line && t < v2) p[2] = 1.0 - anchor() * t;
    return p;
}

bool EdgePolyline::on_edge(const Point& p, double tol) const {
    if (std::abs(p[1 - flat_axis] - anchor()) > tol) return false;
    double t = p[flat_axis];
    if (t > param_max() + tol) return false;
    return std::abs(p[2] - at(t)[2]) <= tol;
}

Curve EdgePolyline::curve(double t_min) const {
    EdgePolyline self = *this;
    double hi = param_max();
    double lo = std::min(t_min, hi);
    return Curve{"ideal_edge", [self](double t) { return self.at(t); }, lo, hi, false, false};
}

EdgePolyline ex42_right_top_edge(const Point& x0) { return make_edge(x0, 1); }

EdgePolyline ex42_back_top_edge(const Point& x0) { return make_edge(x0, 0); }

std::vector<Curve> ex42_ideal_edges(const Point& x0, const Box& window) {
    std::vector<Curve> cs;
    EdgePolyline right = ex42_right_top_edge(x0);
    EdgePolyline back = ex42_back_top_edge(x0);
    // clip the free parameter to the window; the sloped tail also leaves
    // through the window floor in w, which the sampler clips pointwise
    cs.push_back(right.curve(window.lo[1]));
    cs.push_back(back.curve(window.lo[0]));
    return cs;
}

std::vector<Patch> ex42_ideal_faces(const Point& x0, const Box& window) {
    check_in_ex42(x0);
    const double u0 = x0[0], v0 = x0[1], w0 = x0[2];
    const double ulo = window.lo[0], vlo = window.lo[1];
    std::vector<Patch> ps;
    // top face w = w0 over the ideal's (u, v) shadow
    ps.push_back({"ideal_top", [=](double a, double b) {
                      double u = ulo + a * (u0 - ulo);
                      double v = vlo + b * (v0 - vlo);
                      return Point{u, v, w0};
                  },
                  false});
    // cap on the uv + w = 1 surface below w0, in all three coordinate charts
    // so at least one is well conditioned wherever the surface is steep
    const double wlo = window.lo[2];
    ps.push_back({"ideal_cap_uv", [=](double a, double b) {
                      double u = ulo + a * (u0 - ulo);
                      double v = vlo + b * (v0 - vlo);
                      return Point{u, v, 1.0 - u * v};
                  },
                  false});
    ps.push_back({"ideal_cap_vw", [=](double a, double b) {
                      double v = vlo + a * (v0 - vlo);
                      double w = wlo + b * (w0 - wlo);
                      if (v == 0.0) return Point{1.0, 1.0, 1.0};  // filtered out
                      return Point{(1.0 - w) / v, v, w};
                  },
                  false});
    ps.push_back({"ideal_cap_uw", [=](double a, double b) {
                      double u = ulo + a * (u0 - ulo);
                      double w = wlo + b * (w0 - wlo);
                      if (u == 0.0) return Point{1.0, 1.0, 1.0};
                      return Point{u, (1.0 - w) / u, w};
                  },
                  false});
    // side faces u = u0 and v = v0; nearby ideals differ exactly across these
    ps.push_back({"ideal_side_u", [=](double a, double b) {
                      double v = vlo + a * (v0 - vlo);
                      double w = wlo + b * (w0 - wlo);
                      return Point{u0, v, w};
                  },
                  false});
    ps.push_back({"ideal_side_v", [=](double a, double b) {
                      double u = ulo + a * (u0 - ulo);
                      double w = wlo + b * (w0 - wlo);
                      return Point{u, v0, w};
                  },
                  false});
    return ps;
}

double ex42_edge_distance(const Point& z, double u_alpha, double w0) {
    if (z.dim() != 3) throw std::invalid_argument("expected a 3-d point");
    if (!(u_alpha < 0)) throw std::invalid_argument("u_alpha must be negative");
    double u0 = z[0];
    double vp = z[1];
    double wp = z[2];
    if (u0 < 0) {
        double v2 = (1.0 - w0) / u0;
        if (vp >= v2) throw std::invalid_argument("regime violation: v' >= v2");
    }
    double v3 = (1.0 - w0) / u_alpha;
    if (vp >= v3) throw std::invalid_argument("regime violation: v' >= v3");
    return std::abs(1.0 - u_alpha * vp - wp) / std::sqrt(1.0 + u_alpha * u_alpha);
}

ImplicitClosedSet ex42_vietoris_curve(const Scene& s, const Point& x0) {
    check_in_ex42(x0);
    double u0 = x0[0], v0 = x0[1], w0 = x0[2];
    if (u0 == 0.0 && v0 == 0.0 && w0 == 0.0)
        throw std::invalid_argument("no Vietoris witness curve at the origin");

    Curve c;
    if (v0 < 0) {
        // {(u0, v, v/(v - v0) + w0): v in (v0, 0]}
        c = Curve{"C(v0,0]", [u0, v0, w0](double v) { return Point{u0, v, v / (v - v0) + w0}; },
                  v0, 0.0, true, false};
    } else if (u0 < 0) {
        c = Curve{"C(u0,0]", [u0, v0, w0](double u) { return Point{u, v0, u / (u - u0) + w0}; },
                  u0, 0.0, true, false};
    } else {
        // u0 = v0 = 0 > w0: {(0, w/(w - w0), w): w in (w0, 0]}
        c = Curve{"c(w0,0]", [w0](double w) { return Point{0.0, w / (w - w0), w}; }, w0, 0.0, true, false};
    }
    return curve_set(s, std::move(c), "vietoris_curve" + x0.str());
}

Curve ex41_segment_curve(double u0, double v0) {
    return Curve{"l(u0,v0)",
                 [u0, v0](double t) { return Point{t * u0, v0 + t * (1.0 - v0)}; },
                 0.0, 1.0, true, true};
}

std::vector<Curve> ex41_ideal_edges(const Point& x0, const Box& window) {
    (void)window;  // the square already bounds the edges
    double u0 = x0[0], v0 = x0[1];
    std::vector<Curve> cs;
    cs.push_back({"ideal_top", [u0, v0](double t) { return Point{t * u0, v0}; }, 0.0, 1.0, true, false});
    cs.push_back({"ideal_right", [u0, v0](double t) { return Point{u0, t * v0}; }, 0.0, 1.0, true, false});
    return cs;
}

ImplicitClosedSet ex41_segment(const Scene& s, double u0, double v0) {
    if (!(u0 > 0 && u0 < 1 && v0 > 0 && v0 < 1))
        throw std::invalid_argument("segment anchor must lie in the open square");
    return curve_set(s, ex41_segment_curve(u0, v0),
                     "l(" + fmt_double(u0) + "," + fmt_double(v0) + ")");
}

}  // namespace hyperfell
