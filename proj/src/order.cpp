#include "hyperfell/order.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hyperfell/scene.hpp"
#include "hyperfell/setrep.hpp"
#include "hyperfell/util.hpp"

namespace hyperfell {

bool ConeOrder::leq(const Point& x, const Point& y, double slack) const {
    require_same_dim(x, y);
    if (kind == ConeKind::Coordinatewise) {
        for (int i = 0; i < x.dim(); ++i)
            if (x[i] > y[i] + slack) return false;
        return true;
    }
    // y - x in K: <n_i, y - x> >= -tau_mem (closed cone under rounding)
    Point d = y - x;
    for (const Point& n : normals)
        if (n.dot(d) < -(kMembershipTol + slack)) return false;
    return true;
}

Point ConeOrder::interior_direction(int dim) const {
    if (kind == ConeKind::Coordinatewise) {
        Point d = Point::filled(dim, 1.0);
        return d * (1.0 / d.norm());
    }
    // The normal sum points into the interior for the cones used here.
    Point d = Point::zero(dim);
    for (const Point& n : normals) d = d + n;
    double nn = d.norm();
    if (nn == 0) throw std::invalid_argument("degenerate halfspace cone");
    return d * (1.0 / nn);
}

bool ideal_membership(const Point& u, const Point& x, const Scene& scene, double slack) {
    return scene.contains(u, std::max(slack, kMembershipTol)) && scene.order.leq(u, x, slack);
}

bool filter_membership(const Point& u, const Point& x, const Scene& scene, double slack) {
    return scene.contains(u, std::max(slack, kMembershipTol)) && scene.order.leq(x, u, slack);
}

bool down_closure_membership(const Point& u, std::span<const Point> A, const Scene& scene) {
    if (A.empty()) throw std::invalid_argument("down closure of an empty set");
    if (!scene.contains(u)) return false;
    for (const Point& x : A)
        if (scene.order.leq(u, x)) return true;
    return false;
}

bool up_closure_membership(const Point& u, std::span<const Point> A, const Scene& scene) {
    if (A.empty()) throw std::invalid_argument("up closure of an empty set");
    if (!scene.contains(u)) return false;
    for (const Point& x : A)
        if (scene.order.leq(x, u)) return true;
    return false;
}

namespace {

// Shared frontier extraction for meet (below = true) and join oracles.
MeetResult extreme_bound(const Point& x, const Point& y, const Scene& scene, const Window& grid,
                         bool below, const PointCloud* cached) {
    require_same_dim(x, y);
    if (!scene.contains(x) || !scene.contains(y))
        throw std::invalid_argument("meet/join arguments must lie in the scene");

    PointCloud local;
    if (!cached) local = oracle_scene_cloud(scene, grid);
    const PointCloud& cloud = cached ? *cached : local;
    std::vector<Point> cands;
    for (const auto& p : cloud.pts) {
        bool ok = below ? (scene.order.leq(p, x) && scene.order.leq(p, y))
                        : (scene.order.leq(x, p) && scene.order.leq(y, p));
        if (ok) cands.push_back(p);
    }

    MeetResult res;
    if (cands.empty()) {
        // Distinguish a semantically empty bound set from a window that
        // clipped the candidate region away.
        Point corner = below ? x.min_with(y) : x.max_with(y);
        bool region_in_window = true;
        for (int i = 0; i < corner.dim(); ++i) {
            if (below && corner[i] <= grid.box.lo[i]) region_in_window = false;
            if (!below && corner[i] >= grid.box.hi[i]) region_in_window = false;
        }
        res.status = region_in_window ? MeetStatus::NoMeet : MeetStatus::WindowInconclusive;
        res.note = region_in_window ? "no sampled bound exists"
                                    : "window excluded all candidate bounds; enlarge the window";
        return res;
    }

    // Sort by coordinate sum so dominators precede what they dominate.
    std::sort(cands.begin(), cands.end(), [&](const Point& a, const Point& b) {
        double sa = 0, sb = 0;
        for (int i = 0; i < a.dim(); ++i) {
            sa += a[i];
            sb += b[i];
        }
        if (sa != sb) return below ? sa > sb : sa < sb;
        return b.lex_less(a);
    });
    std::vector<Point> frontier;
    for (const auto& p : cands) {
        bool dominated = false;
        for (const auto& f : frontier) {
            if (p == f) { dominated = true; break; }
            bool covered = below ? scene.order.leq(p, f) : scene.order.leq(f, p);
            if (covered) { dominated = true; break; }
        }
        if (!dominated) frontier.push_back(p);
    }

    res.status = MeetStatus::Found;
    // Quantization splits the extreme bound into a staircase of incomparable
    // candidates; their componentwise envelope sits within one pitch of the
    // true bound whenever one exists. Return the sample closest to it and
    // flag only when no sample comes near the envelope.
    Point envelope = frontier.front();
    for (const auto& f : frontier) envelope = below ? envelope.max_with(f) : envelope.min_with(f);
    res.bound_estimate = envelope;
    double gap = std::numeric_limits<double>::infinity();
    for (const auto& f : frontier) {
        double d = f.dist_inf(envelope);
        if (d < gap || (d == gap && res.point.lex_less(f))) {
            gap = d;
            res.point = f;
        }
    }
    res.frontier_spread = gap;
    if (gap > grid.max_pitch()) {
        res.not_semilattice_at_resolution = true;
        res.note = "no maximal candidate approaches the candidate envelope";
    }
    return res;
}

}  // namespace

MeetResult meet_brute(const Point& x, const Point& y, const Scene& scene, const Window& grid,
                      const PointCloud* scene_cloud) {
    return extreme_bound(x, y, scene, grid, true, scene_cloud);
}

MeetResult join_brute(const Point& x, const Point& y, const Scene& scene, const Window& grid,
                      const PointCloud* scene_cloud) {
    return extreme_bound(x, y, scene, grid, false, scene_cloud);
}

PointCloud oracle_scene_cloud(const Scene& scene, const Window& grid) {
    ImplicitClosedSet everything = whole_scene_set(scene);
    everything.use_scene_landmarks = false;  // annotations are not grid samples
    return sample(everything, grid);
}

Point meet_ex42(const Point& x, const Point& y) {
    auto inside = [](const Point& p) {
        return p.dim() == 3 && p[0] <= 0 && p[1] <= 0 && p[2] <= 0 &&
               p[0] * p[1] + p[2] - 1.0 <= kMembershipTol;
    };
    if (!inside(x) || !inside(y)) throw std::invalid_argument("meet_ex42: input outside the solid");
    double u = std::min(x[0], y[0]);
    double v = std::min(x[1], y[1]);
    double w = std::min(x[2], y[2]);
    if (u * v + w - 1.0 <= 0) return Point{u, v, w};
    return Point{u, v, 1.0 - u * v};
}

Point join_ex35(const Point& x, const Point& y) {
    auto in_t1 = [](const Point& p) {
        return p[2] == 0 && -1 - kMembershipTol <= p[1] && p[1] <= p[0] + kMembershipTol &&
               p[0] <= kMembershipTol;
    };
    auto in_t2 = [](const Point& p) {
        return std::abs(p[0] - p[1]) <= kMembershipTol && -1 - kMembershipTol <= p[0] &&
               p[0] <= kMembershipTol && p[0] <= p[2] + kMembershipTol && p[2] <= kMembershipTol;
    };
    if (x.dim() != 3 || y.dim() != 3 || (!in_t1(x) && !in_t2(x)) || (!in_t1(y) && !in_t2(y)))
        throw std::invalid_argument("join_ex35: input outside the two triangles");
    // The componentwise join always lands back in T1 or T2: same-triangle
    // pairs stay put, and cross pairs have w-join 0 with v-join <= u-join.
    Point j = x.max_with(y);
    return j;
}

}  // namespace hyperfell
