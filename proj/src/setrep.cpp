#include "hyperfell/setrep.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "hyperfell/util.hpp"

namespace hyperfell {

namespace {

constexpr int kDyadicDepth = 24;
constexpr std::size_t kCurveSampleCap = 4096;

double segment_point_dist(const Point& p, const Point& a, const Point& b) {
    Point d = b - a;
    double len2 = d.norm2();
    if (len2 == 0) return p.dist(a);
    double t = std::clamp((p - a).dot(d) / len2, 0.0, 1.0);
    return p.dist(a + d * t);
}

// Uniform parameter scan split into in-window runs, each resampled by chord
// length, plus dyadic refinement toward both parameter ends.
void sample_curve(const Curve& c, const ImplicitClosedSet& set, const Window& window,
                  std::vector<Point>& out, bool authoritative, bool clip) {
    const Box& box = window.box;
    const double span = c.t1 - c.t0;
    if (!(span > 0)) return;
    const int n0 = std::max(64, 8 * window.resolution);
    const double spacing = window.min_pitch() / 4.0;

    const double end_shim = std::ldexp(1.0, -kDyadicDepth);
    auto param = [&](int i) {
        double t = c.t0 + span * (static_cast<double>(i) / n0);
        if (i == 0 && c.open0) t = c.t0 + span * end_shim;
        if (i == n0 && c.open1) t = c.t1 - span * end_shim;
        return t;
    };

    auto emit = [&](const Point& p) {
        if (p.dim() != box.dim()) return;
        if (!p.finite()) return;
        if (!box.contains(p, 0.0)) return;
        if (!authoritative && !set.contains(p)) return;
        out.push_back(p);
    };

    // collect runs of in-window parameters
    std::vector<std::pair<double, double>> runs;
    bool in_run = false;
    double run_start = 0;
    double prev_t = 0;
    for (int i = 0; i <= n0; ++i) {
        double t = param(i);
        Point p = c.map(t);
        bool inside = p.finite() && box.contains(p, 0.0);
        if (inside && !in_run) {
            in_run = true;
            run_start = t;
        } else if (!inside && in_run) {
            in_run = false;
            runs.emplace_back(run_start, prev_t);
        }
        prev_t = t;
    }
    if (in_run) runs.emplace_back(run_start, prev_t);

    for (auto [a, b] : runs) {
        if (!(b > a)) {
            emit(c.map(a));
            continue;
        }
        // chord-length resample of the run
        int fine = std::max(16, n0 / std::max(1, static_cast<int>(runs.size())));
        std::vector<Point> raw;
        raw.reserve(fine + 1);
        std::vector<double> cum(1, 0.0);
        for (int i = 0; i <= fine; ++i) {
            double t = a + (b - a) * (static_cast<double>(i) / fine);
            raw.push_back(c.map(t));
            if (i) cum.push_back(cum.back() + raw[i].dist(raw[i - 1]));
        }
        double total = cum.back();
        std::size_t count = total > 0 ? std::min<std::size_t>(kCurveSampleCap, static_cast<std::size_t>(total / std::max(spacing, 1e-12)) + 2)
                                      : 2;
        for (std::size_t k = 0; k < count; ++k) {
            double target = total * (count > 1 ? static_cast<double>(k) / (count - 1) : 0.0);
            auto it = std::lower_bound(cum.begin(), cum.end(), target);
            std::size_t j = std::min<std::size_t>(cum.size() - 1, static_cast<std::size_t>(it - cum.begin()));
            if (j == 0) {
                emit(raw[0]);
                continue;
            }
            double seg = cum[j] - cum[j - 1];
            double frac = seg > 0 ? (target - cum[j - 1]) / seg : 0.0;
            double t = a + (b - a) * ((j - 1 + frac) / fine);
            emit(c.map(t));
        }
    }

    // dyadic refinement toward the parameter ends: the interesting geometry
    // of thin sets concentrates there, possibly far outside the window.
    auto emit_end = [&](const Point& p) {
        if (p.dim() != box.dim() || !p.finite()) return;
        if (clip && !box.contains(p, 0.0)) return;
        if (!authoritative && !set.contains(p)) return;
        out.push_back(p);
    };
    for (int j = 1; j <= kDyadicDepth; ++j) {
        double off = span * std::ldexp(1.0, -j);
        emit_end(c.map(c.t0 + off));
        emit_end(c.map(c.t1 - off));
    }
    if (!c.open0) emit_end(c.map(c.t0));
    if (!c.open1) emit_end(c.map(c.t1));
}

std::vector<Curve> window_curves(const ImplicitClosedSet& set, const Window& window) {
    std::vector<Curve> cs;
    if (set.curve_gen) cs = set.curve_gen(window.box);
    return cs;
}

class KdTree {
public:
    explicit KdTree(const std::vector<Point>& pts) : pts_(&pts) {
        idx_.resize(pts.size());
        std::iota(idx_.begin(), idx_.end(), std::size_t{0});
        if (!pts.empty()) {
            dim_ = pts.front().dim();
            axis_.assign(pts.size(), 0);
            build(0, pts.size(), 0);
        }
    }

    double nearest_dist2(const Point& q) const {
        double best = std::numeric_limits<double>::infinity();
        search(0, idx_.size(), q, best);
        return best;
    }

private:
    void build(std::size_t lo, std::size_t hi, int depth) {
        if (hi - lo <= 1) return;
        int ax = depth % dim_;
        std::size_t mid = (lo + hi) / 2;
        std::nth_element(idx_.begin() + lo, idx_.begin() + mid, idx_.begin() + hi,
                         [&](std::size_t a, std::size_t b) { return (*pts_)[a][ax] < (*pts_)[b][ax]; });
        axis_[mid] = ax;
        build(lo, mid, depth + 1);
        build(mid + 1, hi, depth + 1);
    }

    void search(std::size_t lo, std::size_t hi, const Point& q, double& best) const {
        if (lo >= hi) return;
        std::size_t mid = (lo + hi) / 2;
        const Point& m = (*pts_)[idx_[mid]];
        best = std::min(best, q.dist2(m));
        if (hi - lo == 1) return;
        int ax = axis_[mid];
        double diff = q[ax] - m[ax];
        if (diff < 0) {
            search(lo, mid, q, best);
            if (diff * diff < best) search(mid + 1, hi, q, best);
        } else {
            search(mid + 1, hi, q, best);
            if (diff * diff < best) search(lo, mid, q, best);
        }
    }

    const std::vector<Point>* pts_;
    std::vector<std::size_t> idx_;
    std::vector<int> axis_;
    int dim_ = 1;
};

double directed_hausdorff2(const std::vector<Point>& from, const KdTree& to_tree) {
    std::vector<double> d2(from.size());
    parallel_for(from.size(), [&](std::size_t i) { d2[i] = to_tree.nearest_dist2(from[i]); });
    double m = 0;
    for (double v : d2) m = std::max(m, v);
    return m;
}

}  // namespace

ImplicitClosedSet whole_scene_set(const Scene& s) {
    return ImplicitClosedSet(s, "scene:" + s.name,
                             [&s](const Point& p, double tol) { return s.contains(p, tol); });
}

ImplicitClosedSet ideal_set(const Scene& s, const Point& x) {
    if (!s.contains(x)) throw std::invalid_argument("ideal anchor outside scene: " + x.str());
    ImplicitClosedSet set(s, "ideal" + x.str(), [&s, x](const Point& p, double tol) {
        return s.contains(p, tol) && s.order.leq(p, x, tol);
    });
    if (s.ideal_edges) {
        set.curve_gen = [&s, x](const Box& win) { return s.ideal_edges(x, win); };
    }
    if (s.ideal_faces) {
        set.patch_gen = [&s, x](const Box& win) { return s.ideal_faces(x, win); };
    }
    set.extra_points.push_back(x);
    return set;
}

ImplicitClosedSet filter_set(const Scene& s, const Point& x) {
    if (!s.contains(x)) throw std::invalid_argument("filter anchor outside scene: " + x.str());
    ImplicitClosedSet set(s, "filter" + x.str(), [&s, x](const Point& p, double tol) {
        return s.contains(p, tol) && s.order.leq(x, p, tol);
    });
    set.extra_points.push_back(x);
    return set;
}

ImplicitClosedSet interval_set(const Scene& s, const Point& b, const Point& a) {
    return ImplicitClosedSet(s, "interval(" + b.str() + "," + a.str() + ")",
                             [&s, b, a](const Point& p, double tol) {
                                 return s.contains(p, tol) && s.order.leq(b, p, tol) && s.order.leq(p, a, tol);
                             });
}

ImplicitClosedSet ball_set(const Scene& s, const Point& center, double radius, bool strict) {
    std::string tag = (strict ? "openball(" : "ball(") + center.str() + "," + fmt_double(radius) + ")";
    ImplicitClosedSet set(s, tag, [&s, center, radius, strict](const Point& p, double tol) {
        if (!s.contains(p, tol)) return false;
        double d = p.dist(center);
        return strict ? d < radius : d <= radius + tol;
    });
    set.extra_points.push_back(center);
    return set;
}

ImplicitClosedSet box_set(const Scene& s, const Box& b) {
    return ImplicitClosedSet(s, "box(" + b.lo.str() + "," + b.hi.str() + ")",
                             [&s, b](const Point& p, double tol) {
                                 return s.contains(p, tol) && b.contains(p, tol);
                             });
}

ImplicitClosedSet curve_set(const Scene& s, Curve c, const std::string& tag) {
    // Membership by distance to a dense polyline of the curve; exact enough
    // for screening, while tests against the set use its closed-form samples.
    auto poly = std::make_shared<std::vector<Point>>();
    const int n = 2048;
    for (int i = 0; i <= n; ++i) {
        double t = c.t0 + (c.t1 - c.t0) * (static_cast<double>(i) / n);
        if ((i == 0 && c.open0) || (i == n && c.open1)) continue;
        Point p = c.map(t);
        if (p.finite()) poly->push_back(p);
    }
    ImplicitClosedSet set(s, tag, [poly](const Point& p, double tol) {
        for (const auto& q : *poly)
            if (p.dist_inf(q) <= std::max(tol, 1e-7)) return true;
        return false;
    });
    set.fixed_curves.push_back(std::move(c));
    set.fixed_curves_authoritative = true;
    set.grid_backed = false;
    set.use_scene_samplers = false;
    return set;
}

ImplicitClosedSet segment_band_set(const Scene& s, const Point& a, const Point& b, double eps) {
    ImplicitClosedSet set(s, "band(" + a.str() + "," + b.str() + "," + fmt_double(eps) + ")",
                          [&s, a, b, eps](const Point& p, double tol) {
                              return s.contains(p, tol) && segment_point_dist(p, a, b) < eps;
                          });
    set.fixed_curves.push_back(
        {"band_axis", [a, b](double t) { return a + (b - a) * t; }, 0.0, 1.0, true, true});
    set.use_scene_samplers = false;
    return set;
}

namespace {

void sample_patch(const Patch& patch, const ImplicitClosedSet& set, const Window& window,
                  std::vector<Point>& out) {
    const int pr = 2 * window.resolution;  // stay below the grid pitch
    for (int i = 0; i <= pr; ++i) {
        for (int j = 0; j <= pr; ++j) {
            double a = static_cast<double>(i) / pr;
            double b = static_cast<double>(j) / pr;
            if (patch.triangular && a + b > 1.0) continue;
            Point p = patch.map(a, b);
            if (p.finite() && window.box.contains(p) && set.contains(p)) out.push_back(p);
        }
    }
}

}  // namespace

PointCloud sample(const ImplicitClosedSet& set, const Window& window, bool clip_analytic) {
    if (!window.valid()) throw std::invalid_argument("invalid window");
    const Scene& scene = set.scene();
    PointCloud cloud;
    cloud.provenance = set.tag() + " @res" + std::to_string(window.resolution);

    if (set.grid_backed) {
        for_each_grid_node(window, [&](const Point& p) {
            if (set.contains(p)) cloud.pts.push_back(p);
        });
    }
    cloud.grid_count = cloud.pts.size();

    for (const Curve& c : set.fixed_curves)
        sample_curve(c, set, window, cloud.pts, set.fixed_curves_authoritative, clip_analytic);
    for (const Curve& c : window_curves(set, window))
        sample_curve(c, set, window, cloud.pts, false, clip_analytic);
    if (set.use_scene_samplers)
        for (const Curve& c : scene.curves) sample_curve(c, set, window, cloud.pts, false, clip_analytic);

    if (set.patch_gen)
        for (const Patch& patch : set.patch_gen(window.box)) sample_patch(patch, set, window, cloud.pts);

    for (const Point& p : set.extra_points)
        if (p.dim() == scene.dim && window.box.contains(p) && set.contains(p)) cloud.pts.push_back(p);

    if (set.use_scene_samplers) {
        for (const Patch& patch : scene.patches) sample_patch(patch, set, window, cloud.pts);
        // point atoms are part of the space itself; landmarks are annotations
        for (const Point& p : scene.point_atoms)
            if (window.box.contains(p) && set.contains(p)) cloud.pts.push_back(p);
        if (set.use_scene_landmarks) {
            for (const Landmark& lm : scene.landmarks) {
                if (lm.exterior || !window.box.contains(lm.point)) continue;
                bool atom_dup = false;
                for (const Point& p : scene.point_atoms)
                    if (p == lm.point) atom_dup = true;
                if (!atom_dup && set.contains(lm.point)) cloud.pts.push_back(lm.point);
            }
        }
    }
    return cloud;
}

double distance_to_cloud(const Point& z, const PointCloud& cloud) {
    if (cloud.empty()) throw std::invalid_argument("distance_to_cloud: empty cloud");
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : cloud.pts) best = std::min(best, z.dist2(p));
    return std::sqrt(best);
}

double hausdorff_distance(const PointCloud& a, const PointCloud& b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("hausdorff_distance: empty cloud");
    if (a.size() * b.size() <= 65536) {
        double dab = 0, dba = 0;
        std::vector<double> minb(b.size(), std::numeric_limits<double>::infinity());
        for (const auto& p : a.pts) {
            double m = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < b.size(); ++j) {
                double d = p.dist2(b.pts[j]);
                m = std::min(m, d);
                minb[j] = std::min(minb[j], d);
            }
            dab = std::max(dab, m);
        }
        for (double v : minb) dba = std::max(dba, v);
        return std::sqrt(std::max(dab, dba));
    }
    KdTree ta(a.pts), tb(b.pts);
    double dab = directed_hausdorff2(a.pts, tb);
    double dba = directed_hausdorff2(b.pts, ta);
    return std::sqrt(std::max(dab, dba));
}

DivergenceReport hausdorff_windowed(const ImplicitClosedSet& a, const ImplicitClosedSet& b,
                                    std::span<const Window> windows, const DivergenceConfig& cfg) {
    if (windows.size() < 3) throw std::invalid_argument("hausdorff_windowed: need >= 3 windows");
    for (std::size_t k = 1; k < windows.size(); ++k)
        if (!(windows[k].box.max_extent() > windows[k - 1].box.max_extent()))
            throw std::invalid_argument("hausdorff_windowed: window extents must grow strictly");

    DivergenceReport rep;
    for (const Window& w : windows) {
        PointCloud ca = sample(a, w);
        PointCloud cb = sample(b, w);
        rep.pitches.push_back(w.max_pitch());
        rep.radii.push_back(w.box.max_extent() / 2.0);
        if (ca.empty() || cb.empty()) {
            rep.verdict = DivergenceVerdict::Inconclusive;
            rep.note = "empty intersection with window of extent " + fmt_double(w.box.max_extent());
            rep.values.push_back(std::numeric_limits<double>::quiet_NaN());
            return rep;
        }
        rep.values.push_back(hausdorff_distance(ca, cb));
    }

    const auto& v = rep.values;
    const std::size_t n = v.size();
    double vmax = *std::max_element(v.begin(), v.end());

    bool growing = true;
    for (std::size_t k = 0; k + 1 < n; ++k)
        if (!(v[k] > 0) || v[k + 1] < cfg.growth_factor * v[k]) growing = false;

    if (v.back() > 0) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t k = 0; k < n; ++k) {
            double x = rep.radii[k] / rep.radii.back();
            double y = v[k] / v.back();
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        double denom = n * sxx - sx * sx;
        rep.growth_slope = denom != 0 ? (n * sxy - sx * sy) / denom : 0.0;
    }

    if (vmax >= cfg.h_div || (growing && rep.growth_slope >= cfg.c_div)) {
        rep.verdict = DivergenceVerdict::Divergent;
        rep.note = vmax >= cfg.h_div ? "exceeded divergence cap" : "values grow with the window radius";
        return rep;
    }
    double pitch_floor = rep.pitches[n - 2] + rep.pitches[n - 1];
    double band = std::max(cfg.stabilize_rel * std::max(std::abs(v[n - 1]), std::abs(v[n - 2])), pitch_floor);
    if (std::abs(v[n - 1] - v[n - 2]) <= band) {
        rep.verdict = DivergenceVerdict::Bounded;
        rep.note = "values stabilized over the last two windows";
        return rep;
    }
    rep.verdict = DivergenceVerdict::Inconclusive;
    rep.note = "neither stabilized nor growing";
    return rep;
}

PointCloud boundary_cloud(const ImplicitClosedSet& set, const Scene& scene, const Window& window) {
    (void)scene;
    if (!window.valid()) throw std::invalid_argument("invalid window");
    const int n = window.box.dim();
    const int res = window.resolution;

    std::vector<char> member(window.node_count());
    std::size_t flat = 0;
    for_each_grid_node(window, [&](const Point& p) { member[flat++] = set.contains(p) ? 1 : 0; });

    // node index strides, row-major with the last axis fastest
    std::array<std::size_t, kMaxDim> stride{};
    stride[n - 1] = 1;
    for (int i = n - 2; i >= 0; --i) stride[i] = stride[i + 1] * static_cast<std::size_t>(res);

    PointCloud out;
    out.provenance = "boundary:" + set.tag();
    std::array<int, kMaxDim> idx{};
    bool done = false;
    while (!done) {
        std::size_t base = 0;
        for (int i = 0; i < n; ++i) base += stride[i] * static_cast<std::size_t>(idx[i]);
        bool any = false, all = true;
        for (int corner = 0; corner < (1 << n); ++corner) {
            std::size_t off = base;
            for (int i = 0; i < n; ++i)
                if (corner & (1 << i)) off += stride[i];
            if (member[off]) any = true;
            else all = false;
        }
        if (any && !all) {
            Point c = Point::zero(n);
            for (int i = 0; i < n; ++i) c[i] = window.coord(i, idx[i]) + window.pitch(i) * 0.5;
            out.pts.push_back(c);
        }
        int axis = n - 1;
        while (axis >= 0) {
            if (++idx[axis] < res - 1) break;
            idx[axis] = 0;
            --axis;
        }
        if (axis < 0) done = true;
    }
    return out;
}

CompactnessReport compactness_probe(const ImplicitClosedSet& set, const Scene& scene,
                                    std::span<const Window> windows) {
    if (windows.size() < 2) throw std::invalid_argument("compactness_probe: need >= 2 windows");
    CompactnessReport rep;

    std::vector<PointCloud> clouds;
    clouds.reserve(windows.size());
    for (const Window& w : windows) clouds.push_back(sample(set, w));
    for (const auto& c : clouds) rep.cloud_sizes.push_back(c.size());

    bool all_empty = true;
    for (const auto& c : clouds)
        if (!c.empty()) all_empty = false;
    if (all_empty) {
        rep.status = CompactnessStatus::CompactAtResolution;
        rep.note = "empty set (empty-set convention)";
        return rep;
    }

    bool shell_everywhere = true;
    Point far_witness;
    for (std::size_t k = 0; k < windows.size(); ++k) {
        double limit = 2.0 * windows[k].max_pitch();
        bool touches = false;
        for (const auto& p : clouds[k].pts) {
            if (windows[k].box.shell_distance(p) <= limit) {
                touches = true;
                far_witness = p;
                break;
            }
        }
        if (!touches) {
            shell_everywhere = false;
            break;
        }
    }
    if (shell_everywhere) {
        rep.status = CompactnessStatus::Unbounded;
        rep.witness = far_witness;
        rep.note = "cloud touches the outer two-pitch shell of every window";
        return rep;
    }

    // Closure-escape via curve limits: a closed-form sampler approaching a
    // finite open-end limit outside the scene is an accumulation escape.
    {
        const Window& w = windows.back();
        std::vector<Curve> cs = set.fixed_curves;
        for (const Curve& c : window_curves(set, w)) cs.push_back(c);
        if (set.use_scene_samplers)
            for (const Curve& c : set.scene().curves) cs.push_back(c);
        for (const Curve& c : cs) {
            double span = c.t1 - c.t0;
            for (int end = 0; end < 2; ++end) {
                if (end == 0 && !c.open0) continue;
                if (end == 1 && !c.open1) continue;
                double t_limit = end == 0 ? c.t0 : c.t1;
                double t_near = end == 0 ? c.t0 + span * std::ldexp(1.0, -24)
                                         : c.t1 - span * std::ldexp(1.0, -24);
                Point limit = c.map(t_limit);
                Point near_pt = c.map(t_near);
                if (!limit.finite() || !near_pt.finite()) continue;
                if (!set.contains(near_pt) && !set.has_closed_form()) continue;
                if (near_pt.dist(limit) > 1e-3 * std::max(1.0, limit.norm())) continue;
                if (!scene.contains(limit, kMembershipTol)) {
                    rep.status = CompactnessStatus::ClosureEscape;
                    rep.witness = limit;
                    rep.note =
                        "closed-form samples accumulate toward a point failing scene membership";
                    return rep;
                }
            }
        }
    }

    // Closure-escape scan on the largest window: member samples whose axis
    // neighbor leaves the scene; bisect the set membership along that step
    // and test whether the flip point itself fails scene membership.
    const Window& w = windows.back();
    const PointCloud& cloud = clouds.back();
    const int n = w.box.dim();
    int bisections = 0;
    for (const auto& p : cloud.pts) {
        for (int axis = 0; axis < n && bisections < 512; ++axis) {
            for (int dir = -1; dir <= 1; dir += 2) {
                Point q = p;
                q[axis] += dir * w.pitch(axis);
                if (scene.contains(q, kMembershipTol)) continue;
                ++bisections;
                Point inside = p, outside = q;
                for (int it = 0; it < 60; ++it) {
                    Point mid = (inside + outside) * 0.5;
                    if (set.contains(mid)) inside = mid;
                    else outside = mid;
                }
                if (!scene.contains(outside, kMembershipTol)) {
                    rep.status = CompactnessStatus::ClosureEscape;
                    rep.witness = outside;
                    rep.note = "member samples accumulate toward a point failing scene membership";
                    return rep;
                }
            }
        }
        if (bisections >= 512) break;
    }

    rep.status = CompactnessStatus::CompactAtResolution;
    rep.note = "bounded inside the windows, no closure escape found";
    return rep;
}

void write_cloud_csv(const PointCloud& cloud, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    int dim = cloud.empty() ? 0 : cloud.pts.front().dim();
    for (int i = 0; i < dim; ++i) out << (i ? "," : "") << "x" << (i + 1);
    out << "\n";
    for (const auto& p : cloud.pts) {
        for (int i = 0; i < dim; ++i) out << (i ? "," : "") << fmt_double(p[i]);
        out << "\n";
    }
}

std::vector<Window> growing_windows(const Scene& scene, std::span<const double> radii, int resolution) {
    std::vector<Window> ws;
    for (double r : radii) {
        Box b = Box::cube(scene.dim, -r, r);
        if (scene.window_clamp) b = b.intersect(*scene.window_clamp);
        ws.push_back(Window{b, resolution});
    }
    return ws;
}

}  // namespace hyperfell
