#include "hyperfell/props.hpp"

#include <algorithm>
#include <cmath>

#include "hyperfell/util.hpp"

namespace hyperfell {

namespace {

// ∞-ball probe offsets at one pitch (3^n - 1 of them).
std::vector<Point> pitch_offsets(int dim, double pitch) {
    std::vector<Point> offs;
    int total = 1;
    for (int i = 0; i < dim; ++i) total *= 3;
    for (int code = 0; code < total; ++code) {
        int c = code;
        Point o = Point::zero(dim);
        bool all_zero = true;
        for (int i = 0; i < dim; ++i) {
            int digit = c % 3;
            c /= 3;
            o[i] = (digit - 1) * pitch;
            if (digit != 1) all_zero = false;
        }
        if (!all_zero) offs.push_back(o);
    }
    return offs;
}

ImplicitClosedSet order_box(const Scene& scene, const Point& b, const Point& a) {
    return interval_set(scene, b, a);
}

}  // namespace

const char* predicate_status_name(PredicateStatus s) {
    switch (s) {
        case PredicateStatus::PassedAtResolution: return "PASSED_AT_RESOLUTION";
        case PredicateStatus::Falsified: return "FALSIFIED";
        case PredicateStatus::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

const char* classify_status_name(ClassifyStatus s) {
    switch (s) {
        case ClassifyStatus::UpperSingular: return "UPPER_SINGULAR";
        case ClassifyStatus::UpperCompactBounded: return "UPPER_COMPACT_BOUNDED";
        case ClassifyStatus::Neither: return "NEITHER";
        case ClassifyStatus::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

bool pitch_interior(const Scene& scene, const ImplicitClosedSet& set, const Point& p, double pitch) {
    if (!set.contains(p)) return false;
    for (const Point& o : pitch_offsets(scene.dim, pitch)) {
        Point q = p + o;
        if (!scene.contains(q, kMembershipTol)) continue;  // relative topology
        if (!set.contains(q)) return false;
    }
    return true;
}

PredicateReport check_decreasing_continuous(const Scene& scene, std::span<const Point> points,
                                            std::span<const HitSet> opens, const Window& window) {
    PredicateReport rep;
    rep.predicate = "decreasing_continuous";
    rep.scene = scene.name;
    rep.resolution = window.resolution;
    rep.pitch = window.max_pitch();

    PointCloud scene_cloud = sample(whole_scene_set(scene), window);
    std::vector<PointCloud> open_clouds;
    for (const HitSet& o : opens) open_clouds.push_back(sample(o.set, window));

    const double pitch = window.max_pitch();
    for (const Point& x : points) {
        if (!scene.contains(x)) continue;
        ImplicitClosedSet xdown = ideal_set(scene, x);
        for (std::size_t oi = 0; oi < opens.size(); ++oi) {
            const PointCloud& oc = open_clouds[oi];
            if (oc.empty()) continue;
            bool x_hits = false;
            for (const auto& p : oc.pts)
                if (xdown.contains(p, kMembershipTol)) {
                    x_hits = true;
                    break;
                }
            if (!x_hits) continue;  // precondition x-down ∩ O != ∅
            ++rep.cases_tested;

            auto ball_ok = [&](double delta, Point* bad) {
                for (const auto& y : scene_cloud.pts) {
                    if (y.dist_inf(x) > delta) continue;
                    ImplicitClosedSet ydown = ideal_set(scene, y);
                    bool y_hits = false;
                    for (const auto& p : oc.pts)
                        if (ydown.contains(p, kMembershipTol)) {
                            y_hits = true;
                            break;
                        }
                    if (!y_hits) {
                        if (bad) *bad = y;
                        return false;
                    }
                }
                return true;
            };

            int jmax = 0;
            while (pitch * std::ldexp(1.0, jmax + 1) < 0.5 * window.box.max_extent()) ++jmax;
            bool passed = false;
            for (int j = jmax; j >= 0 && !passed; --j) passed = ball_ok(pitch * std::ldexp(1.0, j), nullptr);
            if (!passed) {
                Point bad;
                if (!ball_ok(pitch, &bad)) {
                    rep.status = PredicateStatus::Falsified;
                    rep.witness = {x, bad};
                    // re-validate at double resolution: the failing y keeps failing
                    Window fine{window.box, window.resolution * 2};
                    PointCloud ofine = sample(opens[oi].set, fine);
                    ImplicitClosedSet ydown = ideal_set(scene, bad);
                    bool still_fails = true;
                    for (const auto& p : ofine.pts)
                        if (ydown.contains(p, kMembershipTol)) still_fails = false;
                    rep.witness_revalidated = still_fails;
                    rep.note = "y-down misses the open set arbitrarily close to x";
                    return rep;
                }
            }
        }
    }
    if (rep.cases_tested == 0) {
        rep.status = PredicateStatus::Inconclusive;
        rep.note = "no (x, O) pair with x-down meeting O";
        return rep;
    }
    rep.status = PredicateStatus::PassedAtResolution;
    return rep;
}

PredicateReport check_proper_inclusion(const Scene& scene,
                                       std::span<const std::pair<Point, Point>> pairs,
                                       const Window& window) {
    PredicateReport rep;
    rep.predicate = "proper_inclusion";
    rep.scene = scene.name;
    rep.resolution = window.resolution;
    rep.pitch = window.max_pitch();
    const double pitch = window.max_pitch();

    for (const auto& [x, y] : pairs) {
        if (!scene.contains(x) || !scene.contains(y) || !scene.order.leq(y, x)) continue;
        ImplicitClosedSet xdown = ideal_set(scene, x);
        if (pitch_interior(scene, xdown, y, pitch)) {
            ++rep.cases_tested;
            PointCloud ycloud = sample(ideal_set(scene, y), window);
            for (const auto& z : ycloud.pts) {
                if (!pitch_interior(scene, xdown, z, pitch)) {
                    rep.status = PredicateStatus::Falsified;
                    rep.witness = {x, y, z};
                    Window fine{window.box, window.resolution * 2};
                    rep.witness_revalidated = !pitch_interior(scene, xdown, z, fine.max_pitch());
                    rep.note = "a point of y-down is not interior to x-down";
                    return rep;
                }
            }
        }
        ImplicitClosedSet yup = filter_set(scene, y);
        if (pitch_interior(scene, yup, x, pitch)) {
            ++rep.cases_tested;
            PointCloud xcloud = sample(filter_set(scene, x), window);
            for (const auto& z : xcloud.pts) {
                if (!pitch_interior(scene, yup, z, pitch)) {
                    rep.status = PredicateStatus::Falsified;
                    rep.witness = {x, y, z};
                    Window fine{window.box, window.resolution * 2};
                    rep.witness_revalidated = !pitch_interior(scene, yup, z, fine.max_pitch());
                    rep.note = "a point of x-up is not interior to y-up";
                    return rep;
                }
            }
        }
    }
    if (rep.cases_tested == 0) {
        rep.status = PredicateStatus::Inconclusive;
        rep.note = "no pair with y interior to x-down";
        return rep;
    }
    rep.status = PredicateStatus::PassedAtResolution;
    return rep;
}

PredicateReport check_dense_boundaries(const Scene& scene, std::span<const Point> samples,
                                       const Window& window, bool strict_neighborhood) {
    PredicateReport rep;
    rep.predicate = "dense_boundaries";
    rep.scene = scene.name;
    rep.resolution = window.resolution;
    rep.pitch = window.max_pitch();

    PointCloud scene_cloud = sample(whole_scene_set(scene), window);
    const double r_u = 0.25 * window.box.max_extent();

    for (const Point& x : samples) {
        if (!scene.contains(x)) continue;
        auto box = lemma32_box(scene, x, x, r_u, window);
        if (!box) continue;
        ImplicitClosedSet interval = order_box(scene, box->b, box->a);
        if (strict_neighborhood) {
            // the interval must stay inside the chosen neighborhood ball
            PointCloud ic = sample(interval, window);
            bool inside = true;
            for (const auto& p : ic.pts)
                if (p.dist(x) > r_u) inside = false;
            if (!inside) continue;
        }

        // interior z candidates and exterior comparable y candidates
        std::vector<Point> zs, ys;
        for (const auto& p : scene_cloud.pts) {
            if (zs.size() < 8 && pitch_interior(scene, interval, p, window.max_pitch())) zs.push_back(p);
            else if (!interval.contains(p)) ys.push_back(p);
        }
        int pairs_done = 0;
        for (const auto& z : zs) {
            for (const auto& y : ys) {
                if (pairs_done >= 12) break;
                bool y_le_z = scene.order.leq(y, z);
                bool z_le_y = scene.order.leq(z, y);
                if (!y_le_z && !z_le_y) continue;
                ++pairs_done;
                ++rep.cases_tested;
                Point u = lemma33_boundary_point(y, z, box->a, box->b, scene);
                const Point& lo = y_le_z ? y : z;
                const Point& hi = y_le_z ? z : y;
                if (!scene.order.leq(lo, u, kMembershipTol) || !scene.order.leq(u, hi, kMembershipTol)) {
                    rep.status = PredicateStatus::Falsified;
                    rep.witness = {y, u, z};
                    rep.witness_revalidated = true;  // order chain is resolution-free
                    rep.note = "boundary point misses the order chain";
                    return rep;
                }
            }
        }
    }
    if (rep.cases_tested == 0) {
        rep.status = PredicateStatus::Inconclusive;
        rep.note = "no comparable (y, z) pairs across the order-box boundary";
        return rep;
    }
    rep.status = PredicateStatus::PassedAtResolution;
    return rep;
}

Classification classify_point(const Scene& scene, const Point& x, std::span<const double> ball_radii,
                              const Window& window) {
    if (!scene.contains(x)) throw std::invalid_argument("classify_point: x outside scene");
    Classification cls;
    PointCloud scene_cloud = sample(whole_scene_set(scene), window);

    // ---- upper singular branch ----
    // For each neighborhood ball O, look for a sub-ball O1 whose members are
    // dominated by nothing outside O1.
    bool singular_all = true;
    for (double r : ball_radii) {
        bool some_o1_clean = false;
        for (int j = 0; j <= 5 && !some_o1_clean; ++j) {
            double r1 = r * std::ldexp(1.0, -j);
            std::vector<Point> inside;
            for (const auto& p : scene_cloud.pts)
                if (p.dist(x) < r1) inside.push_back(p);
            if (scene.contains(x)) inside.push_back(x);
            if (inside.empty()) continue;
            bool found_dominator = false;
            // landmark dominators first, so witnesses are the named points;
            // among dominated members prefer the componentwise-largest one
            auto try_dominator = [&](const Point& y) {
                if (y.dist(x) < r1 || !scene.contains(y, kMembershipTol)) return false;
                const Point* best = nullptr;
                double best_sum = -std::numeric_limits<double>::infinity();
                for (const auto& u : inside) {
                    if (!scene.order.leq(u, y)) continue;
                    double sum = 0;
                    for (int i = 0; i < u.dim(); ++i) sum += u[i];
                    if (sum > best_sum) {
                        best_sum = sum;
                        best = &u;
                    }
                }
                if (!best) return false;
                if (!cls.dominating_pair) cls.dominating_pair = {*best, y};
                return true;
            };
            for (const auto& lm : scene.landmarks)
                if (!lm.exterior && try_dominator(lm.point)) found_dominator = true;
            if (!found_dominator) {
                Point dir = scene.order.interior_direction(scene.dim);
                for (double step : {1.5 * r1, 3.0 * r1, 6.0 * r1}) {
                    if (try_dominator(x + dir * step)) found_dominator = true;
                    for (int axis = 0; axis < scene.dim && !found_dominator; ++axis) {
                        Point y = x;
                        y[axis] += step;
                        if (try_dominator(y)) found_dominator = true;
                    }
                    if (found_dominator) break;
                }
            }
            if (!found_dominator)
                for (const auto& y : scene_cloud.pts)
                    if (try_dominator(y)) {
                        found_dominator = true;
                        break;
                    }
            if (!found_dominator) {
                some_o1_clean = true;
                cls.singular_o1_radius = r1;
            }
        }
        if (!some_o1_clean) singular_all = false;
    }
    cls.singular_holds = singular_all && !ball_radii.empty();

    // ---- upper compact bounded branch ----
    // The box needs a full pitch of interior room, so certify with the
    // smallest neighborhood the resolution can support.
    double r_small = ball_radii.empty() ? 0.1 * window.box.max_extent() : ball_radii.back();
    r_small = std::max(r_small, 5.0 * window.max_pitch());
    auto box = lemma32_box(scene, x, x, r_small, window);
    if (box) {
        cls.box_a = box->a;
        cls.box_b = box->b;
        E1Probe probe = e1_compactness(scene, box->a, box->b, window.max_pitch());
        cls.e1_nonempty = probe.nonempty;
        if (cls.e1_nonempty) {
            cls.e1_certificate = probe.certificate;
            cls.ucb_holds = probe.certificate.status == CompactnessStatus::CompactAtResolution;
        }
    }

    if (cls.singular_holds) {
        cls.status = ClassifyStatus::UpperSingular;
    } else if (cls.ucb_holds) {
        cls.status = ClassifyStatus::UpperCompactBounded;
    } else {
        cls.status = ClassifyStatus::Neither;
        cls.note = box ? "singularity falsified and E1 fails compactness"
                       : "singularity falsified and no interior order box exists";
    }
    return cls;
}

BoundReport lemma31_bound(const Point& a, const ConeOrder& order, std::span<const Window> windows) {
    if (windows.empty()) throw std::invalid_argument("lemma31_bound: need windows");
    int dim = a.dim();
    Point origin = Point::zero(dim);
    if (!order.leq(origin, a)) throw std::invalid_argument("lemma31_bound: a must lie in the cone");

    Scene ambient = ambient_scene(dim, order, windows.back().box);
    Point neg_a = origin - a;
    ImplicitClosedSet interval = interval_set(ambient, neg_a, a);

    CompactnessReport cert = compactness_probe(interval, ambient, windows);
    BoundReport rep;
    if (cert.status == CompactnessStatus::Unbounded) {
        rep.status = BoundStatus::UnboundedEvidence;
        if (cert.witness) rep.witness = *cert.witness;
        return rep;
    }
    PointCloud cloud = sample(interval, windows.back());
    for (const auto& p : cloud.pts) {
        double n = p.norm();
        if (n > rep.radius) {
            rep.radius = n;
            rep.witness = p;
        }
    }
    rep.status = BoundStatus::Bounded;
    return rep;
}

std::optional<BoxWitness> lemma32_box(const Scene& scene, const Point& x, const Point& u_center,
                                      double u_radius, const Window& window) {
    const int dim = scene.dim;
    Point d = scene.order.interior_direction(dim);
    const double pitch = window.max_pitch();
    double t = 0.9 * u_radius;
    for (int iter = 0; iter < 60; ++iter, t *= 0.8) {
        Point a = x + d * t;
        Point b = x - d * t;
        if (!scene.contains(a) || !scene.contains(b)) continue;
        if (a.dist(u_center) >= u_radius || b.dist(u_center) >= u_radius) continue;
        ImplicitClosedSet interval = order_box(scene, b, a);
        // sampled box must stay inside U
        Box sub{b.min_with(a), b.max_with(a)};
        for (int i = 0; i < dim; ++i) {
            sub.lo[i] -= pitch;
            sub.hi[i] += pitch;
        }
        Window subw{sub, 12};
        PointCloud cloud = sample(interval, subw);
        bool inside_u = true;
        for (const auto& p : cloud.pts)
            if (p.dist(u_center) >= u_radius) {
                inside_u = false;
                break;
            }
        if (!inside_u) continue;
        if (!pitch_interior(scene, interval, x, pitch)) continue;
        return BoxWitness{a, b, t};
    }
    return std::nullopt;
}

Point lemma33_boundary_point(const Point& c, const Point& x, const Point& a, const Point& b,
                             const Scene& scene) {
    ImplicitClosedSet interval = order_box(scene, b, a);
    if (interval.contains(c)) throw std::invalid_argument("lemma33: c must lie outside the order box");
    if (!interval.contains(x)) throw std::invalid_argument("lemma33: x must lie inside the order box");
    if (!scene.order.leq(c, x) && !scene.order.leq(x, c))
        throw std::invalid_argument("lemma33: endpoints must be order comparable");

    double lo = 0.0, hi = 1.0;  // p(0) = c outside, p(1) = x inside
    for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        Point p = c + (x - c) * mid;
        // exact indicator: the flip must sit on the geometric boundary, not
        // the tolerance-inflated one
        if (interval.contains(p, 0.0)) hi = mid;
        else lo = mid;
    }
    Point u = c + (x - c) * hi;
    // clamp into the order interval of the endpoints so the chain is exact
    Point lo_pt = c.min_with(x), hi_pt = c.max_with(x);
    u = u.max_with(lo_pt).min_with(hi_pt);
    return u;
}

ImplicitClosedSet e1_set(const Scene& scene, const Point& a, const Point& b, double pitch) {
    ImplicitClosedSet adown(scene, "adown", [&scene, a](const Point& p, double tol) {
        return scene.contains(p, tol) && scene.order.leq(p, a, tol);
    });
    auto adown_shared = std::make_shared<ImplicitClosedSet>(std::move(adown));
    return ImplicitClosedSet(
        scene, "E1(" + b.str() + "," + a.str() + ")",
        [&scene, a, b, pitch, adown_shared](const Point& p, double tol) {
            if (!scene.contains(p, tol)) return false;
            if (!scene.order.leq(b, p, tol) || !scene.order.leq(p, a, tol)) return false;
            return !pitch_interior(scene, *adown_shared, p, pitch);
        });
}

E1Probe e1_compactness(const Scene& scene, const Point& a, const Point& b, double pitch) {
    E1Probe probe;
    ImplicitClosedSet e1 = e1_set(scene, a, b, pitch);
    double margin = std::max(6.0 * pitch, 0.15 * (a.dist_inf(b) + pitch));
    Box sub{b - Point::filled(scene.dim, margin), a + Point::filled(scene.dim, margin)};
    Box sub2{b - Point::filled(scene.dim, 2 * margin), a + Point::filled(scene.dim, 2 * margin)};
    // resolutions chosen so the window grids resolve the one-pitch band
    int res1 = std::clamp(static_cast<int>(sub.max_extent() / pitch) * 2, 16, 96);
    int res2 = std::clamp(static_cast<int>(sub2.max_extent() / pitch) * 2, 16, 128);
    Window wins[2] = {Window{sub, res1}, Window{sub2, res2}};
    probe.nonempty = !sample(e1, wins[0]).empty();
    if (probe.nonempty) probe.certificate = compactness_probe(e1, scene, wins);
    return probe;
}

std::vector<Point> seeded_scene_points(const Scene& scene, int count, std::uint64_t seed,
                                       const Window& window) {
    Rng rng(seed_mix(seed, "points:" + scene.name));
    std::vector<Point> out;
    int guard = 0;
    while (static_cast<int>(out.size()) < count && guard < 100000) {
        ++guard;
        Point p;
        if (!scene.patches.empty()) {
            const Patch& patch = scene.patches[rng.index(scene.patches.size())];
            p = patch.map(rng.uniform(), rng.uniform());
        } else {
            p = rng.point_in(window.box);
        }
        if (scene.contains(p) && window.box.contains(p)) out.push_back(p);
    }
    if (static_cast<int>(out.size()) < count)
        throw std::runtime_error("could not seed points inside scene " + scene.name);
    return out;
}

InverseResult inverse_probe_default(const Scene& scene, const Point& x0, const ImplicitClosedSet& V,
                                    const Window& window, const ProbeConfig& cfg) {
    double extent = window.box.max_extent();
    double radii_arr[3] = {0.2 * extent, 0.1 * extent, 0.05 * extent};
    Classification cls = classify_point(scene, x0, radii_arr, window);

    InverseResult result;
    if (cls.status == ClassifyStatus::Neither || cls.status == ClassifyStatus::Inconclusive) {
        result.status = InverseStatus::Inconclusive;
        result.notes.push_back(
            "classification NEITHER: neither branch of the point dichotomy holds, the inverse "
            "map lacks a basic-neighborhood certificate (the punctured-plane counterexample "
            "behaves this way)");
        return result;
    }

    std::vector<FellNbhdCandidate> cands;
    if (cls.status == ClassifyStatus::UpperSingular) {
        FellNbhdCandidate c;
        c.tag = "singular_ball";
        c.o1 = ball_set(scene, x0, cls.singular_o1_radius, true);
        cands.push_back(std::move(c));
    } else {
        const Point& a = *cls.box_a;
        const Point& b = *cls.box_b;
        FellNbhdCandidate c;
        c.tag = "order_box";
        ImplicitClosedSet interval = interval_set(scene, b, a);
        auto interval_shared = std::make_shared<ImplicitClosedSet>(std::move(interval));
        double pitch = window.max_pitch();
        c.o1 = ImplicitClosedSet(scene, "int_box", [&scene, interval_shared, pitch](const Point& p, double tol) {
            (void)tol;
            return pitch_interior(scene, *interval_shared, p, pitch);
        });
        c.e1 = e1_set(scene, a, b, pitch);
        c.e1_certificate = cls.e1_certificate;
        cands.push_back(std::move(c));
    }
    InverseResult inner = inverse_probe(scene, x0, V, std::move(cands), window, cfg);
    inner.notes.push_back(std::string("classification: ") + classify_status_name(cls.status));
    return inner;
}

}  // namespace hyperfell
