#include "hyperfell/hyperspace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hyperfell/util.hpp"

namespace hyperfell {

namespace {

// Violation slack: grid samples stand in for a pitch-sized cell and get the
// separation slack; closed-form samples carry exact coordinates and only the
// rounding slack, which is what keeps thin-set tails decidable.
bool cloud_meets(const ImplicitClosedSet& A, const PointCloud& cloud, double tau_sep,
                 Point* witness = nullptr) {
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        double slack = cloud.from_grid(i) ? tau_sep : kMembershipTol;
        if (A.contains(cloud.pts[i], slack)) {
            if (witness) *witness = cloud.pts[i];
            return true;
        }
    }
    return false;
}

bool cloud_hits(const ImplicitClosedSet& A, const PointCloud& cloud, Point* witness = nullptr) {
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        if (A.contains(cloud.pts[i], kMembershipTol)) {
            if (witness) *witness = cloud.pts[i];
            return true;
        }
    }
    return false;
}

struct PreparedTest {
    std::string tag;
    std::string kind;  // "hit" | "miss"
    const ImplicitClosedSet* set = nullptr;
    PointCloud cloud;
};

Window doubled(const Window& w) { return Window{w.box, w.resolution * 2}; }

ProbeVerdict run_hit_miss_probe(const char* name, bool fell_mode, const Scene& scene,
                                const PathSpec& path, const TestFamily& family,
                                const Window& window, const ProbeConfig& cfg) {
    ProbeVerdict verdict;
    verdict.probe = name;
    verdict.path = PathSummary{path.desc, path.x0, path.alpha0, path.m_max};
    for (const std::string& n : path.validate(scene)) verdict.notes.push_back(n);

    const int m_max = path.m_max;
    ImplicitClosedSet ideal0 = ideal_set(scene, path.x0);

    std::vector<PreparedTest> tests;
    std::vector<std::size_t> trace_of_test;  // index into verdict.traces

    for (const HitSet& h : family.hits) {
        PreparedTest t{h.tag, "hit", &h.set, sample(h.set, window, false)};
        TestTrace trace{h.tag, "hit", true, "", {}};
        if (t.cloud.empty()) {
            trace.retained = false;
            trace.drop_reason = "hit set has no samples at this resolution";
        } else if (!cloud_hits(ideal0, t.cloud)) {
            // Re-validate the drop at double resolution: x0-down really
            // fails the hit, so O⁻ is not a neighborhood of it.
            PointCloud fine = sample(h.set, doubled(window), false);
            trace.retained = false;
            trace.drop_reason = cloud_hits(ideal0, fine)
                                    ? "x0-down misses the hit set at this resolution only"
                                    : "not a neighborhood: x0-down does not meet the hit set";
        }
        if (trace.retained) {
            tests.push_back(std::move(t));
            trace_of_test.push_back(verdict.traces.size());
        }
        verdict.traces.push_back(std::move(trace));
    }
    for (const MissSet& d : family.misses) {
        PreparedTest t{d.tag, "miss", &d.set, sample(d.set, window, false)};
        TestTrace trace{d.tag, "miss", true, "", {}};
        if (fell_mode &&
            (!d.certificate || d.certificate->status != CompactnessStatus::CompactAtResolution)) {
            trace.retained = false;
            trace.drop_reason = "Fell miss sets need a COMPACT_AT_RESOLUTION certificate";
        } else if (t.cloud.empty()) {
            trace.retained = false;
            trace.drop_reason = "miss set has no samples at this resolution";
        } else if (cloud_meets(ideal0, t.cloud, cfg.tau_sep)) {
            PointCloud fine = sample(d.set, doubled(window), false);
            trace.retained = false;
            trace.drop_reason = cloud_meets(ideal0, fine, cfg.tau_sep)
                                    ? "not a neighborhood: x0-down meets the miss set"
                                    : "x0-down meets the miss set at this resolution only";
        }
        if (trace.retained) {
            tests.push_back(std::move(t));
            trace_of_test.push_back(verdict.traces.size());
        }
        verdict.traces.push_back(std::move(trace));
    }

    if (tests.empty()) {
        verdict.status = ProbeStatus::Inconclusive;
        verdict.notes.push_back("empty retained test family");
        return verdict;
    }

    // ideals along the tail
    std::vector<ImplicitClosedSet> ideals;
    ideals.reserve(m_max + 1);
    for (int m = 0; m <= m_max; ++m) ideals.push_back(ideal_set(scene, path.at(m)));

    std::vector<std::vector<int>> results(tests.size(), std::vector<int>(m_max + 1, 0));
    parallel_for(tests.size() * (m_max + 1), [&](std::size_t flat) {
        std::size_t s = flat / (m_max + 1);
        int m = static_cast<int>(flat % (m_max + 1));
        const PreparedTest& t = tests[s];
        bool ok = t.kind == "hit" ? cloud_hits(ideals[m], t.cloud)
                                  : !cloud_meets(ideals[m], t.cloud, cfg.tau_sep);
        results[s][m] = ok ? 1 : 0;
    });

    bool any_failed = false;
    bool all_converged = true;
    std::size_t failed_index = 0;
    for (std::size_t s = 0; s < tests.size(); ++s) {
        verdict.traces[trace_of_test[s]].per_index = results[s];
        int k = m_max + 1;
        for (int m = m_max; m >= 0 && results[s][m]; --m) k = m;
        bool converged = k <= m_max - cfg.tail;
        bool failed_tail = true;
        for (int m = std::max(0, m_max - cfg.tail); m <= m_max; ++m)
            if (results[s][m]) failed_tail = false;
        if (failed_tail && !any_failed) {
            any_failed = true;
            failed_index = s;
        }
        if (!converged) all_converged = false;
    }

    if (any_failed) {
        const PreparedTest& t = tests[failed_index];
        ProbeWitness w;
        w.test_tag = t.tag;
        w.kind = t.kind;
        w.index = m_max;
        if (t.kind == "miss") {
            Point sample_pt;
            if (cloud_meets(ideals[m_max], t.cloud, cfg.tau_sep, &sample_pt)) w.sample = sample_pt;
        }
        // Witness re-validation at double resolution.
        PointCloud fine = sample(*t.set, doubled(window), false);
        bool still_violates = t.kind == "hit" ? !cloud_hits(ideals[m_max], fine)
                                              : cloud_meets(ideals[m_max], fine, cfg.tau_sep);
        if (w.sample) still_violates = still_violates && ideals[m_max].contains(*w.sample, cfg.tau_sep);
        w.revalidated = still_violates;
        verdict.witness = w;
        verdict.status = ProbeStatus::Diverges;
        return verdict;
    }
    verdict.status = all_converged ? ProbeStatus::Converges : ProbeStatus::Inconclusive;
    return verdict;
}

}  // namespace

PathSpec PathSpec::line(const Point& x0, const Point& x1, double alpha0, int m_max) {
    PathSpec p;
    p.x0 = x0;
    p.alpha0 = alpha0;
    p.m_max = m_max;
    p.map = [x0, x1](double a) { return x0 + (x1 - x0) * a; };
    p.desc = "line " + x1.str() + " -> " + x0.str();
    return p;
}

std::vector<std::string> PathSpec::validate(const Scene& scene) const {
    std::vector<std::string> notes;
    if (!scene.contains(x0)) throw std::invalid_argument("path limit x0 outside scene");
    double prev = std::numeric_limits<double>::infinity();
    int halvings = 0;
    for (int m = 0; m <= m_max; ++m) {
        Point p = at(m);
        if (!scene.contains(p))
            throw std::invalid_argument("path point x(alpha_" + std::to_string(m) + ") outside scene");
        double d = p.dist(x0);
        if (d <= 0.5 * prev) ++halvings;
        prev = d;
    }
    if (halvings < m_max / 2)
        notes.push_back("path approach is slow: distance to x0 rarely halves along the tail");
    return notes;
}

Ternary hits(const ImplicitClosedSet& A, const HitSet& O, const Window& window) {
    PointCloud cloud = sample(O.set, window, false);
    if (cloud.empty()) return Ternary::NoSamples;
    return cloud_hits(A, cloud) ? Ternary::True : Ternary::False;
}

Ternary misses(const ImplicitClosedSet& A, const MissSet& D, const Window& window, double tau_sep) {
    PointCloud cloud = sample(D.set, window, false);
    if (cloud.empty()) return Ternary::NoSamples;
    return cloud_meets(A, cloud, tau_sep) ? Ternary::False : Ternary::True;
}

const char* probe_status_name(ProbeStatus s) {
    switch (s) {
        case ProbeStatus::Converges: return "CONVERGES_AT_RESOLUTION";
        case ProbeStatus::Diverges: return "DIVERGES";
        case ProbeStatus::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

ProbeVerdict fell_probe(const Scene& scene, const PathSpec& path, const TestFamily& family,
                        const Window& window, const ProbeConfig& cfg) {
    return run_hit_miss_probe("fell", true, scene, path, family, window, cfg);
}

ProbeVerdict vietoris_probe(const Scene& scene, const PathSpec& path, const TestFamily& family,
                            const Window& window, const ProbeConfig& cfg) {
    return run_hit_miss_probe("vietoris", false, scene, path, family, window, cfg);
}

HausdorffProbeVerdict hausdorff_probe(const Scene& scene, const PathSpec& path,
                                      std::span<const Window> windows, const DivergenceConfig& dcfg,
                                      int tail) {
    HausdorffProbeVerdict verdict;
    verdict.path = PathSummary{path.desc, path.x0, path.alpha0, path.m_max};
    for (const std::string& n : path.validate(scene)) verdict.notes.push_back(n);
    ImplicitClosedSet set0 = ideal_set(scene, path.x0);

    verdict.per_index.resize(path.m_max + 1);
    parallel_for(static_cast<std::size_t>(path.m_max) + 1, [&](std::size_t m) {
        ImplicitClosedSet set_m = ideal_set(scene, path.at(static_cast<int>(m)));
        verdict.per_index[m] = hausdorff_windowed(set_m, set0, windows, dcfg);
    });

    const int m_max = path.m_max;
    bool tail_divergent = true;
    for (int m = std::max(0, m_max - tail); m <= m_max; ++m)
        if (verdict.per_index[m].verdict != DivergenceVerdict::Divergent) tail_divergent = false;
    if (tail_divergent) {
        verdict.status = ProbeStatus::Diverges;
        return verdict;
    }

    int k = m_max + 1;
    for (int m = m_max; m >= 0 && verdict.per_index[m].verdict == DivergenceVerdict::Bounded; --m) k = m;
    double finest_pitch = std::numeric_limits<double>::infinity();
    for (const Window& w : windows) finest_pitch = std::min(finest_pitch, w.min_pitch());
    const auto& last = verdict.per_index[m_max];
    double last_value = 0;
    for (double v : last.values) last_value = std::max(last_value, v);
    if (k <= m_max - tail && last.verdict == DivergenceVerdict::Bounded && last_value < finest_pitch) {
        verdict.status = ProbeStatus::Converges;
        return verdict;
    }
    verdict.status = ProbeStatus::Inconclusive;
    verdict.notes.push_back("mixed windowed verdicts along the tail");
    return verdict;
}

TestFamily default_family(const Scene& scene, const Point& x0, const Window& window,
                          std::uint64_t seed, bool fell_mode) {
    TestFamily fam;
    Rng rng(seed_mix(seed, "family:" + scene.name + x0.str()));
    ImplicitClosedSet ideal0 = ideal_set(scene, x0);
    PointCloud cloud0 = sample(ideal0, window);
    if (cloud0.empty()) cloud0.pts.push_back(x0);

    const double extent = window.box.max_extent();
    const double radii[3] = {0.05 * extent, 0.1 * extent, 0.2 * extent};
    for (int i = 0; i < 3; ++i) {
        Point center = cloud0.pts[rng.index(cloud0.size())];
        fam.hits.push_back(
            {ball_set(scene, center, radii[i], true), "hit_ball" + std::to_string(i) + center.str()});
    }
    fam.hits.push_back({ball_set(scene, x0, 0.1 * extent, true), "hit_ball_x0"});

    const double pitch = window.max_pitch();
    const int dim = scene.dim;
    int accepted = 0;
    for (int tries = 0; tries < 200 && accepted < 3; ++tries) {
        Point c = rng.point_in(window.box);
        Box b = Box::around(c, 2.0 * pitch);
        bool in_scene_somewhere = scene.contains(c, kMembershipTol);
        bool clear_of_ideal = true;
        for (int corner = 0; corner < (1 << dim) && clear_of_ideal; ++corner) {
            Point p = c;
            for (int i = 0; i < dim; ++i) p[i] = (corner & (1 << i)) ? b.hi[i] : b.lo[i];
            if (ideal0.contains(p, kSeparationTol)) clear_of_ideal = false;
            if (scene.contains(p, kMembershipTol)) in_scene_somewhere = true;
            if (clear_of_ideal && distance_to_cloud(p, cloud0) < 2.0 * pitch) clear_of_ideal = false;
        }
        if (!clear_of_ideal || !in_scene_somewhere || ideal0.contains(c, kSeparationTol)) continue;
        MissSet ms{box_set(scene, b), "miss_box" + c.str(), std::nullopt};
        Window grown{Box{b.lo + (b.lo - b.hi), b.hi + (b.hi - b.lo)}, 16};
        Window wins[2] = {Window{b, 16}, grown};
        ms.certificate = compactness_probe(ms.set, scene, wins);
        if (fell_mode && ms.certificate->status != CompactnessStatus::CompactAtResolution) continue;
        fam.misses.push_back(std::move(ms));
        ++accepted;
    }
    return fam;
}

TestFamily deep_hit_family(const Scene& scene, const Point& x0, const Window& window, double r,
                           std::uint64_t seed) {
    (void)x0;
    TestFamily fam;
    Rng rng(seed_mix(seed, "deep:" + scene.name));
    int accepted = 0;
    for (int tries = 0; tries < 500 && accepted < 3; ++tries) {
        Point z = rng.point_in(window.box);
        bool deep = scene.contains(z, kMembershipTol);
        for (int i = 0; i < z.dim() && deep; ++i)
            if (z[i] > -2.0 * r) deep = false;
        if (!deep) continue;
        fam.hits.push_back({ball_set(scene, z, r / 2.0, true), "deep_hit" + z.str()});
        ++accepted;
    }
    return fam;
}

std::optional<HitSet> separating_hit(const Scene& scene, const Point& x, const Point& y,
                                     const Window& window) {
    if (x == y) return std::nullopt;
    Point target = y, other = x;
    if (scene.order.leq(y, x)) std::swap(target, other);  // now target is not below other
    ImplicitClosedSet other_down = ideal_set(scene, other);
    PointCloud other_cloud = sample(other_down, window);
    double gap = other_cloud.empty() ? 0.2 * window.box.max_extent()
                                     : distance_to_cloud(target, other_cloud);
    if (gap <= 0) return std::nullopt;
    double radius = std::min(gap / 2.0, 0.2 * window.box.max_extent());
    HitSet h{ball_set(scene, target, radius, true), "separating_ball" + target.str()};
    ImplicitClosedSet target_down = ideal_set(scene, target);
    if (hits(target_down, h, window) != Ternary::True) return std::nullopt;
    if (hits(other_down, h, window) != Ternary::False) return std::nullopt;
    return h;
}

InverseResult inverse_probe(const Scene& scene, const Point& x0, const ImplicitClosedSet& V,
                            std::vector<FellNbhdCandidate> candidates, const Window& window,
                            const ProbeConfig& cfg) {
    InverseResult result;
    if (!scene.contains(x0)) throw std::invalid_argument("x0 outside scene");
    if (!V.contains(x0)) throw std::invalid_argument("V must be a neighborhood of x0");

    ImplicitClosedSet ideal0 = ideal_set(scene, x0);
    PointCloud scene_cloud = sample(whole_scene_set(scene), window);

    for (FellNbhdCandidate& cand : candidates) {
        CandidateOutcome out;
        out.tag = cand.tag;
        PointCloud o1_cloud = sample(cand.o1, window, false);
        PointCloud e_cloud;
        if (cand.e1) e_cloud = sample(*cand.e1, window, false);

        if (o1_cloud.empty()) {
            out.invalid_reason = "O1 has no samples";
            result.candidates.push_back(std::move(out));
            continue;
        }
        if (!cloud_hits(ideal0, o1_cloud)) {
            out.invalid_reason = "x0-down does not meet O1";
            result.candidates.push_back(std::move(out));
            continue;
        }
        if (cand.e1 && cloud_meets(ideal0, e_cloud, cfg.tau_sep)) {
            out.invalid_reason = "x0-down meets E1; not a neighborhood";
            result.candidates.push_back(std::move(out));
            continue;
        }
        if (cand.e1 && cand.e1_certificate &&
            cand.e1_certificate->status != CompactnessStatus::CompactAtResolution) {
            out.invalid_reason = "E1 is not compact at resolution";
            result.candidates.push_back(std::move(out));
            continue;
        }
        out.valid = true;

        Point o1_min = o1_cloud.pts.front();
        for (const auto& p : o1_cloud.pts) o1_min = o1_min.min_with(p);

        auto consider = [&](const Point& y) -> bool {
            if (!scene.contains(y, kMembershipTol)) return false;
            if (V.contains(y, kMembershipTol)) return false;
            if (scene.order.kind == ConeKind::Coordinatewise && !scene.order.leq(o1_min, y)) return false;
            bool meets_o1 = false;
            for (const auto& p : o1_cloud.pts)
                if (scene.order.leq(p, y)) {
                    meets_o1 = true;
                    break;
                }
            if (!meets_o1) return false;
            if (cand.e1) {
                for (std::size_t i = 0; i < e_cloud.size(); ++i) {
                    double slack = e_cloud.from_grid(i) ? cfg.tau_sep : kMembershipTol;
                    if (scene.contains(e_cloud.pts[i], kMembershipTol) &&
                        scene.order.leq(e_cloud.pts[i], y, slack))
                        return false;  // y-down meets E1, stays inside the neighborhood test
                }
            }
            out.escape = y;
            return true;
        };

        bool escaped = false;
        for (const auto& y : cand.extra_scan)
            if (consider(y)) {
                escaped = true;
                break;
            }
        if (!escaped)
            for (const auto& y : scene_cloud.pts)
                if (consider(y)) {
                    escaped = true;
                    break;
                }
        result.candidates.push_back(std::move(out));
    }

    bool any_valid = false;
    for (const auto& c : result.candidates) {
        if (!c.valid) continue;
        any_valid = true;
        if (!c.escape) {
            result.status = InverseStatus::ContinuousWitness;
            return result;
        }
    }
    result.status = any_valid ? InverseStatus::NotContinuous : InverseStatus::Inconclusive;
    if (!any_valid) result.notes.push_back("no valid Fell neighborhood candidates");
    return result;
}

}  // namespace hyperfell
