#include "hyperfell/repro.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "hyperfell/order.hpp"
#include "hyperfell/util.hpp"

namespace hyperfell {

namespace {

using ordered_json = nlohmann::ordered_json;

SubClaim make_claim(std::string id, std::string description, std::string expected,
                    std::string observed, ordered_json details = {}) {
    SubClaim c;
    c.id = std::move(id);
    c.description = std::move(description);
    c.expected = std::move(expected);
    c.observed = std::move(observed);
    c.matched = c.expected == c.observed;
    c.details = std::move(details);
    return c;
}

void plot_cloud(ReproReport& rep, const ReproConfig& cfg, const ImplicitClosedSet& set,
                const Window& w, const std::string& name) {
    if (cfg.plot_dir.empty()) return;
    std::filesystem::create_directories(cfg.plot_dir);
    std::string path = cfg.plot_dir + "/" + rep.example + "_" + name + ".csv";
    write_cloud_csv(sample(set, w), path);
    rep.plot_files.push_back(path);
}

void plot_series(ReproReport& rep, const ReproConfig& cfg, const std::string& name,
                 const std::vector<double>& xs, const std::vector<double>& ys,
                 const char* xh, const char* yh) {
    if (cfg.plot_dir.empty()) return;
    std::filesystem::create_directories(cfg.plot_dir);
    std::string path = cfg.plot_dir + "/" + rep.example + "_" + name + ".csv";
    std::ofstream out(path);
    out << xh << "," << yh << "\n";
    for (std::size_t i = 0; i < xs.size(); ++i)
        out << fmt_double(xs[i]) << "," << fmt_double(ys[i]) << "\n";
    rep.plot_files.push_back(path);
}

// Partner for a straight-line path inside the ex42 solid: moves down in u and
// up in v at constant w, shrinking the step until the whole tail stays inside.
Point ex42_path_partner(const Scene& scene, const Point& x0, int m_max) {
    double du = -0.5, dv = -0.5 * x0[1];  // v1 = v0/2
    for (int shrink = 0; shrink < 40; ++shrink) {
        Point x1{x0[0] + du, x0[1] + dv, x0[2]};
        if (scene.contains(x1)) {
            PathSpec p = PathSpec::line(x0, x1, 0.5, m_max);
            bool ok = true;
            for (int m = 0; m <= m_max && ok; ++m)
                if (!scene.contains(p.at(m))) ok = false;
            if (ok) return x1;
        }
        du *= 0.5;
        dv *= 0.5;
    }
    throw std::runtime_error("no valid path partner at " + x0.str());
}

std::string divergence_name(DivergenceVerdict v) {
    switch (v) {
        case DivergenceVerdict::Bounded: return "BOUNDED";
        case DivergenceVerdict::Divergent: return "DIVERGENT";
        case DivergenceVerdict::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

std::string compactness_name(CompactnessStatus s) {
    switch (s) {
        case CompactnessStatus::CompactAtResolution: return "COMPACT_AT_RESOLUTION";
        case CompactnessStatus::Unbounded: return "UNBOUNDED";
        case CompactnessStatus::ClosureEscape: return "CLOSURE_ESCAPE";
    }
    return "?";
}

std::string inverse_name(InverseStatus s) {
    switch (s) {
        case InverseStatus::ContinuousWitness: return "CONTINUOUS_WITNESS";
        case InverseStatus::NotContinuous: return "NOT_CONTINUOUS";
        case InverseStatus::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

// ---------------- ex25 ----------------

ReproReport repro_ex25(const ReproConfig& cfg) {
    ReproReport rep;
    rep.example = "ex25";
    Scene scene = builtin_scene("ex25");
    Window w = scene.default_win(cfg.resolution_2d);
    Point theta{0.0, 0.0};

    double radii[3] = {0.8, 0.4, 0.2};
    Classification cls = classify_point(scene, theta, radii, w);
    ordered_json cd;
    cd["status"] = classify_status_name(cls.status);
    if (cls.dominating_pair) {
        cd["dominating_u"] = cls.dominating_pair->first.str();
        cd["dominating_y"] = cls.dominating_pair->second.str();
    }
    if (cls.e1_certificate) cd["e1"] = compactness_name(cls.e1_certificate->status);
    rep.claims.push_back(make_claim("classify_theta",
                                    "the glued origin is neither upper singular nor upper compact bounded",
                                    "NEITHER", classify_status_name(cls.status), cd));

    Point a{0.5, 0.5}, b{-0.5, -0.5};
    E1Probe e1p = e1_compactness(scene, a, b, w.max_pitch());
    ordered_json e1d;
    e1d["nonempty"] = e1p.nonempty;
    e1d["status"] = compactness_name(e1p.certificate.status);
    if (e1p.certificate.witness) e1d["witness"] = e1p.certificate.witness->str();
    rep.claims.push_back(make_claim("e1_escape", "E1 accumulates at a point outside the scene",
                                    "CLOSURE_ESCAPE",
                                    e1p.nonempty ? compactness_name(e1p.certificate.status)
                                                 : "empty",
                                    e1d));
    plot_cloud(rep, cfg, e1_set(scene, a, b, w.max_pitch()), w, "e1");

    ImplicitClosedSet theta_down = ideal_set(scene, theta);
    Window grow[3] = {w, Window{Box::cube(2, -4.0, 4.0), cfg.resolution_2d},
                      Window{Box::cube(2, -8.0, 8.0), cfg.resolution_2d}};
    CompactnessReport down_cert = compactness_probe(theta_down, scene, grow);
    rep.claims.push_back(make_claim("theta_ideal_unbounded",
                                    "the origin's ideal reaches every window shell",
                                    "UNBOUNDED", compactness_name(down_cert.status)));
    plot_cloud(rep, cfg, theta_down, w, "theta_ideal");

    InverseResult inv = inverse_probe_default(scene, theta, ball_set(scene, theta, 0.5, true), w);
    ordered_json invd;
    invd["status"] = inverse_name(inv.status);
    invd["notes"] = inv.notes;
    rep.claims.push_back(make_claim("inverse_probe_theta",
                                    "no Fell basic-neighborhood certificate exists at the origin",
                                    "INCONCLUSIVE", inverse_name(inv.status), invd));
    return rep;
}

// ---------------- ex35 ----------------

ReproReport repro_ex35(const ReproConfig& cfg) {
    ReproReport rep;
    rep.example = "ex35";
    Scene scene = builtin_scene("ex35");
    Window w = scene.default_win(cfg.resolution_2d);

    // (i) join closed form against the grid oracle
    std::vector<Point> pts = seeded_scene_points(scene, 2 * 500, cfg.seed, w);
    PointCloud oracle_cloud = oracle_scene_cloud(scene, w);
    int agree = 0, total = 0;
    double worst = 0;
    for (int i = 0; i + 1 < static_cast<int>(pts.size()); i += 2) {
        Point j_closed = join_ex35(pts[i], pts[i + 1]);
        MeetResult j_grid = join_brute(pts[i], pts[i + 1], scene, w, &oracle_cloud);
        if (j_grid.status != MeetStatus::Found) continue;
        ++total;
        double err = j_closed.dist_inf(j_grid.point);
        worst = std::max(worst, err);
        if (err <= w.max_pitch()) ++agree;
    }
    ordered_json jd;
    jd["pairs"] = total;
    jd["within_pitch"] = agree;
    jd["worst_error"] = worst;
    rep.claims.push_back(make_claim("join_lattice", "componentwise join matches the grid oracle",
                                    "all pairs within one pitch",
                                    agree == total && total >= 400 ? "all pairs within one pitch"
                                                                   : "mismatch",
                                    jd));
    Point top = join_ex35(Point{-0.5, -0.5, -0.25}, Point{0.0, 0.0, 0.0});
    rep.claims.push_back(make_claim("join_top", "the top of the space absorbs joins", "(0,0,0)",
                                    top.str()));

    // (ii) meet discontinuity along the diagonal path
    Point other{0.0, -1.0, 0.0};
    bool meets_track = true;
    double min_limit_dist = std::numeric_limits<double>::infinity();
    std::vector<double> ms, dists;
    for (int m = 0; m <= 12; ++m) {
        double am = std::ldexp(1.0, -m);
        Point ym{-am, -am, -am / 2.0};
        MeetResult res = meet_brute(ym, other, scene, w, &oracle_cloud);
        if (res.status != MeetStatus::Found) {
            meets_track = false;
            break;
        }
        Point expected{-1.0, -1.0, -am / 2.0};
        if (res.point.dist_inf(expected) > w.max_pitch()) meets_track = false;
        double d = res.point.dist(other);
        min_limit_dist = std::min(min_limit_dist, d);
        ms.push_back(m);
        dists.push_back(d);
    }
    ordered_json md;
    md["min_distance_to_meet_at_limit"] = min_limit_dist;
    rep.claims.push_back(make_claim(
        "meet_discontinuity",
        "meets along the diagonal path stay on the far edge, away from the limit meet",
        "meets track (-1,-1,w_m) and stay at distance >= 0.9",
        meets_track && min_limit_dist >= 0.9 ? "meets track (-1,-1,w_m) and stay at distance >= 0.9"
                                             : "off track",
        md));
    rep.claims.back().notes.push_back(
        "the closed form (u,-1,w) stated for cross-triangle meets lies outside the second "
        "triangle unless u = -1; the grid oracle gives (-1,-1,w), which leaves the "
        "discontinuity verdict unchanged");
    plot_series(rep, cfg, "meet_distance", ms, dists, "m", "distance");

    // (iii) Fell divergence of the canonical map at the apex
    PathSpec path;
    path.x0 = Point{0.0, 0.0, 0.0};
    path.alpha0 = 1.0;
    path.m_max = cfg.m_max;
    path.map = [](double a) { return Point{-a, -a, -a / 2.0}; };
    path.desc = "diagonal descent into the apex";
    TestFamily fam;
    fam.hits.push_back({ball_set(scene, Point{-0.5, -0.75, 0.0}, 0.1, true), "hit_T1_ball"});
    ProbeVerdict fell = fell_probe(scene, path, fam, w);
    ordered_json fd;
    fd["status"] = probe_status_name(fell.status);
    if (fell.witness) {
        fd["witness_tag"] = fell.witness->test_tag;
        fd["witness_revalidated"] = fell.witness->revalidated;
    }
    rep.claims.push_back(make_claim("fell_divergence_apex",
                                    "the canonical map is Fell-discontinuous at the apex",
                                    "DIVERGES", probe_status_name(fell.status), fd));
    rep.claims.back().notes.push_back(
        "the hit ball sits inside the first triangle at distance 0.18 from the shared edge, "
        "so the path's ideals (inside the second triangle) can never reach it");
    return rep;
}

// ---------------- ex36 ----------------

struct PqCandidatePack {
    std::vector<FellNbhdCandidate> candidates;
    std::vector<double> r_values;
    std::vector<std::pair<double, double>> pq;
};

PqCandidatePack ex36_pq_candidates(const Scene& scene) {
    PqCandidatePack pack;
    const double ps[2] = {0.5, 0.9};
    const double qs[2] = {0.1, 0.01};
    for (double p : ps) {
        for (double q : qs) {
            double r = 0.5 * std::min(std::sqrt(1.0 - p * p), q);
            FellNbhdCandidate cand;
            cand.tag = "p=" + fmt_double(p) + ",q=" + fmt_double(q);
            cand.o1 = ImplicitClosedSet(
                scene, "disk_slice(" + fmt_double(p) + ")", [&scene, p](const Point& y, double tol) {
                    return scene.contains(y, tol) && y.norm2() <= 1.0 + tol && y[0] > p &&
                           y[0] <= 1.0 + tol;
                });
            cand.e1 = ImplicitClosedSet(
                scene, "disk_cap(" + fmt_double(q) + ")", [&scene, q](const Point& y, double tol) {
                    return scene.contains(y, tol) && y.norm2() <= 1.0 + tol && y[1] >= q - tol;
                });
            // escape candidates along the unbounded boundary curve v = 4/u
            for (double factor : {2.0, 3.0, 4.0, 8.0}) {
                double u = factor * 4.0 / r;
                cand.extra_scan.push_back(Point{u, 4.0 / u});
            }
            pack.candidates.push_back(std::move(cand));
            pack.r_values.push_back(r);
            pack.pq.emplace_back(p, q);
        }
    }
    return pack;
}

ReproReport repro_ex36(const ReproConfig& cfg) {
    ReproReport rep;
    rep.example = "ex36";
    Scene scene = builtin_scene("ex36");
    Window w = scene.default_win(cfg.resolution_2d);
    Point x0{1.0, 0.0};

    PqCandidatePack pack = ex36_pq_candidates(scene);
    ImplicitClosedSet v_ball = ball_set(scene, x0, 0.5, true);
    InverseResult inv = inverse_probe(scene, x0, v_ball, pack.candidates, w);

    bool all_escaped = inv.status == InverseStatus::NotContinuous;
    ordered_json dd = ordered_json::array();
    for (std::size_t i = 0; i < inv.candidates.size(); ++i) {
        const auto& c = inv.candidates[i];
        ordered_json jc;
        jc["candidate"] = c.tag;
        jc["valid"] = c.valid;
        if (!c.valid) jc["reason"] = c.invalid_reason;
        if (c.escape) {
            jc["escape"] = c.escape->str();
            double r = pack.r_values[i];
            const Point& y = *c.escape;
            bool in_strip = y[0] > 4.0 / r && y[1] > 0 && y[1] < r;
            jc["in_unbounded_strip"] = in_strip;
            if (!in_strip) all_escaped = false;
        } else {
            all_escaped = false;
        }
        dd.push_back(jc);
    }
    rep.claims.push_back(make_claim(
        "inverse_discontinuity",
        "every basic Fell neighborhood of the ideal leaks arbitrarily far along the boundary curve",
        "NOT_CONTINUOUS with strip witnesses",
        all_escaped ? "NOT_CONTINUOUS with strip witnesses" : inverse_name(inv.status), dd));
    rep.claims.back().notes.push_back(
        "hit and miss superscripts follow the base definitions: hits are O-minus, misses are "
        "(X minus D)-plus");

    Point arc{0.5, std::sqrt(0.75)};
    double radii[3] = {0.8, 0.4, 0.2};
    Classification cls = classify_point(scene, arc, radii, w);
    rep.claims.push_back(make_claim("arc_point_neither",
                                    "upper disk-boundary points fall outside both point classes",
                                    "NEITHER", classify_status_name(cls.status)));

    std::vector<Point> some = seeded_scene_points(scene, 5, cfg.seed, w);
    bool none_singular = true;
    for (const auto& pnt : some) {
        Classification c = classify_point(scene, pnt, radii, w);
        if (c.status == ClassifyStatus::UpperSingular) none_singular = false;
    }
    rep.claims.push_back(make_claim("no_upper_singular",
                                    "sampled points always find dominators above them",
                                    "none singular", none_singular ? "none singular" : "singular found"));
    plot_cloud(rep, cfg, ideal_set(scene, x0), w, "ideal_10");
    return rep;
}

// ---------------- ex41 ----------------

ReproReport repro_ex41(const ReproConfig& cfg) {
    ReproReport rep;
    rep.example = "ex41";
    Scene scene = builtin_scene("ex41");
    Window w = scene.default_win(cfg.resolution_2d);

    // interior seeds with headroom for the upward path
    Rng rng(seed_mix(cfg.seed, "ex41 seeds"));
    std::vector<Point> seeds;
    while (static_cast<int>(seeds.size()) < cfg.points_per_scene) {
        Point p{rng.uniform(0.1, 0.9), rng.uniform(0.1, 0.7)};
        seeds.push_back(p);
    }

    bool all_viet_diverge = true, all_fell_converge = true, all_h_converge = true,
         all_inverse_ok = true, h_tracks = true;
    ordered_json per_point = ordered_json::array();
    std::vector<Window> grow = growing_windows(scene, std::vector<double>{1.0, 1.5, 2.0},
                                               cfg.resolution_2d);

    for (const Point& x0 : seeds) {
        double u0 = x0[0], v0 = x0[1];
        PathSpec path;
        path.x0 = x0;
        path.alpha0 = 0.5;
        path.m_max = cfg.m_max;
        path.map = [u0, v0](double a) { return Point{u0, v0 + a / 2.0}; };
        path.desc = "vertical approach from above";

        TestFamily viet_fam;
        viet_fam.misses.push_back({ex41_segment(scene, u0, v0), "segment_l", std::nullopt});
        ProbeVerdict viet = vietoris_probe(scene, path, viet_fam, w);
        if (viet.status != ProbeStatus::Diverges) all_viet_diverge = false;

        TestFamily fell_fam = default_family(scene, x0, w, cfg.seed, true);
        ProbeVerdict fell = fell_probe(scene, path, fell_fam, w);
        if (fell.status != ProbeStatus::Converges) all_fell_converge = false;

        HausdorffProbeVerdict hp = hausdorff_probe(scene, path, grow);
        if (hp.status != ProbeStatus::Converges) all_h_converge = false;
        for (int m = 0; m <= path.m_max; ++m) {
            const auto& rm = hp.per_index[m];
            double expect = std::ldexp(1.0, -m - 2);
            for (std::size_t k = 0; k < rm.values.size(); ++k)
                if (!(std::abs(rm.values[k] - expect) <= rm.pitches[k])) h_tracks = false;
        }

        InverseResult inv = inverse_probe_default(scene, x0, ball_set(scene, x0, 0.2, true), w);
        if (inv.status != InverseStatus::ContinuousWitness) all_inverse_ok = false;

        ordered_json jp;
        jp["point"] = x0.str();
        jp["vietoris"] = probe_status_name(viet.status);
        jp["fell"] = probe_status_name(fell.status);
        jp["hausdorff"] = probe_status_name(hp.status);
        jp["inverse"] = inverse_name(inv.status);
        per_point.push_back(jp);
    }

    rep.claims.push_back(make_claim("vietoris_divergence",
                                    "the open segment miss set breaks Vietoris convergence everywhere",
                                    "DIVERGES at all seeds", all_viet_diverge ? "DIVERGES at all seeds" : "mixed",
                                    per_point));
    rep.claims.push_back(make_claim("fell_convergence", "the default Fell family converges",
                                    "CONVERGES at all seeds",
                                    all_fell_converge ? "CONVERGES at all seeds" : "mixed"));
    rep.claims.push_back(make_claim("hausdorff_convergence",
                                    "nested-box ideals converge in the Hausdorff metric",
                                    "CONVERGES with H tracking 2^-m-2",
                                    all_h_converge && h_tracks ? "CONVERGES with H tracking 2^-m-2"
                                                               : "mixed"));
    rep.claims.push_back(make_claim("inverse_continuity", "the inverse map has box certificates",
                                    "CONTINUOUS_WITNESS at all seeds",
                                    all_inverse_ok ? "CONTINUOUS_WITNESS at all seeds" : "mixed"));
    if (!seeds.empty()) plot_cloud(rep, cfg, ideal_set(scene, seeds.front()), w, "ideal_seed0");
    return rep;
}

// ---------------- ex42 ----------------

ReproReport repro_ex42(const ReproConfig& cfg) {
    ReproReport rep;
    rep.example = "ex42";
    Scene scene = builtin_scene("ex42");
    Window w = scene.default_win(cfg.resolution_3d);

    // seeds: interior points plus one forced right-face point (u0 = 0)
    Rng rng(seed_mix(cfg.seed, "ex42 seeds"));
    std::vector<Point> seeds;
    while (static_cast<int>(seeds.size()) < std::max(1, cfg.points_per_scene - 1)) {
        Point p{rng.uniform(-1.5, -0.1), rng.uniform(-1.5, -0.1), rng.uniform(-1.5, 0.0)};
        if (scene.contains(p) && p[0] * p[1] + p[2] - 1.0 <= -0.2) seeds.push_back(p);
    }
    Point face_point{0.0, rng.uniform(-1.5, -0.2), rng.uniform(-0.4, -0.05)};
    // all seeds: face point last

    bool fell_all = true, meet_ok = true;
    ordered_json fell_detail = ordered_json::array();
    for (const Point& x0 : seeds) {
        Point x1 = ex42_path_partner(scene, x0, cfg.m_max);
        PathSpec path = PathSpec::line(x0, x1, 0.5, cfg.m_max);
        TestFamily fam = default_family(scene, x0, w, cfg.seed, true);
        ProbeVerdict fell = fell_probe(scene, path, fam, w);
        if (fell.status != ProbeStatus::Converges) fell_all = false;
        ordered_json jf;
        jf["point"] = x0.str();
        jf["status"] = probe_status_name(fell.status);
        fell_detail.push_back(jf);
    }
    {
        // the oracle window reaches w = -5: meets of default-window points
        // can sink below the default floor on the curved face
        Window meet_grid{Box{Point{-2.0, -2.0, -5.0}, Point{0.0, 0.0, 0.0}}, kDefaultResolution};
        PointCloud meet_cloud = oracle_scene_cloud(scene, meet_grid);
        Rng mrng(seed_mix(cfg.seed, "ex42 meets"));
        Box draw_box = scene.default_window;
        int pairs = 200, good = 0;
        for (int i = 0; i < pairs; ++i) {
            Point x, y;
            do {
                x = mrng.point_in(draw_box);
            } while (!scene.contains(x));
            do {
                y = mrng.point_in(draw_box);
            } while (!scene.contains(y));
            Point closed = meet_ex42(x, y);
            MeetResult brute = meet_brute(x, y, scene, meet_grid, &meet_cloud);
            if (brute.status != MeetStatus::Found) continue;
            double lip = 1.0 + std::abs(closed[0]) + std::abs(closed[1]);
            if (scene.order.leq(brute.point, closed, kMembershipTol) &&
                brute.bound_estimate.dist_inf(closed) <= lip * meet_grid.max_pitch())
                ++good;
        }
        meet_ok = good >= pairs * 19 / 20;
        ordered_json jm;
        jm["pairs"] = pairs;
        jm["good"] = good;
        rep.claims.push_back(make_claim("meet_semilattice",
                                        "the closed-form meet matches the grid oracle",
                                        "grid meets track the closed form",
                                        meet_ok ? "grid meets track the closed form" : "mismatch", jm));
    }
    rep.claims.push_back(make_claim("fell_convergence", "the default Fell family converges",
                                    "CONVERGES at all seeds", fell_all ? "CONVERGES at all seeds" : "mixed",
                                    fell_detail));

    // Hausdorff divergence: probe along the tail at interior seeds, fixed
    // alpha at the u0 = 0 face point where the sloped-tail regime needs a
    // larger window than the tail can keep.
    std::vector<double> radii{10.0, 20.0, 40.0};
    std::vector<Window> grow = growing_windows(scene, radii, cfg.resolution_3d);
    bool h_all = true;
    ordered_json h_detail = ordered_json::array();
    for (const Point& x0 : seeds) {
        Point x1 = ex42_path_partner(scene, x0, cfg.m_max_hausdorff);
        PathSpec path = PathSpec::line(x0, x1, 0.5, cfg.m_max_hausdorff);
        HausdorffProbeVerdict hp = hausdorff_probe(scene, path, grow);
        if (hp.status != ProbeStatus::Diverges) h_all = false;
        ordered_json jh;
        jh["point"] = x0.str();
        jh["status"] = probe_status_name(hp.status);
        h_detail.push_back(jh);
    }
    {
        Point x1 = ex42_path_partner(scene, face_point, 2);
        Point x_half = face_point + (x1 - face_point) * 0.5;
        DivergenceReport dr = hausdorff_windowed(ideal_set(scene, x_half),
                                                 ideal_set(scene, face_point), grow);
        ordered_json jh;
        jh["point"] = face_point.str();
        jh["alpha"] = 0.5;
        jh["status"] = divergence_name(dr.verdict);
        jh["values"] = dr.values;
        h_detail.push_back(jh);
        if (dr.verdict != DivergenceVerdict::Divergent) h_all = false;
        plot_series(rep, cfg, "hausdorff_face", dr.radii, dr.values, "radius", "H");
    }
    rep.claims.push_back(make_claim("hausdorff_divergence",
                                    "windowed Hausdorff distances of nearby ideals blow up with the window",
                                    "DIVERGES at all seeds incl. the u0=0 face",
                                    h_all ? "DIVERGES at all seeds incl. the u0=0 face" : "mixed",
                                    h_detail));

    if (cfg.ex42_u_branch) {
        // mirror of the standard check: the path moves v at fixed u and the
        // action runs along the back top edge (the solid is u-v symmetric,
        // so swap coordinates and reuse the edge distance)
        Point x0 = seeds.front();
        Point x1{x0[0] / 2.0, x0[1] - 0.5, x0[2]};
        while (!scene.contains(x1)) x1 = Point{x0[0] / 2.0, (x0[1] + x1[1]) / 2.0, x0[2]};
        Point xa = x0 + (x1 - x0) * 0.5;
        DivergenceReport dr = hausdorff_windowed(ideal_set(scene, xa), ideal_set(scene, x0), grow);
        Point z_swapped = ex42_right_top_edge(Point{x0[1], x0[0], x0[2]}).at(-grow.back().box.extent(0));
        double pred = ex42_edge_distance(z_swapped, xa[1], x0[2]);
        double last = dr.values.empty() ? 0.0 : dr.values.back();
        ordered_json ju;
        ju["status"] = divergence_name(dr.verdict);
        ju["values"] = dr.values;
        ju["prediction_last"] = pred;
        bool in_band = dr.verdict == DivergenceVerdict::Divergent && last >= 0.85 * pred &&
                       last <= 1.15 * pred;
        rep.claims.push_back(make_claim("hausdorff_divergence_u_branch",
                                        "the back-top-edge mirror of the divergence check",
                                        "DIVERGENT within the prediction band",
                                        in_band ? "DIVERGENT within the prediction band" : "off band",
                                        ju));
    }

    // Vietoris: witness curves break convergence off the origin, the deep
    // hit family converges at the origin.
    bool viet_all = true;
    ordered_json v_detail = ordered_json::array();
    std::vector<Point> viet_points = {Point{-0.5, -0.5, 0.0}, Point{0.0, 0.0, -0.5}};
    for (const Point& s : seeds) viet_points.push_back(s);
    for (const Point& x0 : viet_points) {
        PathSpec path;
        path.x0 = x0;
        path.alpha0 = 0.5;
        path.m_max = cfg.m_max;
        double u0 = x0[0], v0 = x0[1], w0 = x0[2];
        if (v0 < 0) {
            path.map = [u0, v0, w0](double a) { return Point{u0, v0 + a * (-v0) / 2.0, w0}; };
        } else if (u0 < 0) {
            path.map = [u0, v0, w0](double a) { return Point{u0 + a * (-u0) / 2.0, v0, w0}; };
        } else {
            path.map = [u0, v0, w0](double a) { return Point{u0, v0, w0 + a * (-w0) / 2.0}; };
        }
        path.desc = "approach from above along the curve coordinate";
        TestFamily fam;
        fam.misses.push_back({ex42_vietoris_curve(scene, x0), "witness_curve", std::nullopt});
        ProbeVerdict viet = vietoris_probe(scene, path, fam, w);
        if (viet.status != ProbeStatus::Diverges) viet_all = false;
        ordered_json jv;
        jv["point"] = x0.str();
        jv["status"] = probe_status_name(viet.status);
        v_detail.push_back(jv);
    }
    rep.claims.push_back(make_claim("vietoris_divergence",
                                    "the witness curves break Vietoris convergence off the origin",
                                    "DIVERGES at all off-origin points",
                                    viet_all ? "DIVERGES at all off-origin points" : "mixed", v_detail));

    {
        Point origin{0.0, 0.0, 0.0};
        Point x1{-0.4, -0.3, -0.35};
        PathSpec path = PathSpec::line(origin, x1, 0.5, cfg.m_max);
        TestFamily fam = deep_hit_family(scene, origin, w, 0.05, cfg.seed);
        ProbeVerdict viet = vietoris_probe(scene, path, fam, w);
        rep.claims.push_back(make_claim("vietoris_origin",
                                        "hit-only families converge at the origin, whose ideal is the whole space",
                                        "CONVERGES_AT_RESOLUTION", probe_status_name(viet.status)));
    }
    if (!seeds.empty()) {
        plot_cloud(rep, cfg, ideal_set(scene, seeds.front()), w, "ideal_seed0");
        if (!cfg.plot_dir.empty()) {
            EdgePolyline edge = ex42_right_top_edge(seeds.front());
            ImplicitClosedSet edge_s =
                curve_set(scene, edge.curve(w.box.lo[1]), "edge" + seeds.front().str());
            plot_cloud(rep, cfg, edge_s, w, "right_top_edge");
        }
    }
    return rep;
}

// ---------------- theorem 3.4 positive suite ----------------

ReproReport repro_thm34(const ReproConfig& cfg) {
    ReproReport rep;
    rep.example = "thm34";
    for (int dim : {2, 3}) {
        Scene scene = open_box_scene(dim, Box::cube(dim, 0.0, 1.0));
        int res = dim == 2 ? cfg.resolution_2d : cfg.resolution_3d;
        Window w = scene.default_win(res);
        // keep seeds three pitches off the walls so order boxes exist at
        // this resolution
        double margin = 3.0 * w.max_pitch();
        Rng srng(seed_mix(cfg.seed, "thm34 seeds" + std::to_string(dim)));
        std::vector<Point> pts;
        while (static_cast<int>(pts.size()) < cfg.thm34_points) {
            Point p = Point::zero(dim);
            for (int i = 0; i < dim; ++i) p[i] = srng.uniform(margin, 1.0 - margin);
            pts.push_back(p);
        }

        std::vector<HitSet> opens;
        for (int i = 0; i < 3 && i < static_cast<int>(pts.size()); ++i)
            opens.push_back({ball_set(scene, pts[i], 0.15, true), "ball" + std::to_string(i)});
        PredicateReport dc = check_decreasing_continuous(scene, pts, opens, w);

        Rng rng(seed_mix(cfg.seed, "thm34 pairs" + std::to_string(dim)));
        std::vector<std::pair<Point, Point>> pairs;
        for (const Point& x : pts) {
            Point y = x;
            for (int i = 0; i < dim; ++i) y[i] = std::max(0.05, x[i] - rng.uniform(0.05, 0.2));
            if (scene.contains(y) && scene.order.leq(y, x)) pairs.emplace_back(x, y);
        }
        PredicateReport pi = check_proper_inclusion(scene, pairs, w);
        PredicateReport db = check_dense_boundaries(scene, pts, w);

        bool classify_ok = true;
        double radii[3] = {0.3, 0.2, 0.1};
        for (const Point& x : pts) {
            Classification c = classify_point(scene, x, radii, w);
            if (c.status != ClassifyStatus::UpperCompactBounded) classify_ok = false;
        }

        bool fell_ok = true, inverse_ok = true;
        int probe_m = std::min(cfg.m_max, 12);
        for (std::size_t i = 0; i + 1 < pts.size() && i < 4; ++i) {
            PathSpec path = PathSpec::line(pts[i], pts[i + 1], 0.5, probe_m);
            TestFamily fam = default_family(scene, pts[i], w, cfg.seed, true);
            if (fell_probe(scene, path, fam, w).status != ProbeStatus::Converges) fell_ok = false;
            InverseResult inv =
                inverse_probe_default(scene, pts[i], ball_set(scene, pts[i], 0.2, true), w);
            if (inv.status != InverseStatus::ContinuousWitness) inverse_ok = false;
        }

        std::string tag = "dim" + std::to_string(dim);
        rep.claims.push_back(make_claim(tag + "_decreasing_continuous",
                                        "ideals keep meeting nearby open sets",
                                        "PASSED_AT_RESOLUTION", predicate_status_name(dc.status)));
        rep.claims.push_back(make_claim(tag + "_proper_inclusion",
                                        "interior ideals have interior sub-ideals",
                                        "PASSED_AT_RESOLUTION", predicate_status_name(pi.status)));
        rep.claims.push_back(make_claim(tag + "_dense_boundaries",
                                        "comparable points across an order box meet its boundary",
                                        "PASSED_AT_RESOLUTION", predicate_status_name(db.status)));
        rep.claims.push_back(make_claim(tag + "_classification",
                                        "interior points are upper compact bounded",
                                        "UPPER_COMPACT_BOUNDED everywhere",
                                        classify_ok ? "UPPER_COMPACT_BOUNDED everywhere" : "mixed"));
        rep.claims.push_back(make_claim(tag + "_fell_forward", "the canonical map converges",
                                        "CONVERGES", fell_ok ? "CONVERGES" : "mixed"));
        rep.claims.push_back(make_claim(tag + "_inverse_backward", "the inverse map has certificates",
                                        "CONTINUOUS_WITNESS", inverse_ok ? "CONTINUOUS_WITNESS" : "mixed"));
    }
    return rep;
}

}  // namespace

std::vector<std::string> repro_example_ids() {
    return {"ex25", "ex35", "ex36", "ex41", "ex42", "thm34"};
}

ReproReport run_repro(const std::string& example_id, const ReproConfig& cfg) {
    if (example_id == "ex25") return repro_ex25(cfg);
    if (example_id == "ex35") return repro_ex35(cfg);
    if (example_id == "ex36") return repro_ex36(cfg);
    if (example_id == "ex41") return repro_ex41(cfg);
    if (example_id == "ex42") return repro_ex42(cfg);
    if (example_id == "thm34") return repro_thm34(cfg);
    throw std::invalid_argument("unknown repro example id: " + example_id);
}

}  // namespace hyperfell
