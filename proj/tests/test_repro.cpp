#include <doctest.h>

#include <cmath>
#include <fstream>

#include "hyperfell/report.hpp"
#include "hyperfell/util.hpp"
#include "schema_check.hpp"

using namespace hyperfell;

namespace {

json load_schema() {
    const char* candidates[] = {"docs/report-schema.json", "../docs/report-schema.json",
                                "../../docs/report-schema.json"};
    for (const char* path : candidates) {
        std::ifstream in(path);
        if (in.good()) return json::parse(in);
    }
    FAIL("report schema file not found; run tests from the repo or build tree");
    return {};
}

}  // namespace

TEST_SUITE("repro") {

TEST_CASE("right top edge closed form") {
    EdgePolyline e1 = ex42_right_top_edge(Point{-1, 0, 0});
    CHECK(e1.v2 == doctest::Approx(-1.0));
    CHECK(e1.at(-1.0) == Point{-1, -1, 0});        // breakpoint
    CHECK(e1.at(-3.0)[2] == doctest::Approx(-2.0));  // tail w = 1 + v

    EdgePolyline e2 = ex42_right_top_edge(Point{0, -1, 0});
    CHECK(e2.half_line);
    CHECK(e2.at(-5.0) == Point{0, -5, 0});

    EdgePolyline e3 = ex42_right_top_edge(Point{-0.5, 0, 0});
    CHECK(e3.v2 == doctest::Approx(-2.0));
    // slope of the tail is -u0 = 0.5 in the (v, w) plane
    double w_a = e3.at(-4.0)[2], w_b = e3.at(-6.0)[2];
    CHECK((w_a - w_b) / 2.0 == doctest::Approx(0.5));

    CHECK_THROWS_AS(ex42_right_top_edge(Point{1, 0, 0}), std::invalid_argument);
}

TEST_CASE("edge points lie on the ideal boundary") {
    Scene scene = builtin_scene("ex42");
    Point x0{-0.5, -0.5, -0.25};
    ImplicitClosedSet down = ideal_set(scene, x0);
    Window w = scene.default_win(32);
    EdgePolyline edge = ex42_right_top_edge(x0);
    for (int i = 0; i <= 50; ++i) {
        double v = x0[1] - 1.9 * i / 50.0;
        Point z = edge.at(v);
        if (!w.box.contains(z)) continue;
        CHECK(down.contains(z, kMembershipTol));
        Point above = z;
        above[2] += w.pitch(2);
        CHECK_FALSE(down.contains(above));  // one-pitch neighbor leaves the ideal
        CHECK(edge.on_edge(z, 1e-9));
    }
}

TEST_CASE("edge distance formula") {
    CHECK(ex42_edge_distance(Point{-0.5, -10, 1 - (-0.5) * (-10)}, -1.0, 0.0) ==
          doctest::Approx(10 * 0.5 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(ex42_edge_distance(Point{0, -10, 0}, -1.0, 0.0) ==
          doctest::Approx(9.0 / std::sqrt(2.0)).epsilon(1e-12));
    // coincident anchors leave no gap
    CHECK(ex42_edge_distance(Point{-0.5, -10, 1 - 0.5 * 10}, -0.5, 0.0) ==
          doctest::Approx(0.0));
    // regime violation: v' at or above the breakpoint
    CHECK_THROWS_AS(ex42_edge_distance(Point{-0.5, -1.0, 0.0}, -1.0, 0.0), std::invalid_argument);

    // agreement with a first-principles point-to-line distance in the plane
    Rng rng(seed_mix(kDefaultSeed, "edge dist"));
    for (int i = 0; i < 1000; ++i) {
        double u0 = -rng.uniform(0.1, 2.0);
        double w0 = -rng.uniform(0.0, 2.0);
        double ua = u0 - rng.uniform(0.05, 1.0);
        double v2 = (1 - w0) / u0;
        double vp = v2 - rng.uniform(0.5, 30.0);
        Point z{u0, vp, 1 - u0 * vp};
        double got = ex42_edge_distance(z, ua, w0);
        // minimize the squared distance to (v, -ua v + 1) by ternary search
        auto d2 = [&](double v) {
            double dv = v - vp, dw = (-ua * v + 1) - z[2];
            return dv * dv + dw * dw;
        };
        double lo = vp - 100, hi = vp + 100;
        for (int it = 0; it < 200; ++it) {
            double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
            if (d2(m1) < d2(m2)) hi = m2;
            else lo = m1;
        }
        CHECK(got == doctest::Approx(std::sqrt(d2(0.5 * (lo + hi)))).epsilon(1e-12));
    }
}

TEST_CASE("vietoris witness curves") {
    Scene scene = builtin_scene("ex42");

    ImplicitClosedSet c1 = ex42_vietoris_curve(scene, Point{-0.5, -0.5, 0});
    REQUIRE(c1.fixed_curves.size() == 1);
    Point p1 = c1.fixed_curves.front().map(-0.25);
    CHECK(p1.dist_inf(Point{-0.5, -0.25, -1.0}) <= 1e-12);

    ImplicitClosedSet c2 = ex42_vietoris_curve(scene, Point{0, 0, -0.5});
    Point p2 = c2.fixed_curves.front().map(-0.25);
    CHECK(p2.dist_inf(Point{0, -1.0, -0.25}) <= 1e-12);

    CHECK_THROWS_AS(ex42_vietoris_curve(scene, Point{0, 0, 0}), std::invalid_argument);

    // the curve misses the anchoring ideal
    Window w = scene.default_win(32);
    MissSet ms{c1, "curve", std::nullopt};
    CHECK(misses(ideal_set(scene, Point{-0.5, -0.5, 0}), ms, w) == Ternary::True);

    // interior curve points are order-incomparable to the anchor; they all
    // stay outside the ideal (the v = 0 endpoint is the one comparable point,
    // sitting above the anchor)
    Point x0{-0.5, -0.5, 0};
    const Curve& curve = c1.fixed_curves.front();
    for (int k = 1; k <= 40; ++k) {
        double v = x0[1] + (0.0 - x0[1]) * k / 41.0;
        Point p = curve.map(v);
        CHECK_FALSE(scene.leq(p, x0));
        CHECK_FALSE(scene.leq(x0, p));
        CHECK_FALSE(ideal_set(scene, x0).contains(p));
    }
    CHECK(scene.leq(x0, curve.map(0.0)));
}

TEST_CASE("repro ex25 matches") {
    ReproConfig cfg;
    cfg.resolution_2d = 48;
    ReproReport rep = run_repro("ex25", cfg);
    for (const auto& c : rep.claims) {
        INFO(c.id, ": expected ", c.expected, ", observed ", c.observed);
        CHECK(c.matched);
    }
    CHECK(rep.all_matched());
}

TEST_CASE("repro id validation") {
    CHECK_THROWS_AS(run_repro("nope", ReproConfig{}), std::invalid_argument);
    CHECK(repro_example_ids().size() == 6);
}

TEST_CASE("reports validate against the published schema") {
    json schema = load_schema();
    Scene ex41 = builtin_scene("ex41");
    Window w = ex41.default_win(32);
    std::string why;

    SUBCASE("probe report") {
        PathSpec path = PathSpec::line(Point{0.5, 0.5}, Point{0.25, 0.25}, 0.5, 8);
        TestFamily fam = default_family(ex41, Point{0.5, 0.5}, w, kDefaultSeed, true);
        json env = make_envelope("probe", ex41.name, to_json(fell_probe(ex41, path, fam, w)), {},
                                 true);
        CHECK_MESSAGE(schema_check::validate_report(schema, env, why), why);
    }

    SUBCASE("hausdorff probe report") {
        PathSpec path = PathSpec::line(Point{0.5, 0.5}, Point{0.25, 0.25}, 0.5, 6);
        auto wins = growing_windows(ex41, std::vector<double>{1.0, 1.5, 2.0}, 32);
        json env = make_envelope("probe", ex41.name, to_json(hausdorff_probe(ex41, path, wins)),
                                 {}, false);
        CHECK_MESSAGE(schema_check::validate_report(schema, env, why), why);
    }

    SUBCASE("predicate, classification, meet, divergence reports") {
        auto pts = seeded_scene_points(ex41, 3, kDefaultSeed, w);
        std::vector<HitSet> opens{{ball_set(ex41, pts[0], 0.15, true), "ball"}};
        json env = make_envelope("predicate", ex41.name,
                                 to_json(check_decreasing_continuous(ex41, pts, opens, w)), {},
                                 true);
        CHECK_MESSAGE(schema_check::validate_report(schema, env, why), why);

        double radii[2] = {0.2, 0.1};
        env = make_envelope("classification", ex41.name,
                            to_json(classify_point(ex41, Point{0.5, 0.5}, radii, w)), {}, false);
        CHECK_MESSAGE(schema_check::validate_report(schema, env, why), why);

        env = make_envelope("meet", ex41.name,
                            to_json(meet_brute(Point{0.5, 0.6}, Point{0.6, 0.5}, ex41, w)), {},
                            false);
        CHECK_MESSAGE(schema_check::validate_report(schema, env, why), why);

        ImplicitClosedSet d0 = ideal_set(ex41, Point{0.4, 0.4});
        auto wins = growing_windows(ex41, std::vector<double>{1.0, 1.5, 2.0}, 32);
        env = make_envelope("hausdorff", ex41.name, to_json(hausdorff_windowed(d0, d0, wins)),
                            {"note"}, true);
        CHECK_MESSAGE(schema_check::validate_report(schema, env, why), why);
    }

    SUBCASE("repro report") {
        ReproConfig cfg;
        cfg.resolution_2d = 32;
        json result;
        result["examples"] = json::array({to_json(run_repro("ex25", cfg))});
        result["all_matched"] = true;
        json env = make_envelope("repro", "ex25", result, {}, false);
        CHECK_MESSAGE(schema_check::validate_report(schema, env, why), why);
    }

    SUBCASE("tampered reports fail") {
        json env = make_envelope("probe", "x", json::object(), {}, false);
        CHECK_FALSE(schema_check::validate_report(schema, env, why));
        env = make_envelope("meet", "x", json{{"status", "MAYBE"}}, {}, false);
        CHECK_FALSE(schema_check::validate_report(schema, env, why));
    }
}

TEST_CASE("text rendering") {
    Scene ex41 = builtin_scene("ex41");
    Window w = ex41.default_win(16);
    json env = make_envelope("meet", ex41.name,
                             to_json(meet_brute(Point{0.5, 0.6}, Point{0.6, 0.5}, ex41, w)), {},
                             false);
    std::string text = render_text(env);
    CHECK(text.find("report: meet") != std::string::npos);
    CHECK(text.find("FOUND") != std::string::npos);
}

}  // TEST_SUITE
