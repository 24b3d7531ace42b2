#include <doctest.h>

#include <cmath>

#include "hyperfell/parser.hpp"
#include "hyperfell/props.hpp"
#include "hyperfell/util.hpp"

using namespace hyperfell;

namespace {

Scene parse_ok(const std::string& text) {
    ParseResult r = parse_scene(text);
    if (auto* err = std::get_if<ParseError>(&r)) FAIL(err->str());
    return std::move(std::get<Scene>(r));
}

}  // namespace

TEST_SUITE("props") {

TEST_CASE("decreasing continuity") {
    SUBCASE("open square passes") {
        Scene s = builtin_scene("ex41");
        Window w = s.default_win(48);
        auto pts = seeded_scene_points(s, 6, kDefaultSeed, w);
        std::vector<HitSet> opens;
        for (int i = 0; i < 3; ++i)
            opens.push_back({ball_set(s, pts[i], 0.15, true), "ball" + std::to_string(i)});
        PredicateReport rep = check_decreasing_continuous(s, pts, opens, w);
        CHECK(rep.status == PredicateStatus::PassedAtResolution);
        CHECK(rep.cases_tested > 0);
    }

    SUBCASE("two triangles falsify at the apex") {
        Scene s = builtin_scene("ex35");
        Window w = s.default_win(64);
        std::vector<Point> pts{Point{0, 0, 0}};
        std::vector<HitSet> opens;
        opens.push_back({ball_set(s, Point{-0.5, -0.75, 0.0}, 0.1, true), "t1_ball"});
        PredicateReport rep = check_decreasing_continuous(s, pts, opens, w);
        REQUIRE(rep.status == PredicateStatus::Falsified);
        REQUIRE(rep.witness.size() == 2);
        CHECK(rep.witness_revalidated);
        // the falsifying neighbor lives strictly below the top plane
        CHECK(rep.witness[1][2] < 0);
    }

    SUBCASE("a whole-scene open set passes trivially") {
        Scene s = builtin_scene("ex35");
        Window w = s.default_win(32);
        std::vector<Point> pts{Point{0, 0, 0}, Point{-0.5, -0.5, -0.25}};
        std::vector<HitSet> opens;
        opens.push_back({ball_set(s, Point{-0.5, -0.5, -0.25}, 10.0, true), "everything"});
        PredicateReport rep = check_decreasing_continuous(s, pts, opens, w);
        CHECK(rep.status == PredicateStatus::PassedAtResolution);
    }
}

TEST_CASE("proper inclusion") {
    SUBCASE("whole-space ideal passes") {
        Scene s = builtin_scene("ex42");
        Window w = s.default_win(24);
        std::vector<std::pair<Point, Point>> pairs{{Point{0, 0, 0}, Point{-0.5, -0.5, -0.5}}};
        PredicateReport rep = check_proper_inclusion(s, pairs, w);
        CHECK(rep.status == PredicateStatus::PassedAtResolution);
    }

    SUBCASE("open box passes on random pairs") {
        Scene s = open_box_scene(2, Box::cube(2, 0, 1));
        Window w = s.default_win(48);
        Rng rng(seed_mix(kDefaultSeed, "pi pairs"));
        std::vector<std::pair<Point, Point>> pairs;
        for (int i = 0; i < 6; ++i) {
            Point x{rng.uniform(0.35, 0.9), rng.uniform(0.35, 0.9)};
            Point y{x[0] - rng.uniform(0.05, 0.2), x[1] - rng.uniform(0.05, 0.2)};
            pairs.emplace_back(x, y);
        }
        PredicateReport rep = check_proper_inclusion(s, pairs, w);
        CHECK(rep.status == PredicateStatus::PassedAtResolution);
        CHECK(rep.cases_tested > 0);
    }

    SUBCASE("bar-and-tower fixture falsifies") {
        // a point on the bar's roof right of the tower is interior to the
        // top ideal, but its own ideal runs under the tower where the roof
        // is no longer a ceiling
        Scene s = parse_ok(
            "region glued dim 2 { (0 <= x1 and x1 <= 3 and 0 <= x2 and x2 <= 1) or "
            "(0 <= x1 and x1 <= 1 and 1 <= x2 and x2 <= 2) } order coordinatewise "
            "window [0,3]x[0,2]");
        Window w = s.default_win(64);
        std::vector<std::pair<Point, Point>> pairs{{Point{3, 1}, Point{2, 1}}};
        PredicateReport rep = check_proper_inclusion(s, pairs, w);
        REQUIRE(rep.status == PredicateStatus::Falsified);
        REQUIRE(rep.witness.size() == 3);
        CHECK(rep.witness_revalidated);
        CHECK(rep.witness[2][0] <= 1.0 + 2 * w.max_pitch());  // escape under the tower
    }

    SUBCASE("no qualifying pair is inconclusive") {
        Scene s = open_box_scene(2, Box::cube(2, 0, 1));
        std::vector<std::pair<Point, Point>> pairs;
        PredicateReport rep = check_proper_inclusion(s, pairs, s.default_win(16));
        CHECK(rep.status == PredicateStatus::Inconclusive);
    }
}

TEST_CASE("dense boundaries") {
    SUBCASE("open boxes pass") {
        Scene s = open_box_scene(2, Box::cube(2, 0, 1));
        Window w = s.default_win(48);
        auto pts = seeded_scene_points(s, 5, kDefaultSeed, w);
        PredicateReport rep = check_dense_boundaries(s, pts, w);
        CHECK(rep.status == PredicateStatus::PassedAtResolution);
        CHECK(rep.cases_tested > 0);
    }

    SUBCASE("the solid passes at an interior point") {
        Scene s = builtin_scene("ex42");
        Window w = s.default_win(24);
        std::vector<Point> pts{Point{-0.5, -0.5, -0.5}};
        PredicateReport rep = check_dense_boundaries(s, pts, w);
        CHECK(rep.status == PredicateStatus::PassedAtResolution);
    }
}

TEST_CASE("point classification") {
    SUBCASE("open square interior point is upper compact bounded") {
        Scene s = builtin_scene("ex41");
        Window w = s.default_win(48);
        double radii[3] = {0.2, 0.1, 0.05};
        Classification c = classify_point(s, Point{0.5, 0.5}, radii, w);
        CHECK(c.status == ClassifyStatus::UpperCompactBounded);
        CHECK(c.e1_nonempty);
    }

    SUBCASE("the glued origin is neither") {
        Scene s = builtin_scene("ex25");
        Window w = s.default_win(64);
        double radii[3] = {0.8, 0.4, 0.2};
        Classification c = classify_point(s, Point{0, 0}, radii, w);
        REQUIRE(c.status == ClassifyStatus::Neither);
        REQUIRE(c.dominating_pair.has_value());
        CHECK(c.dominating_pair->second == Point{1, 1});  // the named dominator
        const Point& u = c.dominating_pair->first;
        CHECK(u[0] > 0);
        CHECK(u[1] > 0);
        REQUIRE(c.e1_certificate.has_value());
        CHECK(c.e1_certificate->status == CompactnessStatus::ClosureEscape);
    }

    SUBCASE("the upper boundary arc is neither") {
        Scene s = builtin_scene("ex36");
        Window w = s.default_win(64);
        double radii[3] = {0.8, 0.4, 0.2};
        Classification c = classify_point(s, Point{0.5, std::sqrt(0.75)}, radii, w);
        CHECK(c.status == ClassifyStatus::Neither);
        CHECK_FALSE(c.box_a.has_value());  // no interior order box exists there
    }

    CHECK_THROWS_AS(
        classify_point(builtin_scene("ex41"), Point{2, 2}, std::vector<double>{0.1},
                       builtin_scene("ex41").default_win(16)),
        std::invalid_argument);
}

TEST_CASE("order interval boundedness") {
    SUBCASE("coordinatewise box") {
        Window wins[2] = {{Box::cube(2, -2, 2), 48}, {Box::cube(2, -4, 4), 48}};
        BoundReport rep = lemma31_bound(Point{1, 1}, ConeOrder::coordinatewise(), wins);
        REQUIRE(rep.status == BoundStatus::Bounded);
        CHECK(std::abs(rep.radius - std::sqrt(2.0)) <= 2 * wins[1].max_pitch());
    }

    SUBCASE("degenerate interval at the origin") {
        Window wins[2] = {{Box::cube(2, -2, 2), 48}, {Box::cube(2, -4, 4), 48}};
        BoundReport rep = lemma31_bound(Point{0, 0}, ConeOrder::coordinatewise(), wins);
        CHECK(rep.status == BoundStatus::Bounded);
        CHECK(rep.radius == 0.0);
    }

    SUBCASE("diamond cone") {
        ConeOrder diamond = ConeOrder::halfspaces({Point{1, 1}, Point{-1, 1}});
        Window wins[2] = {{Box::cube(2, -2, 2), 64}, {Box::cube(2, -4, 4), 64}};
        BoundReport rep = lemma31_bound(Point{0, 1}, diamond, wins);
        REQUIRE(rep.status == BoundStatus::Bounded);
        CHECK(std::abs(rep.radius - 1.0) <= 2 * wins[1].max_pitch());
    }

    CHECK_THROWS_AS(lemma31_bound(Point{-1, 0}, ConeOrder::coordinatewise(),
                                  std::vector<Window>{{Box::cube(2, -2, 2), 16},
                                                      {Box::cube(2, -4, 4), 16}}),
                    std::invalid_argument);
}

TEST_CASE("order box construction") {
    SUBCASE("ambient origin inside the unit ball") {
        Scene s = ambient_scene(2, ConeOrder::coordinatewise(), Box::cube(2, -2, 2));
        Window w = s.default_win(64);
        auto box = lemma32_box(s, Point{0, 0}, Point{0, 0}, 1.0, w);
        REQUIRE(box.has_value());
        CHECK(box->t0 >= 0.4);
        CHECK(box->a.norm() < 1.0);
        CHECK(box->b.norm() < 1.0);
        CHECK(box->a == Point{0, 0} - (box->b - Point{0, 0}) * 1.0);  // symmetric box
    }

    SUBCASE("open square tight ball") {
        Scene s = builtin_scene("ex41");
        Window w = s.default_win(64);
        auto box = lemma32_box(s, Point{0.5, 0.5}, Point{0.5, 0.5}, 0.1, w);
        REQUIRE(box.has_value());
        CHECK(box->a.dist(Point{0.5, 0.5}) < 0.1);
        CHECK(s.leq(box->b, box->a));
    }

    SUBCASE("closed boundary point fails") {
        Scene s = builtin_scene("ex36");
        Window w = s.default_win(64);
        auto box = lemma32_box(s, Point{0.5, std::sqrt(0.75)}, Point{0.5, std::sqrt(0.75)}, 0.3, w);
        CHECK_FALSE(box.has_value());
    }
}

TEST_CASE("segment boundary point") {
    Scene s = ambient_scene(2, ConeOrder::coordinatewise(), Box::cube(2, -3, 3));
    Point a{1, 1}, b{-1, -1};

    Point u1 = lemma33_boundary_point(Point{2, 2}, Point{0, 0}, a, b, s);
    CHECK(u1.dist_inf(Point{1, 1}) <= 1e-12);
    CHECK(s.leq(Point{0, 0}, u1));
    CHECK(s.leq(u1, Point{2, 2}));

    Point u2 = lemma33_boundary_point(Point{0, 2}, Point{0, 0}, a, b, s);
    CHECK(u2.dist_inf(Point{0, 1}) <= 1e-12);

    Point u3 = lemma33_boundary_point(Point{0.5, 1.5}, Point{0.5, 0.5}, a, b, s);
    CHECK(u3.dist_inf(Point{0.5, 1.0}) <= 1e-12);

    // exact chains in the coordinatewise case
    Rng rng(seed_mix(kDefaultSeed, "lemma33"));
    for (int i = 0; i < 100; ++i) {
        Point x{rng.uniform(-0.9, 0.9), rng.uniform(-0.9, 0.9)};
        Point c = x + Point{rng.uniform(0.2, 2.0), rng.uniform(0.2, 2.0)};
        ImplicitClosedSet box = interval_set(s, b, a);
        if (box.contains(c)) continue;
        Point u = lemma33_boundary_point(c, x, a, b, s);
        CHECK(s.leq(x, u));
        CHECK(s.leq(u, c));
        CHECK(box.contains(u, kMembershipTol));
    }

    CHECK_THROWS_AS(lemma33_boundary_point(Point{0.5, 0.5}, Point{0, 0}, a, b, s),
                    std::invalid_argument);  // both inside
    CHECK_THROWS_AS(lemma33_boundary_point(Point{2, -2}, Point{0, 0}, a, b, s),
                    std::invalid_argument);  // incomparable endpoints
}

TEST_CASE("default inverse probe") {
    SUBCASE("open square certificate") {
        Scene s = builtin_scene("ex41");
        Window w = s.default_win(48);
        InverseResult r = inverse_probe_default(s, Point{0.5, 0.5}, ball_set(s, Point{0.5, 0.5}, 0.2, true), w);
        CHECK(r.status == InverseStatus::ContinuousWitness);
    }

    SUBCASE("glued origin is inconclusive") {
        Scene s = builtin_scene("ex25");
        Window w = s.default_win(64);
        InverseResult r = inverse_probe_default(s, Point{0, 0}, ball_set(s, Point{0, 0}, 0.5, true), w);
        CHECK(r.status == InverseStatus::Inconclusive);
        REQUIRE_FALSE(r.notes.empty());
        CHECK(r.notes.front().find("NEITHER") != std::string::npos);
    }
}

}  // TEST_SUITE
