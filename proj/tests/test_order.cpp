#include <doctest.h>

#include "hyperfell/order.hpp"
#include "hyperfell/parser.hpp"
#include "hyperfell/props.hpp"
#include "hyperfell/scene.hpp"
#include "hyperfell/setrep.hpp"
#include "hyperfell/util.hpp"

using namespace hyperfell;

namespace {

Scene parse_ok(const std::string& text) {
    ParseResult r = parse_scene(text);
    REQUIRE(std::holds_alternative<Scene>(r));
    return std::move(std::get<Scene>(r));
}

}  // namespace

TEST_SUITE("order") {

TEST_CASE("coordinatewise comparisons") {
    ConeOrder ord = ConeOrder::coordinatewise();
    CHECK(ord.leq(Point{0, -1, 0}, Point{0, 0, 0}));
    CHECK(ord.leq(Point{0.25, 0.5}, Point{0.25, 0.5}));
    CHECK_FALSE(ord.leq(Point{0.5, 0.6}, Point{0.5, 0.5}));
    CHECK_THROWS_AS(ord.leq(Point{0, 0}, Point{0, 0, 0}), std::invalid_argument);
}

TEST_CASE("order axioms on random samples") {
    ConeOrder coord = ConeOrder::coordinatewise();
    ConeOrder half = ConeOrder::halfspaces({Point{1, 1}, Point{-1, 1}});
    Rng rng(seed_mix(kDefaultSeed, "axioms"));
    Box box = Box::cube(2, -3, 3);
    for (int i = 0; i < 10000; ++i) {
        Point x = rng.point_in(box), y = rng.point_in(box), z = rng.point_in(box);
        for (const ConeOrder* ord : {&coord, &half}) {
            CHECK(ord->leq(x, x));                                         // reflexive
            if (ord->leq(x, y) && ord->leq(y, z)) CHECK(ord->leq(x, z));   // transitive
        }
        // antisymmetry, exact for the coordinatewise order
        if (coord.leq(x, y) && coord.leq(y, x)) CHECK(x == y);
    }
}

TEST_CASE("ideal and closure membership") {
    Scene ex36 = builtin_scene("ex36");
    CHECK(ideal_membership(Point{0.5, -0.5}, Point{1.0, 0.0}, ex36));
    CHECK_FALSE(ideal_membership(Point{2.0, 2.0}, Point{1.0, 0.0}, ex36));

    Scene ex25 = builtin_scene("ex25");
    CHECK(ideal_membership(Point{-1.0, -1.0}, Point{0.0, 0.0}, ex25));
    CHECK(filter_membership(Point{1.0, 1.0}, Point{0.0, 0.0}, ex25));

    Scene ex41 = builtin_scene("ex41");
    std::vector<Point> A{Point{0.5, 0.5}, Point{0.2, 0.9}};
    CHECK(down_closure_membership(Point{0.1, 0.8}, A, ex41));
    CHECK(down_closure_membership(A[0], A, ex41));  // A subset of its closure
    CHECK(up_closure_membership(Point{0.6, 0.95}, A, ex41));
    std::vector<Point> single{A[0]};
    Rng rng(seed_mix(kDefaultSeed, "closure"));
    for (int i = 0; i < 200; ++i) {
        Point u = rng.point_in(ex41.default_window);
        if (!ex41.contains(u)) continue;
        CHECK(down_closure_membership(u, single, ex41) == ideal_membership(u, A[0], ex41));
    }
    CHECK_THROWS_AS(down_closure_membership(A[0], std::span<const Point>{}, ex41),
                    std::invalid_argument);
}

TEST_CASE("order embedding through ideals") {
    // x <= y iff x-down is contained in y-down: forward on samples, reverse
    // via x itself.
    Scene scene = builtin_scene("ex41");
    Window w = scene.default_win(32);
    Rng rng(seed_mix(kDefaultSeed, "embedding"));
    for (int i = 0; i < 20; ++i) {
        Point x{rng.uniform(0.05, 0.95), rng.uniform(0.05, 0.95)};
        Point y{rng.uniform(0.05, 0.95), rng.uniform(0.05, 0.95)};
        PointCloud xs = sample(ideal_set(scene, x), w);
        if (scene.leq(x, y)) {
            for (const auto& p : xs.pts) CHECK(ideal_membership(p, y, scene, kMembershipTol));
        } else {
            CHECK_FALSE(ideal_membership(x, y, scene));  // x in x-down but not in y-down
        }
    }
}

TEST_CASE("meet closed form on the solid") {
    CHECK(meet_ex42(Point{-0.5, -0.5, 0}, Point{-1, -0.2, -0.1}) == Point{-1, -0.5, -0.1});
    CHECK(meet_ex42(Point{-1, -0.5, 0}, Point{-0.25, -2, 0}) == Point{-1, -2, -1});
    Point x{-1, -1, -2};
    CHECK(meet_ex42(x, x) == x);
    CHECK_THROWS_AS(meet_ex42(Point{1, 0, 0}, x), std::invalid_argument);

    Scene scene = builtin_scene("ex42");
    Rng rng(seed_mix(kDefaultSeed, "meet42"));
    auto draw = [&] {
        while (true) {
            Point p = rng.point_in(scene.default_window);
            if (scene.contains(p)) return p;
        }
    };
    for (int i = 0; i < 1000; ++i) {
        Point a = draw(), b = draw(), c = draw();
        Point ab = meet_ex42(a, b);
        CHECK(scene.leq(ab, a));  // lower bound, exactly
        CHECK(scene.leq(ab, b));
        CHECK(ab == meet_ex42(b, a));  // commutative, exactly
        Point l = meet_ex42(meet_ex42(a, b), c);
        Point r = meet_ex42(a, meet_ex42(b, c));
        CHECK(l.dist_inf(r) <= 1e-12);  // associative within 1e-12
        CHECK(scene.contains(ab));
    }
}

TEST_CASE("grid meet oracle") {
    Scene scene = builtin_scene("ex42");
    Window grid = scene.default_win(kDefaultResolution);

    SUBCASE("idempotence within a pitch") {
        Point x{-0.53, -0.71, -0.37};
        MeetResult r = meet_brute(x, x, scene, grid);
        REQUIRE(r.status == MeetStatus::Found);
        CHECK(r.point.dist_inf(x) <= grid.max_pitch());
    }

    SUBCASE("case-1 meet within a pitch") {
        MeetResult r = meet_brute(Point{-0.5, -0.5, 0}, Point{-1, -0.2, -0.1}, scene, grid);
        REQUIRE(r.status == MeetStatus::Found);
        CHECK(r.point.dist_inf(Point{-1, -0.5, -0.1}) <= grid.max_pitch());
    }

    SUBCASE("closed form dominates every grid lower bound") {
        Rng rng(seed_mix(kDefaultSeed, "dominate"));
        int checked = 0;
        for (int i = 0; i < 200 && checked < 100; ++i) {
            Point a = rng.point_in(grid.box), b = rng.point_in(grid.box);
            if (!scene.contains(a) || !scene.contains(b)) continue;
            MeetResult r = meet_brute(a, b, scene, grid);
            if (r.status != MeetStatus::Found) continue;
            ++checked;
            CHECK(scene.leq(r.point, meet_ex42(a, b), kMembershipTol));
        }
        CHECK(checked >= 50);
    }
}

TEST_CASE("grid meet over the two triangles") {
    Scene scene = builtin_scene("ex35");
    Window grid = scene.default_win(kDefaultResolution);
    MeetResult r = meet_brute(Point{-0.25, -0.25, -0.125}, Point{0, -1, 0}, scene, grid);
    REQUIRE(r.status == MeetStatus::Found);
    CHECK(r.point.dist_inf(Point{-1, -1, -0.125}) <= grid.max_pitch());
}

TEST_CASE("meet status classification") {
    // two incomparable peaks atop an L: their lower bounds split into two
    // maximal clusters more than a pitch apart
    Scene peaks = parse_ok(
        "region peaks dim 2 { (0 <= x1 and x1 <= 1 and 0 <= x2 and x2 <= 3) or "
        "(0 <= x1 and x1 <= 3 and 0 <= x2 and x2 <= 1) } order coordinatewise "
        "window [0,4]x[0,4] point (2.8,3.3) point (3.3,2.8)");
    Window grid = peaks.default_win(kDefaultResolution);
    MeetResult split = meet_brute(Point{2.8, 3.3}, Point{3.3, 2.8}, peaks, grid);
    REQUIRE(split.status == MeetStatus::Found);
    CHECK(split.not_semilattice_at_resolution);
    CHECK(split.frontier_spread > grid.max_pitch());
    CHECK(split.point.dist_inf(Point{2.8, 1.0}) <= 2 * grid.max_pitch());  // lex-largest cluster

    // disjoint upper boxes with no common lower bound inside the scene
    Scene gap = parse_ok(
        "region gap dim 2 { (0 <= x1 and x1 <= 1 and 2 <= x2 and x2 <= 3) or "
        "(2 <= x1 and x1 <= 3 and 0 <= x2 and x2 <= 1) } order coordinatewise window [0,4]x[0,4]");
    MeetResult none = meet_brute(Point{0.5, 2.5}, Point{2.5, 0.5}, gap, gap.default_win(64));
    CHECK(none.status == MeetStatus::NoMeet);

    // window that clips the candidate region away
    Scene clipped = parse_ok(
        "region clipped dim 2 { 0 <= x1 and x1 <= 4 and 0 <= x2 and x2 <= 4 } "
        "order coordinatewise window [2,4]x[2,4]");
    Window tight{Box{Point{2.6, 2.6}, Point{4.0, 4.0}}, 32};
    MeetResult inc = meet_brute(Point{2.5, 3.0}, Point{3.0, 2.5}, clipped, tight);
    CHECK(inc.status == MeetStatus::WindowInconclusive);
    CHECK(inc.note.find("window") != std::string::npos);
}

TEST_CASE("join closed form on the triangles") {
    CHECK(join_ex35(Point{-0.5, -0.5, -0.25}, Point{-0.5, -1, 0}) == Point{-0.5, -0.5, 0});
    Point x{-0.3, -0.3, -0.2};
    CHECK(join_ex35(x, x) == x);
    CHECK(join_ex35(x, Point{0, 0, 0}) == Point{0, 0, 0});
    CHECK_THROWS_AS(join_ex35(Point{0.5, 0.5, 0.5}, x), std::invalid_argument);

    Scene scene = builtin_scene("ex35");
    Window grid = scene.default_win(kDefaultResolution);
    std::vector<Point> pts = seeded_scene_points(scene, 100, kDefaultSeed, grid);
    int checked = 0;
    for (std::size_t i = 0; i + 1 < pts.size(); i += 2) {
        Point closed = join_ex35(pts[i], pts[i + 1]);
        CHECK(scene.contains(closed));
        MeetResult grid_join = join_brute(pts[i], pts[i + 1], scene, grid);
        if (grid_join.status != MeetStatus::Found) continue;
        ++checked;
        CHECK(grid_join.point.dist_inf(closed) <= grid.max_pitch() + kMembershipTol);
    }
    CHECK(checked >= 40);
}

}  // TEST_SUITE
