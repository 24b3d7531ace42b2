#include <doctest.h>

#include <cmath>

#include "hyperfell/parser.hpp"
#include "hyperfell/props.hpp"
#include "hyperfell/scene.hpp"
#include "hyperfell/util.hpp"

using namespace hyperfell;

namespace {

Scene parse_ok(const std::string& text) {
    ParseResult r = parse_scene(text);
    if (auto* err = std::get_if<ParseError>(&r)) FAIL(err->str());
    return std::move(std::get<Scene>(r));
}

// Hand-coded membership oracles, independent of the constraint AST. They use
// the same closure slack convention so agreement is exact.
bool oracle_ex25(const Point& p, double tol) {
    return p[0] * p[1] > 0 || (std::abs(p[0]) <= tol && std::abs(p[1]) <= tol);
}
bool oracle_ex35(const Point& p, double tol) {
    bool t1 = std::abs(p[2]) <= tol && -1 - tol <= p[1] && p[1] <= p[0] + tol && p[0] <= tol;
    bool t2 = std::abs(p[0] - p[1]) <= tol && -1 - tol <= p[0] && p[0] <= tol &&
              p[0] <= p[2] + tol && p[2] <= tol;
    return t1 || t2;
}
bool oracle_ex36(const Point& p, double tol) {
    return (p[0] * p[1] - 4 >= -tol && p[0] > 0) || p[0] * p[0] + p[1] * p[1] <= 1 + tol;
}
bool oracle_ex41(const Point& p, double) {
    return 0 < p[0] && p[0] < 1 && 0 < p[1] && p[1] < 1;
}
bool oracle_ex42(const Point& p, double tol) {
    return p[0] <= tol && p[1] <= tol && p[2] <= tol && p[0] * p[1] + p[2] - 1 <= tol;
}

}  // namespace

TEST_SUITE("scene") {

TEST_CASE("grammar examples") {
    Scene ex42 = parse_ok(
        "region ex42 dim 3 { x1 <= 0 and x2 <= 0 and x3 <= 0 and x1*x2 + x3 - 1 <= 0 } "
        "order coordinatewise");
    Scene builtin = builtin_scene("ex42");
    CHECK(ex42.dim == 3);
    Rng rng(seed_mix(kDefaultSeed, "grammar"));
    for (int i = 0; i < 2000; ++i) {
        Point p = rng.point_in(Box::cube(3, -2.5, 0.5));
        CHECK(ex42.contains(p) == builtin.contains(p));
    }

    ParseResult bad = parse_scene("region bad dim 2 { x3 <= 0 } order coordinatewise");
    REQUIRE(std::holds_alternative<ParseError>(bad));
    CHECK(std::get<ParseError>(bad).message.find("x3") != std::string::npos);

    ParseResult trunc = parse_scene("region t dim 2 { x1 < ");
    REQUIRE(std::holds_alternative<ParseError>(trunc));
    CHECK(std::get<ParseError>(trunc).line >= 1);

    ParseResult badexp = parse_scene("region t dim 2 { x1^2.5 < 1 } order coordinatewise");
    CHECK(std::holds_alternative<ParseError>(badexp));

    Scene half = parse_ok(
        "region diamond dim 2 { 0 <= 0 } order halfspaces [(1,1); (-1,1)] window [-2,2]x[-2,2]");
    CHECK(half.order.kind == ConeKind::Halfspaces);
    CHECK(half.order.normals.size() == 2);
    CHECK(half.leq(Point{0, 0}, Point{0, 1}));
    CHECK_FALSE(half.leq(Point{0, 0}, Point{1, 0}));

    // comments and whitespace insensitivity
    Scene commented = parse_ok(
        "region c dim 1 { # comment\n 0 <= x1 } order coordinatewise window [0,1]");
    CHECK(commented.contains(Point{0.5}));
}

TEST_CASE("printer round trip") {
    for (const std::string& id : builtin_scene_ids()) {
        Scene s = builtin_scene(id);
        std::string text = print_scene(s);
        CHECK(text == print_scene(s));  // deterministic
        Scene back = parse_ok(text);
        CHECK(back.structurally_equal(s));
        CHECK(print_scene(back) == text);
    }
    Scene box = open_box_scene(3, Box::cube(3, -0.25, 1.75));
    CHECK(parse_ok(print_scene(box)).structurally_equal(box));
}

TEST_CASE("parse-print-parse equals parse") {
    std::vector<std::string> texts = {
        "region a dim 2 { x1*x2 - 4 >= 0 or not (x1 < 0.5) } order coordinatewise",
        "region b dim 3 { x1^2 + x2^2 + x3^2 <= 2.25 and x3 = 0 } order coordinatewise "
        "window [-1.5,1.5]x[-1.5,1.5]x[-1,1]",
        "region c dim 2 { (x1 + 2*x2)*(x1 - x2) < 1 } order halfspaces [(0,1); (1,0)] point (0,0)",
        "region d dim 1 { 1e-3 < x1 and x1 < 1.5e2 } order coordinatewise window [0,200]",
    };
    for (const auto& t : texts) {
        Scene first = parse_ok(t);
        Scene second = parse_ok(print_scene(first));
        CHECK(second.structurally_equal(first));
        CHECK(print_scene(second) == print_scene(first));
    }
}

TEST_CASE("fuzz totality") {
    // every input yields a Scene or a ParseError with a position; no crashes
    const char* atoms[] = {"region", "dim",  "order", "coordinatewise", "halfspaces", "window",
                           "point",  "and",  "or",    "not",            "x1",         "x2",
                           "{",      "}",    "(",     ")",              "[",          "]",
                           "<",      "<=",   "=",     ">=",             ">",          "+",
                           "-",      "*",    "^",     ",",              ";",          "0.5",
                           "3",      "#c\n", "ex",    "1e9",            "@",          "\""};
    Rng rng(seed_mix(kDefaultSeed, "fuzz"));
    for (int i = 0; i < 10000; ++i) {
        std::string text;
        int len = 1 + static_cast<int>(rng.index(40));
        for (int k = 0; k < len; ++k) {
            text += atoms[rng.index(std::size(atoms))];
            text += ' ';
        }
        ParseResult r = parse_scene(text);
        if (auto* err = std::get_if<ParseError>(&r)) {
            CHECK(err->line >= 1);
            CHECK(err->column >= 1);
        }
    }
}

TEST_CASE("builtin membership against hand-coded oracles") {
    struct Fixture {
        const char* id;
        bool (*oracle)(const Point&, double);
    } fixtures[] = {{"ex25", oracle_ex25},
                    {"ex36", oracle_ex36},
                    {"ex41", oracle_ex41},
                    {"ex42", oracle_ex42}};
    for (const auto& f : fixtures) {
        Scene s = builtin_scene(f.id);
        Rng rng(seed_mix(kDefaultSeed, std::string("oracle:") + f.id));
        for (int i = 0; i < 10000; ++i) {
            Point p = rng.point_in(s.default_window);
            CHECK(s.contains(p) == f.oracle(p, kMembershipTol));
        }
    }
}

TEST_CASE("two-triangle facts") {
    Scene s = builtin_scene("ex35");
    // membership AST agrees with the barycentric-hull oracle exactly, both on
    // random window points and on patch samples
    Rng rng(seed_mix(kDefaultSeed, "ex35"));
    for (int i = 0; i < 10000; ++i) {
        Point p = rng.point_in(s.default_window);
        CHECK(s.contains(p) == oracle_ex35(p, kMembershipTol));
    }
    for (const Patch& patch : s.patches) {
        for (int i = 0; i <= 40; ++i)
            for (int j = 0; j <= 40; ++j) {
                Point p = patch.map(i / 40.0, j / 40.0);
                CHECK(s.contains(p));
                CHECK(oracle_ex35(p, kMembershipTol));
            }
    }
    CHECK(s.find_landmark("t2_v3") != nullptr);
    CHECK(s.find_landmark("t2_v3")->point == Point{-1, -1, -1});
}

TEST_CASE("builtin landmarks and flags") {
    for (const std::string& id : builtin_scene_ids()) {
        Scene s = builtin_scene(id);
        for (const auto& lm : s.landmarks) {
            if (lm.exterior) CHECK_FALSE(s.contains(lm.point));
            else CHECK(s.contains(lm.point));
            CHECK(s.default_window.contains(lm.point));  // window covers landmarks
        }
    }
    CHECK(builtin_scene("ex35").closed_in_rn);
    CHECK(builtin_scene("ex36").closed_in_rn);
    CHECK(builtin_scene("ex42").closed_in_rn);
    CHECK_FALSE(builtin_scene("ex41").closed_in_rn);
    CHECK_FALSE(builtin_scene("ex25").closed_in_rn);

    CHECK(builtin_scene("ex42").contains(Point{-1, -2, -1}));   // on the front face
    CHECK_FALSE(builtin_scene("ex25").contains(Point{1, -1}));  // mixed signs
    CHECK_THROWS_AS(builtin_scene("nope"), std::invalid_argument);
}

}  // TEST_SUITE
