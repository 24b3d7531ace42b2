#include "hyperfell/scene.hpp"

#include <cmath>
#include <stdexcept>

#include "hyperfell/builtin_geometry.hpp"
#include "hyperfell/parser.hpp"
#include "hyperfell/util.hpp"

namespace hyperfell {

namespace {

Scene parse_builtin(const std::string& text) {
    ParseResult r = parse_scene(text);
    if (auto* err = std::get_if<ParseError>(&r))
        throw std::logic_error("builtin scene text failed to parse: " + err->str());
    return std::move(std::get<Scene>(r));
}

Scene make_ex25() {
    Scene s = parse_builtin(
        "region ex25 dim 2 { x1*x2 > 0 } order coordinatewise window [-2,2]x[-2,2] point (0,0)");
    s.closed_in_rn = false;
    s.landmarks.push_back({"theta", {0.0, 0.0}, false});
    s.landmarks.push_back({"q1", {1.0, 1.0}, false});
    s.landmarks.push_back({"q3", {-1.0, -1.0}, false});
    s.landmarks.push_back({"escape_right", {0.5, 0.0}, true});
    s.landmarks.push_back({"escape_top", {0.0, 0.5}, true});
    return s;
}

Scene make_ex35() {
    Scene s = parse_builtin(
        "region ex35 dim 3 { "
        "(x3 = 0 and -1 <= x2 and x2 <= x1 and x1 <= 0) or "
        "(x1 = x2 and -1 <= x1 and x1 <= 0 and x1 <= x3 and x3 <= 0) "
        "} order coordinatewise window [-1,0]x[-1,0]x[-1,0]");
    s.closed_in_rn = true;
    s.landmarks.push_back({"t1_v1", {0.0, 0.0, 0.0}, false});
    s.landmarks.push_back({"t1_v2", {0.0, -1.0, 0.0}, false});
    s.landmarks.push_back({"t1_v3", {-1.0, -1.0, 0.0}, false});
    s.landmarks.push_back({"t2_v3", {-1.0, -1.0, -1.0}, false});
    s.landmarks.push_back({"join_top", {0.0, 0.0, 0.0}, false});
    s.landmarks.push_back({"meet_bottom", {-1.0, -1.0, -1.0}, false});
    // Triangle with vertices (0,0,0), (0,-1,0), (-1,-1,0): u = -st, v = -s.
    s.patches.push_back({"T1", [](double a, double b) {
                             double sv = -a;      // v in [-1, 0]
                             double u = sv * b;   // v <= u <= 0
                             return Point{u, sv, 0.0};
                         },
                         false});
    // Triangle with vertices (0,0,0), (-1,-1,0), (-1,-1,-1): u=v=s, s<=w<=0.
    s.patches.push_back({"T2", [](double a, double b) {
                             double sv = -a;
                             double w = sv * (1.0 - b);  // s <= w <= 0
                             return Point{sv, sv, w};
                         },
                         false});
    return s;
}

Scene make_ex36() {
    Scene s = parse_builtin(
        "region ex36 dim 2 { (x1*x2 - 4 >= 0 and x1 > 0) or (x1^2 + x2^2 <= 1) } "
        "order coordinatewise window [-2,6]x[-2,6]");
    s.closed_in_rn = true;
    s.landmarks.push_back({"p10", {1.0, 0.0}, false});
    s.landmarks.push_back({"hyperbola_vertex", {2.0, 2.0}, false});
    s.landmarks.push_back({"arc_mid", {0.5, std::sqrt(0.75)}, false});
    s.curves.push_back({"disk_boundary",
                        [](double t) {
                            double a = 2.0 * 3.14159265358979323846 * t;
                            return Point{std::cos(a), std::sin(a)};
                        },
                        0.0, 1.0, false, false});
    // v = 4/u parametrized by v so dyadic refinement of the parameter walks
    // the unbounded tail u -> infinity.
    s.curves.push_back({"hyperbola_edge",
                        [](double v) { return Point{4.0 / v, v}; },
                        1e-6, 6.0, true, false});
    return s;
}

Scene make_ex41() {
    Scene s = parse_builtin(
        "region ex41 dim 2 { 0 < x1 and x1 < 1 and 0 < x2 and x2 < 1 } "
        "order coordinatewise window [0,1]x[0,1]");
    s.closed_in_rn = false;
    s.ideal_edges = [](const Point& x, const Box& win) { return ex41_ideal_edges(x, win); };
    s.landmarks.push_back({"center", {0.5, 0.5}, false});
    s.landmarks.push_back({"corner_origin", {0.0, 0.0}, true});
    s.landmarks.push_back({"corner_top", {1.0, 1.0}, true});
    return s;
}

Scene make_ex42() {
    Scene s = parse_builtin(
        "region ex42 dim 3 { x1 <= 0 and x2 <= 0 and x3 <= 0 and x1*x2 + x3 - 1 <= 0 } "
        "order coordinatewise window [-2,0]x[-2,0]x[-2,0]");
    s.closed_in_rn = true;
    s.window_clamp = Box{Point{-1e18, -1e18, -1e18}, Point{0.0, 0.0, 0.0}};
    s.ideal_edges = [](const Point& x, const Box& win) { return ex42_ideal_edges(x, win); };
    s.ideal_faces = [](const Point& x, const Box& win) { return ex42_ideal_faces(x, win); };
    s.landmarks.push_back({"origin", {0.0, 0.0, 0.0}, false});
    s.landmarks.push_back({"s1_point", {-1.0, -2.0, -1.0}, false});
    // Faces: S1 front (on uv + w - 1 = 0 where uv >= 1), S2 back (v = 0),
    // S3 right (u = 0), S4 top (w = 0, uv <= 1). Parametrized over the
    // default window extent.
    s.patches.push_back({"S1", [](double a, double b) {
                             double u = -1.0 - 3.0 * a;  // uv >= 1 region
                             double vmax = 1.0 / u;      // w = 1 - uv <= 0 from here down
                             double v = vmax + b * (-4.0 - vmax);
                             return Point{u, v, 1.0 - u * v};
                         },
                         false});
    s.patches.push_back({"S2", [](double a, double b) { return Point{-4.0 * a, 0.0, -4.0 * b}; }, false});
    s.patches.push_back({"S3", [](double a, double b) { return Point{0.0, -4.0 * a, -4.0 * b}; }, false});
    s.patches.push_back({"S4", [](double a, double b) {
                             double u = -4.0 * a;
                             double vlim = u < -0.25 ? 1.0 / u : -4.0;  // uv <= 1
                             double v = vlim * b;
                             return Point{u, v, 0.0};
                         },
                         false});
    return s;
}

}  // namespace

Scene builtin_scene(const std::string& id) {
    if (id == "ex25") return make_ex25();
    if (id == "ex35") return make_ex35();
    if (id == "ex36") return make_ex36();
    if (id == "ex41") return make_ex41();
    if (id == "ex42") return make_ex42();
    throw std::invalid_argument("unknown builtin scene id: " + id);
}

Scene open_box_scene(int dim, const Box& bounds, std::string name) {
    if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("unsupported dimension");
    if (!bounds.valid() || bounds.dim() != dim) throw std::invalid_argument("invalid bounds");
    if (name.empty()) name = "open_box" + std::to_string(dim);
    std::string text = "region " + name + " dim " + std::to_string(dim) + " { ";
    for (int i = 0; i < dim; ++i) {
        if (i) text += " and ";
        std::string v = "x" + std::to_string(i + 1);
        text += fmt_double(bounds.lo[i]) + " < " + v + " and " + v + " < " + fmt_double(bounds.hi[i]);
    }
    text += " } order coordinatewise window ";
    for (int i = 0; i < dim; ++i) {
        if (i) text += "x";
        text += "[" + fmt_double(bounds.lo[i]) + "," + fmt_double(bounds.hi[i]) + "]";
    }
    Scene s = parse_builtin(text);
    s.closed_in_rn = false;
    s.landmarks.push_back({"center", bounds.center(), false});
    return s;
}

Scene ambient_scene(int dim, ConeOrder order, const Box& default_window) {
    if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("unsupported dimension");
    std::string text = "region ambient" + std::to_string(dim) + " dim " + std::to_string(dim) +
                       " { 0 <= 0 } order coordinatewise";
    Scene s = parse_builtin(text);
    s.order = std::move(order);
    s.default_window = default_window;
    s.closed_in_rn = true;
    return s;
}

bool is_builtin_scene_id(const std::string& id) {
    for (const auto& s : builtin_scene_ids())
        if (s == id) return true;
    return false;
}

std::vector<std::string> builtin_scene_ids() { return {"ex25", "ex35", "ex36", "ex41", "ex42"}; }

}  // namespace hyperfell
