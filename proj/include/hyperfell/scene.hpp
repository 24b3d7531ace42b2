#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hyperfell/expr.hpp"
#include "hyperfell/geometry.hpp"
#include "hyperfell/order.hpp"

namespace hyperfell {

struct Landmark {
    std::string name;
    Point point;
    bool exterior = false;  // tagged escape points live outside the scene
};

// Closed-form 1-parameter sampler. Open endpoints are approached dyadically
// but never included.
struct Curve {
    std::string name;
    std::function<Point(double)> map;
    double t0 = 0.0;
    double t1 = 1.0;
    bool open0 = false;
    bool open1 = false;
};

// Closed-form 2-parameter sampler over [0,1]^2 (optionally the triangle
// s + t <= 1); used for measure-zero scenes that grids cannot see.
struct Patch {
    std::string name;
    std::function<Point(double, double)> map;
    bool triangular = false;
};

struct Scene {
    std::string name;
    int dim = 0;
    std::shared_ptr<const BoolExpr> membership;
    ConeOrder order;
    Box default_window;
    std::vector<Point> point_atoms;  // trailing `point (...)` clauses
    bool closed_in_rn = false;       // builtin metadata, not part of the DSL

    std::vector<Landmark> landmarks;
    std::vector<Curve> curves;
    std::vector<Patch> patches;
    // Builtin scenes whose sets live in a known orthant advertise it so
    // window generators do not waste resolution (empty = no clamp).
    std::optional<Box> window_clamp;
    // Closed-form boundary edges and faces of principal ideals, clipped to a
    // window. Needed where the Hausdorff action happens along measure-zero
    // boundary pieces that uniform grids straddle.
    std::function<std::vector<Curve>(const Point&, const Box&)> ideal_edges;
    std::function<std::vector<Patch>(const Point&, const Box&)> ideal_faces;

    bool contains(const Point& p, double tol = kMembershipTol) const {
        if (p.dim() != dim) throw std::invalid_argument("dimension mismatch");
        return membership->eval(p, tol);
    }

    bool leq(const Point& a, const Point& b, double slack = 0.0) const { return order.leq(a, b, slack); }

    Window default_win(int resolution = kDefaultResolution) const {
        return Window{default_window, resolution};
    }

    const Landmark* find_landmark(const std::string& n) const {
        for (const auto& l : landmarks)
            if (l.name == n) return &l;
        return nullptr;
    }

    const Curve* find_curve(const std::string& n) const {
        for (const auto& c : curves)
            if (c.name == n) return &c;
        return nullptr;
    }

    // Equality over the grammar-visible fields.
    bool structurally_equal(const Scene& o) const {
        return name == o.name && dim == o.dim && order == o.order &&
               default_window == o.default_window && point_atoms == o.point_atoms &&
               membership->equals(*o.membership);
    }
};

// Built-in ids: ex25, ex35, ex36, ex41, ex42. Throws on unknown ids.
Scene builtin_scene(const std::string& id);

// Open axis-aligned box scene (strict bounds), used by the positive suite.
Scene open_box_scene(int dim, const Box& bounds, std::string name = "");

// Whole-space scene (membership always true) with a chosen cone order;
// windows bound all sampling.
Scene ambient_scene(int dim, ConeOrder order, const Box& default_window);

bool is_builtin_scene_id(const std::string& id);
std::vector<std::string> builtin_scene_ids();

}  // namespace hyperfell
