#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hyperfell/geometry.hpp"

namespace hyperfell {

struct Scene;
struct Window;

enum class ConeKind { Coordinatewise, Halfspaces };

// Order induced by a pointed closed convex cone with nonempty interior.
// Coordinatewise is the product order; Halfspaces is K = {x : <n_i, x> >= 0}.
struct ConeOrder {
    ConeKind kind = ConeKind::Coordinatewise;
    std::vector<Point> normals;

    static ConeOrder coordinatewise() { return {}; }
    static ConeOrder halfspaces(std::vector<Point> ns) {
        ConeOrder o;
        o.kind = ConeKind::Halfspaces;
        o.normals = std::move(ns);
        return o;
    }

    // x <= y. Coordinatewise is exact (slack = 0 unless the caller relaxes);
    // halfspace comparisons always allow tau_mem so the closed cone survives
    // rounding.
    bool leq(const Point& x, const Point& y, double slack = 0.0) const;

    bool geq(const Point& x, const Point& y, double slack = 0.0) const { return leq(y, x, slack); }

    // A direction in the cone interior, unit norm.
    Point interior_direction(int dim) const;

    bool operator==(const ConeOrder& o) const { return kind == o.kind && normals == o.normals; }
};

// u in x-down (u in Y and u <= x); the filter version is the dual.
bool ideal_membership(const Point& u, const Point& x, const Scene& scene, double slack = 0.0);
bool filter_membership(const Point& u, const Point& x, const Scene& scene, double slack = 0.0);

// u in A-down for finite A. Throws on empty A.
bool down_closure_membership(const Point& u, std::span<const Point> A, const Scene& scene);
bool up_closure_membership(const Point& u, std::span<const Point> A, const Scene& scene);

enum class MeetStatus { Found, NoMeet, WindowInconclusive };

struct MeetResult {
    MeetStatus status = MeetStatus::NoMeet;
    Point point;  // the extreme sample closest to the candidate envelope
    // Componentwise envelope of the maximal candidates; quantization splits
    // the frontier into a staircase, and the envelope is the oracle's best
    // per-axis estimate of the bound.
    Point bound_estimate;
    // Set when no maximal candidate approaches the envelope.
    bool not_semilattice_at_resolution = false;
    double frontier_spread = 0.0;
    std::string note;
};

// Grid oracle: greatest sampled lower bound of {x, y} inside the window.
// Batch callers can pass a pre-sampled scene cloud for the same window.
MeetResult meet_brute(const Point& x, const Point& y, const Scene& scene, const Window& grid,
                      const struct PointCloud* scene_cloud = nullptr);

// Dual oracle: least sampled upper bound.
MeetResult join_brute(const Point& x, const Point& y, const Scene& scene, const Window& grid,
                      const struct PointCloud* scene_cloud = nullptr);

// The candidate cloud the oracles use (grid + closed-form scene samplers,
// no annotation landmarks).
struct PointCloud oracle_scene_cloud(const Scene& scene, const Window& grid);

// Closed-form meet for the uv + w - 1 <= 0 solid. Throws if an argument is
// outside that space.
Point meet_ex42(const Point& x, const Point& y);

// Closed-form join on the two-triangle space: the componentwise join lands in
// the space for every pair. Throws if an argument is outside it.
Point join_ex35(const Point& x, const Point& y);

}  // namespace hyperfell
