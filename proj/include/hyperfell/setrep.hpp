#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hyperfell/scene.hpp"

namespace hyperfell {

struct PointCloud {
    std::vector<Point> pts;
    std::size_t grid_count = 0;  // pts[0..grid_count) are window grid nodes
    std::string provenance;

    bool empty() const { return pts.empty(); }
    std::size_t size() const { return pts.size(); }
    bool from_grid(std::size_t i) const { return i < grid_count; }
};

// A tau-closed subset of a scene: membership predicate plus optional
// closed-form samplers for measure-zero parts that grids cannot see.
class ImplicitClosedSet {
public:
    using Membership = std::function<bool(const Point&, double)>;
    using CurveGen = std::function<std::vector<Curve>(const Box&)>;
    using PatchGen = std::function<std::vector<Patch>(const Box&)>;

    ImplicitClosedSet() = default;
    ImplicitClosedSet(const Scene& scene, std::string tag, Membership member)
        : scene_(&scene), tag_(std::move(tag)), member_(std::move(member)) {}

    bool contains(const Point& p, double tol = kMembershipTol) const { return member_(p, tol); }
    const std::string& tag() const { return tag_; }
    const Scene& scene() const { return *scene_; }
    bool valid() const { return scene_ != nullptr; }

    std::vector<Curve> fixed_curves;  // window-independent samplers
    // Curve sets' own samples are exact members by construction; their
    // distance-band membership proxy must not veto them.
    bool fixed_curves_authoritative = false;
    CurveGen curve_gen;               // window-clipped samplers (edges of ideals)
    PatchGen patch_gen;               // window-clipped face samplers
    std::vector<Point> extra_points;  // distinguished members (anchors, centers)
    bool grid_backed = true;          // measure-zero sets skip the node scan
    bool use_scene_samplers = true;   // merge scene patches/curves/point atoms
    bool use_scene_landmarks = true;  // also merge annotation landmarks

    bool has_closed_form() const { return !fixed_curves.empty() || static_cast<bool>(curve_gen); }

private:
    const Scene* scene_ = nullptr;
    std::string tag_;
    Membership member_;
};

// Factories. All membership predicates include scene membership.
ImplicitClosedSet whole_scene_set(const Scene& s);
ImplicitClosedSet ideal_set(const Scene& s, const Point& x);
ImplicitClosedSet filter_set(const Scene& s, const Point& x);
ImplicitClosedSet interval_set(const Scene& s, const Point& b, const Point& a);
ImplicitClosedSet ball_set(const Scene& s, const Point& center, double radius, bool strict);
ImplicitClosedSet box_set(const Scene& s, const Box& b);
ImplicitClosedSet curve_set(const Scene& s, Curve c, const std::string& tag);
// Open eps-neighborhood of the segment from a to b, intersected with the scene.
ImplicitClosedSet segment_band_set(const Scene& s, const Point& a, const Point& b, double eps);

// Grid nodes satisfying membership, merged with closed-form curve samples
// (arc-length resampled at a quarter pitch, dyadic refinement toward open
// ends), scene patches and landmarks. Canonical order, deterministic.
// clip_analytic keeps closed-form samples inside the window box; hit/miss
// tests disable it because thin-set intersections run away from any fixed
// window along the curve tails, and the samples are exact members anyway.
PointCloud sample(const ImplicitClosedSet& set, const Window& window, bool clip_analytic = true);

double distance_to_cloud(const Point& z, const PointCloud& cloud);

// Exact over the clouds: max of the two directed sup-min distances.
double hausdorff_distance(const PointCloud& a, const PointCloud& b);

enum class DivergenceVerdict { Bounded, Divergent, Inconclusive };

struct DivergenceConfig {
    double h_div = kDivergenceCap;
    double c_div = kDivergenceSlope;
    double growth_factor = 1.2;   // per-window growth that counts as "growing"
    double stabilize_rel = 0.01;  // BOUNDED band, floored at the pitch sum
};

struct DivergenceReport {
    DivergenceVerdict verdict = DivergenceVerdict::Inconclusive;
    std::vector<double> values;
    std::vector<double> pitches;
    std::vector<double> radii;
    double growth_slope = 0.0;  // least-squares slope of v/v_last vs r/r_last
    std::string note;
};

DivergenceReport hausdorff_windowed(const ImplicitClosedSet& a, const ImplicitClosedSet& b,
                                    std::span<const Window> windows, const DivergenceConfig& cfg = {});

// Centers of grid cells whose corners disagree on membership.
PointCloud boundary_cloud(const ImplicitClosedSet& set, const Scene& scene, const Window& window);

enum class CompactnessStatus { CompactAtResolution, Unbounded, ClosureEscape };

struct CompactnessReport {
    CompactnessStatus status = CompactnessStatus::CompactAtResolution;
    std::optional<Point> witness;
    std::string note;
    std::vector<std::size_t> cloud_sizes;
};

// UNBOUNDED when the cloud touches the outer two-pitch shell of every window;
// CLOSURE_ESCAPE when member samples accumulate (bisection) toward a point
// failing scene membership.
CompactnessReport compactness_probe(const ImplicitClosedSet& set, const Scene& scene,
                                    std::span<const Window> windows);

void write_cloud_csv(const PointCloud& cloud, const std::string& path);

// Growing-window helper: boxes scaled around a base, clamped per scene hint.
std::vector<Window> growing_windows(const Scene& scene, std::span<const double> radii, int resolution);

}  // namespace hyperfell
