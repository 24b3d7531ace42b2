#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hyperfell/hyperspace.hpp"
#include "hyperfell/setrep.hpp"

namespace hyperfell {

enum class PredicateStatus { PassedAtResolution, Falsified, Inconclusive };

const char* predicate_status_name(PredicateStatus s);

struct PredicateReport {
    std::string predicate;
    std::string scene;
    PredicateStatus status = PredicateStatus::Inconclusive;
    int cases_tested = 0;
    std::vector<Point> witness;  // falsification points, re-validated at 2x resolution
    bool witness_revalidated = false;
    std::string note;
    int resolution = 0;
    double pitch = 0.0;
};

// Interiority at resolution: p is interior to `set` relative to the scene if
// every scene point within one pitch (∞-ball probes) stays in the set.
bool pitch_interior(const Scene& scene, const ImplicitClosedSet& set, const Point& p, double pitch);

// x-down ∩ O != ∅ must persist on a ball around x; the modulus delta is
// searched through {pitch * 2^j} descending.
PredicateReport check_decreasing_continuous(const Scene& scene, std::span<const Point> points,
                                            std::span<const HitSet> opens, const Window& window);

// Pairs (x, y) with y <= x: y interior to x-down forces y-down interior to
// x-down, plus the filter dual.
PredicateReport check_proper_inclusion(const Scene& scene,
                                       std::span<const std::pair<Point, Point>> pairs,
                                       const Window& window);

PredicateReport check_dense_boundaries(const Scene& scene, std::span<const Point> samples,
                                       const Window& window, bool strict_neighborhood = false);

enum class ClassifyStatus { UpperSingular, UpperCompactBounded, Neither, Inconclusive };

const char* classify_status_name(ClassifyStatus s);

struct Classification {
    ClassifyStatus status = ClassifyStatus::Inconclusive;
    // singular branch evidence
    bool singular_holds = false;
    double singular_o1_radius = 0.0;
    std::optional<std::pair<Point, Point>> dominating_pair;  // (u, y) falsifying singularity
    // compact-bounded branch evidence
    bool ucb_holds = false;
    std::optional<Point> box_a, box_b;
    bool e1_nonempty = false;
    std::optional<CompactnessReport> e1_certificate;
    std::string note;
};

Classification classify_point(const Scene& scene, const Point& x, std::span<const double> ball_radii,
                              const Window& window);

enum class BoundStatus { Bounded, UnboundedEvidence };

struct BoundReport {
    BoundStatus status = BoundStatus::Bounded;
    double radius = 0.0;  // max norm over samples of the order interval
    Point witness;
};

// a-down ∩ (-a)-up is bounded for cone points a; probed over growing windows.
BoundReport lemma31_bound(const Point& a, const ConeOrder& order, std::span<const Window> windows);

struct BoxWitness {
    Point a, b;
    double t0 = 0.0;
};

// Shrinks a symmetric order box around x until it fits inside the ball
// U = B(u_center, u_radius) with x pitch-interior. FAIL (= nullopt) after 60
// halvings; boundary points of closed scenes legitimately fail.
std::optional<BoxWitness> lemma32_box(const Scene& scene, const Point& x, const Point& u_center,
                                      double u_radius, const Window& window);

// Bisection along the segment [c, x] against the order-box indicator;
// returns a boundary point u with c <= u <= x (or the reverse chain).
Point lemma33_boundary_point(const Point& c, const Point& x, const Point& a, const Point& b,
                             const Scene& scene);

// (b-up ∩ a-down) \ int(a-down) at resolution.
ImplicitClosedSet e1_set(const Scene& scene, const Point& a, const Point& b, double pitch);

struct E1Probe {
    bool nonempty = false;
    CompactnessReport certificate;
};

// Compactness of the order-box remainder, probed over margined windows whose
// grids resolve the one-pitch band that defines it.
E1Probe e1_compactness(const Scene& scene, const Point& a, const Point& b, double pitch);

// Deterministic member points: patch-backed scenes draw from their patches,
// others rejection-sample the window.
std::vector<Point> seeded_scene_points(const Scene& scene, int count, std::uint64_t seed,
                                       const Window& window);

// Default inverse-map probe: candidates come from classify_point (singular
// ball or lemma32 box + E1); NEITHER classifications yield INCONCLUSIVE.
InverseResult inverse_probe_default(const Scene& scene, const Point& x0, const ImplicitClosedSet& V,
                                    const Window& window, const ProbeConfig& cfg = {});

}  // namespace hyperfell
