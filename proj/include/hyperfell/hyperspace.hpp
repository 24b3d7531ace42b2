#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hyperfell/setrep.hpp"

namespace hyperfell {

enum class Ternary { False, True, NoSamples };

struct HitSet {
    ImplicitClosedSet set;  // open set, strict atoms
    std::string tag;
};

struct MissSet {
    ImplicitClosedSet set;  // compact for Fell, closed for Vietoris
    std::string tag;
    std::optional<CompactnessReport> certificate;
};

struct TestFamily {
    std::vector<HitSet> hits;
    std::vector<MissSet> misses;
};

// Tail schedule alpha_m = alpha0 * 2^-m along a closed-form path into x0.
struct PathSpec {
    std::function<Point(double)> map;
    Point x0;
    double alpha0 = 0.5;
    int m_max = 20;
    std::string desc;

    Point at(int m) const { return map(alpha0 * std::ldexp(1.0, -m)); }

    static PathSpec line(const Point& x0, const Point& x1, double alpha0 = 0.5, int m_max = 20);

    // Throws when some x(alpha_m) leaves the scene; returns soft notes
    // (e.g. slow approach) otherwise.
    std::vector<std::string> validate(const Scene& scene) const;
};

// A_m ∈ O⁻ at resolution: some sample of O satisfies A's membership.
Ternary hits(const ImplicitClosedSet& A, const HitSet& O, const Window& window);

// A ∩ D = ∅ at resolution: no D sample satisfies A's membership within the
// separation slack (grid samples) or the membership slack (closed-form
// samples, whose coordinates are exact).
Ternary misses(const ImplicitClosedSet& A, const MissSet& D, const Window& window,
               double tau_sep = kSeparationTol);

enum class ProbeStatus { Converges, Diverges, Inconclusive };

const char* probe_status_name(ProbeStatus s);

struct ProbeWitness {
    std::string test_tag;
    std::string kind;  // "hit" | "miss"
    int index = 0;
    std::optional<Point> sample;  // violating miss sample; hits witness absence
    bool revalidated = false;
};

struct TestTrace {
    std::string tag;
    std::string kind;
    bool retained = true;
    std::string drop_reason;
    std::vector<int> per_index;  // 0/1 per m; empty when dropped
};

struct ProbeConfig {
    int tail = 5;  // "eventually" = holds for all m >= k with k <= m_max - tail
    double tau_sep = kSeparationTol;
    std::uint64_t seed = kDefaultSeed;
};

struct PathSummary {
    std::string desc;
    Point x0;
    double alpha0 = 0.0;
    int m_max = 0;
};

struct ProbeVerdict {
    std::string probe;
    ProbeStatus status = ProbeStatus::Inconclusive;
    PathSummary path;
    std::optional<ProbeWitness> witness;
    std::vector<TestTrace> traces;
    std::vector<std::string> notes;
};

// Canonical map x -> x-down probed against hit sets (open) and miss sets
// (compact-certified for Fell, any closed set for Vietoris).
ProbeVerdict fell_probe(const Scene& scene, const PathSpec& path, const TestFamily& family,
                        const Window& window, const ProbeConfig& cfg = {});
ProbeVerdict vietoris_probe(const Scene& scene, const PathSpec& path, const TestFamily& family,
                            const Window& window, const ProbeConfig& cfg = {});

struct HausdorffProbeVerdict {
    ProbeStatus status = ProbeStatus::Inconclusive;
    PathSummary path;
    std::vector<DivergenceReport> per_index;
    std::vector<std::string> notes;
};

HausdorffProbeVerdict hausdorff_probe(const Scene& scene, const PathSpec& path,
                                      std::span<const Window> windows,
                                      const DivergenceConfig& dcfg = {}, int tail = 5);

// Default neighborhoods of x0-down: seeded hit balls around its samples and
// compact-certified miss boxes at two pitches' distance.
TestFamily default_family(const Scene& scene, const Point& x0, const Window& window,
                          std::uint64_t seed, bool fell_mode);

// Hit-only family of small balls around deep points (all coordinates below
// -r); the positive Vietoris device at the origin of the ex42 solid.
TestFamily deep_hit_family(const Scene& scene, const Point& x0, const Window& window, double r,
                           std::uint64_t seed);

// A hit set that distinguishes x-down from y-down for x != y.
std::optional<HitSet> separating_hit(const Scene& scene, const Point& x, const Point& y,
                                     const Window& window);

// ---- inverse map probe ----

struct FellNbhdCandidate {
    std::string tag;
    ImplicitClosedSet o1;                  // open piece, scanned through O1⁻
    std::optional<ImplicitClosedSet> e1;   // miss piece (X \ E1)⁺
    std::optional<CompactnessReport> e1_certificate;
    std::vector<Point> extra_scan;         // additional escape candidates
};

enum class InverseStatus { ContinuousWitness, NotContinuous, Inconclusive };

struct CandidateOutcome {
    std::string tag;
    bool valid = false;
    std::string invalid_reason;
    std::optional<Point> escape;
};

struct InverseResult {
    InverseStatus status = InverseStatus::Inconclusive;
    std::vector<CandidateOutcome> candidates;
    std::vector<std::string> notes;
};

// Scans scene samples y for escapes y-down ∈ O1⁻ ∩ (X\E1)⁺ with y outside V.
// CONTINUOUS_WITNESS when some valid candidate has no escape at resolution.
InverseResult inverse_probe(const Scene& scene, const Point& x0, const ImplicitClosedSet& V,
                            std::vector<FellNbhdCandidate> candidates, const Window& window,
                            const ProbeConfig& cfg = {});

}  // namespace hyperfell
