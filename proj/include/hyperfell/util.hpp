#pragma once

#include <charconv>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "hyperfell/geometry.hpp"

namespace hyperfell {

// Deterministic PRNG. Doubles are derived straight from the engine bits so
// sequences do not depend on library distribution internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n; }

    Point point_in(const Box& b) {
        Point p = Point::zero(b.dim());
        for (int i = 0; i < b.dim(); ++i) p[i] = uniform(b.lo[i], b.hi[i]);
        return p;
    }

private:
    std::mt19937_64 eng_;
};

inline std::uint64_t seed_mix(std::uint64_t base, std::string_view tag) {
    std::uint64_t h = base ^ 0xcbf29ce484222325ULL;
    for (char c : tag) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Shortest round-trip decimal rendering; canonical across runs.
inline std::string fmt_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// Worker cap from HYPERFELL_THREADS (>=1). Results must never depend on it.
int worker_count();

// Static-partition parallel map over [0, n); fn(i) must only write state
// owned by index i.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace hyperfell
