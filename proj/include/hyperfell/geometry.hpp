#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hyperfell {

// Ambient dimension cap. Built-in scenes use n = 2 or 3; the DSL rejects
// anything above this so points stay on the stack.
inline constexpr int kMaxDim = 4;

// tau_mem: slack applied to non-strict constraint atoms and closed-order
// comparisons so closed sets keep their boundaries under rounding.
inline constexpr double kMembershipTol = 1e-9;

// tau_sep: separation slack for miss tests against volumetric (grid-sampled)
// sets.
inline constexpr double kSeparationTol = 1e-6;

// H_div / c_div: finite surrogates for "Hausdorff distance diverges".
inline constexpr double kDivergenceCap = 1e3;
inline constexpr double kDivergenceSlope = 0.05;

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;
inline constexpr int kDefaultResolution = 64;

class Point {
public:
    Point() = default;

    Point(std::initializer_list<double> vals) {
        if (vals.size() > kMaxDim) throw std::invalid_argument("point dimension too large");
        dim_ = static_cast<int>(vals.size());
        int i = 0;
        for (double v : vals) coords_[i++] = v;
    }

    static Point zero(int dim) {
        Point p;
        p.dim_ = check_dim(dim);
        return p;
    }

    static Point filled(int dim, double v) {
        Point p = zero(dim);
        for (int i = 0; i < dim; ++i) p.coords_[i] = v;
        return p;
    }

    static Point of(std::span<const double> vals) {
        Point p;
        p.dim_ = check_dim(static_cast<int>(vals.size()));
        for (int i = 0; i < p.dim_; ++i) p.coords_[i] = vals[i];
        return p;
    }

    int dim() const { return dim_; }
    double operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }
    double& operator[](int i) { return coords_[static_cast<std::size_t>(i)]; }

    std::span<const double> coords() const { return {coords_.data(), static_cast<std::size_t>(dim_)}; }

    bool finite() const {
        for (int i = 0; i < dim_; ++i)
            if (!std::isfinite(coords_[i])) return false;
        return true;
    }

    bool operator==(const Point& o) const {
        if (dim_ != o.dim_) return false;
        for (int i = 0; i < dim_; ++i)
            if (coords_[i] != o.coords_[i]) return false;
        return true;
    }

    bool lex_less(const Point& o) const {
        for (int i = 0; i < dim_ && i < o.dim_; ++i) {
            if (coords_[i] < o.coords_[i]) return true;
            if (coords_[i] > o.coords_[i]) return false;
        }
        return dim_ < o.dim_;
    }

    Point operator+(const Point& o) const {
        Point r = *this;
        for (int i = 0; i < dim_; ++i) r.coords_[i] += o.coords_[i];
        return r;
    }
    Point operator-(const Point& o) const {
        Point r = *this;
        for (int i = 0; i < dim_; ++i) r.coords_[i] -= o.coords_[i];
        return r;
    }
    Point operator*(double s) const {
        Point r = *this;
        for (int i = 0; i < dim_; ++i) r.coords_[i] *= s;
        return r;
    }

    double dot(const Point& o) const {
        double s = 0;
        for (int i = 0; i < dim_; ++i) s += coords_[i] * o.coords_[i];
        return s;
    }

    double norm2() const { return dot(*this); }
    double norm() const { return std::sqrt(norm2()); }

    double dist2(const Point& o) const {
        double s = 0;
        for (int i = 0; i < dim_; ++i) {
            double d = coords_[i] - o.coords_[i];
            s += d * d;
        }
        return s;
    }
    double dist(const Point& o) const { return std::sqrt(dist2(o)); }

    double dist_inf(const Point& o) const {
        double s = 0;
        for (int i = 0; i < dim_; ++i) s = std::max(s, std::abs(coords_[i] - o.coords_[i]));
        return s;
    }

    Point min_with(const Point& o) const {
        Point r = *this;
        for (int i = 0; i < dim_; ++i) r.coords_[i] = std::min(coords_[i], o.coords_[i]);
        return r;
    }
    Point max_with(const Point& o) const {
        Point r = *this;
        for (int i = 0; i < dim_; ++i) r.coords_[i] = std::max(coords_[i], o.coords_[i]);
        return r;
    }

    std::string str() const;

private:
    static int check_dim(int d) {
        if (d < 1 || d > kMaxDim) throw std::invalid_argument("unsupported point dimension");
        return d;
    }

    std::array<double, kMaxDim> coords_{};
    int dim_ = 0;
};

inline void require_same_dim(const Point& a, const Point& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
}

struct Box {
    Point lo;
    Point hi;

    int dim() const { return lo.dim(); }

    static Box around(const Point& center, double half) {
        Box b{center, center};
        for (int i = 0; i < center.dim(); ++i) {
            b.lo[i] = center[i] - half;
            b.hi[i] = center[i] + half;
        }
        return b;
    }

    static Box cube(int dim, double lo, double hi) {
        return Box{Point::filled(dim, lo), Point::filled(dim, hi)};
    }

    double extent(int i) const { return hi[i] - lo[i]; }

    double max_extent() const {
        double e = 0;
        for (int i = 0; i < dim(); ++i) e = std::max(e, extent(i));
        return e;
    }

    Point center() const { return (lo + hi) * 0.5; }

    bool valid() const {
        if (lo.dim() != hi.dim() || lo.dim() == 0) return false;
        for (int i = 0; i < dim(); ++i)
            if (!(lo[i] < hi[i])) return false;
        return true;
    }

    bool contains(const Point& p, double tol = 0.0) const {
        for (int i = 0; i < dim(); ++i)
            if (p[i] < lo[i] - tol || p[i] > hi[i] + tol) return false;
        return true;
    }

    // ∞-norm distance from p to the box boundary, 0 outside.
    double shell_distance(const Point& p) const {
        double d = std::numeric_limits<double>::infinity();
        for (int i = 0; i < dim(); ++i) {
            d = std::min(d, p[i] - lo[i]);
            d = std::min(d, hi[i] - p[i]);
        }
        return std::max(d, 0.0);
    }

    Box intersect(const Box& o) const {
        Box r{lo.max_with(o.lo), hi.min_with(o.hi)};
        return r;
    }

    bool operator==(const Box& o) const { return lo == o.lo && hi == o.hi; }
};

struct Window {
    Box box;
    int resolution = kDefaultResolution;  // grid nodes per axis

    bool valid() const { return box.valid() && resolution >= 2; }

    double pitch(int i) const { return box.extent(i) / (resolution - 1); }

    double max_pitch() const {
        double p = 0;
        for (int i = 0; i < box.dim(); ++i) p = std::max(p, pitch(i));
        return p;
    }
    double min_pitch() const {
        double p = std::numeric_limits<double>::infinity();
        for (int i = 0; i < box.dim(); ++i) p = std::min(p, pitch(i));
        return p;
    }

    double coord(int axis, int k) const { return box.lo[axis] + pitch(axis) * k; }

    std::size_t node_count() const {
        std::size_t n = 1;
        for (int i = 0; i < box.dim(); ++i) n *= static_cast<std::size_t>(resolution);
        return n;
    }
};

// Row-major canonical grid traversal (last axis fastest).
template <typename F>
void for_each_grid_node(const Window& w, F&& fn) {
    const int n = w.box.dim();
    std::array<int, kMaxDim> idx{};
    Point p = Point::zero(n);
    for (int i = 0; i < n; ++i) p[i] = w.coord(i, 0);
    while (true) {
        fn(p);
        int axis = n - 1;
        while (axis >= 0) {
            if (++idx[axis] < w.resolution) {
                p[axis] = w.coord(axis, idx[axis]);
                break;
            }
            idx[axis] = 0;
            p[axis] = w.coord(axis, 0);
            --axis;
        }
        if (axis < 0) break;
    }
}

}  // namespace hyperfell
