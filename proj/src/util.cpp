#include "hyperfell/util.hpp"

#include <cstdlib>
#include <thread>
#include <vector>

namespace hyperfell {

std::string Point::str() const {
    std::string s = "(";
    for (int i = 0; i < dim(); ++i) {
        if (i) s += ",";
        s += fmt_double((*this)[i]);
    }
    s += ")";
    return s;
}

int worker_count() {
    static int cached = [] {
        unsigned hw = std::thread::hardware_concurrency();
        int n = hw ? static_cast<int>(hw) : 1;
        if (const char* env = std::getenv("HYPERFELL_THREADS")) {
            int v = std::atoi(env);
            if (v >= 1) n = v;
        }
        return n;
    }();
    return cached;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    if (n == 0) return;
    int workers = worker_count();
    if (workers <= 1 || n < 8) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::size_t nw = std::min<std::size_t>(static_cast<std::size_t>(workers), n);
    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (std::size_t w = 0; w < nw; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += nw) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace hyperfell
