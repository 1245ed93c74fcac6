#pragma once

#include <cstddef>
#include <vector>

#include <tbb/info.h>
#include <tbb/parallel_for.h>
#include <tbb/task_arena.h>

namespace irf {

// Splits [0, n) into chunks whose boundaries depend only on n, runs them on up
// to `threads` workers and returns the per-chunk results in chunk order.
// Reducing that vector sequentially gives the same bits for any thread count.
template <class T, class ChunkFn>
std::vector<T> map_chunks(std::size_t n, int threads, ChunkFn&& fn,
                          std::size_t chunk = 4096) {
    const std::size_t count = n == 0 ? 0 : (n + chunk - 1) / chunk;
    std::vector<T> out(count);
    auto body = [&](std::size_t c) {
        const std::size_t lo = c * chunk;
        const std::size_t hi = lo + chunk < n ? lo + chunk : n;
        out[c] = fn(lo, hi);
    };
    if (threads > tbb::info::default_concurrency()) threads = tbb::info::default_concurrency();
    if (threads <= 1 || count <= 1) {
        for (std::size_t c = 0; c < count; ++c) body(c);
    } else {
        tbb::task_arena arena(threads);
        arena.execute([&] {
            tbb::parallel_for(std::size_t{0}, count, [&](std::size_t c) { body(c); });
        });
    }
    return out;
}

// Pairwise summation of an ordered sequence.
template <class T>
T pairwise_sum(const T* data, std::size_t n) {
    if (n == 0) return T{};
    if (n <= 8) {
        T s = data[0];
        for (std::size_t i = 1; i < n; ++i) s += data[i];
        return s;
    }
    const std::size_t h = n / 2;
    return pairwise_sum(data, h) + pairwise_sum(data + h, n - h);
}

template <class T>
T pairwise_sum(const std::vector<T>& v) {
    return pairwise_sum(v.data(), v.size());
}

}  // namespace irf
