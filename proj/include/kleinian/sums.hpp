#pragma once
// Deterministic summation helpers.  All lattice sums in this library go
// through these so that results are bit-identical from run to run: Kahan
// compensation within a chunk, chunks combined in fixed index order no
// matter how many worker threads computed them.

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace kleinian {

class KahanSum {
public:
    void add(double x) {
        double y = x - comp_;
        double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Sum fn(i) for i in [0, n), splitting the index range into fixed chunks.
// Chunk partials are accumulated with Kahan compensation and combined in
// ascending chunk order, so the result does not depend on thread count.
template <typename Fn>
double parallel_sum(size_t n, Fn&& fn, int threads = 1, size_t chunk = 1024) {
    if (n == 0) return 0.0;
    size_t nchunks = (n + chunk - 1) / chunk;
    std::vector<double> partial(nchunks, 0.0);
    auto work = [&](size_t c0, size_t c1) {
        for (size_t c = c0; c < c1; ++c) {
            KahanSum acc;
            size_t hi = std::min(n, (c + 1) * chunk);
            for (size_t i = c * chunk; i < hi; ++i) acc.add(fn(i));
            partial[c] = acc.value();
        }
    };
    if (threads <= 1 || nchunks == 1) {
        work(0, nchunks);
    } else {
        size_t t = std::min<size_t>(threads, nchunks);
        std::vector<std::thread> pool;
        size_t per = (nchunks + t - 1) / t;
        for (size_t k = 0; k < t; ++k) {
            size_t c0 = k * per, c1 = std::min(nchunks, c0 + per);
            if (c0 >= c1) break;
            pool.emplace_back(work, c0, c1);
        }
        for (auto& th : pool) th.join();
    }
    KahanSum total;
    for (double p : partial) total.add(p);
    return total.value();
}

}  // namespace kleinian
