#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <random>
#include <thread>
#include <vector>

namespace hz {

// Worker count for internal parallel loops (0 = hardware). Results never depend on it.
void set_workers(int k);
int workers();

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed ^ (0xD1B54A32D192ED03ULL * (stream + 1));
    splitmix64(s);
    return splitmix64(s);
}

// f(i) for every i in [0, count); each index is visited exactly once
bool inside_worker();
void mark_worker(bool on);

// nested calls from inside a worker run serially
template <class F>
void parallel_for(int count, F&& f) {
    const int k = inside_worker() ? 1 : std::min(workers(), count);
    if (k <= 1) {
        for (int i = 0; i < count; ++i) f(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(k);
    for (int w = 0; w < k; ++w)
        pool.emplace_back([&] {
            mark_worker(true);
            for (int i = next++; i < count; i = next++) f(i);
            mark_worker(false);
        });
    for (auto& th : pool) th.join();
}

inline constexpr int kChunks = 64;

struct McResult {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t accepted = 0;
    std::int64_t rejected = 0;
};

// Monte Carlo mean of draw(rng). Non-finite draws are rejected and counted.
// The budget is cut into kChunks independent streams and reduced in chunk order.
template <class Draw>
McResult mc_mean(std::uint64_t seed, std::int64_t samples, Draw&& draw) {
    struct Acc {
        double s = 0.0, s2 = 0.0;
        std::int64_t n = 0, bad = 0;
    };
    std::vector<Acc> acc(kChunks);
    parallel_for(kChunks, [&](int c) {
        std::mt19937_64 rng(stream_seed(seed, static_cast<std::uint64_t>(c)));
        const std::int64_t m = samples / kChunks + (c < samples % kChunks ? 1 : 0);
        Acc a;
        for (std::int64_t i = 0; i < m; ++i) {
            const double v = draw(rng);
            if (!std::isfinite(v)) {
                ++a.bad;
                continue;
            }
            a.s += v;
            a.s2 += v * v;
            ++a.n;
        }
        acc[c] = a;
    });
    Acc tot;
    for (const auto& a : acc) {
        tot.s += a.s;
        tot.s2 += a.s2;
        tot.n += a.n;
        tot.bad += a.bad;
    }
    McResult r;
    r.accepted = tot.n;
    r.rejected = tot.bad;
    if (tot.n == 0) return r;
    r.mean = tot.s / tot.n;
    const double var = tot.n > 1 ? std::max(0.0, (tot.s2 - tot.n * r.mean * r.mean) / (tot.n - 1)) : 0.0;
    r.std_error = std::sqrt(var / tot.n);
    return r;
}

// vector-valued variant: means and covariance of the K components
template <int K>
struct McVec {
    std::array<double, K> mean{};
    std::array<std::array<double, K>, K> cov{};  // covariance of the mean
    std::int64_t accepted = 0;
    std::int64_t rejected = 0;
};

template <int K, class Draw>
McVec<K> mc_mean_vec(std::uint64_t seed, std::int64_t samples, Draw&& draw) {
    struct Acc {
        std::array<double, K> s{};
        std::array<std::array<double, K>, K> s2{};
        std::int64_t n = 0, bad = 0;
    };
    std::vector<Acc> acc(kChunks);
    parallel_for(kChunks, [&](int c) {
        std::mt19937_64 rng(stream_seed(seed, static_cast<std::uint64_t>(c)));
        const std::int64_t m = samples / kChunks + (c < samples % kChunks ? 1 : 0);
        Acc a;
        for (std::int64_t i = 0; i < m; ++i) {
            const std::array<double, K> v = draw(rng);
            bool ok = true;
            for (double x : v) ok = ok && std::isfinite(x);
            if (!ok) {
                ++a.bad;
                continue;
            }
            for (int p = 0; p < K; ++p) {
                a.s[p] += v[p];
                for (int q = 0; q < K; ++q) a.s2[p][q] += v[p] * v[q];
            }
            ++a.n;
        }
        acc[c] = a;
    });
    Acc tot;
    for (const auto& a : acc) {
        for (int p = 0; p < K; ++p) {
            tot.s[p] += a.s[p];
            for (int q = 0; q < K; ++q) tot.s2[p][q] += a.s2[p][q];
        }
        tot.n += a.n;
        tot.bad += a.bad;
    }
    McVec<K> r;
    r.accepted = tot.n;
    r.rejected = tot.bad;
    if (tot.n < 2) return r;
    for (int p = 0; p < K; ++p) r.mean[p] = tot.s[p] / tot.n;
    for (int p = 0; p < K; ++p)
        for (int q = 0; q < K; ++q)
            r.cov[p][q] = (tot.s2[p][q] - tot.n * r.mean[p] * r.mean[q]) / (tot.n - 1) / tot.n;
    return r;
}

inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace hz
