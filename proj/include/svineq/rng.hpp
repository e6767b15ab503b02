#pragma once

#include <svineq/matrix.hpp>

#include <complex>
#include <cstdint>
#include <random>

namespace svineq {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed of the independent stream number `index` under `seed`. Streams depend
/// only on (seed, index), so work split across threads draws the same numbers
/// as a serial run.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t index) : engine_(stream_seed(seed, index)) {}

    double normal(double stddev = 1.0) { return std::normal_distribution<double>(0.0, stddev)(engine_); }

    /// Uniform integer in [lo, hi].
    int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

    std::size_t index_below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_); }

    /// Standard normal scalar: real N(0,1) or complex with independent N(0,1) parts.
    Scalar scalar(Field field) {
        double re = normal();
        double im = field == Field::complex ? normal() : 0.0;
        return {re, im};
    }

private:
    std::mt19937_64 engine_;
};

} // namespace svineq
