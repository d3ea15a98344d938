#pragma once

#include <cstdint>
#include <random>

namespace mlpp {

/// splitmix64 finalizer; used to derive independent stream seeds.
inline std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    return mix_seed(a ^ mix_seed(b));
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return mix_seed(mix_seed(a, b), c);
}

/// Deterministic RNG wrapper. All variate transforms are pinned here rather
/// than delegated to std::distribution, so sequences are stable everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform in [0, 1).
    double uniform01() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n), n >= 1. Lemire multiply-shift.
    int uniform_int(int n) {
        const auto r = static_cast<unsigned __int128>(gen_()) * static_cast<unsigned __int128>(n);
        return static_cast<int>(r >> 64);
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace mlpp
