#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace bellml {

// Splitmix64 step; used to derive independent sub-stream seeds so that
// per-sample generators stay reproducible for any worker count.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Seeded random source. The generator identity is part of the data-format
// contract: std::mt19937_64 (bit-exact per the C++ standard) with uniform
// doubles taken from the top 53 bits and normals via Box-Muller. Identical
// seeds therefore produce identical datasets across builds and releases.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), gen_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return gen_(); }

    // Uniform on [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // Uniform on (0, 1]; safe as a log argument.
    double uniform_open() { return static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53; }

    // Uniform integer in [0, n), rejection-corrected.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = n * ((~std::uint64_t{0}) / n);
        std::uint64_t x;
        do {
            x = gen_();
        } while (x >= limit);
        return x % n;
    }

    // Standard normal via Box-Muller; pairs are cached.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform_open();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(angle);
        have_spare_ = true;
        return r * std::cos(angle);
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace bellml
