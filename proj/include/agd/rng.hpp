#pragma once
// Deterministic random streams.
//
// All randomness in the library flows through Rng, a thin wrapper around
// std::mt19937_64 (whose output sequence is pinned by the C++ standard).
// Uniform doubles take the top 53 bits of one engine output; normal draws
// use the basic Box-Muller transform (two uniforms per pair, second value
// cached), so a stream is reproducible bit-for-bit from its seed on any
// platform up to libm accuracy in log/cos/sin.
//
// Streams are organized as a tree: child seeds are derived from a parent
// seed plus (tag, index) via splitmix64 mixing. Experiment code derives
//   master -> replicate r -> outer step t -> {sampling, exploration, ...}
// so replicates and steps can be generated independently of scheduling.

#include <cstdint>
#include <cmath>
#include <random>

namespace agd {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Child-seed derivation: mixes tag and index into the parent seed.
inline std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t tag,
                                 std::uint64_t index = 0) {
    std::uint64_t h = splitmix64(parent ^ splitmix64(tag));
    return splitmix64(h ^ splitmix64(index + 0x51ed27f4a7c15ULL));
}

// Stream tags (arbitrary distinct constants, part of the seed-tree contract).
namespace seed_tag {
inline constexpr std::uint64_t replicate = 1;
inline constexpr std::uint64_t outer = 2;
inline constexpr std::uint64_t inner = 3;
inline constexpr std::uint64_t init_draw = 4;
inline constexpr std::uint64_t resample = 5;
inline constexpr std::uint64_t perturb = 6;
inline constexpr std::uint64_t minibatch = 7;
inline constexpr std::uint64_t split = 8;
inline constexpr std::uint64_t metric = 9;
}  // namespace seed_tag

class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t raw() { return engine_(); }

    // Uniform on [0, 1).
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform on (0, 1]; safe as a log argument.
    double uniform_pos() { return 1.0 - uniform01(); }

    // Standard normal, Box-Muller, second value of each pair cached.
    double normal() {
        if (has_cache_) {
            has_cache_ = false;
            return cache_;
        }
        const double u1 = uniform_pos();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * M_PI * u2;
        cache_ = r * std::sin(a);
        has_cache_ = true;
        return r * std::cos(a);
    }

    // Gamma(shape, rate) via Marsaglia-Tsang; shape < 1 handled by boosting.
    double gamma(double shape, double rate) {
        if (shape < 1.0) {
            const double u = uniform_pos();
            return gamma(shape + 1.0, rate) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x = normal();
            double v = 1.0 + c * x;
            if (v <= 0.0) continue;
            v = v * v * v;
            const double u = uniform_pos();
            if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) {
                return d * v / rate;
            }
        }
    }

    // Child stream derived from the construction seed (independent of how
    // much of this stream has been consumed).
    Rng child(std::uint64_t tag, std::uint64_t index = 0) const {
        return Rng(derive_seed(seed_, tag, index));
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    double cache_{0.0};
    bool has_cache_{false};
};

}  // namespace agd
