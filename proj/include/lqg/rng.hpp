#pragma once

#include <cmath>
#include <cstdint>

namespace lqg {

// Counter-based splittable RNG. Every draw is a pure function of
// (seed, stream, counter), so independent streams (spectral modes,
// walkers, probe sets) can be evaluated in any order or in parallel
// and still produce identical output.
class KeyedRng {
public:
    KeyedRng(std::uint64_t seed, std::uint64_t stream)
        : key_(mix(seed ^ mix(stream ^ 0x9e3779b97f4a7c15ull))) {}

    static std::uint64_t mix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }

    std::uint64_t u64_at(std::uint64_t counter) const { return mix(key_ ^ counter); }

    // uniform in (0, 1]
    double unit_at(std::uint64_t counter) const {
        return (static_cast<double>(u64_at(counter) >> 11) + 1.0) * 0x1.0p-53;
    }

    // standard normal via Box-Muller; one normal per counter
    double normal_at(std::uint64_t counter) const {
        const double u1 = unit_at(2 * counter);
        const double u2 = unit_at(2 * counter + 1);
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

    // stateful convenience
    std::uint64_t next_u64() { return u64_at(counter_++); }
    double next_unit() { return unit_at(counter_++); }
    double next_normal() { return normal_at(counter_++); }
    // integer in [0, m)
    std::uint32_t next_below(std::uint32_t m) {
        return static_cast<std::uint32_t>((next_u64() >> 33) % m);
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

// Fixed stream ids so substreams of one pipeline seed never collide.
namespace rng_stream {
inline constexpr std::uint64_t gff_modes = 1;
inline constexpr std::uint64_t idla_walker_base = 1ull << 32;
inline constexpr std::uint64_t probe_points = 2;
inline constexpr std::uint64_t sweep_permutation = 3;
}  // namespace rng_stream

}  // namespace lqg
