#pragma once

#include <cstdint>
#include <initializer_list>

namespace graphflow::rng {

// Deterministic randomness for the whole engine, built on the splitmix64
// finalizer. Two access patterns:
//
//   * derive(base, {indices...}) — counter-based stream derivation. Every
//     replication, candidate evaluation and Monte Carlo run gets its own
//     64-bit key derived from (master seed, structural indices), so results
//     never depend on scheduling or evaluation order.
//   * event_unit(key, a, b, c) — a uniform draw addressed by event identity
//     (e.g. arc endpoints and step) instead of consumption order. Simulations
//     keyed this way stay coupled run-for-run when the graph is perturbed,
//     which is what makes common-random-number comparisons exact.

inline constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

inline std::uint64_t combine(std::uint64_t h, std::uint64_t v) {
    return mix64(h ^ (v + kGamma + (h << 6) + (h >> 2)));
}

inline std::uint64_t derive(std::uint64_t base, std::initializer_list<std::uint64_t> path) {
    std::uint64_t h = mix64(base + kGamma);
    for (std::uint64_t v : path) h = combine(h, v);
    return h;
}

inline double to_unit(std::uint64_t h) {
    // 53 high bits -> [0, 1)
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

inline double event_unit(std::uint64_t key, std::uint64_t a) {
    return to_unit(combine(key, a));
}

inline double event_unit(std::uint64_t key, std::uint64_t a, std::uint64_t b) {
    return to_unit(combine(combine(key, a), b));
}

inline double event_unit(std::uint64_t key, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return to_unit(combine(combine(combine(key, a), b), c));
}

/// Sequential generator (splitmix64) for code that wants a stream of draws,
/// e.g. graph generators and uniform sampling.
class Stream {
public:
    explicit Stream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += kGamma;
        return mix64(state_);
    }

    double next_unit() { return to_unit(next_u64()); }

    /// Unbiased draw in [0, bound) via rejection.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % bound;
    }

private:
    std::uint64_t state_;
};

} // namespace graphflow::rng
