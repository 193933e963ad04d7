#pragma once

#include <cstdint>

namespace orbicluster {

// SplitMix64: the seedable, portable generator used by every randomized
// driver in this project.  Identical seeds give identical streams on all
// platforms, which keeps sweep reports reproducible.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed = 0) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, n)
    std::uint64_t next_below(std::uint64_t n) noexcept {
        // rejection-free modulo is fine here; streams are not adversarial
        return n ? next() % n : 0;
    }

    // uniform integer in [lo, hi] inclusive
    long next_int(long lo, long hi) noexcept {
        return lo + static_cast<long>(next_below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    // uniform double in [0, 1)
    double next_double() noexcept {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // uniform double in [lo, hi)
    double next_double(double lo, double hi) noexcept {
        return lo + (hi - lo) * next_double();
    }

private:
    std::uint64_t state_;
};

// Derives an independent per-item stream from a master seed, so parallel
// sweeps produce the same results as serial ones item by item.
inline SplitMix64 item_rng(std::uint64_t master_seed, std::uint64_t item) noexcept {
    SplitMix64 mix(master_seed ^ (0x9e3779b97f4a7c15ULL * (item + 1)));
    mix.next();
    return mix;
}

} // namespace orbicluster
