#pragma once

#include <cstdint>
#include <random>

namespace fcrawl {

// Deterministic RNG wrapper. uniform_below avoids std::uniform_int_distribution,
// whose output is implementation-defined; traces must reproduce across stdlibs.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // unbiased-enough multiply-shift reduction (Lemire)
    std::uint64_t below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * n) >> 64);
    }

    double uniform01() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace fcrawl
