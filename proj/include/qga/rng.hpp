#pragma once

#include <cstdint>
#include <random>

namespace qga {

// Deterministic random source. All stochastic operators draw from this
// wrapper only, so a run is replayable from its seed. The raw engine output
// is mapped to ranges by hand to avoid distribution objects whose sequences
// differ between standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform integer in [0, n). n must be > 0.
    std::size_t index(std::size_t n) {
        // rejection sampling to remove modulo bias
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v = engine_();
        while (v >= limit) {
            v = engine_();
        }
        return static_cast<std::size_t>(v % n);
    }

    // Uniform real in [0, 1).
    double real01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return real01() < p; }

private:
    std::mt19937_64 engine_;
};

}  // namespace qga
