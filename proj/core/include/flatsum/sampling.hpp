#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace flatsum {

// Deterministic splittable generator (SplitMix64).  Sampling decisions in the
// verification suites must not depend on the platform's library, thread
// scheduling, or call order across moduli, so each modulus derives its own
// stream purely from (seed, q).
class SampleStream {
public:
    explicit SampleStream(std::uint64_t seed) noexcept : state_(seed) {}

    SampleStream(std::uint64_t seed, std::int64_t q) noexcept
        : state_(seed ^ static_cast<std::uint64_t>(q) * 0xD1B54A32D192ED03ull) {}

    std::uint64_t next() noexcept {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform value in [0, bound) by rejection; bound must be positive.
    std::int64_t below(std::int64_t bound) noexcept {
        const std::uint64_t b = static_cast<std::uint64_t>(bound);
        const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % b;
        std::uint64_t v = next();
        while (v >= limit) v = next();
        return static_cast<std::int64_t>(v % b);
    }

private:
    std::uint64_t state_;
};

// count pairs (x, y) with x, y uniform in [0, q); identical for every thread
// count and call site because the stream depends only on (seed, q).
inline std::vector<std::pair<std::int64_t, std::int64_t>>
sample_pairs(std::uint64_t seed, std::int64_t q, int count) {
    SampleStream s(seed, q);
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const std::int64_t x = s.below(q);
        const std::int64_t y = s.below(q);
        out.emplace_back(x, y);
    }
    return out;
}

} // namespace flatsum
