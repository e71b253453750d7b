#pragma once

#include <cassert>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace sentimin {

// Seeded RNG with hand-rolled bounded draws. std::uniform_int_distribution
// and std::shuffle are implementation-defined, so seeded splits would not be
// reproducible across standard libraries; mt19937_64 itself is fully
// specified, and the rejection sampling below keeps draws unbiased.
class DeterministicRng {
public:
    explicit DeterministicRng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    // Uniform draw in [0, n). n must be > 0.
    std::uint64_t bounded(std::uint64_t n) {
        assert(n > 0);
        constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
        const std::uint64_t reject = (kMax % n + 1) % n; // 2^64 mod n
        for (;;) {
            const std::uint64_t r = gen_();
            if (reject == 0 || r <= kMax - reject) {
                return r % n;
            }
        }
    }

    // Fisher-Yates, iterating from the back.
    template <typename T>
    void shuffle(std::vector<T>& values) {
        for (std::size_t i = values.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(bounded(i));
            std::swap(values[i - 1], values[j]);
        }
    }

private:
    std::mt19937_64 gen_;
};

} // namespace sentimin
