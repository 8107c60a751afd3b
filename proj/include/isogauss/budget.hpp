#pragma once

#include <cstdint>
#include <thread>
#include <utility>
#include <vector>

namespace isogauss {

/// Caps on brute-force enumeration size and the worker split.
struct Budget {
    std::uint64_t max_terms = 20'000'000;
    unsigned parallel_chunks = default_chunks();

    static unsigned default_chunks()
    {
        const unsigned hw = std::thread::hardware_concurrency();
        return hw == 0 ? 1 : hw;
    }
};

/// p^e, or UINT64_MAX on overflow.
std::uint64_t checked_power(std::uint64_t p, unsigned e);

/// Contiguous ranges [lo, hi) covering [0, size), at most `chunks` of them.
std::vector<std::pair<std::uint64_t, std::uint64_t>> split_range(std::uint64_t size, unsigned chunks);

/// Reads ISOGAUSS_MAX_TERMS if set; otherwise returns fallback.
std::uint64_t max_terms_from_env(std::uint64_t fallback);

} // namespace isogauss
