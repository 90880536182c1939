#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>

#include "covmin/error.hpp"

namespace covmin {

/// Work caps. Exceeding any of them raises Errc::BudgetExceeded instead of
/// silently truncating a computation.
struct Budget {
    std::uint64_t max_candidates = 10'000'000; ///< enumerated coefficient tuples
    std::uint64_t max_cells = 2'000'000;       ///< branch-and-bound cells
    std::size_t max_lcm_bits = 256;            ///< denominators cleared by group_basis
    std::uint64_t max_cover_lps = 4'000;       ///< LPs per union-cover test

    /// Defaults, with COVMIN_BUDGET (a positive integer) overriding the
    /// enumeration and cell caps.
    static Budget from_env() {
        Budget b;
        if (const char* env = std::getenv("COVMIN_BUDGET")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            require(end && *end == '\0' && v > 0, Errc::InvalidInput,
                    std::string("COVMIN_BUDGET must be a positive integer, got '") + env + "'");
            b.max_candidates = v;
            b.max_cells = v;
        }
        return b;
    }
};

inline void charge(std::uint64_t count, std::uint64_t cap, const char* what) {
    if (count > cap)
        fail(Errc::BudgetExceeded,
             std::string(what) + ": " + std::to_string(count) + " exceeds cap " + std::to_string(cap));
}

} // namespace covmin
