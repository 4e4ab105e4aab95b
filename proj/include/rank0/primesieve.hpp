#pragma once

// Enumeration of the qualifying pairs (m, n): m, m+n, m+2n all prime and
// congruent to 3 mod 8.

#include <cstdint>
#include <vector>

#include "rank0/intarith.hpp"

namespace rank0 {

struct ProgressionPair {
    std::uint64_t m;
    std::uint64_t n;

    bool operator==(const ProgressionPair&) const = default;
};

// Deterministic primality for x < 2^64; larger inputs raise DomainError.
bool is_prime(const Int& x);

// True iff (m, n) satisfies all ProgressionPair conditions.
bool is_valid_progression_pair(std::uint64_t m, std::uint64_t n);

// All pairs with m+2n <= limit, sorted by (m+2n, m).
std::vector<ProgressionPair> find_progressions(std::uint64_t limit);

}  // namespace rank0
