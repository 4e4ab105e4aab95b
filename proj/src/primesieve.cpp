#include "rank0/primesieve.hpp"

#include <algorithm>

namespace rank0 {

namespace {

using u64 = std::uint64_t;

// Sieve of Eratosthenes up to limit, run over cache-sized segments.
std::vector<bool> sieve_bits(u64 limit) {
    u64 root = 1;
    while ((root + 1) * (root + 1) <= limit) root++;
    std::vector<bool> small(root + 1, true);
    small[0] = false;
    if (root >= 1) small[1] = false;
    for (u64 i = 2; i * i <= root; i++)
        if (small[i])
            for (u64 j = i * i; j <= root; j += i) small[j] = false;
    std::vector<u64> small_primes;
    for (u64 i = 2; i <= root; i++)
        if (small[i]) small_primes.push_back(i);

    std::vector<bool> is_p(limit + 1, true);
    is_p[0] = false;
    if (limit >= 1) is_p[1] = false;
    const u64 seg = 1 << 16;
    for (u64 low = 2; low <= limit; low += seg) {
        u64 high = std::min(limit, low + seg - 1);
        for (u64 p : small_primes) {
            if (p * p > high) break;
            u64 start = std::max(p * p, ((low + p - 1) / p) * p);
            for (u64 j = start; j <= high; j += p) is_p[j] = false;
        }
    }
    return is_p;
}

}  // namespace

bool is_prime(const Int& x) {
    if (x < 1) throw DomainError("is_prime: x must be positive");
    if (!x.fits_ulong_p() && mpz_sizeinbase(x.get_mpz_t(), 2) > 64)
        throw DomainError("is_prime: only x < 2^64 is supported");
    return is_prime_u64(x.get_ui());
}

bool is_valid_progression_pair(u64 m, u64 n) {
    if (m == 0 || n == 0) return false;
    u64 mid = m + n, top = m + 2 * n;
    return m % 8 == 3 && mid % 8 == 3 && top % 8 == 3 && is_prime_u64(m) && is_prime_u64(mid) &&
           is_prime_u64(top);
}

std::vector<ProgressionPair> find_progressions(u64 limit) {
    if (limit < 3) throw DomainError("find_progressions: limit must be >= 3");
    std::vector<bool> is_p = sieve_bits(limit);
    std::vector<u64> cls3;  // primes == 3 mod 8 up to limit
    for (u64 i = 3; i <= limit; i += 8)
        if (is_p[i]) cls3.push_back(i);

    // m and m+2n lie in cls3; the midpoint is prime and automatically
    // == 3 mod 8 exactly when m == m+2n mod 16.
    std::vector<ProgressionPair> out;
    for (size_t j = 1; j < cls3.size(); j++) {
        u64 top = cls3[j];
        for (size_t i = 0; i < j; i++) {
            u64 m = cls3[i];
            if ((top - m) % 16 != 0) continue;
            u64 mid = m + (top - m) / 2;
            if (is_p[mid]) out.push_back({m, (top - m) / 2});
        }
    }
    // cls3 scan order is already (m+2n, m)-sorted
    return out;
}

}  // namespace rank0
