#include "rank0/intarith.hpp"

#include <algorithm>

namespace rank0 {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod64(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 powmod64(u64 b, u64 e, u64 m) {
    u64 r = 1;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod64(r, b, m);
        b = mulmod64(b, b, m);
        e >>= 1;
    }
    return r;
}

bool mr_is_probable_prime(const Int& n) {
    if (n.fits_ulong_p()) return is_prime_u64(n.get_ui());
    // 40 rounds of Miller-Rabin is ample for the sizes factorize meets;
    // everything below 2^64 is deterministic.
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

u64 gcd_u64(u64 a, u64 b) {
    while (b) { u64 t = a % b; a = b; b = t; }
    return a;
}

u64 rho_step(u64 y, u64 c, u64 n) {
    u64 yy = mulmod64(y, y, n);
    yy += c;
    if (yy < c || yy >= n) yy -= n;  // handle wrap and reduction
    return yy;
}

u64 rho_u64(u64 n) {
    // Brent's variant on native words
    if (n % 2 == 0) return 2;
    for (u64 c = 1;; c++) {
        u64 x = 2, y = 2, d = 1;
        u64 q = 1, ys = 0;
        int r = 1;
        const int m = 64;
        while (d == 1) {
            x = y;
            for (int i = 0; i < r; i++) y = rho_step(y, c, n);
            int k = 0;
            while (k < r && d == 1) {
                ys = y;
                for (int i = 0; i < std::min(m, r - k); i++) {
                    y = rho_step(y, c, n);
                    q = mulmod64(q, x > y ? x - y : y - x, n);
                }
                d = gcd_u64(q, n);
                k += m;
            }
            r *= 2;
        }
        if (d == n) {
            do {
                ys = rho_step(ys, c, n);
                d = gcd_u64(x > ys ? x - ys : ys - x, n);
            } while (d == 1);
        }
        if (d != n) return d;
    }
}

void factor_u64_into(u64 n, std::map<Int, int>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        out[Int(static_cast<unsigned long>(n))]++;
        return;
    }
    u64 d = rho_u64(n);
    factor_u64_into(d, out);
    factor_u64_into(n / d, out);
}

Int pollard_rho(const Int& n) {
    // Brent's cycle-finding variant.
    if (n % 2 == 0) return 2;
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(0x5eed1234u);
    while (true) {
        Int c = rng.get_z_range(n - 3) + 1;
        Int x = rng.get_z_range(n - 2) + 2;
        Int y = x, d = 1, q = 1, ys = 0;
        const int m = 64;
        int r = 1;
        while (d == 1) {
            x = y;
            for (int i = 0; i < r; i++) y = (y * y + c) % n;
            int k = 0;
            while (k < r && d == 1) {
                ys = y;
                for (int i = 0; i < std::min(m, r - k); i++) {
                    y = (y * y + c) % n;
                    q = q * abs(x - y) % n;
                }
                mpz_gcd(d.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += m;
            }
            r *= 2;
        }
        if (d == n) {
            // backtrack
            do {
                ys = (ys * ys + c) % n;
                Int diff = abs(x - ys);
                mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            } while (d == 1);
        }
        if (d != n) return d;
    }
}

void factor_into(Int n, std::map<Int, int>& out) {
    if (n == 1) return;
    if (n.fits_ulong_p()) {
        factor_u64_into(n.get_ui(), out);
        return;
    }
    if (mr_is_probable_prime(n)) {
        out[n]++;
        return;
    }
    Int d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    // sufficient witness set for all n < 3.3e24, in particular all of u64
    constexpr u64 kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    if (n < 2) return false;
    for (u64 p : kWitnesses) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; s++; }
    for (u64 a : kWitnesses) {
        u64 x = powmod64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; i++) {
            x = mulmod64(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

PAdicContext::PAdicContext(Int p_, int precision_) : p(std::move(p_)), precision(precision_) {
    if (precision < 1) throw DomainError("PAdicContext: precision must be >= 1");
    if (p < 2 || !mr_is_probable_prime(p)) throw DomainError("PAdicContext: p must be prime");
}

long ord_p(const Int& x, const Int& p) {
    if (x == 0) throw DomainError("ord_p: valuation of 0 is undefined");
    Int tmp;
    return static_cast<long>(mpz_remove(tmp.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()));
}

long ord_p(const Rat& x, const Int& p) {
    if (x == 0) throw DomainError("ord_p: valuation of 0 is undefined");
    return ord_p(Int(x.get_num()), p) - ord_p(Int(x.get_den()), p);
}

int legendre(const Int& a, const Int& p) {
    if (p == 2) throw DomainError("legendre: p = 2 is not supported");
    if (p < 3 || p % 2 == 0) throw DomainError("legendre: p must be an odd prime");
    Int r = mod_pow(((a % p) + p) % p, (p - 1) / 2, p);
    if (r == 0) return 0;
    return r == 1 ? 1 : -1;
}

bool is_square_in_Qp(const Rat& x, const Int& p) {
    if (x == 0) throw DomainError("is_square_in_Qp: x must be nonzero");
    long v = ord_p(x, p);
    if (v % 2 != 0) return false;
    // unit part num/den with the p-powers removed
    Int num = x.get_num(), den = x.get_den(), tmp;
    mpz_remove(num.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t());
    mpz_remove(den.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
    if (p == 2) {
        Int u = num * mod_inv(((den % 8) + 8) % 8, 8) % 8;
        u = ((u % 8) + 8) % 8;
        return u == 1;
    }
    Int u = num * mod_inv(((den % p) + p) % p, p);
    return legendre(u, p) == 1;
}

bool is_square(const Int& x) {
    if (x < 0) return false;
    return mpz_perfect_square_p(x.get_mpz_t()) != 0;
}

bool is_square(const Rat& x) {
    if (x < 0) return false;
    return is_square(Int(x.get_num())) && is_square(Int(x.get_den()));
}

std::map<Int, int> factorize(const Int& n) {
    if (n == 0) throw DomainError("factorize: n must be nonzero");
    std::map<Int, int> out;
    Int m = abs(n);
    if (m.fits_ulong_p()) {
        u64 v = m.get_ui();
        for (u64 d : {u64(2), u64(3)})
            while (v % d == 0) { out[Int(static_cast<unsigned long>(d))]++; v /= d; }
        for (u64 d = 5; d <= 10000 && d * d <= v; d += 6) {
            while (v % d == 0) { out[Int(static_cast<unsigned long>(d))]++; v /= d; }
            u64 e = d + 2;
            while (v % e == 0) { out[Int(static_cast<unsigned long>(e))]++; v /= e; }
        }
        if (v > 1) factor_u64_into(v, out);
        return out;
    }
    // trial division by 2, 3, then 6k+-1; the primality/rho step takes
    // over once small factors are exhausted
    while (mpz_even_p(m.get_mpz_t())) { out[Int(2)]++; m >>= 1; }
    while (mpz_divisible_ui_p(m.get_mpz_t(), 3)) {
        out[Int(3)]++;
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), 3);
    }
    for (u64 d = 5; d <= 10000; d += 6) {
        for (u64 e : {d, d + 2}) {
            while (mpz_divisible_ui_p(m.get_mpz_t(), e)) {
                out[Int(static_cast<unsigned long>(e))]++;
                mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), e);
            }
        }
    }
    if (m > 1) factor_into(m, out);
    return out;
}

std::vector<Int> prime_support(const Int& n) {
    std::vector<Int> out;
    for (const auto& [p, e] : factorize(n)) out.push_back(p);
    return out;
}

Int squarefree_part(const Int& n) {
    if (n == 0) throw DomainError("squarefree_part: n must be nonzero");
    Int s = n < 0 ? -1 : 1;
    for (const auto& [p, e] : factorize(n))
        if (e % 2 != 0) s *= p;
    return s;
}

Int mod_pow(const Int& base, const Int& exp, const Int& mod) {
    Int r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
    return r;
}

Int mod_inv(const Int& a, const Int& mod) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), mod.get_mpz_t()) == 0)
        throw DomainError("mod_inv: not invertible");
    return r;
}

}  // namespace rank0
