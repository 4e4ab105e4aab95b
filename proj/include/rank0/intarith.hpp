#pragma once

// Exact integer and rational primitives: p-adic valuations, quadratic
// residue symbols, square detection in Q and Q_p, squarefree parts.
// Everything here is a pure function on immutable values.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <vector>

#include "rank0/errors.hpp"

namespace rank0 {

using Int = mpz_class;
using Rat = mpq_class;

// Computational handle for residue work in Q_p.
struct PAdicContext {
    Int p;
    int precision;  // working exponent: residues are taken mod p^precision

    PAdicContext(Int p_, int precision_);
};

// p-adic valuation of a nonzero rational (negative for non-integral x).
long ord_p(const Rat& x, const Int& p);
long ord_p(const Int& x, const Int& p);

// Legendre symbol (a/p) for odd prime p, by Euler's criterion.
int legendre(const Int& a, const Int& p);

// True iff x is a square in Q_p.  Odd p: even valuation and unit part a
// quadratic residue mod p.  p = 2: even valuation and unit part 1 mod 8.
bool is_square_in_Qp(const Rat& x, const Int& p);

// True iff x is a square in Q (exact).
bool is_square(const Int& x);
bool is_square(const Rat& x);

// The unique squarefree s with n/s a positive rational square; sign kept.
Int squarefree_part(const Int& n);

// Deterministic Miller-Rabin over the first twelve prime bases; valid
// for every 64-bit input.
bool is_prime_u64(std::uint64_t x);

// Factorization of |n| as prime -> exponent.  Trial division for the
// small part, then Miller-Rabin plus Pollard rho for what remains (the
// target workload only ever feeds integers whose factors are known
// small).  Inputs fitting 64 bits run entirely on native words.
std::map<Int, int> factorize(const Int& n);

// Sorted distinct prime divisors of |n| (n != 0).
std::vector<Int> prime_support(const Int& n);

// Modular helpers used throughout.
Int mod_pow(const Int& base, const Int& exp, const Int& mod);
Int mod_inv(const Int& a, const Int& mod);

}  // namespace rank0
