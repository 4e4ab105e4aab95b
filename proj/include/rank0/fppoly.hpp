#pragma once

// Small dense polynomials over F_p (degree <= 8 in practice).  Used for
// the root analyses inside Tate's algorithm and for the root-guided
// p-adic solvability search.  Coefficients are stored reduced mod p,
// lowest degree first.

#include <optional>
#include <vector>

#include "rank0/intarith.hpp"

namespace rank0 {

struct FpPoly {
    Int p;
    std::vector<Int> c;  // c[i] mod p, trailing zeros stripped

    FpPoly(Int p_, std::vector<Int> coeffs);
    int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero poly
    bool is_zero() const { return c.empty(); }
    Int eval(const Int& x) const;
    FpPoly derivative() const;
};

FpPoly fp_mul(const FpPoly& a, const FpPoly& b);
FpPoly fp_mod(const FpPoly& a, const FpPoly& m);
FpPoly fp_gcd(FpPoly a, FpPoly b);  // monic gcd; gcd(f, 0) = monic f
// x^e mod m
FpPoly fp_xpow_mod(const Int& e, const FpPoly& m);

// Distinct roots of f in F_p, sorted ascending.  Uses gcd with x^p - x
// followed by deterministic-seeded equal-degree splitting; for p <= 3
// falls back to exhaustive scan.
std::vector<Int> fp_roots(const FpPoly& f);

// Number of distinct roots of f in F_p (cheaper than listing them).
int fp_root_count(const FpPoly& f);

// Roots with multiplicities (by repeated synthetic division), sorted.
std::vector<std::pair<Int, int>> fp_roots_with_multiplicity(const FpPoly& f);

// If f = c * s(x)^2 for a constant c and monic s, returns (c, s).
std::optional<std::pair<Int, FpPoly>> fp_constant_times_square(const FpPoly& f);

}  // namespace rank0
