#pragma once

// Exact Weierstrass models over Q, the (m, n) family pair, the degree-2
// isogeny between its members, and the specialization map from the
// one-parameter model y^2 = x(x^2 - x + t).

#include <cstdint>
#include <utility>

#include "rank0/intarith.hpp"

namespace rank0 {

// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6, with the standard
// derived quantities.  Construction rejects singular models.
struct WeierstrassModel {
    Rat a1, a2, a3, a4, a6;
    Rat b2, b4, b6, b8;
    Rat c4, c6, disc;

    WeierstrassModel(Rat a1_, Rat a2_, Rat a3_, Rat a4_, Rat a6_);

    bool is_integral() const;
    bool operator==(const WeierstrassModel& o) const;
};

// Substitution x = u^2 x' + r, y = u^3 y' + s u^2 x' + t.
struct ModelChange {
    Rat u{1}, r{0}, s{0}, t{0};

    static ModelChange identity() { return {}; }
    static ModelChange scaling(const Rat& u);
    ModelChange compose(const ModelChange& then) const;
    ModelChange inverse() const;
    bool operator==(const ModelChange&) const = default;
};

WeierstrassModel apply_change(const WeierstrassModel& model, const ModelChange& chg);

struct RationalPoint {
    bool infinity = true;
    Rat x{0}, y{0};

    static RationalPoint at_infinity() { return {}; }
    static RationalPoint affine(Rat x, Rat y) { return {false, std::move(x), std::move(y)}; }
    bool operator==(const RationalPoint&) const = default;
};

// The curve pair attached to a qualifying (m, n):
//   E : y^2 = x(x^2 + a x + b),   a = -4m^2,  b = 8m^3(m+n)
//   E': y^2 = x(x^2 + a'x + b'),  a' = -2a,   b' = a^2 - 4b
struct IsogenousPair {
    std::uint64_t m, n;
    Int a, b, a_prime, b_prime;
    WeierstrassModel E, EPrime;
};

// (c4, c6, disc); rejects disc = 0 at construction already.
std::tuple<Rat, Rat, Rat> invariants(const WeierstrassModel& model);

IsogenousPair build_family_pair(std::uint64_t m, std::uint64_t n);

// Integral model isomorphic to y^2 = x(x^2 - x + t) plus the change that
// realizes the isomorphism.  For t = (m+n)/(2m) in lowest terms this is
// exactly build_family_pair(m, n).E.
std::pair<WeierstrassModel, ModelChange> specialize(const Rat& t);

// phi(x, y) = (y^2/x^2, y(b - x^2)/x^2), kernel {infinity, (0,0)}.
RationalPoint isogeny_image(const IsogenousPair& pair, const RationalPoint& P);

// Dual isogeny E' -> E; phihat(phi(P)) = [2]P.
RationalPoint dual_isogeny_image(const IsogenousPair& pair, const RationalPoint& Q);

bool point_on_curve(const WeierstrassModel& model, const RationalPoint& P);

// True iff E(Q)[2] is cyclic of order 2, i.e. a^2 - 4b is not a square.
bool two_torsion_is_cyclic2(const Int& a, const Int& b);
bool two_torsion_is_cyclic2(const IsogenousPair& pair);

// Closed-form discriminant of the family curve E: -2^14 m^9 (m+n)^2 (m+2n).
Int family_discriminant(std::uint64_t m, std::uint64_t n);

}  // namespace rank0
