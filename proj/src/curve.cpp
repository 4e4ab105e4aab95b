#include "rank0/curve.hpp"

#include "rank0/primesieve.hpp"

namespace rank0 {

WeierstrassModel::WeierstrassModel(Rat a1_, Rat a2_, Rat a3_, Rat a4_, Rat a6_)
    : a1(std::move(a1_)), a2(std::move(a2_)), a3(std::move(a3_)), a4(std::move(a4_)),
      a6(std::move(a6_)) {
    b2 = a1 * a1 + 4 * a2;
    b4 = 2 * a4 + a1 * a3;
    b6 = a3 * a3 + 4 * a6;
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    c4 = b2 * b2 - 24 * b4;
    c6 = -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6;
    disc = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
    if (disc == 0) throw SingularModelError("model has discriminant 0");
    if (4 * b8 != b2 * b6 - b4 * b4 || 1728 * disc != c4 * c4 * c4 - c6 * c6)
        throw InternalConsistencyError("invariant identities failed");
}

bool WeierstrassModel::is_integral() const {
    for (const Rat* a : {&a1, &a2, &a3, &a4, &a6})
        if (a->get_den() != 1) return false;
    return true;
}

bool WeierstrassModel::operator==(const WeierstrassModel& o) const {
    return a1 == o.a1 && a2 == o.a2 && a3 == o.a3 && a4 == o.a4 && a6 == o.a6;
}

ModelChange ModelChange::scaling(const Rat& u) {
    ModelChange c;
    c.u = u;
    return c;
}

ModelChange ModelChange::compose(const ModelChange& then) const {
    ModelChange c;
    c.u = u * then.u;
    c.r = r + u * u * then.r;
    c.s = s + u * then.s;
    c.t = t + s * u * u * then.r + u * u * u * then.t;
    return c;
}

ModelChange ModelChange::inverse() const {
    ModelChange c;
    c.u = 1 / u;
    c.r = -r / (u * u);
    c.s = -s / u;
    c.t = (s * r - t) / (u * u * u);
    return c;
}

WeierstrassModel apply_change(const WeierstrassModel& m, const ModelChange& g) {
    if (g.u == 0) throw DomainError("apply_change: u must be nonzero");
    const Rat &u = g.u, &r = g.r, &s = g.s, &t = g.t;
    Rat u2 = u * u, u3 = u2 * u;
    Rat a1 = (m.a1 + 2 * s) / u;
    Rat a2 = (m.a2 - s * m.a1 + 3 * r - s * s) / u2;
    Rat a3 = (m.a3 + r * m.a1 + 2 * t) / u3;
    Rat a4 = (m.a4 - s * m.a3 + 2 * r * m.a2 - (t + r * s) * m.a1 + 3 * r * r - 2 * s * t) /
             (u2 * u2);
    Rat a6 = (m.a6 + r * m.a4 + r * r * m.a2 + r * r * r - t * m.a3 - t * t - r * t * m.a1) /
             (u3 * u3);
    return WeierstrassModel(a1, a2, a3, a4, a6);
}

std::tuple<Rat, Rat, Rat> invariants(const WeierstrassModel& model) {
    return {model.c4, model.c6, model.disc};
}

Int family_discriminant(std::uint64_t m, std::uint64_t n) {
    Int M(static_cast<unsigned long>(m)), N(static_cast<unsigned long>(n));
    Int m9 = M * M * M;
    m9 = m9 * m9 * m9;
    return Int(-16384) * m9 * (M + N) * (M + N) * (M + 2 * N);
}

IsogenousPair build_family_pair(std::uint64_t m, std::uint64_t n) {
    if (!is_valid_progression_pair(m, n))
        throw InvalidPairError("(m, n) is not a qualifying progression pair");
    Int M(static_cast<unsigned long>(m)), N(static_cast<unsigned long>(n));
    Int a = -4 * M * M;
    Int b = 8 * M * M * M * (M + N);
    Int ap = -2 * a;
    Int bp = a * a - 4 * b;
    WeierstrassModel E(0, Rat(a), 0, Rat(b), 0);
    WeierstrassModel Ep(0, Rat(ap), 0, Rat(bp), 0);
    if (E.disc != Rat(family_discriminant(m, n)))
        throw InternalConsistencyError("family discriminant mismatch");
    return {m, n, a, b, ap, bp, E, Ep};
}

std::pair<WeierstrassModel, ModelChange> specialize(const Rat& t) {
    if (t == 0 || t == Rat(1, 4))
        throw SingularModelError("singular specialization: disc(t) = 0");
    // y^2 = x(x^2 - x + t); clear denominators with the least integer L
    // such that L^4 t is integral, via x -> x / L^2, y -> y / L^3.
    Int q = t.get_den();
    Int L = 1;
    for (const auto& [p, e] : factorize(q)) {
        int k = (e + 3) / 4;
        for (int i = 0; i < k; i++) L *= p;
    }
    ModelChange chg = ModelChange::scaling(Rat(1, L));
    WeierstrassModel base(0, -1, 0, t, 0);
    WeierstrassModel integral = apply_change(base, chg);
    if (!integral.is_integral())
        throw InternalConsistencyError("specialize: clearing denominators failed");
    return {integral, chg};
}

bool point_on_curve(const WeierstrassModel& m, const RationalPoint& P) {
    if (P.infinity) return true;
    const Rat &x = P.x, &y = P.y;
    return y * y + m.a1 * x * y + m.a3 * y == x * x * x + m.a2 * x * x + m.a4 * x + m.a6;
}

RationalPoint isogeny_image(const IsogenousPair& pair, const RationalPoint& P) {
    if (!point_on_curve(pair.E, P)) throw InvalidPointError("isogeny_image: P not on E");
    if (P.infinity || (P.x == 0 && P.y == 0)) return RationalPoint::at_infinity();
    Rat x2 = P.x * P.x;
    Rat X = P.y * P.y / x2;
    Rat Y = P.y * (Rat(pair.b) - x2) / x2;
    RationalPoint img = RationalPoint::affine(X, Y);
    if (!point_on_curve(pair.EPrime, img))
        throw InternalConsistencyError("isogeny image not on E'");
    return img;
}

RationalPoint dual_isogeny_image(const IsogenousPair& pair, const RationalPoint& Q) {
    if (!point_on_curve(pair.EPrime, Q))
        throw InvalidPointError("dual_isogeny_image: Q not on E'");
    if (Q.infinity || (Q.x == 0 && Q.y == 0)) return RationalPoint::at_infinity();
    // The 2-isogeny construction applied to E' lands on (4a, 16b); the
    // scaling (x, y) -> (x/4, y/8) carries that model back to E.
    Rat x2 = Q.x * Q.x;
    Rat X = Q.y * Q.y / (4 * x2);
    Rat Y = Q.y * (Rat(pair.b_prime) - x2) / (8 * x2);
    RationalPoint img = RationalPoint::affine(X, Y);
    if (!point_on_curve(pair.E, img))
        throw InternalConsistencyError("dual isogeny image not on E");
    return img;
}

bool two_torsion_is_cyclic2(const Int& a, const Int& b) {
    return !is_square(Int(a * a - 4 * b));
}

bool two_torsion_is_cyclic2(const IsogenousPair& pair) {
    return two_torsion_is_cyclic2(pair.a, pair.b);
}

}  // namespace rank0
