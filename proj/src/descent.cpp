#include "rank0/descent.hpp"

#include <algorithm>

#include "rank0/fppoly.hpp"
#include "rank0/localdata.hpp"

namespace rank0 {

namespace {

long val(const Int& x, const Int& p) {
    Int tmp;
    return static_cast<long>(mpz_remove(tmp.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()));
}

Int eval_poly(const std::vector<Int>& h, const Int& x) {
    Int r = 0;
    for (auto it = h.rbegin(); it != h.rend(); ++it) r = r * x + *it;
    return r;
}

// h(x0 + p x') / p as an integer polynomial; requires p | h(x0)
std::vector<Int> shift_and_divide(const std::vector<Int>& h, const Int& x0, const Int& p) {
    // binomial expansion: coefficient of x'^k is sum_j h_j C(j,k) x0^(j-k) p^k
    std::vector<Int> out(h.size(), Int(0));
    size_t n = h.size();
    std::vector<std::vector<Int>> binom(n, std::vector<Int>(n, Int(0)));
    for (size_t j = 0; j < n; j++) {
        binom[j][0] = 1;
        for (size_t k = 1; k <= j; k++)
            binom[j][k] = binom[j - 1][k - 1] + (k <= j - 1 ? binom[j - 1][k] : Int(0));
    }
    for (size_t k = 0; k < n; k++) {
        Int acc = 0;
        Int pk;
        mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), k);
        for (size_t j = k; j < n; j++) {
            Int xp;
            mpz_pow_ui(xp.get_mpz_t(), x0.get_mpz_t(), j - k);
            acc += h[j] * binom[j][k] * xp;
        }
        out[k] = acc * pk;
    }
    for (auto& c : out) {
        if (c % p != 0) throw InternalConsistencyError("shift_and_divide: not divisible");
        c /= p;
    }
    return out;
}

// strip the p-content of h; returns the extracted exponent
long strip_content(std::vector<Int>& h, const Int& p) {
    long m = -1;
    for (const Int& c : h)
        if (c != 0) m = m < 0 ? val(c, p) : std::min(m, val(c, p));
    if (m <= 0) return std::max(m, 0L);
    Int pm;
    mpz_pow_ui(pm.get_mpz_t(), p.get_mpz_t(), m);
    for (auto& c : h) c /= pm;
    return m;
}

// ---- p = 2: depth-bounded residue refinement ------------------------------

// Does some x == x0 (mod 2^e) make 2^lambda h(x) a nonzero square, or an
// exact zero?  K caps the refinement depth.
bool probe2(const std::vector<Int>& h, const Int& x0, long e, int lambda, long K) {
    Int c = eval_poly(h, x0);
    if (c == 0) return true;
    long v = val(c, Int(2));
    if (v < e) {
        if ((v + lambda) % 2 != 0) return false;
        if (e - v >= 3) {
            Int u = c >> static_cast<unsigned long>(v);
            return ((u % 8) + 8) % 8 == 1;
        }
    }
    if (e >= K) return false;
    Int step = Int(1) << static_cast<unsigned long>(e);
    return probe2(h, x0, e + 1, lambda, K) || probe2(h, x0 + step, e + 1, lambda, K);
}

bool z2_soluble(std::vector<Int> h, long K) {
    int lambda = static_cast<int>(strip_content(h, Int(2)) % 2);
    return probe2(h, Int(0), 1, lambda, K) || probe2(h, Int(1), 1, lambda, K);
}

// ---- odd p: root-guided descent -------------------------------------------

bool zp_soluble_odd(std::vector<Int> h, const Int& p, int lambda, long depth, long max_depth) {
    if (depth > max_depth)
        throw InternalConsistencyError("zp_soluble_odd: depth bound exceeded");
    lambda ^= static_cast<int>(strip_content(h, p) % 2);
    FpPoly hbar(p, h);
    if (hbar.is_zero()) throw InternalConsistencyError("zp_soluble_odd: zero polynomial");

    if (hbar.degree() == 0) {
        return lambda == 0 && legendre(hbar.c[0], p) == 1;
    }

    auto recurse_at = [&](const Int& x0) {
        Int value = eval_poly(h, x0);
        if (value == 0) return true;  // exact affine point with w = 0
        return zp_soluble_odd(shift_and_divide(h, x0, p), p, lambda ^ 1, depth + 1,
                              max_depth);
    };

    if (p <= 13) {
        // small p: exhaustive residue scan
        std::vector<Int> roots;
        for (Int x = 0; x < p; x++) {
            Int r = hbar.eval(x);
            if (r == 0)
                roots.push_back(x);
            else if (lambda == 0 && legendre(r, p) == 1)
                return true;
        }
        for (const Int& x0 : roots)
            if (recurse_at(x0)) return true;
        return false;
    }

    auto square_form = fp_constant_times_square(hbar);
    if (!square_form) {
        if (lambda == 0) return true;  // quartic character sum: a QR value exists, p >= 17
        for (const Int& x0 : fp_roots(hbar))
            if (recurse_at(x0)) return true;
        return false;
    }
    const auto& [cst, S] = *square_form;
    if (lambda == 0 && legendre(cst, p) == 1) return true;
    for (const Int& x0 : fp_roots(S))
        if (recurse_at(x0)) return true;
    return false;
}

// ---- chart assembly --------------------------------------------------------

// residue context at the declared working precision:
// ord_p(16 B^2 disc) + 4 with disc = 16 B d^6 (A^2-4B)^2
PAdicContext torsor_context(const TorsorQuartic& T, const Int& p) {
    Int d6 = T.d * T.d;
    d6 = d6 * d6 * d6;
    Int q = T.A * T.A - 4 * T.B;
    Int disc16 = Int(256) * T.B * T.B * T.B * d6 * q * q;
    return PAdicContext(p, static_cast<int>(val(disc16, p)) + 4);
}

bool chart_soluble(const std::vector<Int>& h, const PAdicContext& ctx) {
    if (ctx.p == 2) return z2_soluble(h, ctx.precision);
    return zp_soluble_odd(h, ctx.p, 0, 0, ctx.precision + 8);
}

}  // namespace

TorsorQuartic::TorsorQuartic(Int d_, Int A_, Int B_)
    : d(std::move(d_)), A(std::move(A_)), B(std::move(B_)) {
    if (d == 0 || B == 0 || A * A - 4 * B == 0)
        throw DomainError("TorsorQuartic: need d != 0, B != 0, A^2 - 4B != 0");
    if (squarefree_part(d) != d) throw DomainError("TorsorQuartic: d must be squarefree");
}

namespace {

std::vector<Int> classes_from_support(const std::vector<Int>& primes) {
    std::vector<Int> out;
    size_t subsets = size_t(1) << primes.size();
    for (size_t mask = 0; mask < subsets; mask++) {
        Int d = 1;
        for (size_t i = 0; i < primes.size(); i++)
            if (mask & (size_t(1) << i)) d *= primes[i];
        out.push_back(d);
        out.push_back(-d);
    }
    std::sort(out.begin(), out.end(), [](const Int& a, const Int& b) {
        Int aa = abs(a), ab = abs(b);
        if (aa != ab) return aa < ab;
        return a > b;  // positive representative first
    });
    return out;
}

}  // namespace

std::vector<Int> candidate_classes(const Int& B) {
    if (B == 0) throw DomainError("candidate_classes: B must be nonzero");
    return classes_from_support(prime_support(B));
}

bool torsor_locally_solvable(const TorsorQuartic& T, const Place& place) {
    const Int &d = T.d, &A = T.A, &B = T.B;
    if (place.archimedean) {
        // need d f(z) >= 0 somewhere on the projective curve over R
        if (d > 0 || B < 0) return true;
        return A > 0 && A * A >= 4 * B;
    }
    PAdicContext ctx = torsor_context(T, place.p);
    // chart 1: w' = d w, w'^2 = d (d^2 + A d z^2 + B z^4)
    std::vector<Int> h1 = {d * d * d, Int(0), A * d * d, Int(0), d * B};
    if (chart_soluble(h1, ctx)) return true;
    // chart 2 (z = 1/u): v'^2 = d (d^2 u^4 + A d u^2 + B)
    std::vector<Int> h2 = {d * B, Int(0), A * d * d, Int(0), d * d * d};
    return chart_soluble(h2, ctx);
}

namespace {

// support_B: primes of B; support_extra: primes of A^2 - 4B
SelmerGroup compute_selmer(SelmerGroup::Side side, const Int& A, const Int& B,
                           const Int& delta_image, const std::vector<Int>& support_B,
                           const std::vector<Int>& support_extra) {
    std::vector<Int> ps = support_B;
    ps.insert(ps.end(), support_extra.begin(), support_extra.end());
    ps.push_back(2);
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    std::vector<Place> places;
    places.push_back(Place::infinite());
    for (const Int& p : ps) places.push_back(Place::finite(p));

    std::vector<Int> elements;
    for (const Int& d : classes_from_support(support_B)) {
        TorsorQuartic T(d, A, B);
        bool ok = true;
        for (const Place& v : places)
            if (!torsor_locally_solvable(T, v)) { ok = false; break; }
        if (ok) elements.push_back(d);
    }

    // structural checks: contains 1 and the delta image, closed under the
    // square-class product, cardinality a power of two
    auto contains = [&](const Int& x) {
        return std::find(elements.begin(), elements.end(), x) != elements.end();
    };
    if (!contains(1)) throw InternalConsistencyError("Selmer group misses 1");
    if (!contains(squarefree_part(delta_image)))
        throw InternalConsistencyError("Selmer group misses the delta image class");
    for (const Int& d1 : elements)
        for (const Int& d2 : elements)
            if (!contains(squarefree_part(d1 * d2)))
                throw InternalConsistencyError("Selmer group not closed under product");
    if ((elements.size() & (elements.size() - 1)) != 0)
        throw InternalConsistencyError("Selmer group order is not a power of 2");

    SelmerGroup g{side, elements, 0};
    size_t n = elements.size();
    while (n > 1) { n >>= 1; g.dimension++; }
    return g;
}

}  // namespace

namespace {

// the bad-prime structure of the family is known by construction
std::vector<Int> family_primes(const IsogenousPair& pair, bool with_mid) {
    Int M(static_cast<unsigned long>(pair.m)), N(static_cast<unsigned long>(pair.n));
    if (with_mid) return {Int(2), M, M + N};
    return {Int(2), M, M + 2 * N};
}

}  // namespace

SelmerGroup selmer_phi(const IsogenousPair& pair) {
    // b' = -16 m^3 (m+2n), a'^2 - 4b' = 16b supported on {2, m, m+n}
    return compute_selmer(SelmerGroup::Side::phi, pair.a_prime, pair.b_prime, pair.b_prime,
                          family_primes(pair, false), family_primes(pair, true));
}

SelmerGroup selmer_phihat(const IsogenousPair& pair) {
    // B = 16b supported on {2, m, m+n}; (4a)^2 - 4(16b) = 16b' on {2, m, m+2n}
    return compute_selmer(SelmerGroup::Side::phihat, 4 * pair.a, 16 * pair.b, 16 * pair.b,
                          family_primes(pair, true), family_primes(pair, false));
}

Rat period_ratio(const IsogenousPair& pair) {
    Int M(static_cast<unsigned long>(pair.m)), N(static_cast<unsigned long>(pair.n));
    std::vector<Int> bad = {Int(2), M, M + N, M + 2 * N};
    auto [minE, chgE] = global_minimal_model(pair.E, &bad);
    auto [minEp, chgEp] = global_minimal_model(pair.EPrime, &bad);
    Rat ratio = abs(chgE.u) / abs(chgEp.u);
    if (ratio != 1 && ratio != Rat(1, 2))
        throw InternalConsistencyError("period ratio outside {1, 1/2}");
    return ratio;
}

Rat cassels_ratio(const IsogenousPair& pair) {
    // torsion factor |E'(Q)[phihat]| / |E(Q)[phi]| = 2/2: both kernels are
    // generated by the rational point (0, 0)
    Rat omega = period_ratio(pair);
    Int cE = tamagawa_product(pair.E);
    Int cEp = tamagawa_product(pair.EPrime);
    return omega * Rat(cE) / Rat(cEp);
}

int rank_bound_from_selmer(const SelmerGroup& phi, const SelmerGroup& phihat, bool cyclic2,
                           std::string* route) {
    if (!cyclic2)
        throw UnsupportedConfigurationError("rank bound requires E(Q)[2] cyclic of order 2");
    if (phi.dimension == 1) {
        if (route) *route = "exact-sequence";
        return std::max(phihat.dimension - 1, 0);
    }
    if (route) *route = "generic";
    return std::max(phi.dimension + phihat.dimension - 2, 0);
}

int rank_upper_bound(const IsogenousPair& pair) {
    if (!two_torsion_is_cyclic2(pair))
        throw UnsupportedConfigurationError("rank bound requires E(Q)[2] cyclic of order 2");
    SelmerGroup phi = selmer_phi(pair);
    SelmerGroup phihat = selmer_phihat(pair);
    return rank_bound_from_selmer(phi, phihat, true);
}

}  // namespace rank0
