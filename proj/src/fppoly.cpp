#include "rank0/fppoly.hpp"

#include <algorithm>
#include <random>

namespace rank0 {

namespace {

Int reduce(const Int& x, const Int& p) { return ((x % p) + p) % p; }

void strip(std::vector<Int>& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

}  // namespace

FpPoly::FpPoly(Int p_, std::vector<Int> coeffs) : p(std::move(p_)), c(std::move(coeffs)) {
    for (auto& x : c) x = reduce(x, p);
    strip(c);
}

Int FpPoly::eval(const Int& x) const {
    Int r = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = (r * x + *it) % p;
    return reduce(r, p);
}

FpPoly FpPoly::derivative() const {
    std::vector<Int> d;
    for (size_t i = 1; i < c.size(); i++) d.push_back(c[i] * Int(i));
    return FpPoly(p, std::move(d));
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b) {
    if (a.is_zero() || b.is_zero()) return FpPoly(a.p, {});
    std::vector<Int> r(a.c.size() + b.c.size() - 1, Int(0));
    for (size_t i = 0; i < a.c.size(); i++)
        for (size_t j = 0; j < b.c.size(); j++) r[i + j] += a.c[i] * b.c[j];
    return FpPoly(a.p, std::move(r));
}

FpPoly fp_mod(const FpPoly& a, const FpPoly& m) {
    std::vector<Int> r = a.c;
    const Int& p = a.p;
    Int lead_inv = mod_inv(m.c.back(), p);
    while (static_cast<int>(r.size()) - 1 >= m.degree()) {
        strip(r);
        if (static_cast<int>(r.size()) - 1 < m.degree()) break;
        Int q = r.back() * lead_inv % p;
        size_t shift = r.size() - m.c.size();
        for (size_t i = 0; i < m.c.size(); i++)
            r[i + shift] = reduce(r[i + shift] - q * m.c[i], p);
    }
    strip(r);
    return FpPoly(p, std::move(r));
}

FpPoly fp_gcd(FpPoly a, FpPoly b) {
    while (!b.is_zero()) {
        FpPoly r = fp_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero()) {
        Int inv = mod_inv(a.c.back(), a.p);
        for (auto& x : a.c) x = x * inv % a.p;
    }
    return a;
}

FpPoly fp_xpow_mod(const Int& e, const FpPoly& m) {
    FpPoly result(m.p, {Int(1)});
    FpPoly base = fp_mod(FpPoly(m.p, {Int(0), Int(1)}), m);
    Int k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) result = fp_mod(fp_mul(result, base), m);
        base = fp_mod(fp_mul(base, base), m);
        k >>= 1;
    }
    return result;
}

namespace {

// product of distinct linear factors of f
FpPoly linear_part(const FpPoly& f) {
    FpPoly xp = fp_xpow_mod(f.p, f);               // x^p mod f
    xp.c.resize(std::max<size_t>(xp.c.size(), 2), Int(0));
    xp.c[1] = reduce(xp.c[1] - 1, f.p);            // x^p - x
    strip(xp.c);
    return fp_gcd(f, xp);
}

void split_roots(const FpPoly& g, std::vector<Int>& out, std::mt19937_64& rng) {
    // g = monic product of distinct linear factors
    if (g.degree() <= 0) return;
    if (g.degree() == 1) {
        out.push_back(reduce(-g.c[0], g.p));
        return;
    }
    const Int& p = g.p;
    Int half = (p - 1) / 2;
    while (true) {
        Int a = Int(rng() % 1000000007) % p;
        // gcd(g, (x+a)^((p-1)/2) - 1) splits g with probability ~1/2
        FpPoly base = fp_mod(FpPoly(p, {a, Int(1)}), g);
        FpPoly pw(p, {Int(1)});
        Int k = half;
        FpPoly b = base;
        while (k > 0) {
            if (mpz_odd_p(k.get_mpz_t())) pw = fp_mod(fp_mul(pw, b), g);
            b = fp_mod(fp_mul(b, b), g);
            k >>= 1;
        }
        pw.c.resize(std::max<size_t>(pw.c.size(), 1), Int(0));
        pw.c[0] = reduce(pw.c[0] - 1, p);
        strip(pw.c);
        FpPoly d = fp_gcd(g, pw);
        if (d.degree() > 0 && d.degree() < g.degree()) {
            split_roots(d, out, rng);
            // long division g / d for the complementary factor
            std::vector<Int> num = g.c;
            std::vector<Int> quot(g.c.size() - d.c.size() + 1, Int(0));
            Int dl = mod_inv(d.c.back(), p);
            for (int i = static_cast<int>(num.size()) - 1; i >= d.degree(); i--) {
                Int q = num[i] * dl % p;
                quot[i - d.degree()] = q;
                if (q != 0)
                    for (size_t j = 0; j < d.c.size(); j++)
                        num[i - d.degree() + j] = reduce(num[i - d.degree() + j] - q * d.c[j], p);
            }
            split_roots(FpPoly(p, std::move(quot)), out, rng);
            return;
        }
    }
}

}  // namespace

std::vector<Int> fp_roots(const FpPoly& f) {
    std::vector<Int> out;
    if (f.is_zero()) throw DomainError("fp_roots: zero polynomial");
    if (f.p <= 3 || f.p <= f.degree() + 1) {
        for (Int x = 0; x < f.p; x++)
            if (f.eval(x) == 0) out.push_back(x);
        return out;
    }
    FpPoly g = linear_part(f);
    std::mt19937_64 rng(0x9e3779b97f4a7c15ull);  // fixed seed: deterministic output
    split_roots(g, out, rng);
    std::sort(out.begin(), out.end());
    return out;
}

int fp_root_count(const FpPoly& f) {
    if (f.is_zero()) throw DomainError("fp_root_count: zero polynomial");
    if (f.p <= 3 || f.p <= f.degree() + 1) {
        int n = 0;
        for (Int x = 0; x < f.p; x++)
            if (f.eval(x) == 0) n++;
        return n;
    }
    return std::max(linear_part(f).degree(), 0);
}

std::vector<std::pair<Int, int>> fp_roots_with_multiplicity(const FpPoly& f) {
    std::vector<std::pair<Int, int>> out;
    for (const Int& r : fp_roots(f)) {
        // peel off (x - r) factors
        std::vector<Int> cur = f.c;
        int mult = 0;
        while (true) {
            // synthetic division by (x - r); remainder is eval at r
            Int rem = 0;
            std::vector<Int> q(cur.size() - 1, Int(0));
            for (int i = static_cast<int>(cur.size()) - 1; i >= 1; i--) {
                rem = reduce(cur[i] + rem, f.p);
                q[i - 1] = rem;
                rem = rem * r % f.p;
            }
            rem = reduce(cur[0] + rem, f.p);
            if (rem != 0) break;
            mult++;
            cur = std::move(q);
            if (cur.empty()) break;
        }
        out.emplace_back(r, mult);
    }
    return out;
}

std::optional<std::pair<Int, FpPoly>> fp_constant_times_square(const FpPoly& f) {
    if (f.is_zero()) return std::nullopt;
    int d = f.degree();
    if (d % 2 != 0) return std::nullopt;
    const Int& p = f.p;
    Int c = f.c.back();
    if (d == 0) return std::make_pair(c, FpPoly(p, {Int(1)}));
    // monicize and attempt an exact square root by coefficient matching
    Int cinv = mod_inv(c, p);
    std::vector<Int> g(f.c.size());
    for (size_t i = 0; i < f.c.size(); i++) g[i] = f.c[i] * cinv % p;
    int k = d / 2;
    std::vector<Int> s(k + 1, Int(0));
    s[k] = 1;
    if (p == 2) {
        // squares in F_2[x] have even-degree terms only
        for (int i = 0; i < d; i++)
            if (i % 2 == 1 && g[i] != 0) return std::nullopt;
        for (int i = 0; i <= k; i++) s[i] = g[2 * i];
    } else {
        Int inv2 = mod_inv(2, p);
        for (int i = k - 1; i >= 0; i--) {
            // coefficient of x^(k+i) in s^2 must equal g[k+i]
            Int acc = 0;
            for (int j = i + 1; j <= k - 1; j++)
                if (k + i - j >= 0 && k + i - j <= k && k + i - j > i) acc += s[j] * s[k + i - j];
            // s^2 coeff = 2*s[i]*s[k] + sum over middle pairs
            s[i] = reduce((g[k + i] - acc) * inv2, p);
        }
    }
    FpPoly sq = fp_mul(FpPoly(p, s), FpPoly(p, s));
    if (sq.c == FpPoly(p, g).c) return std::make_pair(c, FpPoly(p, s));
    return std::nullopt;
}

}  // namespace rank0
