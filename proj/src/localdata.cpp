#include "rank0/localdata.hpp"

#include <algorithm>
#include <climits>

#include "rank0/fppoly.hpp"

namespace rank0 {

std::string KodairaSymbol::str() const {
    switch (type) {
        case KodairaType::I0: return "I0";
        case KodairaType::In: return "I" + std::to_string(nu);
        case KodairaType::II: return "II";
        case KodairaType::III: return "III";
        case KodairaType::IV: return "IV";
        case KodairaType::I0star: return "I0*";
        case KodairaType::Instar: return "I" + std::to_string(nu) + "*";
        case KodairaType::IVstar: return "IV*";
        case KodairaType::IIIstar: return "III*";
        case KodairaType::IIstar: return "II*";
    }
    return "?";
}

KodairaSymbol KodairaSymbol::parse(const std::string& s) {
    if (s == "II") return {KodairaType::II};
    if (s == "III") return {KodairaType::III};
    if (s == "IV") return {KodairaType::IV};
    if (s == "II*") return {KodairaType::IIstar};
    if (s == "III*") return {KodairaType::IIIstar};
    if (s == "IV*") return {KodairaType::IVstar};
    if (s.size() >= 2 && s[0] == 'I' && s.back() == '*') {
        int nu = std::stoi(s.substr(1, s.size() - 2));
        if (nu == 0) return {KodairaType::I0star};
        return {KodairaType::Instar, nu};
    }
    if (s.size() >= 2 && s[0] == 'I') {
        int nu = std::stoi(s.substr(1));
        if (nu == 0) return {KodairaType::I0};
        return {KodairaType::In, nu};
    }
    throw DomainError("KodairaSymbol::parse: bad symbol " + s);
}

std::string reduction_type_str(ReductionType t) {
    switch (t) {
        case ReductionType::good: return "good";
        case ReductionType::multiplicative_split: return "multiplicative-split";
        case ReductionType::multiplicative_nonsplit: return "multiplicative-nonsplit";
        case ReductionType::additive: return "additive";
    }
    return "?";
}

namespace {

Int ired(const Int& x, const Int& p) { return ((x % p) + p) % p; }

long val(const Int& x, const Int& p) {
    if (x == 0) return LONG_MAX / 2;  // treated as +infinity
    Int tmp;
    return static_cast<long>(mpz_remove(tmp.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()));
}

// integer coefficients of an integral model
struct IntModel {
    Int a1, a2, a3, a4, a6;

    static IntModel from(const WeierstrassModel& w) {
        return {Int(w.a1.get_num()), Int(w.a2.get_num()), Int(w.a3.get_num()),
                Int(w.a4.get_num()), Int(w.a6.get_num())};
    }
    Int b2() const { return a1 * a1 + 4 * a2; }
    Int b4() const { return 2 * a4 + a1 * a3; }
    Int b6() const { return a3 * a3 + 4 * a6; }
    Int b8() const {
        return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    }
    Int disc() const {
        Int B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
        return -B2 * B2 * B8 - 8 * B4 * B4 * B4 - 27 * B6 * B6 + 9 * B2 * B4 * B6;
    }

    void translate_x(const Int& r) {  // x -> x + r
        a6 += r * a4 + r * r * a2 + r * r * r;
        a4 += 2 * r * a2 + 3 * r * r;
        a3 += r * a1;
        a2 += 3 * r;
    }
    void translate_y(const Int& t) {  // y -> y + t
        a6 -= t * a3 + t * t;
        a4 -= t * a1;
        a3 += 2 * t;
    }
    void shear(const Int& s) {  // y -> y + s x; a6 unchanged
        a4 -= s * a3;
        a2 += -s * a1 - s * s;
        a1 += 2 * s;
    }
    void rescale(const Int& p) {  // (x, y) -> (p^2 x, p^3 y), all a_i / p^i exact
        a1 /= p;
        a2 /= p * p;
        a3 /= p * p * p;
        a4 /= p * p * p * p;
        a6 /= p * p * p * p * p * p;
    }
};

struct QuadInfo {
    bool separable;
    bool has_roots;   // meaningful when separable
    Int double_root;  // meaningful when not separable
};

// a X^2 + b X + c mod p with a a unit mod p
QuadInfo quad_analyze(const Int& a, const Int& b, const Int& c, const Int& p) {
    if (p == 2) {
        QuadInfo q{};
        q.separable = (ired(b, p) == 1);
        if (q.separable) {
            q.has_roots = (ired(c, p) == 0) || (ired(a + b + c, p) == 0);
        } else {
            q.double_root = ired(c, p) * ired(a, p) % p;  // sqrt(c/a) in F_2
        }
        return q;
    }
    Int disc = ired(b * b - 4 * a * c, p);
    QuadInfo q{};
    if (disc == 0) {
        q.separable = false;
        q.double_root = ired(-b * mod_inv(ired(2 * a, p), p), p);
    } else {
        q.separable = true;
        q.has_roots = legendre(disc, p) == 1;
    }
    return q;
}

struct CubicInfo {
    enum Kind { kSeparable, kDouble, kTriple } kind;
    int rational_roots = 0;  // kSeparable only
    Int mult_root;           // kDouble / kTriple
};

// monic T^3 + a T^2 + b T + c mod p
CubicInfo cubic_analyze(const Int& a, const Int& b, const Int& c, const Int& p) {
    Int disc = 18 * a * b * c - 4 * a * a * a * c + a * a * b * b - 4 * b * b * b - 27 * c * c;
    CubicInfo info{};
    if (ired(disc, p) != 0) {
        info.kind = CubicInfo::kSeparable;
        FpPoly P(p, {c, b, a, Int(1)});
        info.rational_roots = fp_root_count(P);
        return info;
    }
    if (p <= 3) {
        FpPoly P(p, {c, b, a, Int(1)});
        for (const auto& [root, mult] : fp_roots_with_multiplicity(P)) {
            if (mult >= 2) {
                info.kind = mult == 3 ? CubicInfo::kTriple : CubicInfo::kDouble;
                info.mult_root = root;
                return info;
            }
        }
        throw InternalConsistencyError("cubic with zero disc has no rational multiple root");
    }
    FpPoly P(p, {c, b, a, Int(1)});
    FpPoly D = fp_gcd(P, P.derivative());
    if (D.degree() == 1) {
        info.kind = CubicInfo::kDouble;
        info.mult_root = ired(-D.c[0] * mod_inv(D.c[1], p), p);
    } else if (D.degree() == 2) {
        info.kind = CubicInfo::kTriple;
        info.mult_root = ired(-D.c[1] * mod_inv(ired(2 * D.c[2], p), p), p);
    } else {
        throw InternalConsistencyError("unexpected gcd degree in cubic analysis");
    }
    return info;
}

// Singular point of the reduction mod p (valid only when p | disc).
std::pair<Int, Int> singular_point(const IntModel& w, const Int& p) {
    if (p <= 3) {
        for (Int x = 0; x < p; x++) {
            for (Int y = 0; y < p; y++) {
                Int F = y * y + w.a1 * x * y + w.a3 * y - x * x * x - w.a2 * x * x -
                        w.a4 * x - w.a6;
                Int Fx = w.a1 * y - 3 * x * x - 2 * w.a2 * x - w.a4;
                Int Fy = 2 * y + w.a1 * x + w.a3;
                if (ired(F, p) == 0 && ired(Fx, p) == 0 && ired(Fy, p) == 0)
                    return {x, y};
            }
        }
        throw InternalConsistencyError("no singular point found mod small p");
    }
    // odd p: complete the square; x0 is the multiple root of
    // g(x) = 4x^3 + b2 x^2 + 2 b4 x + b6 mod p.
    FpPoly g(p, {w.b6(), 2 * w.b4(), w.b2(), Int(4)});
    FpPoly D = fp_gcd(g, g.derivative());
    Int x0;
    if (D.degree() == 1) {
        x0 = ired(-D.c[0] * mod_inv(D.c[1], p), p);
    } else if (D.degree() == 2) {
        x0 = ired(-D.c[1] * mod_inv(ired(2 * D.c[2], p), p), p);
    } else {
        throw InternalConsistencyError("no multiple root for singular reduction");
    }
    Int y0 = ired(-(w.a1 * x0 + w.a3) * mod_inv(Int(2), p), p);
    return {x0, y0};
}

struct TateResult {
    KodairaSymbol kodaira;
    long tamagawa;
    ReductionType reduction;
    int f;  // conductor exponent
};

// Core loop.  Mutates w toward a p-minimal model and composes every
// coordinate move into chg.
TateResult tate_core(IntModel& w, const Int& p, ModelChange& chg) {
    auto apply_translate_x = [&](const Int& r) {
        if (r == 0) return;
        w.translate_x(r);
        chg = chg.compose({Rat(1), Rat(r), Rat(0), Rat(0)});
    };
    auto apply_translate_y = [&](const Int& t) {
        if (t == 0) return;
        w.translate_y(t);
        chg = chg.compose({Rat(1), Rat(0), Rat(0), Rat(t)});
    };
    auto apply_shear = [&](const Int& s) {
        if (s == 0) return;
        w.shear(s);
        chg = chg.compose({Rat(1), Rat(0), Rat(s), Rat(0)});
    };

    while (true) {
        long n = val(w.disc(), p);
        if (n == 0) return {{KodairaType::I0}, 1, ReductionType::good, 0};

        auto [x0, y0] = singular_point(w, p);
        apply_translate_x(x0);
        apply_translate_y(y0);
        if (val(w.a3, p) < 1 || val(w.a4, p) < 1 || val(w.a6, p) < 1)
            throw InternalConsistencyError("singular point translation failed");

        if (ired(w.b2(), p) != 0) {
            // node: type I_n; split iff the tangent cone y^2 + a1 xy - a2 x^2
            // factors over F_p
            bool split;
            if (p == 2) {
                split = ired(w.a2, p) == 0;  // T^2 + T + a2 has roots in F_2
            } else {
                split = legendre(w.b2(), p) == 1;
            }
            long c = split ? n : (n % 2 == 0 ? 2 : 1);
            return {{KodairaType::In, static_cast<int>(n)}, c,
                    split ? ReductionType::multiplicative_split
                          : ReductionType::multiplicative_nonsplit,
                    1};
        }

        // additive from here on
        if (val(w.a6, p) < 2)
            return {{KodairaType::II}, 1, ReductionType::additive, static_cast<int>(n)};
        if (val(w.b8(), p) < 3)
            return {{KodairaType::III}, 2, ReductionType::additive, static_cast<int>(n - 1)};
        if (val(w.b6(), p) < 3) {
            QuadInfo q = quad_analyze(Int(1), w.a3 / p, -(w.a6 / (p * p)), p);
            if (!q.separable) throw InternalConsistencyError("IV quadratic not separable");
            return {{KodairaType::IV}, q.has_roots ? 3 : 1, ReductionType::additive,
                    static_cast<int>(n - 2)};
        }

        // arrange p | a1, a2; p^2 | a3, a4; p^3 | a6
        if (p == 2) {
            apply_shear(ired(w.a2, p));
        } else {
            apply_shear(ired(-w.a1 * mod_inv(Int(2), p), p));
        }
        {
            QuadInfo q = quad_analyze(Int(1), w.a3 / p, -(w.a6 / (p * p)), p);
            if (q.separable)
                throw InternalConsistencyError("step-6 quadratic should have a double root");
            apply_translate_y(p * q.double_root);
        }
        if (val(w.a1, p) < 1 || val(w.a2, p) < 1 || val(w.a3, p) < 2 || val(w.a4, p) < 2 ||
            val(w.a6, p) < 3)
            throw InternalConsistencyError("step-6 normalization failed");

        CubicInfo cubic =
            cubic_analyze(w.a2 / p, w.a4 / (p * p), w.a6 / (p * p * p), p);
        if (cubic.kind == CubicInfo::kSeparable) {
            return {{KodairaType::I0star}, 1 + cubic.rational_roots, ReductionType::additive,
                    static_cast<int>(n - 4)};
        }

        if (cubic.kind == CubicInfo::kDouble) {
            // type I_nu* for some nu >= 1
            apply_translate_x(p * cubic.mult_root);
            if (val(w.a2, p) != 1 || val(w.a3, p) < 2 || val(w.a4, p) < 3 || val(w.a6, p) < 4)
                throw InternalConsistencyError("I_nu* entry state wrong");
            Int pk1 = p * p;          // p^(k+1)
            Int pk2 = pk1 * p;        // p^(k+2)
            Int p2k2 = pk1 * pk1;     // p^(2k+2)
            Int p2k3 = p2k2 * p;      // p^(2k+3)
            for (long k = 1; k <= n; k++) {
                QuadInfo qy = quad_analyze(Int(1), w.a3 / pk1, -(w.a6 / p2k2), p);
                if (qy.separable) {
                    int nu = static_cast<int>(2 * k - 1);
                    return {{KodairaType::Instar, nu}, qy.has_roots ? 4 : 2,
                            ReductionType::additive, static_cast<int>(n - 4 - nu)};
                }
                apply_translate_y(pk1 * qy.double_root);

                QuadInfo qx = quad_analyze(w.a2 / p, w.a4 / pk2, w.a6 / p2k3, p);
                if (qx.separable) {
                    int nu = static_cast<int>(2 * k);
                    return {{KodairaType::Instar, nu}, qx.has_roots ? 4 : 2,
                            ReductionType::additive, static_cast<int>(n - 4 - nu)};
                }
                apply_translate_x(pk1 * qx.double_root);

                pk1 *= p;
                pk2 *= p;
                p2k2 *= p * p;
                p2k3 *= p * p;
            }
            throw InternalConsistencyError("I_nu* loop failed to terminate");
        }

        // triple root: types IV*, III*, II* or non-minimal
        apply_translate_x(p * cubic.mult_root);
        if (val(w.a2, p) < 2 || val(w.a4, p) < 3 || val(w.a6, p) < 4)
            throw InternalConsistencyError("triple-root translation failed");

        Int p2 = p * p, p4 = p2 * p2;
        QuadInfo q2 = quad_analyze(Int(1), w.a3 / p2, -(w.a6 / p4), p);
        if (q2.separable) {
            return {{KodairaType::IVstar}, q2.has_roots ? 3 : 1, ReductionType::additive,
                    static_cast<int>(n - 6)};
        }
        apply_translate_y(p2 * q2.double_root);
        if (val(w.a3, p) < 3 || val(w.a6, p) < 5)
            throw InternalConsistencyError("IV* translation failed");

        if (val(w.a4, p) < 4)
            return {{KodairaType::IIIstar}, 2, ReductionType::additive,
                    static_cast<int>(n - 7)};
        if (val(w.a6, p) < 6)
            return {{KodairaType::IIstar}, 1, ReductionType::additive,
                    static_cast<int>(n - 8)};

        // not minimal at p: divide through and start over
        w.rescale(p);
        chg = chg.compose(ModelChange::scaling(Rat(p)));
    }
}

// least L with L^i * a_i integral for all i; the scaling u = 1/L
ModelChange integral_scaling(const WeierstrassModel& m) {
    Int L = 1;
    for (const Rat* a : {&m.a1, &m.a2, &m.a3, &m.a4, &m.a6}) {
        Int d = a->get_den();
        mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), d.get_mpz_t());
    }
    return ModelChange::scaling(Rat(1, L));
}

}  // namespace

LocalReductionData tate_algorithm(const WeierstrassModel& model, const Int& p) {
    ModelChange chg = ModelChange::identity();
    WeierstrassModel start = model;
    if (!model.is_integral()) {
        chg = integral_scaling(model);
        start = apply_change(model, chg);
    }
    IntModel w = IntModel::from(start);
    TateResult res = tate_core(w, p, chg);

    LocalReductionData out{p,
                           WeierstrassModel(Rat(w.a1), Rat(w.a2), Rat(w.a3), Rat(w.a4),
                                            Rat(w.a6)),
                           chg,
                           res.kodaira,
                           res.tamagawa,
                           0,
                           res.reduction,
                           res.f};
    out.v_delta_min = val(w.disc(), p);
    if (apply_change(model, chg) != out.minimal_model)
        throw InternalConsistencyError("tate: accumulated change mismatch");
    return out;
}

bool is_split_multiplicative(const WeierstrassModel& model, const Int& p) {
    if (p == 2) throw DomainError("is_split_multiplicative: p must be odd");
    ModelChange chg = ModelChange::identity();
    WeierstrassModel start = model;
    if (!model.is_integral()) {
        chg = integral_scaling(model);
        start = apply_change(model, chg);
    }
    IntModel w = IntModel::from(start);
    Int c4num = w.b2() * w.b2() - 24 * w.b4();
    if (val(w.disc(), p) == 0 || val(c4num, p) != 0)
        throw UnsupportedConfigurationError(
            "is_split_multiplicative: model is not multiplicative at p");
    auto [x0, y0] = singular_point(w, p);
    w.translate_x(x0);
    w.translate_y(y0);
    return legendre(w.b2(), p) == 1;
}

std::pair<WeierstrassModel, ModelChange> global_minimal_model(
    const WeierstrassModel& model, const std::vector<Int>* known_bad_primes) {
    ModelChange pre = ModelChange::identity();
    WeierstrassModel start = model;
    if (!model.is_integral()) {
        pre = integral_scaling(model);
        start = apply_change(model, pre);
    }
    IntModel w = IntModel::from(start);
    Int delta = w.disc();

    std::vector<Int> bad = known_bad_primes ? *known_bad_primes : prime_support(delta);
    Int u = 1;
    for (const Int& p : bad) {
        if (val(delta, p) == 0) continue;
        LocalReductionData d = tate_algorithm(start, p);
        long drop = val(delta, p) - d.v_delta_min;
        if (drop % 12 != 0) throw InternalConsistencyError("minimal disc drop not 0 mod 12");
        for (long i = 0; i < drop / 12; i++) u *= p;
    }

    // pure rescaling when possible (keeps already-minimal models intact)
    ModelChange scale = pre.compose(ModelChange::scaling(Rat(u)));
    WeierstrassModel scaled = apply_change(model, scale);
    if (scaled.is_integral()) return {scaled, scale};

    // otherwise build the reduced model from the minimal invariants
    Int u4 = u * u * u * u, u6 = u4 * u * u;
    Int c4n = Int(start.c4.get_num()), c6n = Int(start.c6.get_num());
    if (c4n % u4 != 0 || c6n % u6 != 0)
        throw InternalConsistencyError("minimal c4/c6 not integral");
    Int c4 = c4n / u4;
    Int c6 = c6n / u6;
    Int b2 = ((-c6 % 12) + 12) % 12;
    if (b2 > 6) b2 -= 12;
    Int num4 = b2 * b2 - c4;
    if (num4 % 24 != 0) throw InternalConsistencyError("b4 reconstruction failed");
    Int b4 = num4 / 24;
    Int num6 = -b2 * b2 * b2 + 36 * b2 * b4 - c6;
    if (num6 % 216 != 0) throw InternalConsistencyError("b6 reconstruction failed");
    Int b6 = num6 / 216;
    Int a1 = ((b2 % 2) + 2) % 2;
    Int a3 = ((b6 % 2) + 2) % 2;
    if ((b2 - a1) % 4 != 0 || (b6 - a3) % 4 != 0 || (b4 - a1 * a3) % 2 != 0)
        throw InternalConsistencyError("minimal model reconstruction failed");
    Int a2 = (b2 - a1) / 4;
    Int a6 = (b6 - a3) / 4;
    Int a4 = (b4 - a1 * a3) / 2;
    WeierstrassModel target{Rat(a1), Rat(a2), Rat(a3), Rat(a4), Rat(a6)};

    // solve for the (r, s, t) joining the input frame to the target
    Rat uu = scale.u;
    Rat s = (uu * target.a1 - model.a1) / 2;
    Rat r = (uu * uu * target.a2 - model.a2 + s * model.a1 + s * s) / 3;
    Rat t = (uu * uu * uu * target.a3 - model.a3 - r * model.a1) / 2;
    ModelChange full{uu, r, s, t};
    if (apply_change(model, full) != target)
        throw InternalConsistencyError("global minimal model: change verification failed");
    return {target, full};
}

Int tamagawa_product(const WeierstrassModel& model) {
    auto [minimal, chg] = global_minimal_model(model);
    Int prod = 1;
    Int delta = Int(minimal.disc.get_num());
    for (const Int& p : prime_support(delta)) {
        LocalReductionData d = tate_algorithm(minimal, p);
        prod *= d.tamagawa;
    }
    return prod;
}

}  // namespace rank0
