#pragma once

// Tate's algorithm at every prime: minimal model, Kodaira symbol,
// Tamagawa number, reduction type, conductor exponent.

#include <string>

#include "rank0/curve.hpp"

namespace rank0 {

enum class KodairaType { I0, In, II, III, IV, I0star, Instar, IVstar, IIIstar, IIstar };

struct KodairaSymbol {
    KodairaType type = KodairaType::I0;
    int nu = 0;  // In / In* index

    std::string str() const;
    static KodairaSymbol parse(const std::string& s);
    bool operator==(const KodairaSymbol&) const = default;
};

enum class ReductionType { good, multiplicative_split, multiplicative_nonsplit, additive };

std::string reduction_type_str(ReductionType t);

struct LocalReductionData {
    Int p;
    WeierstrassModel minimal_model;
    ModelChange change;  // input model -> minimal_model
    KodairaSymbol kodaira;
    long tamagawa = 1;
    long v_delta_min = 0;
    ReductionType reduction = ReductionType::good;
    int conductor_exponent = 0;
};

// Full Tate run at p.  Non-integral input is scaled integral first.
LocalReductionData tate_algorithm(const WeierstrassModel& model, const Int& p);

// Split/nonsplit test for a model with multiplicative reduction at odd p:
// translate the node to the origin and test whether the tangent cone
// splits over F_p (Legendre symbol of the translated b2).
bool is_split_multiplicative(const WeierstrassModel& model, const Int& p);

// Product of c_p over the bad primes of the minimal model.
Int tamagawa_product(const WeierstrassModel& model);

// A model minimal at every prime plus the exact change reaching it.
// Prefers the pure u-scaling of the input when that lands on an integral
// model (so already-minimal inputs come back unchanged); otherwise falls
// back to the reduced form reconstructed from (c4, c6).  When the caller
// already knows a superset of the bad primes it can pass them to skip
// the discriminant factorization.
std::pair<WeierstrassModel, ModelChange> global_minimal_model(
    const WeierstrassModel& model, const std::vector<Int>* known_bad_primes = nullptr);

}  // namespace rank0
