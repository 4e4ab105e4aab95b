#include "rank0/rootnum.hpp"

namespace rank0 {

std::string root_number_rule_str(RootNumberRule r) {
    switch (r) {
        case RootNumberRule::archimedean: return "archimedean";
        case RootNumberRule::good: return "good";
        case RootNumberRule::multiplicative: return "multiplicative";
        case RootNumberRule::additive_IIIstar_pge5: return "additive-IIIstar-pge5";
        case RootNumberRule::additive_p3_table: return "additive-p3-table";
        case RootNumberRule::additive_p2_table: return "additive-p2-table";
        case RootNumberRule::unsupported: return "unsupported";
    }
    return "?";
}

LocalRootNumber archimedean_root_number() {
    return {true, 0, -1, RootNumberRule::archimedean};
}

LocalRootNumber local_root_number(const LocalReductionData& data) {
    LocalRootNumber out;
    out.p = data.p;

    switch (data.reduction) {
        case ReductionType::good:
            out.value = 1;
            out.rule = RootNumberRule::good;
            return out;
        case ReductionType::multiplicative_split:
            out.value = -1;
            out.rule = RootNumberRule::multiplicative;
            return out;
        case ReductionType::multiplicative_nonsplit:
            out.value = 1;
            out.rule = RootNumberRule::multiplicative;
            return out;
        case ReductionType::additive: break;
    }

    const bool is_IIIstar = data.kodaira.type == KodairaType::IIIstar;
    if (data.p >= 5 && is_IIIstar) {
        out.value = legendre(Int(-2), data.p);
        out.rule = RootNumberRule::additive_IIIstar_pge5;
        return out;
    }
    if (data.p == 3 && is_IIIstar) {
        // the one row of the p = 3 table the pipeline needs:
        // Kodaira III* alone determines W_3 = +1
        out.value = 1;
        out.rule = RootNumberRule::additive_p3_table;
        return out;
    }
    if (data.p == 2 && is_IIIstar) {
        // one row of the p = 2 table, keyed by the exact valuation and
        // odd-part residue profile of the minimal model
        const WeierstrassModel& m = data.minimal_model;
        Int c4 = Int(m.c4.get_num());
        Int c6 = Int(m.c6.get_num());
        Int delta = Int(m.disc.get_num());
        if (c4 == 0 || c6 == 0) {
            out.value = 0;
            out.rule = RootNumberRule::unsupported;
            return out;
        }
        long v4 = ord_p(c4, 2), v6 = ord_p(c6, 2), vD = ord_p(delta, 2);
        Int c4odd = c4 >> v4, c6odd = c6 >> v6;
        Int r4 = ((c4odd % 8) + 8) % 8, r6 = ((c6odd % 8) + 8) % 8;
        if (v4 == 7 && v6 == 10 && vD == 14 && r4 == 7 && r6 == 3) {
            out.value = -1;
            out.rule = RootNumberRule::additive_p2_table;
            return out;
        }
    }

    out.value = 0;
    out.rule = RootNumberRule::unsupported;
    return out;
}

int global_root_number_from_locals(const std::vector<LocalRootNumber>& finite_locals) {
    int w = archimedean_root_number().value;
    for (const LocalRootNumber& l : finite_locals) {
        if (l.value == 0)
            throw IndeterminateRootNumberError("unknown local root number at p = " +
                                               l.p.get_str());
        w *= l.value;
    }
    return w;
}

int global_root_number(const WeierstrassModel& model) {
    auto [minimal, chg] = global_minimal_model(model);
    std::vector<LocalRootNumber> locals;
    for (const Int& p : prime_support(Int(minimal.disc.get_num())))
        locals.push_back(local_root_number(tate_algorithm(minimal, p)));
    return global_root_number_from_locals(locals);
}

}  // namespace rank0
