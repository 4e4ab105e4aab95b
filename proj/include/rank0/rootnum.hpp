#pragma once

// Local and global root numbers for exactly the case repertoire needed by
// the certification pipeline.  Anything outside the encoded rules comes
// back as "unknown" rather than a guess; the rule rows ship alongside the
// code as data/root_number_rules.txt for auditing.

#include <vector>

#include "rank0/localdata.hpp"

namespace rank0 {

enum class RootNumberRule {
    archimedean,
    good,
    multiplicative,
    additive_IIIstar_pge5,
    additive_p3_table,
    additive_p2_table,
    unsupported,
};

std::string root_number_rule_str(RootNumberRule r);

struct LocalRootNumber {
    bool archimedean = false;
    Int p = 0;      // finite place when not archimedean
    int value = 0;  // +1, -1, or 0 for unknown
    RootNumberRule rule = RootNumberRule::unsupported;
};

LocalRootNumber archimedean_root_number();

// Local root number at data.p.  The model must be the one data was
// computed from (its minimal invariants feed the p = 2 predicate).
LocalRootNumber local_root_number(const LocalReductionData& data);

// Product over all places; local unknowns raise
// IndeterminateRootNumberError naming the place.
int global_root_number(const WeierstrassModel& model);

// Product of the archimedean place and the given finite locals.
int global_root_number_from_locals(const std::vector<LocalRootNumber>& finite_locals);

}  // namespace rank0
