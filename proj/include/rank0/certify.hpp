#pragma once

// Pipeline orchestration: run the whole certification chain for one pair,
// assemble a machine-checkable certificate, and scan ranges of pairs.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rank0/descent.hpp"
#include "rank0/localdata.hpp"
#include "rank0/primesieve.hpp"
#include "rank0/rootnum.hpp"

namespace rank0 {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kSchemaVersion = "1";

struct CheckedInt {
    Int computed;
    Int expected;
    bool pass = false;
};

struct Certificate {
    std::uint64_t m = 0, n = 0;
    Rat t;
    std::string status;  // "pass" | "fail" | "rejected"
    std::string reject_reason;
    std::vector<std::string> failed_stages;
    std::string timestamp;

    // family data
    Int a, b, a_prime, b_prime;
    std::optional<WeierstrassModel> e_minimal;
    std::optional<WeierstrassModel> eprime_minimal;
    bool specialization_roundtrip = false;

    std::vector<LocalReductionData> local_E, local_EPrime;
    bool kodaira_profile_pass = false;

    CheckedInt tamagawa_E, tamagawa_EPrime;

    std::vector<LocalRootNumber> root_locals;  // finite places, E only
    CheckedInt w2, w_global;

    std::vector<Int> selmer_phi_elements, selmer_phihat_elements;
    CheckedInt selmer_phi_order, selmer_phihat_order;

    Rat period_ratio_value;
    bool period_ratio_pass = false;
    Rat cassels_formula, cassels_direct;
    bool cassels_pass = false;

    bool two_torsion_cyclic2 = false;
    CheckedInt rank_bound;
    std::string rank_route;

    bool pass = false;
};

Certificate certify_pair(std::uint64_t m, std::uint64_t n);

nlohmann::ordered_json certificate_to_json(const Certificate& c, bool include_timestamp = true);

struct ScanSummary {
    std::uint64_t limit = 0;
    std::uint64_t total = 0, passed = 0, failed = 0, rejected = 0;
};

// Certify every pair from find_progressions(limit), in sieve order.  The
// sink receives certificates in that order regardless of the job count.
ScanSummary scan(std::uint64_t limit, unsigned jobs,
                 const std::function<void(const Certificate&)>& sink);

}  // namespace rank0
