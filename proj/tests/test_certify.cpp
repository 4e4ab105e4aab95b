#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rank0/certify.hpp"

using namespace rank0;

TEST_CASE("certificate for (3, 8) carries the full expected record") {
    Certificate c = certify_pair(3, 8);
    CHECK(c.status == "pass");
    CHECK(c.pass);
    CHECK(c.t == Rat(11, 6));
    CHECK(c.specialization_roundtrip);
    CHECK(c.kodaira_profile_pass);
    CHECK(c.tamagawa_E.computed == 8);
    CHECK(c.tamagawa_EPrime.computed == 4);
    CHECK(c.w_global.computed == 1);
    CHECK(c.w2.computed == -1);
    REQUIRE(c.selmer_phi_elements.size() == 2);
    CHECK(c.selmer_phi_elements[1] == -57);
    REQUIRE(c.selmer_phihat_elements.size() == 2);
    CHECK(c.selmer_phihat_elements[1] == 66);
    CHECK(c.period_ratio_value == Rat(1, 2));
    CHECK(c.cassels_pass);
    CHECK(c.cassels_formula == 1);
    CHECK(c.two_torsion_cyclic2);
    CHECK(c.rank_bound.computed == 0);
    CHECK(c.rank_route == "exact-sequence");
    CHECK(c.failed_stages.empty());
    // the (7, 10, 14) valuation profile is in the local data
    REQUIRE(c.local_E.size() == 4);
    CHECK(c.local_E[0].p == 2);
    CHECK(c.local_E[0].v_delta_min == 14);
}

TEST_CASE("rejected inputs") {
    Certificate c = certify_pair(3, 4);
    CHECK(c.status == "rejected");
    CHECK_FALSE(c.pass);
    CHECK(c.reject_reason.find("3 mod 8") != std::string::npos);

    Certificate c2 = certify_pair(3, 6);
    CHECK(c2.status == "rejected");
    CHECK(c2.reject_reason.find("prime") != std::string::npos);

    // rejected never turns into a pass downstream
    nlohmann::ordered_json j = certificate_to_json(c);
    CHECK(j["status"] == "rejected");
    CHECK(j.contains("reject_reason"));
    CHECK_FALSE(j.contains("pass"));
}

TEST_CASE("pair (11, 48) passes") {
    Certificate c = certify_pair(11, 48);
    CHECK(c.status == "pass");
    CHECK(c.rank_bound.computed == 0);
}

TEST_CASE("scan boundaries") {
    std::vector<Certificate> certs;
    ScanSummary s = scan(19, 1, [&](const Certificate& c) { certs.push_back(c); });
    CHECK(s.total == 1);
    CHECK(s.passed == 1);
    REQUIRE(certs.size() == 1);
    CHECK(certs[0].m == 3);
    CHECK(certs[0].n == 8);

    ScanSummary s0 = scan(18, 1, nullptr);
    CHECK(s0.total == 0);
}

TEST_CASE("certificates are deterministic across runs and thread counts") {
    Certificate a = certify_pair(3, 8);
    Certificate b = certify_pair(3, 8);
    CHECK(certificate_to_json(a, false).dump(2) == certificate_to_json(b, false).dump(2));

    std::vector<std::string> ordered1, ordered4;
    scan(1500, 1, [&](const Certificate& c) {
        ordered1.push_back(certificate_to_json(c, false).dump());
    });
    scan(1500, 4, [&](const Certificate& c) {
        ordered4.push_back(certificate_to_json(c, false).dump());
    });
    REQUIRE(ordered1.size() == ordered4.size());
    for (size_t i = 0; i < ordered1.size(); i++) CHECK(ordered1[i] == ordered4[i]);
}

TEST_CASE("certificate json schema basics") {
    Certificate c = certify_pair(3, 8);
    nlohmann::ordered_json j = certificate_to_json(c);
    CHECK(j["schema_version"] == "1");
    CHECK(j.contains("tool_version"));
    CHECK(j.contains("timestamp"));
    CHECK(j["m"] == "3");
    CHECK(j["n"] == "8");
    CHECK(j["t"]["num"] == "11");
    CHECK(j["t"]["den"] == "6");
    CHECK(j["local_data"]["E"][0]["kodaira"] == "III*");
    CHECK(j["local_data"]["EPrime"][0]["kodaira"] == "II");
    CHECK(j["selmer_phi"]["elements"][1] == "-57");
    CHECK(j["rank_bound"]["value"] == "0");
    CHECK(j["pass"] == true);
    // timestamp excluded on request
    nlohmann::ordered_json jn = certificate_to_json(c, false);
    CHECK_FALSE(jn.contains("timestamp"));
}
