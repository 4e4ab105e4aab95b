#include "rank0/certify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ctime>
#include <thread>

namespace rank0 {

namespace {

std::string now_rfc3339() {
    using namespace std::chrono;
    std::time_t t = system_clock::to_time_t(system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct ExpectedLocal {
    KodairaSymbol kodaira;
    long tamagawa;
};

// expected reduction profile at the ordered bad primes (2, m, m+n, m+2n)
const ExpectedLocal kProfileE[4] = {{{KodairaType::IIIstar}, 2},
                                    {{KodairaType::IIIstar}, 2},
                                    {{KodairaType::In, 2}, 2},
                                    {{KodairaType::In, 1}, 1}};
const ExpectedLocal kProfileEPrime[4] = {{{KodairaType::II}, 1},
                                         {{KodairaType::IIIstar}, 2},
                                         {{KodairaType::In, 1}, 1},
                                         {{KodairaType::In, 2}, 2}};

CheckedInt checked(Int computed, Int expected) {
    bool ok = computed == expected;
    return {std::move(computed), std::move(expected), ok};
}

}  // namespace

Certificate certify_pair(std::uint64_t m, std::uint64_t n) {
    Certificate cert;
    cert.m = m;
    cert.n = n;
    cert.timestamp = now_rfc3339();

    if (!is_valid_progression_pair(m, n)) {
        cert.status = "rejected";
        std::uint64_t mid = m + n, top = m + 2 * n;
        if (!is_prime_u64(m) || !is_prime_u64(mid) || !is_prime_u64(top))
            cert.reject_reason = "m, m+n, m+2n must all be prime";
        else
            cert.reject_reason = "m, m+n, m+2n must all be congruent to 3 mod 8";
        return cert;
    }

    std::string stage;
    try {
        stage = "build-family-pair";
        IsogenousPair pair = build_family_pair(m, n);
        cert.a = pair.a;
        cert.b = pair.b;
        cert.a_prime = pair.a_prime;
        cert.b_prime = pair.b_prime;
        cert.t = Rat(Int(m + n), Int(2 * m));
        cert.t.canonicalize();

        stage = "specialize-roundtrip";
        auto [spec_model, spec_chg] = specialize(cert.t);
        cert.specialization_roundtrip = (spec_model == pair.E);
        if (!cert.specialization_roundtrip) cert.failed_stages.push_back(stage);

        stage = "minimal-models";
        std::vector<Int> bad_primes = {Int(2), Int(static_cast<unsigned long>(m)),
                                       Int(static_cast<unsigned long>(m + n)),
                                       Int(static_cast<unsigned long>(m + 2 * n))};
        auto [minE, chgE] = global_minimal_model(pair.E, &bad_primes);
        auto [minEp, chgEp] = global_minimal_model(pair.EPrime, &bad_primes);
        cert.e_minimal = minE;
        cert.eprime_minimal = minEp;

        stage = "tate";
        std::uint64_t bad[4] = {2, m, m + n, m + 2 * n};
        // the bad set always has exactly these four distinct members
        for (int i = 0; i < 4; i++)
            for (int j = i + 1; j < 4; j++)
                if (bad[i] == bad[j])
                    throw InternalConsistencyError("bad prime set collision");
        bool profile_ok = true;
        for (int i = 0; i < 4; i++) {
            Int p(static_cast<unsigned long>(bad[i]));
            LocalReductionData dE = tate_algorithm(minE, p);
            LocalReductionData dEp = tate_algorithm(minEp, p);
            profile_ok = profile_ok && dE.kodaira == kProfileE[i].kodaira &&
                         dE.tamagawa == kProfileE[i].tamagawa &&
                         dEp.kodaira == kProfileEPrime[i].kodaira &&
                         dEp.tamagawa == kProfileEPrime[i].tamagawa;
            cert.local_E.push_back(std::move(dE));
            cert.local_EPrime.push_back(std::move(dEp));
        }
        cert.kodaira_profile_pass = profile_ok;
        if (!profile_ok) cert.failed_stages.push_back("kodaira-profile");

        stage = "tamagawa-products";
        Int prodE = 1, prodEp = 1;
        for (int i = 0; i < 4; i++) {
            prodE *= cert.local_E[i].tamagawa;
            prodEp *= cert.local_EPrime[i].tamagawa;
        }
        cert.tamagawa_E = checked(prodE, Int(8));
        cert.tamagawa_EPrime = checked(prodEp, Int(4));
        if (!cert.tamagawa_E.pass || !cert.tamagawa_EPrime.pass)
            cert.failed_stages.push_back(stage);

        stage = "root-number";
        for (int i = 0; i < 4; i++)
            cert.root_locals.push_back(local_root_number(cert.local_E[i]));
        int w = global_root_number_from_locals(cert.root_locals);
        cert.w2 = checked(Int(cert.root_locals[0].value), Int(-1));
        cert.w_global = checked(Int(w), Int(1));
        if (!cert.w2.pass || !cert.w_global.pass) cert.failed_stages.push_back(stage);

        stage = "selmer-phi";
        SelmerGroup sphi = selmer_phi(pair);
        cert.selmer_phi_elements = sphi.elements;
        cert.selmer_phi_order = checked(Int(sphi.elements.size()), Int(2));
        if (!cert.selmer_phi_order.pass) cert.failed_stages.push_back(stage);

        stage = "selmer-phihat";
        SelmerGroup sphihat = selmer_phihat(pair);
        cert.selmer_phihat_elements = sphihat.elements;
        cert.selmer_phihat_order = checked(Int(sphihat.elements.size()), Int(2));
        if (!cert.selmer_phihat_order.pass) cert.failed_stages.push_back(stage);

        stage = "period-ratio";
        cert.period_ratio_value = abs(chgE.u) / abs(chgEp.u);
        if (cert.period_ratio_value != 1 && cert.period_ratio_value != Rat(1, 2))
            throw InternalConsistencyError("period ratio outside {1, 1/2}");
        cert.period_ratio_pass = cert.period_ratio_value == Rat(1, 2);
        if (!cert.period_ratio_pass) cert.failed_stages.push_back(stage);

        stage = "cassels";
        // torsion factor 1; Omega ratio and Tamagawa products from above
        cert.cassels_formula = cert.period_ratio_value * Rat(prodE) / Rat(prodEp);
        cert.cassels_direct =
            Rat(Int(sphihat.elements.size())) / Rat(Int(sphi.elements.size()));
        cert.cassels_pass = cert.cassels_formula == cert.cassels_direct;
        if (!cert.cassels_pass) cert.failed_stages.push_back(stage);

        stage = "two-torsion";
        cert.two_torsion_cyclic2 = two_torsion_is_cyclic2(pair);
        if (!cert.two_torsion_cyclic2) cert.failed_stages.push_back(stage);

        stage = "rank-bound";
        int bound = rank_bound_from_selmer(sphi, sphihat, cert.two_torsion_cyclic2,
                                           &cert.rank_route);
        cert.rank_bound = checked(Int(bound), Int(0));
        if (!cert.rank_bound.pass) cert.failed_stages.push_back(stage);
    } catch (const Error& e) {
        cert.failed_stages.push_back(stage + ": " + e.what());
        cert.status = "fail";
        cert.pass = false;
        return cert;
    }

    cert.pass = cert.failed_stages.empty();
    cert.status = cert.pass ? "pass" : "fail";
    return cert;
}

namespace {

nlohmann::ordered_json rat_json(const Rat& r) {
    return {{"num", Int(r.get_num()).get_str()}, {"den", Int(r.get_den()).get_str()}};
}

nlohmann::ordered_json model_json(const WeierstrassModel& w) {
    nlohmann::ordered_json j;
    j["a1"] = rat_json(w.a1);
    j["a2"] = rat_json(w.a2);
    j["a3"] = rat_json(w.a3);
    j["a4"] = rat_json(w.a4);
    j["a6"] = rat_json(w.a6);
    j["c4"] = rat_json(w.c4);
    j["c6"] = rat_json(w.c6);
    j["disc"] = rat_json(w.disc);
    return j;
}

nlohmann::ordered_json checked_json(const CheckedInt& c) {
    return {{"computed", c.computed.get_str()},
            {"expected", c.expected.get_str()},
            {"pass", c.pass}};
}

nlohmann::ordered_json local_json(const LocalReductionData& d) {
    nlohmann::ordered_json j;
    j["p"] = d.p.get_str();
    j["kodaira"] = d.kodaira.str();
    j["tamagawa"] = std::to_string(d.tamagawa);
    j["v_delta_min"] = std::to_string(d.v_delta_min);
    j["reduction"] = reduction_type_str(d.reduction);
    j["conductor_exponent"] = std::to_string(d.conductor_exponent);
    return j;
}

}  // namespace

nlohmann::ordered_json certificate_to_json(const Certificate& c, bool include_timestamp) {
    nlohmann::ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["tool_version"] = kToolVersion;
    if (include_timestamp) j["timestamp"] = c.timestamp;
    j["m"] = Int(static_cast<unsigned long>(c.m)).get_str();
    j["n"] = Int(static_cast<unsigned long>(c.n)).get_str();
    j["status"] = c.status;
    if (c.status == "rejected") {
        j["reject_reason"] = c.reject_reason;
        return j;
    }
    j["t"] = rat_json(c.t);
    j["failed_stages"] = c.failed_stages;
    j["family"] = {{"a", c.a.get_str()},
                   {"b", c.b.get_str()},
                   {"a_prime", c.a_prime.get_str()},
                   {"b_prime", c.b_prime.get_str()}};
    if (c.e_minimal) j["e_minimal"] = model_json(*c.e_minimal);
    if (c.eprime_minimal) j["eprime_minimal"] = model_json(*c.eprime_minimal);
    j["specialization_roundtrip"] = c.specialization_roundtrip;
    nlohmann::ordered_json locE = nlohmann::ordered_json::array();
    for (const auto& d : c.local_E) locE.push_back(local_json(d));
    nlohmann::ordered_json locEp = nlohmann::ordered_json::array();
    for (const auto& d : c.local_EPrime) locEp.push_back(local_json(d));
    j["local_data"] = {{"E", locE}, {"EPrime", locEp}};
    j["kodaira_profile_pass"] = c.kodaira_profile_pass;
    j["tamagawa_products"] = {{"E", checked_json(c.tamagawa_E)},
                              {"EPrime", checked_json(c.tamagawa_EPrime)}};
    nlohmann::ordered_json locals = nlohmann::ordered_json::array();
    locals.push_back({{"place", "archimedean"},
                      {"value", -1},
                      {"rule", root_number_rule_str(RootNumberRule::archimedean)}});
    for (const auto& l : c.root_locals)
        locals.push_back({{"place", l.p.get_str()},
                          {"value", l.value},
                          {"rule", root_number_rule_str(l.rule)}});
    j["root_numbers"] = {{"locals", locals},
                         {"w2", checked_json(c.w2)},
                         {"global", checked_json(c.w_global)}};
    auto elems = [](const std::vector<Int>& v) {
        nlohmann::ordered_json a = nlohmann::ordered_json::array();
        for (const Int& d : v) a.push_back(d.get_str());
        return a;
    };
    j["selmer_phi"] = {{"elements", elems(c.selmer_phi_elements)},
                       {"order", checked_json(c.selmer_phi_order)}};
    j["selmer_phihat"] = {{"elements", elems(c.selmer_phihat_elements)},
                          {"order", checked_json(c.selmer_phihat_order)}};
    j["period_ratio"] = rat_json(c.period_ratio_value);
    j["period_ratio_pass"] = c.period_ratio_pass;
    j["cassels"] = {{"formula_ratio", rat_json(c.cassels_formula)},
                    {"direct_ratio", rat_json(c.cassels_direct)},
                    {"pass", c.cassels_pass}};
    j["two_torsion_cyclic2"] = c.two_torsion_cyclic2;
    j["rank_bound"] = {{"value", c.rank_bound.computed.get_str()},
                       {"expected", c.rank_bound.expected.get_str()},
                       {"route", c.rank_route},
                       {"pass", c.rank_bound.pass}};
    j["pass"] = c.pass;
    return j;
}

ScanSummary scan(std::uint64_t limit, unsigned jobs,
                 const std::function<void(const Certificate&)>& sink) {
    if (jobs == 0) jobs = 1;
    std::vector<ProgressionPair> pairs = find_progressions(limit);
    ScanSummary summary;
    summary.limit = limit;
    summary.total = pairs.size();

    // process blocks in order; each block is certified in parallel and
    // emitted sequentially, so output order and content are independent
    // of the job count
    const size_t block = std::max<size_t>(jobs * 16, 64);
    std::vector<Certificate> results;
    for (size_t base = 0; base < pairs.size(); base += block) {
        size_t count = std::min(block, pairs.size() - base);
        results.assign(count, Certificate{});
        if (jobs == 1) {
            for (size_t i = 0; i < count; i++)
                results[i] = certify_pair(pairs[base + i].m, pairs[base + i].n);
        } else {
            std::atomic<size_t> next{0};
            std::vector<std::thread> workers;
            for (unsigned w = 0; w < jobs; w++)
                workers.emplace_back([&]() {
                    while (true) {
                        size_t i = next.fetch_add(1);
                        if (i >= count) break;
                        results[i] = certify_pair(pairs[base + i].m, pairs[base + i].n);
                    }
                });
            for (auto& th : workers) th.join();
        }
        for (size_t i = 0; i < count; i++) {
            const Certificate& c = results[i];
            if (c.status == "pass") summary.passed++;
            else if (c.status == "rejected") summary.rejected++;
            else summary.failed++;
            if (sink) sink(c);
        }
    }
    return summary;
}

}  // namespace rank0
