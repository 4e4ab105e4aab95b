// Acceptance suite: runs every acceptance criterion at its stated
// tolerance and prints one PASS/FAIL line each.  Exit code 0 only if all
// criteria hold.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "rank0/certify.hpp"
#include "support/fp_curve.hpp"
#include "support/period_quadrature.hpp"
#include "support/solvability_oracle.hpp"

using namespace rank0;
using namespace rank0::testsupport;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int idx, const std::string& name, bool ok, const std::string& detail = "") {
    std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << idx << ": " << name;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << std::endl;
    if (!ok) g_failures++;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// ---- criterion 1: smallest-pair reproduction -------------------------------

void criterion1() {
    auto t0 = Clock::now();
    Certificate c = certify_pair(3, 8);
    double dt = seconds_since(t0);

    bool ok = c.status == "pass";
    const char* symE[4] = {"III*", "III*", "I2", "I1"};
    const char* symEp[4] = {"II", "III*", "I1", "I2"};
    long cE[4] = {2, 2, 2, 1};
    long cEp[4] = {1, 2, 1, 2};
    ok = ok && c.local_E.size() == 4 && c.local_EPrime.size() == 4;
    for (int i = 0; ok && i < 4; i++) {
        ok = ok && c.local_E[i].kodaira.str() == symE[i] && c.local_E[i].tamagawa == cE[i];
        ok = ok && c.local_EPrime[i].kodaira.str() == symEp[i] &&
             c.local_EPrime[i].tamagawa == cEp[i];
    }
    ok = ok && c.tamagawa_E.computed == 8 && c.tamagawa_EPrime.computed == 4;
    ok = ok && c.w_global.computed == 1 && c.w2.computed == -1;
    ok = ok && ord_p(Rat(c.local_E[0].minimal_model.c4), Int(2)) == 7 &&
         ord_p(Rat(c.local_E[0].minimal_model.c6), Int(2)) == 10 &&
         c.local_E[0].v_delta_min == 14;
    ok = ok && c.selmer_phi_elements == std::vector<Int>{Int(1), Int(-57)};
    ok = ok && c.selmer_phihat_elements.size() == 2;
    ok = ok && c.period_ratio_value == Rat(1, 2);
    ok = ok && c.rank_bound.computed == 0;
    bool fast = dt < 1.0;
    report(1, "smallest-pair reproduction", ok && fast,
           "runtime " + std::to_string(dt) + " s");
}

// ---- criteria 2 + 3: full scan with cassels cross-check ---------------------

void criteria2and3() {
    std::ifstream f(std::string(RANK0_FIXTURES_DIR) + "/scan_preregistered.json");
    if (!f.good()) {
        report(2, "family universality at desk scale", false, "missing preregistration");
        report(3, "cassels cross-check", false, "missing preregistration");
        return;
    }
    nlohmann::json prereg = nlohmann::json::parse(f);
    const std::uint64_t expected_count = prereg["pair_counts"]["100000"].get<std::uint64_t>();

    unsigned jobs = std::thread::hardware_concurrency();
    if (jobs == 0) jobs = 2;
    std::uint64_t cassels_ok = 0, all_pass = 0;
    auto t0 = Clock::now();
    ScanSummary s = scan(100000, jobs, [&](const Certificate& c) {
        if (c.status == "pass") all_pass++;
        if (c.cassels_pass) cassels_ok++;
    });
    double dt = seconds_since(t0);

    bool ok2 = s.total == expected_count && all_pass == s.total && s.failed == 0 &&
               s.rejected == 0 && dt < 600.0;
    report(2, "family universality at desk scale", ok2,
           std::to_string(s.total) + " pairs (expected " + std::to_string(expected_count) +
               "), " + std::to_string(all_pass) + " passed, " + std::to_string(dt) + " s, " +
               std::to_string(jobs) + " jobs");

    bool ok3 = cassels_ok == s.total;
    report(3, "cassels cross-check on every scanned pair", ok3,
           std::to_string(cassels_ok) + "/" + std::to_string(s.total));
}

// ---- criterion 4: torsor solver vs enumeration oracle ----------------------

void criterion4() {
    std::mt19937_64 rng(0x5E1FCafeu);
    const std::vector<Int> primes = {2, 3, 5, 7, 11, 19};
    std::uint64_t torsors = 0, checks = 0, agreements = 0;
    while (torsors < 500) {
        Int d = Int(rng() % 10000) + 1;
        d = squarefree_part(d);
        if (rng() % 2) d = -d;
        Int A = Int(rng() % 20001) - 10000;
        Int B = Int(rng() % 20001) - 10000;
        if (B == 0 || A * A - 4 * B == 0) continue;
        TorsorQuartic T(d, A, B);
        bool used = false;
        for (const Int& p : primes) {
            // keep the oracle enumeration within budget at the stated depth
            long k = oracle_depth(T, p);
            Int pk = 1;
            bool skip = false;
            for (long i = 0; i < k; i++) {
                pk *= p;
                if (pk > 4000000) { skip = true; break; }
            }
            if (skip) continue;
            used = true;
            checks++;
            bool fast = torsor_locally_solvable(T, Place::finite(p));
            bool slow = oracle_locally_solvable_at_p(T, p);
            if (fast == slow) agreements++;
        }
        if (used) torsors++;
    }
    report(4, "torsor solver equals enumeration oracle", agreements == checks,
           std::to_string(agreements) + "/" + std::to_string(checks) + " over " +
               std::to_string(torsors) + " torsors");
}

// ---- criterion 5: external tate fixtures ------------------------------------

void criterion5() {
    std::ifstream f(std::string(RANK0_FIXTURES_DIR) + "/tate_panel.json");
    if (!f.good()) {
        report(5, "tate cross-validation", false, "missing fixtures");
        return;
    }
    nlohmann::json panel = nlohmann::json::parse(f);
    int rows = 0, ok = 0, curves = 0;
    for (const auto& curve : panel["curves"]) {
        curves++;
        auto& a = curve["a"];
        WeierstrassModel model{Rat(Int(a[0].get<std::string>())),
                               Rat(Int(a[1].get<std::string>())),
                               Rat(Int(a[2].get<std::string>())),
                               Rat(Int(a[3].get<std::string>())),
                               Rat(Int(a[4].get<std::string>()))};
        auto [minimal, chg] = global_minimal_model(model);
        for (const auto& loc : curve["local"]) {
            rows++;
            LocalReductionData d = tate_algorithm(minimal, Int(loc["p"].get<std::string>()));
            bool row_ok = d.kodaira.str() == loc["kodaira"].get<std::string>() &&
                          d.tamagawa == loc["tamagawa"].get<long>() &&
                          d.v_delta_min == loc["v_delta_min"].get<long>() &&
                          d.conductor_exponent == loc["f"].get<int>();
            if (loc.contains("reduction"))
                row_ok = row_ok &&
                         reduction_type_str(d.reduction) == loc["reduction"].get<std::string>();
            if (row_ok) ok++;
        }
    }
    report(5, "tate cross-validation",
           ok == rows && curves == 10,
           std::to_string(ok) + "/" + std::to_string(rows) + " rows over " +
               std::to_string(curves) + " curves");
}

// ---- criterion 6: isogeny identity exhaustively over F_p --------------------

void criterion6() {
    auto pairs = find_progressions(2000);
    std::uint64_t curves = 0, points = 0, agree = 0;
    for (size_t i = 0; i < pairs.size() && curves < 20; i++, curves++) {
        IsogenousPair pair = build_family_pair(pairs[i].m, pairs[i].n);
        Int disc(pair.E.disc.get_num());
        int used = 0;
        for (Int p = 5; used < 5; p = p + 2) {
            if (!is_prime(p) || disc % p == 0) continue;
            used++;
            FamilyCurveFp E(p, pair.a, pair.b);
            FamilyCurveFp Ep(p, pair.a_prime, pair.b_prime);
            for (const FpPoint& P : E.all_points()) {
                points++;
                FpPoint composed = dual_isogeny_image_fp(Ep, isogeny_image_fp(E, P));
                if (composed == E.dbl(P)) agree++;
            }
        }
    }
    report(6, "dual composed with isogeny is duplication", agree == points,
           std::to_string(agree) + "/" + std::to_string(points) + " points over " +
               std::to_string(curves) + " pairs x 5 primes");
}

// ---- criterion 7: period ratio vs quadrature --------------------------------

void criterion7() {
    auto pairs = find_progressions(800);
    int used = 0, ok = 0;
    double worst = 0;
    for (size_t i = 0; i < pairs.size() && used < 10; i++, used++) {
        IsogenousPair pair = build_family_pair(pairs[i].m, pairs[i].n);
        double omegaE = real_period_family(pair.a.get_d(), pair.b.get_d());
        double m = static_cast<double>(pairs[i].m), n = static_cast<double>(pairs[i].n);
        double omegaEp = real_period_family(2 * m * m, -m * m * m * (m + 2 * n));
        double exact = Rat(period_ratio(pair)).get_d();
        double err = std::fabs(omegaE / omegaEp - exact);
        worst = std::max(worst, err);
        if (err < 1e-6) ok++;
    }
    std::ostringstream det;
    det << ok << "/" << used << " pairs, worst error " << worst;
    report(7, "period ratio matches quadrature to 1e-6", ok == used, det.str());
}

// ---- criterion 8: documented out-of-scope statements ------------------------

void criterion8() {
    std::ifstream f(RANK0_README_PATH);
    if (!f.good()) {
        report(8, "scope limits documented", false, "README.md missing");
        return;
    }
    std::stringstream buf;
    buf << f.rdbuf();
    std::string readme = buf.str();
    bool has_infinitude = readme.find("infinitely many") != std::string::npos;
    bool has_function_field = readme.find("function field") != std::string::npos;
    report(8, "scope limits documented, scan as empirical stand-in",
           has_infinitude && has_function_field,
           "README states what the tool does not prove");
}

}  // namespace

int main() {
    criterion1();
    criteria2and3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    std::cout << (g_failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES PRESENT") << std::endl;
    return g_failures == 0 ? 0 : 1;
}
