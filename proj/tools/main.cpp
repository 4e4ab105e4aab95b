// Command-line front end: find-progressions, certify, scan.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "rank0/certify.hpp"

namespace {

unsigned resolve_jobs(unsigned flag_jobs) {
    // SCAN_JOBS overrides --jobs when set
    if (const char* env = std::getenv("SCAN_JOBS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    if (flag_jobs >= 1) return flag_jobs;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

int exit_code_for(const rank0::Certificate& c) {
    if (c.status == "pass") return 0;
    if (c.status == "rejected") return 2;
    return 1;
}

void print_certificate_text(const rank0::Certificate& c) {
    std::cout << "pair (m, n) = (" << c.m << ", " << c.n << ")\n";
    if (c.status == "rejected") {
        std::cout << "status: rejected (" << c.reject_reason << ")\n";
        return;
    }
    std::cout << "t = " << c.t << "\n";
    std::cout << "bad primes: 2, " << c.m << ", " << c.m + c.n << ", " << c.m + 2 * c.n
              << "\n";
    std::cout << "E  kodaira:";
    for (const auto& d : c.local_E)
        std::cout << " " << d.kodaira.str() << "(c=" << d.tamagawa << ")";
    std::cout << "\nE' kodaira:";
    for (const auto& d : c.local_EPrime)
        std::cout << " " << d.kodaira.str() << "(c=" << d.tamagawa << ")";
    std::cout << "\ntamagawa products: " << c.tamagawa_E.computed << ", "
              << c.tamagawa_EPrime.computed << "\n";
    std::cout << "root number W = " << (c.w_global.computed == 1 ? "+1" : "-1")
              << " (W_2 = " << (c.w2.computed == 1 ? "+1" : "-1") << ")\n";
    auto show = [](const std::vector<rank0::Int>& v) {
        std::string s = "{";
        for (size_t i = 0; i < v.size(); i++) s += (i ? ", " : "") + v[i].get_str();
        return s + "}";
    };
    std::cout << "Sel_phi = " << show(c.selmer_phi_elements)
              << ", Sel_phihat = " << show(c.selmer_phihat_elements) << "\n";
    std::cout << "period ratio = " << c.period_ratio_value
              << ", cassels check: " << (c.cassels_pass ? "ok" : "FAIL") << "\n";
    std::cout << "rank bound = " << c.rank_bound.computed << " (" << c.rank_route << ")\n";
    std::cout << "status: " << c.status;
    if (!c.failed_stages.empty()) {
        std::cout << " [";
        for (size_t i = 0; i < c.failed_stages.size(); i++)
            std::cout << (i ? "; " : "") << c.failed_stages[i];
        std::cout << "]";
    }
    std::cout << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rank-0 certificates for elliptic curves from prime progressions"};
    app.require_subcommand(1);

    // find-progressions
    auto* find_cmd = app.add_subcommand("find-progressions",
                                        "list qualifying (m, n) with m+2n <= limit");
    std::uint64_t find_limit = 0;
    bool find_json = false;
    find_cmd->add_option("--limit", find_limit, "upper bound for m+2n")->required();
    find_cmd->add_flag("--json", find_json, "emit JSON");

    // certify
    auto* cert_cmd = app.add_subcommand("certify", "certify one pair (m, n)");
    std::uint64_t cm = 0, cn = 0;
    bool cert_json = false;
    std::string cert_out;
    cert_cmd->add_option("--m", cm, "first prime of the progression")->required();
    cert_cmd->add_option("--n", cn, "common difference / 2")->required();
    cert_cmd->add_flag("--json", cert_json, "emit the certificate as JSON on stdout");
    cert_cmd->add_option("--out", cert_out, "write the certificate JSON to FILE");

    // scan
    auto* scan_cmd = app.add_subcommand("scan", "certify every pair with m+2n <= limit");
    std::uint64_t scan_limit = 0;
    unsigned scan_jobs = 0;
    bool scan_json = false;
    std::string scan_out;
    scan_cmd->add_option("--limit", scan_limit, "upper bound for m+2n")->required();
    scan_cmd->add_option("--jobs", scan_jobs, "worker threads (SCAN_JOBS overrides)");
    scan_cmd->add_flag("--json", scan_json, "emit a JSON summary");
    scan_cmd->add_option("--out", scan_out, "directory for per-pair certificate files");

    CLI11_PARSE(app, argc, argv);

    try {
        if (find_cmd->parsed()) {
            auto pairs = rank0::find_progressions(find_limit);
            if (find_json) {
                nlohmann::ordered_json arr = nlohmann::ordered_json::array();
                for (const auto& pr : pairs) {
                    arr.push_back({{"m", std::to_string(pr.m)},
                                   {"n", std::to_string(pr.n)},
                                   {"triple",
                                    {std::to_string(pr.m), std::to_string(pr.m + pr.n),
                                     std::to_string(pr.m + 2 * pr.n)}}});
                }
                std::cout << arr.dump(2) << "\n";
            } else {
                for (const auto& pr : pairs)
                    std::cout << pr.m << " " << pr.n << "  (" << pr.m << ", " << pr.m + pr.n
                              << ", " << pr.m + 2 * pr.n << ")\n";
                std::cout << pairs.size() << " pair(s)\n";
            }
            return 0;
        }

        if (cert_cmd->parsed()) {
            rank0::Certificate c = rank0::certify_pair(cm, cn);
            if (!cert_out.empty()) {
                std::ofstream f(cert_out);
                f << rank0::certificate_to_json(c).dump(2) << "\n";
            }
            if (cert_json)
                std::cout << rank0::certificate_to_json(c).dump(2) << "\n";
            else
                print_certificate_text(c);
            return exit_code_for(c);
        }

        if (scan_cmd->parsed()) {
            unsigned jobs = resolve_jobs(scan_jobs);
            std::filesystem::path outdir;
            if (!scan_out.empty()) {
                outdir = scan_out;
                std::filesystem::create_directories(outdir);
            }
            std::vector<std::pair<std::uint64_t, std::uint64_t>> failures;
            auto sink = [&](const rank0::Certificate& c) {
                if (c.status != "pass") failures.emplace_back(c.m, c.n);
                if (!scan_out.empty()) {
                    auto name = "cert_m" + std::to_string(c.m) + "_n" + std::to_string(c.n) +
                                ".json";
                    std::ofstream f(outdir / name);
                    f << rank0::certificate_to_json(c).dump(2) << "\n";
                }
            };
            rank0::ScanSummary s = rank0::scan(scan_limit, jobs, sink);
            if (!scan_out.empty()) {
                nlohmann::ordered_json j;
                j["limit"] = std::to_string(s.limit);
                j["total"] = s.total;
                j["passed"] = s.passed;
                j["failed"] = s.failed;
                j["rejected"] = s.rejected;
                std::ofstream f(outdir / "summary.json");
                f << j.dump(2) << "\n";
            }
            if (scan_json) {
                nlohmann::ordered_json j;
                j["limit"] = std::to_string(s.limit);
                j["total"] = s.total;
                j["passed"] = s.passed;
                j["failed"] = s.failed;
                j["rejected"] = s.rejected;
                nlohmann::ordered_json fa = nlohmann::ordered_json::array();
                for (auto& [fm, fn] : failures)
                    fa.push_back({{"m", std::to_string(fm)}, {"n", std::to_string(fn)}});
                j["failures"] = fa;
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "scanned " << s.total << " pair(s) up to " << s.limit << ": "
                          << s.passed << " passed, " << s.failed << " failed, " << s.rejected
                          << " rejected\n";
                for (auto& [fm, fn] : failures)
                    std::cout << "  FAILED: (" << fm << ", " << fn << ")\n";
            }
            return (s.failed == 0 && s.rejected == 0 && s.passed == s.total) ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
