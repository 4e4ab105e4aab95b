#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "rank0/primesieve.hpp"
#include "rank0/rootnum.hpp"

using namespace rank0;

TEST_CASE("archimedean place") {
    LocalRootNumber w = archimedean_root_number();
    CHECK(w.value == -1);
    CHECK(w.rule == RootNumberRule::archimedean);
}

TEST_CASE("rules on the family at (3, 8)") {
    IsogenousPair pair = build_family_pair(3, 8);

    LocalRootNumber w11 = local_root_number(tate_algorithm(pair.E, Int(11)));
    CHECK(w11.value == 1);  // I2 nonsplit
    CHECK(w11.rule == RootNumberRule::multiplicative);

    LocalRootNumber w19 = local_root_number(tate_algorithm(pair.E, Int(19)));
    CHECK(w19.value == 1);  // I1 nonsplit
    CHECK(w19.rule == RootNumberRule::multiplicative);

    LocalRootNumber w3 = local_root_number(tate_algorithm(pair.E, Int(3)));
    CHECK(w3.value == 1);  // III* at 3, table row
    CHECK(w3.rule == RootNumberRule::additive_p3_table);

    LocalRootNumber w2 = local_root_number(tate_algorithm(pair.E, Int(2)));
    CHECK(w2.value == -1);  // III* at 2 with the family's profile
    CHECK(w2.rule == RootNumberRule::additive_p2_table);

    LocalRootNumber w7 = local_root_number(tate_algorithm(pair.E, Int(7)));
    CHECK(w7.value == 1);
    CHECK(w7.rule == RootNumberRule::good);

    CHECK(global_root_number(pair.E) == 1);
}

TEST_CASE("p >= 5 additive III* uses the (-2/p) symbol") {
    // m = 11: (-2/11) = +1
    IsogenousPair pair = build_family_pair(11, 48);
    LocalRootNumber w11 = local_root_number(tate_algorithm(pair.E, Int(11)));
    CHECK(w11.rule == RootNumberRule::additive_IIIstar_pge5);
    CHECK(w11.value == legendre(Int(-2), Int(11)));
    CHECK(w11.value == 1);
    // III* at 13 via y^2 = x^3 + 13^3 x: (-2/13) = -1
    WeierstrassModel m13(0, 0, 0, 13 * 13 * 13, 0);
    LocalRootNumber w13 = local_root_number(tate_algorithm(m13, Int(13)));
    CHECK(w13.rule == RootNumberRule::additive_IIIstar_pge5);
    CHECK(w13.value == -1);
}

TEST_CASE("unknown escape hatch") {
    // y^2 = x^3 + 5 has additive reduction at 5 outside the table
    WeierstrassModel m(0, 0, 0, 0, 5);
    LocalRootNumber w = local_root_number(tate_algorithm(m, Int(5)));
    CHECK(w.value == 0);
    CHECK(w.rule == RootNumberRule::unsupported);

    // disc -2 * 5^5: multiplicative at 2, additive (IV) at 5; the global
    // product fails naming the one unresolved place
    WeierstrassModel fifty(1, 0, 1, -1, -2);
    CHECK_THROWS_WITH_AS(global_root_number(fifty), doctest::Contains("5"),
                         IndeterminateRootNumberError);

    // III* at 2 with a profile different from the stored row is unknown
    LocalReductionData d = tate_algorithm(m, Int(2));
    d.kodaira = KodairaSymbol{KodairaType::IIIstar};
    d.reduction = ReductionType::additive;
    d.p = 2;
    LocalRootNumber w2 = local_root_number(d);
    CHECK(w2.value == 0);
    CHECK(w2.rule == RootNumberRule::unsupported);
}

TEST_CASE("never a signed value with unsupported rule") {
    IsogenousPair pair = build_family_pair(3, 8);
    for (Int p : {Int(2), Int(3), Int(5), Int(11), Int(19)}) {
        LocalRootNumber w = local_root_number(tate_algorithm(pair.E, p));
        CHECK((w.value == 0) == (w.rule == RootNumberRule::unsupported));
    }
}

TEST_CASE("mock everywhere-good product") {
    CHECK(global_root_number_from_locals({}) == -1);
}

TEST_CASE("family-universal root number data below 10^4") {
    for (const auto& pr : find_progressions(10000)) {
        IsogenousPair pair = build_family_pair(pr.m, pr.n);
        std::vector<Int> bad = {Int(2), Int(static_cast<unsigned long>(pr.m)),
                                Int(static_cast<unsigned long>(pr.m + pr.n)),
                                Int(static_cast<unsigned long>(pr.m + 2 * pr.n))};
        std::vector<LocalRootNumber> locals;
        for (const Int& p : bad) locals.push_back(local_root_number(tate_algorithm(pair.E, p)));
        CHECK(locals[0].value == -1);  // W_2 = -1 for every member
        CHECK(global_root_number_from_locals(locals) == 1);
        // the p = 2 residue profile from the family's closed forms
        Int M(static_cast<unsigned long>(pr.m)), N(static_cast<unsigned long>(pr.n));
        Int c4odd = -(M * M * M * M) - 3 * M * M * M * N;
        Int c6odd = -5 * M * M * M * M * M * M - 9 * M * M * M * M * M * N;
        CHECK(((c4odd % 8) + 8) % 8 == 7);
        CHECK(((c6odd % 8) + 8) % 8 == 3);
    }
}

namespace {

struct RuleRow {
    std::string id;
    std::string predicate;
    std::string value;
};

std::vector<RuleRow> parse_rules_file(const std::string& path) {
    std::ifstream f(path);
    REQUIRE(f.good());
    std::vector<RuleRow> rows;
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        RuleRow row;
        std::getline(ss, row.id, '|');
        std::getline(ss, row.predicate, '|');
        std::getline(ss, row.value, '|');
        auto trim = [](std::string& s) {
            s.erase(0, s.find_first_not_of(" \t"));
            s.erase(s.find_last_not_of(" \t") + 1);
        };
        trim(row.id);
        trim(row.predicate);
        trim(row.value);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

TEST_CASE("shipped rule file matches the implementation") {
    auto rows = parse_rules_file(std::string(RANK0_DATA_DIR) + "/root_number_rules.txt");
    REQUIRE(rows.size() == 7);
    auto find = [&](const std::string& id) -> const RuleRow& {
        for (const auto& r : rows)
            if (r.id == id) return r;
        FAIL("missing rule ", id);
        return rows[0];
    };
    CHECK(find("archimedean").value == "-1");
    CHECK(find("good").value == "+1");
    CHECK(find("mult-split").value == "-1");
    CHECK(find("mult-nonsplit").value == "+1");
    CHECK(find("additive-IIIstar-pge5").value == "legendre(-2,p)");
    CHECK(find("additive-p3-table").value == "+1");
    CHECK(find("additive-p2-table").value == "-1");
    // representative evaluations agree with each file row
    CHECK(archimedean_root_number().value == -1);
    IsogenousPair pair = build_family_pair(3, 8);
    CHECK(local_root_number(tate_algorithm(pair.E, Int(7))).value == 1);          // good
    CHECK(local_root_number(tate_algorithm(pair.E, Int(11))).value == 1);         // nonsplit
    CHECK(local_root_number(tate_algorithm(pair.E, Int(3))).value == 1);          // p3 row
    CHECK(local_root_number(tate_algorithm(pair.E, Int(2))).value == -1);         // p2 row
    WeierstrassModel m13(0, 0, 0, 13 * 13 * 13, 0);
    CHECK(local_root_number(tate_algorithm(m13, Int(13))).value ==
          legendre(Int(-2), Int(13)));
    // split multiplicative: 14a1 at 7
    WeierstrassModel c14(1, 0, 1, 4, -6);
    LocalRootNumber w7 = local_root_number(tate_algorithm(c14, Int(7)));
    CHECK(w7.rule == RootNumberRule::multiplicative);
    CHECK(w7.value == -1);
    // the p2 row predicate fields match the family profile
    const RuleRow& p2 = find("additive-p2-table");
    CHECK(p2.predicate.find("vc4=7") != std::string::npos);
    CHECK(p2.predicate.find("vc6=10") != std::string::npos);
    CHECK(p2.predicate.find("vdelta=14") != std::string::npos);
    CHECK(p2.predicate.find("c4odd%8=7") != std::string::npos);
    CHECK(p2.predicate.find("c6odd%8=3") != std::string::npos);
}
