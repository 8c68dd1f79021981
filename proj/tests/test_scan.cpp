#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "cubiclab/intarith.hpp"
#include "cubiclab/scan.hpp"

using namespace cubiclab;
using namespace cubiclab::scan;

namespace {

ScanConfig small_config() {
    ScanConfig cfg;
    cfg.b_min = 1;
    cfg.b_max = 12;
    return cfg;
}

}  // namespace

TEST_CASE("scan rows are sorted, complete, and identity-green") {
    ScanReport rep = run_scan(small_config());
    REQUIRE(rep.rows.size() == 12);
    for (size_t i = 0; i < rep.rows.size(); ++i) {
        const ScanRow& r = rep.rows[i];
        CHECK(r.b == static_cast<long>(i) + 1);
        CHECK(r.m == 8 * ipow(Int(r.b), 3) + 3);
        if (r.cubefree) {
            CHECK(r.unit_identity_ok == true);
            CHECK(r.norm_identity_ok == true);
            CHECK(r.cube_identity_ok == true);
            CHECK(r.doubling_identity_ok == true);
            CHECK(r.family_point_ok == true);
        }
    }
}

TEST_CASE("determinism: identical config gives byte-identical output") {
    ScanConfig cfg = small_config();
    ScanReport a = run_scan(cfg);
    ScanReport b = run_scan(cfg);
    CHECK(emit(a, Format::tsv) == emit(b, Format::tsv));
    CHECK(emit(a, Format::json) == emit(b, Format::json));
}

TEST_CASE("thread count does not change output") {
    ScanConfig cfg = small_config();
    cfg.b_max = 24;
    ScanReport serial = run_scan(cfg);
    cfg.threads = 4;
    ScanReport parallel = run_scan(cfg);
    CHECK(emit(serial, Format::tsv) == emit(parallel, Format::tsv));
    CHECK(emit(serial, Format::json) == emit(parallel, Format::json));
}

TEST_CASE("the b < 200 negative-root-number list") {
    ScanConfig cfg;
    cfg.b_min = 1;
    cfg.b_max = 199;
    cfg.check_family = false;
    cfg.check_identities = false;
    ScanReport rep = run_scan(cfg);
    std::set<long> negative;
    for (const auto& r : rep.rows)
        if (r.cubefree && r.root_number && *r.root_number == -1) negative.insert(r.b);
    CHECK(negative == std::set<long>{44, 56, 68, 69, 86, 89, 94, 119, 169, 177, 194});
}

TEST_CASE("factorization table for b in 85..89") {
    ScanConfig cfg;
    cfg.b_min = 85;
    cfg.b_max = 89;
    cfg.check_family = false;
    cfg.check_identities = false;
    cfg.check_rootnum = false;
    ScanReport rep = run_scan(cfg);
    REQUIRE(rep.rows.size() == 5);
    CHECK(rep.rows[0].m_factored == "619*7937");
    CHECK(rep.rows[1].m_factored == "23^2*9619");
    CHECK(rep.rows[2].m_factored == "3*1756009");
    CHECK(rep.rows[3].m_factored == "5451779");
    CHECK(rep.rows[4].m_factored == "5*11*41^2*61");
}

TEST_CASE("odd-class-number candidates have exactly one squared prime 2 mod 3") {
    // The catalogue of b values with odd class number (deduplicated).
    std::vector<long> odd_h{89,  119, 169, 177, 209,  369,  503,  615,  661,  719,
                            787, 903, 1069, 1145, 1219, 1319, 1365, 1387, 1419, 1629};
    for (long b : odd_h) {
        Int m = 8 * ipow(Int(b), 3) + 3;
        auto prof = intarith::cubefree_squarefree_profile(m);
        CHECK(prof.is_cubefree);
        CHECK(prof.squared_primes_2mod3.size() == 1);
    }
}

TEST_CASE("b = 19, 69 mod 100 implies 25 | m") {
    // b ending in 19 or 69 forces b = 19 mod 25, the unique cube root of
    // 9 = -3/8 mod 25, hence 5^2 | m.
    ScanConfig cfg;
    cfg.b_min = 1;
    cfg.b_max = 400;
    cfg.check_rootnum = false;
    cfg.check_family = false;
    cfg.check_identities = false;
    ScanReport rep = run_scan(cfg);
    int hits = 0;
    for (const auto& r : rep.rows) {
        long bb = r.b % 100;
        if (bb == 19 || bb == 69) {
            ++hits;
            CHECK(mod_pos(r.m, Int(25)) == 0);
            bool five_squared = std::find(r.squared_primes_2mod3.begin(),
                                          r.squared_primes_2mod3.end(),
                                          Int(5)) != r.squared_primes_2mod3.end();
            CHECK((five_squared || !r.cubefree));
        }
    }
    CHECK(hits == 8);
}

TEST_CASE("empty range emits a header-only TSV") {
    ScanConfig cfg;
    cfg.b_min = 5;
    cfg.b_max = 4;
    ScanReport rep = run_scan(cfg);
    CHECK(rep.rows.empty());
    std::string tsv = emit(rep, Format::tsv);
    CHECK(tsv.find("\nb\t") != std::string::npos);
    CHECK(std::count(tsv.begin(), tsv.end(), '\n') == 2);  // comment + header
    CHECK_THROWS_AS(run_scan([] { ScanConfig c; c.b_min = 3; c.b_max = 1; return c; }()),
                    std::invalid_argument);
    CHECK_THROWS_AS(run_scan([] { ScanConfig c; c.b_min = 0; c.b_max = 4; return c; }()),
                    std::invalid_argument);
}

TEST_CASE("json round-trip reproduces the report byte for byte") {
    ScanConfig cfg = small_config();
    cfg.check_classgroup = true;  // exercise optional columns
    cfg.relation_bound = Int(10);
    cfg.b_max = 3;
    ScanReport rep = run_scan(cfg);
    std::string j = emit(rep, Format::json);
    ScanReport back = parse_json(j);
    CHECK(emit(back, Format::json) == j);
    CHECK(emit(back, Format::tsv) == emit(rep, Format::tsv));
}

TEST_CASE("rank annotations merge into rows") {
    ScanConfig cfg = small_config();
    cfg.b_max = 90;
    cfg.check_rootnum = false;
    cfg.check_family = false;
    cfg.check_identities = false;
    cfg.rank_annotation_path = std::string(CUBICLAB_SOURCE_DIR) + "/data/rank_annotations.tsv";
    ScanReport rep = run_scan(cfg);
    REQUIRE(rep.rows.size() == 90);
    CHECK(rep.rows[43].rank_annotation == std::string("1"));   // b = 44
    CHECK(rep.rows[88].rank_annotation == std::string("1"));   // b = 89
    CHECK(rep.rows[0].rank_annotation == std::string("2"));    // b = 1
    CHECK(rep.rows[12].rank_annotation == std::string("2..4"));  // b = 13
    CHECK(rep.rows[8].rank_annotation == std::string("4"));    // b = 9
}
