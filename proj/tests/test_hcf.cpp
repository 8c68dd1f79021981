#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cubiclab/hcf.hpp"

using namespace cubiclab;
using namespace cubiclab::hcf;

namespace {

cubic::CubicElement elem(long m, long x, long y, long z) {
    return cubic::CubicElement::from_integers(Int(m), Int(x), Int(y), Int(z));
}

}  // namespace

TEST_CASE("certify_unramified: alpha = 9 - 4w on m = 11") {
    UnramifiedCertificate cert = certify_unramified(elem(11, 9, -4, 0));
    CHECK(cert.valid());
    CHECK(cert.norm_positive);
    CHECK(cert.real_embedding_positive);
    CHECK(cert.one_mod_four);
    CHECK(cert.ideal_square);
    REQUIRE(cert.ideal_sqrt.size() == 1);
    CHECK(cert.ideal_sqrt[0].ideal.label() == "p5r1");
    CHECK(cert.ideal_sqrt[0].exponent == 1);
    CHECK(cert.square_status == cubic::SquareStatus::not_square);
    CHECK(cert.minpoly == std::vector<Int>{Int(-25), Int(0), Int(243), Int(0), Int(-27), Int(0), Int(1)});
    // dK^2 = 3^6 * 11^4
    CHECK(cert.dk * cert.dk == ipow(Int(3), 6) * ipow(Int(11), 4));
    CHECK(cert.minpoly_disc % (cert.dk * cert.dk) == 0);
    CHECK(perfect_square(cert.minpoly_disc / (cert.dk * cert.dk)));
    CHECK(cert.disc_consistent);

    // Idempotent re-validation from the recorded alpha.
    UnramifiedCertificate again = certify_unramified(cert.alpha);
    CHECK(again.valid());
    CHECK(again.minpoly == cert.minpoly);
}

TEST_CASE("certify_unramified: the m = 219 sextic") {
    UnramifiedCertificate cert =
        certify_unramified(cubic::CubicElement::from_integers(Int(219), Int(115657), Int(-12996), Int(0)));
    CHECK(cert.valid());
    CHECK(cert.minpoly == std::vector<Int>{Int("-1066391672856409"), Int(0), Int("40129624947"),
                                           Int(0), Int(-346971), Int(0), Int(1)});
}

TEST_CASE("certify_unramified: named failures") {
    UnramifiedCertificate bad = certify_unramified(elem(11, 3, -1, 0));
    CHECK_FALSE(bad.valid());
    CHECK_FALSE(bad.one_mod_four);
    auto fails = bad.failures();
    CHECK(std::find(fails.begin(), fails.end(), "alpha not congruent to 1 mod 4") != fails.end());

    // A square alpha degenerates the extension.
    UnramifiedCertificate sq = certify_unramified(elem(11, 9, 0, 0));
    CHECK_FALSE(sq.valid());
    CHECK(sq.square_status == cubic::SquareStatus::square);

    CHECK_THROWS_AS(certify_unramified(elem(10, 5, 0, 0)), std::invalid_argument);  // non-monogenic
}

TEST_CASE("construct_from_curve: m = 11 via the even-denominator point") {
    CurveConstruction c = construct_from_curve(Int(11), 4, Int(10000));
    REQUIRE(c.certificate.has_value());
    CHECK(c.certificate->valid());
    REQUIRE(c.chosen.has_value());
    CHECK(c.chosen->t() % 2 == 0);
    CHECK(c.certificate->alpha == elem(11, 9, -4, 0));
    CHECK_FALSE(c.combined);
}

TEST_CASE("construct_from_curve: m = 219 via a combined pair") {
    CurveConstruction c = construct_from_curve(Int(219), 3, Int(1000));
    REQUIRE(c.certificate.has_value());
    CHECK(c.certificate->valid());
    CHECK(c.combined);
    CHECK(c.certificate->alpha ==
          cubic::CubicElement::from_integers(Int(219), Int(115657), Int(-12996), Int(0)));
}

TEST_CASE("construct_from_curve: rank-1 curve reports no qualifying point") {
    // b = 44 has rank 1; with tiny bounds nothing qualifies.
    Int m = 8 * ipow(Int(44), 3) + 3;
    CurveConstruction c = construct_from_curve(m, 2, Int(500));
    CHECK_FALSE(c.certificate.has_value());
    CHECK(c.note == "no qualifying point found under the given search bounds");
}

TEST_CASE("unit_construction") {
    UnramifiedCertificate c4 = unit_construction(Int(4));  // m = 67
    CHECK(c4.valid());
    CHECK(c4.alpha == elem(67, 1, 16, -4));
    CHECK(c4.ideal_sqrt.empty());  // unit: (alpha) = (1)

    UnramifiedCertificate c8 = unit_construction(Int(8));  // m = 515 = 5 * 103
    CHECK(c8.valid());

    CHECK_THROWS_AS(unit_construction(Int(2)), std::invalid_argument);
    CHECK_THROWS_AS(unit_construction(Int(0)), std::invalid_argument);
}

TEST_CASE("two_rank_lower_bound") {
    auto P = mordell::CurvePoint::from_rst(Int(11), Int(3), Int(4), Int(1));
    auto Q = mordell::CurvePoint::from_rst(Int(11), Int(15), Int(58), Int(1));

    TwoRankBound b = two_rank_lower_bound({P, Q}, Int(11));
    CHECK(b.bound == 1);  // consistent with h = 2, s = 1
    REQUIRE(b.witnesses.size() == 1);
    CHECK(b.witnesses[0] == elem(11, 9, -4, 0));

    // A single odd-denominator point gives no even-denominator witness.
    CHECK(two_rank_lower_bound({P}, Int(11)).bound == 0);
    // A single even-denominator point that certifies gives 1.
    auto PQ = mordell::add(P, Q);
    CHECK(two_rank_lower_bound({PQ}, Int(11)).bound == 1);
    // Dependent inputs {P, -P} yield square products and bound 0.
    CHECK(two_rank_lower_bound({P, mordell::negate(P)}, Int(11)).bound == 0);
    // Never exceeds the number of input points.
    auto pts = mordell::search_points(Int(11), 4, Int(10000));
    TwoRankBound all = two_rank_lower_bound(pts, Int(11));
    CHECK(all.bound <= static_cast<int>(pts.size()));
    CHECK(all.bound >= 1);
}

TEST_CASE("certificate JSON round-trip") {
    UnramifiedCertificate cert = certify_unramified(elem(11, 9, -4, 0));
    auto j = certificate_to_json(cert);
    CHECK(j.at("format") == "cubiclab-certificate");
    CHECK(j.at("version") == 1);
    CHECK(j.at("valid") == true);
    UnramifiedCertificate back = certificate_from_json(j);
    CHECK(back.m == cert.m);
    CHECK(back.alpha == cert.alpha);
    CHECK(back.minpoly == cert.minpoly);
    CHECK(back.ideal_sqrt == cert.ideal_sqrt);
    CHECK(back.valid() == cert.valid());
    // byte-stable re-serialization
    CHECK(certificate_to_json(back).dump(2) == j.dump(2));
}

TEST_CASE("family certificates at desk scale: even h witnesses for b <= 30") {
    int certified = 0;
    for (Int b = 1; b <= 30; ++b) {
        Int m = 8 * ipow(b, 3) + 3;
        auto prof = intarith::cubefree_squarefree_profile(m);
        if (!prof.is_squarefree) continue;
        CurveConstruction c = construct_from_curve(m, 8, Int(40000));
        if (!c.certificate.has_value()) continue;  // no qualifying point under these bounds
        CHECK(c.certificate->valid());
        // Idempotent re-validation from scratch.
        CHECK(certify_unramified(c.certificate->alpha).valid());
        ++certified;
    }
    CHECK(certified >= 13);
}

TEST_CASE("even-b family points certify directly") {
    // For even b the family point already has even denominator t = b, so its
    // Weil representative is a certified generator whenever m is squarefree.
    int certified = 0;
    for (Int b = 2; b <= 30; b += 2) {
        Int m = 8 * ipow(b, 3) + 3;
        if (!intarith::cubefree_squarefree_profile(m).is_squarefree) continue;
        auto cert = certify_unramified(mordell::weil_representative(mordell::family_point(b)));
        CHECK(cert.valid());
        ++certified;
    }
    CHECK(certified >= 14);
}
