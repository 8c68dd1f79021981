#include "cubiclab/hcf.hpp"

#include <algorithm>

namespace cubiclab::hcf {

using cubic::CubicElement;
using cubic::SquareStatus;

std::vector<std::string> UnramifiedCertificate::failures() const {
    std::vector<std::string> out;
    if (!real_embedding_positive) out.push_back("alpha not positive at the real place");
    if (!one_mod_four) out.push_back("alpha not congruent to 1 mod 4");
    if (!ideal_square) out.push_back("(alpha) is not an ideal square");
    if (square_status == SquareStatus::square) out.push_back("alpha is a square (extension degenerates)");
    if (square_status == SquareStatus::undecided) out.push_back("square test undecided");
    if (!disc_consistent) out.push_back("minpoly discriminant inconsistent with dK^2");
    return out;
}

UnramifiedCertificate certify_unramified(const CubicElement& alpha) {
    if (!alpha.integral()) throw std::invalid_argument("certify_unramified: integral alpha required");
    if (alpha.is_zero()) throw std::invalid_argument("certify_unramified: nonzero alpha required");
    const Int& m = alpha.m();
    UnramifiedCertificate cert{
        m, alpha, false, false, false, false, {}, SquareStatus::undecided, {}, Int(0), Int(0), false,
    };
    cert.dk = -27 * m * m;
    cert.norm_positive = alpha.norm() > 0;
    cert.real_embedding_positive = cubic::real_embedding_sign(alpha) > 0;
    cert.one_mod_four = cubic::congruent_one_mod4(alpha);
    auto fact = classgrp::factor_element(alpha);  // gates the monogenic case
    cert.ideal_square = true;
    for (const auto& f : fact.factors) {
        if (f.exponent % 2 != 0) {
            cert.ideal_square = false;
            cert.ideal_sqrt.clear();
            break;
        }
        cert.ideal_sqrt.push_back({f.ideal, f.exponent / 2});
    }
    cert.square_status = cubic::is_square(alpha).status;
    cert.minpoly = cubic::minpoly_sqrt(alpha).coeffs;
    std::vector<Rat> coeffs;
    for (const Int& c : cert.minpoly) coeffs.emplace_back(c);
    cert.minpoly_disc = to_int(intarith::poly_discriminant(intarith::Poly(coeffs)));
    Int dk2 = cert.dk * cert.dk;
    if (cert.minpoly_disc != 0 && cert.minpoly_disc % dk2 == 0)
        cert.disc_consistent = perfect_square(cert.minpoly_disc / dk2);
    return cert;
}

CurveConstruction construct_from_curve(const Int& m, long t_max, const Int& r_max) {
    CurveConstruction out{m, {}, std::nullopt, false, std::nullopt, ""};
    out.points = mordell::search_points(m, t_max, r_max);
    // Direct even-denominator candidates first.
    for (const auto& p : out.points) {
        if (p.t() % 2 != 0) continue;
        UnramifiedCertificate cert = certify_unramified(mordell::weil_representative(p));
        if (cert.valid()) {
            out.chosen = p;
            out.certificate = cert;
            return out;
        }
    }
    // Combine pairs of odd-denominator points.
    std::vector<mordell::CurvePoint> odd;
    for (const auto& p : out.points)
        if (p.t() % 2 == 1) odd.push_back(p);
    for (size_t i = 0; i < odd.size(); ++i)
        for (size_t j = i + 1; j < odd.size(); ++j) {
            mordell::CurvePoint sum = mordell::CurvePoint::infinity(m);
            try {
                sum = mordell::combine_for_even_denominator(odd[i], odd[j]);
            } catch (const std::exception&) {
                continue;
            }
            UnramifiedCertificate cert = certify_unramified(mordell::weil_representative(sum));
            if (cert.valid()) {
                out.chosen = sum;
                out.combined = true;
                out.certificate = cert;
                return out;
            }
        }
    out.note = "no qualifying point found under the given search bounds";
    return out;
}

UnramifiedCertificate unit_construction(const Int& a) {
    if (a == 0 || mod_pos(a, Int(4)) != 0)
        throw std::invalid_argument("unit_construction: 4 | a and a != 0 required");
    Int m = ipow(a, 3) + 3;
    cubic::CubicField field = cubic::CubicField::create(m);  // checks cubefree
    return certify_unramified(cubic::family_unit(field));
}

namespace {

bool points_contain(const std::vector<mordell::CurvePoint>& v, const mordell::CurvePoint& p) {
    return std::find(v.begin(), v.end(), p) != v.end();
}

}  // namespace

TwoRankBound two_rank_lower_bound(const std::vector<mordell::CurvePoint>& points, const Int& m) {
    TwoRankBound out;
    std::vector<mordell::CurvePoint> even, odd;
    for (const auto& p : points) {
        if (p.is_infinity() || p.m() != m) continue;
        if (points_contain(even, p) || points_contain(odd, p)) continue;
        (p.t() % 2 == 0 ? even : odd).push_back(p);
    }
    // Shift every other odd-denominator point by the last one; failures
    // (dependent points, odd sums) are dropped, which only lowers the bound.
    if (odd.size() >= 2) {
        const mordell::CurvePoint& last = odd.back();
        for (size_t i = 0; i + 1 < odd.size(); ++i) {
            try {
                even.push_back(mordell::combine_for_even_denominator(odd[i], last));
            } catch (const std::exception&) {
            }
        }
    }
    // Keep only fully certified generators.
    std::vector<CubicElement> alphas;
    std::vector<UnramifiedCertificate> certs;
    for (const auto& p : even) {
        UnramifiedCertificate cert = certify_unramified(mordell::weil_representative(p));
        if (cert.square_status == SquareStatus::undecided) {
            ++out.dropped_undecided;
            continue;
        }
        if (cert.valid()) {
            alphas.push_back(cert.alpha);
            certs.push_back(cert);
        }
    }
    // Greedy independence in K*/K*^2: a candidate joins the basis only if
    // every subset product with it stays a non-square.
    for (size_t c = 0; c < alphas.size(); ++c) {
        bool independent = true;
        size_t n = out.witnesses.size();
        for (size_t mask = 0; mask < (size_t{1} << n) && independent; ++mask) {
            CubicElement prod = alphas[c];
            for (size_t i = 0; i < n; ++i)
                if (mask & (size_t{1} << i)) prod = prod * out.witnesses[i];
            auto sq = cubic::is_square(prod);
            if (sq.status == SquareStatus::square) independent = false;
            if (sq.status == SquareStatus::undecided) {
                independent = false;
                ++out.dropped_undecided;
            }
        }
        if (independent) {
            out.witnesses.push_back(alphas[c]);
            out.certificates.push_back(certs[c]);
        }
    }
    out.bound = static_cast<int>(out.witnesses.size());
    return out;
}

// ---------------------------------------------------------------------------
// JSON serialization (big integers as decimal strings).

namespace {

nlohmann::ordered_json element_to_json(const CubicElement& e) {
    return nlohmann::ordered_json{{"m", e.m().get_str()},
                                  {"x", cubiclab::str(e.x())},
                                  {"y", cubiclab::str(e.y())},
                                  {"z", cubiclab::str(e.z())}};
}

Rat rat_from_string(const std::string& s) {
    Rat q;
    if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
        throw std::invalid_argument("bad rational literal: " + s);
    q.canonicalize();
    return q;
}

CubicElement element_from_json(const nlohmann::ordered_json& j) {
    return CubicElement(Int(j.at("m").get<std::string>()),
                        rat_from_string(j.at("x").get<std::string>()),
                        rat_from_string(j.at("y").get<std::string>()),
                        rat_from_string(j.at("z").get<std::string>()));
}

std::string kind_str(classgrp::PrimeKind k) {
    switch (k) {
        case classgrp::PrimeKind::split1: return "split1";
        case classgrp::PrimeKind::split2: return "split2";
        case classgrp::PrimeKind::inert: return "inert";
        case classgrp::PrimeKind::ramified: return "ramified";
    }
    return "?";
}

classgrp::PrimeKind kind_from_str(const std::string& s) {
    if (s == "split1") return classgrp::PrimeKind::split1;
    if (s == "split2") return classgrp::PrimeKind::split2;
    if (s == "inert") return classgrp::PrimeKind::inert;
    if (s == "ramified") return classgrp::PrimeKind::ramified;
    throw std::invalid_argument("bad prime ideal kind: " + s);
}

std::string square_status_str(SquareStatus s) {
    switch (s) {
        case SquareStatus::square: return "square";
        case SquareStatus::not_square: return "not_square";
        case SquareStatus::undecided: return "undecided";
    }
    return "?";
}

SquareStatus square_status_from_str(const std::string& s) {
    if (s == "square") return SquareStatus::square;
    if (s == "not_square") return SquareStatus::not_square;
    if (s == "undecided") return SquareStatus::undecided;
    throw std::invalid_argument("bad square status: " + s);
}

}  // namespace

nlohmann::ordered_json certificate_to_json(const UnramifiedCertificate& cert) {
    nlohmann::ordered_json j;
    j["format"] = "cubiclab-certificate";
    j["version"] = 1;
    j["m"] = cert.m.get_str();
    j["alpha"] = element_to_json(cert.alpha);
    j["checks"] = {{"norm_positive", cert.norm_positive},
                   {"real_embedding_positive", cert.real_embedding_positive},
                   {"one_mod_four", cert.one_mod_four},
                   {"ideal_square", cert.ideal_square},
                   {"square_status", square_status_str(cert.square_status)}};
    nlohmann::ordered_json sqrt_factors = nlohmann::ordered_json::array();
    for (const auto& f : cert.ideal_sqrt) {
        sqrt_factors.push_back({{"p", f.ideal.p.get_str()},
                                {"kind", kind_str(f.ideal.kind)},
                                {"root", f.ideal.root.get_str()},
                                {"e", f.ideal.e},
                                {"f", f.ideal.f},
                                {"q1", f.ideal.q1.get_str()},
                                {"q0", f.ideal.q0.get_str()},
                                {"exponent", f.exponent}});
    }
    j["ideal_sqrt"] = sqrt_factors;
    nlohmann::ordered_json mp = nlohmann::ordered_json::array();
    for (const Int& c : cert.minpoly) mp.push_back(c.get_str());
    j["minpoly"] = mp;
    j["minpoly_disc"] = cert.minpoly_disc.get_str();
    j["dk"] = cert.dk.get_str();
    j["disc_consistent"] = cert.disc_consistent;
    j["valid"] = cert.valid();
    return j;
}

UnramifiedCertificate certificate_from_json(const nlohmann::ordered_json& j) {
    if (j.at("format").get<std::string>() != "cubiclab-certificate")
        throw std::invalid_argument("certificate_from_json: wrong format tag");
    if (j.at("version").get<int>() != 1)
        throw std::invalid_argument("certificate_from_json: unsupported version");
    CubicElement alpha = element_from_json(j.at("alpha"));
    UnramifiedCertificate cert{Int(j.at("m").get<std::string>()),
                               alpha,
                               j.at("checks").at("norm_positive").get<bool>(),
                               j.at("checks").at("real_embedding_positive").get<bool>(),
                               j.at("checks").at("one_mod_four").get<bool>(),
                               j.at("checks").at("ideal_square").get<bool>(),
                               {},
                               square_status_from_str(j.at("checks").at("square_status").get<std::string>()),
                               {},
                               Int(j.at("minpoly_disc").get<std::string>()),
                               Int(j.at("dk").get<std::string>()),
                               j.at("disc_consistent").get<bool>()};
    for (const auto& f : j.at("ideal_sqrt")) {
        classgrp::PrimeIdeal P;
        P.p = Int(f.at("p").get<std::string>());
        P.kind = kind_from_str(f.at("kind").get<std::string>());
        P.root = Int(f.at("root").get<std::string>());
        P.e = f.at("e").get<int>();
        P.f = f.at("f").get<int>();
        P.q1 = Int(f.at("q1").get<std::string>());
        P.q0 = Int(f.at("q0").get<std::string>());
        cert.ideal_sqrt.push_back({P, f.at("exponent").get<int>()});
    }
    for (const auto& c : j.at("minpoly")) cert.minpoly.emplace_back(c.get<std::string>());
    return cert;
}

}  // namespace cubiclab::hcf
