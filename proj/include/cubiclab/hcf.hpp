#pragma once

// Construction and certification of quadratic unramified extensions
// H = K(sqrt(alpha)): positivity at the real place, alpha = 1 mod 4,
// square-ideal decomposition, non-squareness, the sqrt minimal polynomial
// with its discriminant consistency check, and the 2-rank lower bound from
// independent even-denominator points.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cubiclab/classgrp.hpp"
#include "cubiclab/cubic.hpp"
#include "cubiclab/mordell.hpp"

namespace cubiclab::hcf {

struct UnramifiedCertificate {
    Int m;
    cubic::CubicElement alpha;
    bool norm_positive = false;
    bool real_embedding_positive = false;  // the actual infinite-place check
    bool one_mod_four = false;
    bool ideal_square = false;
    classgrp::IdealExponents ideal_sqrt;   // a with (alpha) = a^2
    cubic::SquareStatus square_status = cubic::SquareStatus::undecided;
    std::vector<Int> minpoly;              // ascending, degree 6
    Int minpoly_disc;
    Int dk;                                // field discriminant -27 m^2
    bool disc_consistent = false;          // disc(f) = dk^2 * (nonzero square)

    bool complete() const { return square_status != cubic::SquareStatus::undecided; }
    bool valid() const {
        return real_embedding_positive && one_mod_four && ideal_square &&
               square_status == cubic::SquareStatus::not_square && disc_consistent;
    }
    std::vector<std::string> failures() const;
};

// Runs all certificate checks for K(sqrt(alpha))/K; each failed check is
// named in the record rather than thrown.
UnramifiedCertificate certify_unramified(const cubic::CubicElement& alpha);

struct CurveConstruction {
    Int m;
    std::vector<mordell::CurvePoint> points;         // search output
    std::optional<mordell::CurvePoint> chosen;       // even-t point used
    bool combined = false;                           // true if from an odd-t pair
    std::optional<UnramifiedCertificate> certificate;
    std::string note;
};

// Searches for points, picks (or combines for) an even-denominator point and
// certifies its Weil representative. Finding nothing is reported in `note`,
// not thrown.
CurveConstruction construct_from_curve(const Int& m, long t_max, const Int& r_max);

// Certificate for alpha = family unit, m = a^3 + 3 with 4 | a.
UnramifiedCertificate unit_construction(const Int& a);

struct TwoRankBound {
    int bound = 0;
    std::vector<cubic::CubicElement> witnesses;            // independent alphas
    std::vector<UnramifiedCertificate> certificates;       // one per witness
    int dropped_undecided = 0;                             // conservative drops
};

// Lower bound for the 2-rank of Cl(K) from a list of points: odd-denominator
// points are shifted by the last odd-denominator one, even-denominator Weil
// representatives are certified, and independence is decided by
// non-squareness of subset products.
TwoRankBound two_rank_lower_bound(const std::vector<mordell::CurvePoint>& points, const Int& m);

nlohmann::ordered_json certificate_to_json(const UnramifiedCertificate& cert);
UnramifiedCertificate certificate_from_json(const nlohmann::ordered_json& j);

}  // namespace cubiclab::hcf
