#pragma once

// Exact rational-point arithmetic on E: y^2 = x^3 - m in the normal form
// (r/t^2, s/t^3) with gcd(r,t) = gcd(s,t) = 1, plus the point family for
// m = 8b^3 + 3, Weil-map representatives, root numbers, and naive search.

#include <vector>

#include "cubiclab/cubic.hpp"
#include "cubiclab/numbers.hpp"

namespace cubiclab::mordell {

struct Curve {
    Int m;  // cubefree, >= 2
    static Curve create(const Int& m);
};

class CurvePoint {
  public:
    static CurvePoint infinity(const Int& m);
    // Validates gcd invariants and the curve equation s^2 = r^3 - m t^6.
    static CurvePoint from_rst(const Int& m, const Int& r, const Int& s, const Int& t);
    static CurvePoint from_xy(const Int& m, const Rat& x, const Rat& y);

    const Int& m() const { return m_; }
    bool is_infinity() const { return inf_; }
    const Int& r() const { return r_; }
    const Int& s() const { return s_; }
    const Int& t() const { return t_; }
    Rat x() const;
    Rat y() const;
    bool integral() const { return !inf_ && t_ == 1; }

    bool operator==(const CurvePoint& o) const;
    std::string str() const;  // "(3,4)", "(9/4,-5/8)", "O"

  private:
    CurvePoint() = default;
    Int m_;
    bool inf_ = true;
    Int r_, s_, t_;
};

CurvePoint add(const CurvePoint& p, const CurvePoint& q);
CurvePoint negate(const CurvePoint& p);
CurvePoint multiply(const Int& n, const CurvePoint& p);

// P_b = ((2b^3+1)/b^2, (3b^3+1)/b^3) on y^2 = x^3 - (8b^3+3).
CurvePoint family_point(const Int& b);

// Order <= 12 test with the integrality shortcut: any non-integral multiple
// among P..12P rules torsion out immediately.
bool is_torsion(const CurvePoint& p);

// r - t^2 w, of norm s^2.
cubic::CubicElement weil_representative(const CurvePoint& p);

struct DoublingIdentity {
    CurvePoint point;
    cubic::CubicElement lhs;      // (r^4 + 8rmt^6) - (2ts)^2 w
    cubic::CubicElement beta;     // r^2 - 2rt^2 w - 2t^4 w^2
    cubic::CubicElement beta_sq;
    bool ok = false;
};

DoublingIdentity doubling_square_identity(const CurvePoint& p);

// P + Q for distinct odd-denominator points; certifies the sum has even t.
CurvePoint combine_for_even_denominator(const CurvePoint& p, const CurvePoint& q);

struct RootNumber {
    Int m;
    int w = 1;  // product over p^2 | m of (-3/p)
    std::vector<Int> contributing_primes;
};

RootNumber root_number(const Int& m);

// All points with 1 <= t <= t_max, r <= r_max (exact per-t scan with a
// perfect-square test), s normalized positive, ordered by (t, r).
std::vector<CurvePoint> search_points(const Int& m, long t_max, const Int& r_max);

}  // namespace cubiclab::mordell
