#include "cubiclab/mordell.hpp"

#include <sstream>

namespace cubiclab::mordell {

Curve Curve::create(const Int& m) {
    if (m < 2) throw std::invalid_argument("Curve: m must be >= 2");
    if (!intarith::cubefree_squarefree_profile(m).is_cubefree)
        throw std::invalid_argument("Curve: m must be cubefree");
    return Curve{m};
}

CurvePoint CurvePoint::infinity(const Int& m) {
    CurvePoint p;
    p.m_ = m;
    p.inf_ = true;
    return p;
}

CurvePoint CurvePoint::from_rst(const Int& m, const Int& r, const Int& s, const Int& t) {
    if (t < 1) throw std::invalid_argument("CurvePoint: t must be positive");
    if (gcd(r, t) != 1 || gcd(s, t) != 1)
        throw std::invalid_argument("CurvePoint: gcd(r,t) = gcd(s,t) = 1 required");
    if (s * s != ipow(r, 3) - m * ipow(t, 6))
        throw std::invalid_argument("CurvePoint: not on y^2 = x^3 - m");
    CurvePoint p;
    p.m_ = m;
    p.inf_ = false;
    p.r_ = r;
    p.s_ = s;
    p.t_ = t;
    return p;
}

CurvePoint CurvePoint::from_xy(const Int& m, const Rat& x, const Rat& y) {
    Int t = isqrt(den(x));
    if (t * t != den(x)) throw std::invalid_argument("CurvePoint: x denominator is not a square");
    if (den(y) != ipow(t, 3)) throw std::invalid_argument("CurvePoint: y denominator is not t^3");
    return from_rst(m, num(x), num(y), t);
}

Rat CurvePoint::x() const {
    if (inf_) throw std::invalid_argument("CurvePoint: infinity has no affine coordinates");
    return make_rat(r_, t_ * t_);
}

Rat CurvePoint::y() const {
    if (inf_) throw std::invalid_argument("CurvePoint: infinity has no affine coordinates");
    return make_rat(s_, ipow(t_, 3));
}

bool CurvePoint::operator==(const CurvePoint& o) const {
    if (m_ != o.m_) return false;
    if (inf_ || o.inf_) return inf_ == o.inf_;
    return r_ == o.r_ && s_ == o.s_ && t_ == o.t_;
}

std::string CurvePoint::str() const {
    if (inf_) return "O";
    std::ostringstream os;
    os << "(" << cubiclab::str(x()) << "," << cubiclab::str(y()) << ")";
    return os.str();
}

CurvePoint add(const CurvePoint& p, const CurvePoint& q) {
    if (p.m() != q.m()) throw std::invalid_argument("add: points on different curves");
    if (p.is_infinity()) return q;
    if (q.is_infinity()) return p;
    Rat x1 = p.x(), y1 = p.y(), x2 = q.x(), y2 = q.y();
    Rat lambda;
    if (x1 == x2) {
        if (y1 + y2 == 0) return CurvePoint::infinity(p.m());
        lambda = 3 * x1 * x1 / (2 * y1);  // tangent; y1 != 0 here
    } else {
        lambda = (y2 - y1) / (x2 - x1);
    }
    Rat x3 = lambda * lambda - x1 - x2;
    Rat y3 = lambda * (x1 - x3) - y1;
    return CurvePoint::from_xy(p.m(), x3, y3);
}

CurvePoint negate(const CurvePoint& p) {
    if (p.is_infinity()) return p;
    return CurvePoint::from_rst(p.m(), p.r(), -p.s(), p.t());
}

CurvePoint multiply(const Int& n, const CurvePoint& p) {
    if (n < 0) return multiply(-n, negate(p));
    CurvePoint acc = CurvePoint::infinity(p.m());
    CurvePoint base = p;
    Int k = n;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) acc = add(acc, base);
        k >>= 1;
        if (k > 0) base = add(base, base);
    }
    return acc;
}

CurvePoint family_point(const Int& b) {
    if (b < 1) throw std::invalid_argument("family_point: b must be >= 1");
    Int b3 = ipow(b, 3);
    Int m = 8 * b3 + 3;
    if (!intarith::cubefree_squarefree_profile(m).is_cubefree)
        throw std::invalid_argument("family_point: m = 8b^3+3 must be cubefree");
    // gcd(2b^3+1, b) = gcd(3b^3+1, b) = 1, so the encoding is already reduced.
    return CurvePoint::from_rst(m, 2 * b3 + 1, 3 * b3 + 1, b);
}

bool is_torsion(const CurvePoint& p) {
    if (p.is_infinity()) return true;
    if (!p.integral()) return false;  // torsion points are integral
    CurvePoint acc = p;
    for (int n = 2; n <= 12; ++n) {
        acc = add(acc, p);
        if (acc.is_infinity()) return true;
        if (!acc.integral()) return false;
    }
    return false;
}

cubic::CubicElement weil_representative(const CurvePoint& p) {
    if (p.is_infinity()) throw std::invalid_argument("weil_representative: affine point required");
    return cubic::CubicElement::from_integers(p.m(), p.r(), -p.t() * p.t(), 0);
}

DoublingIdentity doubling_square_identity(const CurvePoint& p) {
    if (p.is_infinity()) throw std::invalid_argument("doubling_square_identity: affine point required");
    const Int& m = p.m();
    const Int &r = p.r(), &s = p.s(), &t = p.t();
    DoublingIdentity id{
        p,
        cubic::CubicElement::from_integers(m, ipow(r, 4) + 8 * r * m * ipow(t, 6),
                                           -ipow(2 * t * s, 2), 0),
        cubic::CubicElement::from_integers(m, r * r, -2 * r * t * t, -2 * ipow(t, 4)),
        cubic::CubicElement::from_integers(m, 0, 0, 0),
        false,
    };
    id.beta_sq = id.beta * id.beta;
    id.ok = id.lhs == id.beta_sq;
    if (!id.ok) throw std::logic_error("doubling_square_identity: identity failed");
    return id;
}

CurvePoint combine_for_even_denominator(const CurvePoint& p, const CurvePoint& q) {
    if (p.is_infinity() || q.is_infinity())
        throw std::invalid_argument("combine_for_even_denominator: affine points required");
    if (p == q) throw std::invalid_argument("combine_for_even_denominator: points must be distinct");
    if (p.t() % 2 == 0 || q.t() % 2 == 0)
        throw std::invalid_argument("combine_for_even_denominator: inputs must have odd denominator");
    CurvePoint sum = add(p, q);
    if (sum.is_infinity() || sum.t() % 2 != 0)
        throw std::domain_error("combine_for_even_denominator: sum does not have even denominator");
    return sum;
}

RootNumber root_number(const Int& m) {
    intarith::Factorization f = intarith::factor(m);
    RootNumber rn;
    rn.m = m;
    for (const auto& pe : f.factors) {
        if (pe.e >= 3) throw std::invalid_argument("root_number: m must be cubefree");
        if (pe.e == 2) {
            if (pe.p == 3) throw std::domain_error("root_number: formula inapplicable for 9 | m");
            rn.w *= intarith::jacobi(Int(-3), pe.p);
            rn.contributing_primes.push_back(pe.p);
        }
    }
    return rn;
}

std::vector<CurvePoint> search_points(const Int& m, long t_max, const Int& r_max) {
    if (t_max < 1 || r_max < 1) throw std::invalid_argument("search_points: bounds must be positive");
    Curve::create(m);
    std::vector<CurvePoint> out;
    for (Int t = 1; t <= t_max; ++t) {
        Int mt6 = m * ipow(t, 6);
        Int r0 = iroot(mt6, 3);
        if (ipow(r0, 3) <= mt6) ++r0;  // strictly above the real root: s = 0 impossible for cubefree m
        for (Int r = r0; r <= r_max; ++r) {
            if (gcd(r, t) != 1) continue;
            Int s2 = ipow(r, 3) - mt6;
            Int s;
            if (!perfect_square(s2, &s)) continue;
            if (gcd(s, t) != 1) continue;
            out.push_back(CurvePoint::from_rst(m, r, s, t));
        }
    }
    return out;
}

}  // namespace cubiclab::mordell
