#include "cubiclab/cubic.hpp"

#include <sstream>

namespace cubiclab::cubic {

using intarith::Poly;

CubicField CubicField::create(const Int& m) {
    if (m < 2) throw std::invalid_argument("CubicField: m must be >= 2");
    intarith::CubefreeProfile prof = intarith::cubefree_squarefree_profile(m);
    if (!prof.is_cubefree) throw std::invalid_argument("CubicField: m must be cubefree");
    CubicField f;
    f.m = m;
    Int b3 = (m - 3) / 8;
    if (m > 3 && (m - 3) % 8 == 0) {
        Int b = iroot(b3, 3);
        if (ipow(b, 3) == b3) f.family_b = b;
    }
    if (m > 3 && ipow(iroot(m - 3, 3), 3) == m - 3) f.family_a = iroot(m - 3, 3);
    Int r9 = mod_pos(m, Int(9));
    f.monogenic = prof.is_squarefree && r9 != 1 && r9 != 8;
    // m = a*b^2 with a, b squarefree coprime: disc = -27(ab)^2, or -3(ab)^2
    // when a^2 = b^2 mod 9.
    Int a = 1, b = 1;
    for (const auto& pe : intarith::factor(m).factors) (pe.e == 1 ? a : b) *= pe.p;
    Int ab = a * b;
    if (mod_pos(a * a, Int(9)) == mod_pos(b * b, Int(9)))
        f.disc = -3 * ab * ab;
    else
        f.disc = -27 * ab * ab;
    return f;
}

void CubicElement::require_same_field(const CubicElement& o) const {
    if (m_ != o.m_) throw std::invalid_argument("CubicElement: mixed fields");
}

CubicElement CubicElement::operator+(const CubicElement& o) const {
    require_same_field(o);
    return CubicElement(m_, x_ + o.x_, y_ + o.y_, z_ + o.z_);
}

CubicElement CubicElement::operator-(const CubicElement& o) const {
    require_same_field(o);
    return CubicElement(m_, x_ - o.x_, y_ - o.y_, z_ - o.z_);
}

CubicElement CubicElement::operator-() const { return CubicElement(m_, -x_, -y_, -z_); }

CubicElement CubicElement::operator*(const CubicElement& o) const {
    require_same_field(o);
    Rat m(m_);
    Rat x = x_ * o.x_ + m * (y_ * o.z_ + z_ * o.y_);
    Rat y = x_ * o.y_ + y_ * o.x_ + m * z_ * o.z_;
    Rat z = x_ * o.z_ + y_ * o.y_ + z_ * o.x_;
    return CubicElement(m_, x, y, z);
}

CubicElement CubicElement::pow(unsigned long n) const {
    CubicElement r = from_integers(m_, 1, 0, 0);
    CubicElement b = *this;
    while (n > 0) {
        if (n & 1) r = r * b;
        b = b * b;
        n >>= 1;
    }
    return r;
}

Rat CubicElement::norm() const {
    Rat m(m_);
    return x_ * x_ * x_ + m * y_ * y_ * y_ + m * m * z_ * z_ * z_ - 3 * m * x_ * y_ * z_;
}

Poly CubicElement::charpoly() const {
    // lambda^3 - 3x lambda^2 + 3(x^2 - m y z) lambda - norm
    Rat m(m_);
    std::vector<Rat> c(4);
    c[3] = 1;
    c[2] = -3 * x_;
    c[1] = 3 * (x_ * x_ - m * y_ * z_);
    c[0] = -norm();
    return Poly(c);
}

std::string CubicElement::str() const {
    std::ostringstream os;
    bool first = true;
    const Rat* coords[3] = {&x_, &y_, &z_};
    for (int i = 0; i < 3; ++i) {
        const Rat& q = *coords[i];
        if (q == 0) continue;
        if (!first) os << (q > 0 ? "+" : "-");
        else if (q < 0) os << "-";
        Rat aq = abs(q);
        if (aq != 1 || i == 0) os << cubiclab::str(aq);
        if (i >= 1) {
            if (aq != 1) os << "*";
            os << "w";
            if (i == 2) os << "^2";
        }
        first = false;
    }
    if (first) return "0";
    return os.str();
}

CubicElement omega(const Int& m) { return CubicElement::from_integers(m, 0, 1, 0); }

CubicElement family_unit(const CubicField& f) {
    if (!f.family_a) throw std::invalid_argument("family_unit: field is not of the shape m = a^3 + 3");
    Int a = *f.family_a;
    if (a == 0) throw std::invalid_argument("family_unit: a must be nonzero");
    CubicElement eps = CubicElement::from_integers(f.m, 1, a * a, -a);
    // eps = -(1/3)(a - w)^3 and N(eps) = 1, both exact.
    CubicElement aw = CubicElement::from_integers(f.m, a, -1, 0);
    CubicElement cube = aw.pow(3).scaled(Rat(-1, 3));
    if (!(cube == eps) || eps.norm() != 1)
        throw std::logic_error("family_unit: unit identity failed");
    return eps;
}

FamilyIdentity epsilon_alpha_beta_identity(const Int& b) {
    if (b == 0) throw std::invalid_argument("epsilon_alpha_beta_identity: b must be nonzero");
    Int m = 8 * ipow(b, 3) + 3;
    if (m < 2 || !intarith::cubefree_squarefree_profile(m).is_cubefree)
        throw std::invalid_argument("epsilon_alpha_beta_identity: m = 8b^3+3 must be cubefree");
    Int b3 = ipow(b, 3);
    FamilyIdentity id{
        b,
        m,
        CubicElement::from_integers(m, 1, 4 * b * b, -2 * b),
        CubicElement::from_integers(m, 2 * b3 + 1, -b * b, 0),
        CubicElement::from_integers(m, 4 * b3 + 1, 0, -b),
        CubicElement::from_integers(m, 0, 0, 0),
        CubicElement::from_integers(m, 0, 0, 0),
        false,
        Int(0),
        Int(0),
        false,
    };
    id.eps_alpha = id.eps * id.alpha;
    id.beta_sq = id.beta * id.beta;
    id.product_matches = id.eps_alpha == id.beta_sq;
    id.norm_lhs = ipow(4 * b3 + 1, 3) - b3 * m * m;
    id.norm_rhs = 3 * b3 + 1;
    id.norm_matches = id.norm_lhs == id.norm_rhs && id.beta.norm() == Rat(id.norm_rhs);
    if (!id.ok()) throw std::logic_error("epsilon_alpha_beta_identity: identity failed");
    return id;
}

bool congruent_one_mod4(const CubicElement& e) {
    if (!e.integral()) throw std::invalid_argument("congruent_one_mod4: integer coordinates required");
    return mod_pos(to_int(e.x()), Int(4)) == 1 && mod_pos(to_int(e.y()), Int(4)) == 0 &&
           mod_pos(to_int(e.z()), Int(4)) == 0;
}

// ---------------------------------------------------------------------------
// Exact rational intervals; all enclosures are computed with integer k-th
// roots of scaled integers, so no floating point is involved.

namespace {

struct IV {
    Rat lo, hi;
};

IV iv_point(const Rat& q) { return {q, q}; }

IV iv_add(const IV& a, const IV& b) { return {a.lo + b.lo, a.hi + b.hi}; }
IV iv_sub(const IV& a, const IV& b) { return {a.lo - b.hi, a.hi - b.lo}; }

IV iv_mul(const IV& a, const IV& b) {
    Rat c1 = a.lo * b.lo, c2 = a.lo * b.hi, c3 = a.hi * b.lo, c4 = a.hi * b.hi;
    return {std::min(std::min(c1, c2), std::min(c3, c4)), std::max(std::max(c1, c2), std::max(c3, c4))};
}

IV iv_scale(const IV& a, const Rat& s) {
    return s >= 0 ? IV{a.lo * s, a.hi * s} : IV{a.hi * s, a.lo * s};
}

// Division by a strictly positive interval.
IV iv_div_pos(const IV& a, const IV& b) {
    Rat c1 = a.lo / b.lo, c2 = a.lo / b.hi, c3 = a.hi / b.lo, c4 = a.hi / b.hi;
    return {std::min(std::min(c1, c2), std::min(c3, c4)), std::max(std::max(c1, c2), std::max(c3, c4))};
}

Rat width(const IV& a) { return a.hi - a.lo; }
Rat mid(const IV& a) { return (a.lo + a.hi) / 2; }

// Floor/ceiling of sqrt at k fractional bits.
Rat sqrt_lower(const Rat& q, unsigned k) {
    if (q <= 0) return Rat(0);
    Int scaled = rat_floor(q * Rat(Int(1) << (2 * k)));
    return make_rat(isqrt(scaled), Int(1) << k);
}

Rat sqrt_upper(const Rat& q, unsigned k) {
    if (q <= 0) return Rat(0);
    Int scaled = rat_ceil(q * Rat(Int(1) << (2 * k)));
    return make_rat(isqrt(scaled) + 1, Int(1) << k);
}

// sqrt of a nonnegative-valued interval (lo clamped at 0 to absorb slack).
IV iv_sqrt(const IV& a, unsigned k) {
    Rat lo = a.lo < 0 ? Rat(0) : a.lo;
    return {sqrt_lower(lo, k), sqrt_upper(a.hi, k)};
}

// Enclosure of m^(1/3) at k fractional bits.
IV cbrt_iv(const Int& m, unsigned k) {
    Int scaled = m << (3 * k);
    Int r = iroot(scaled, 3);
    return {make_rat(r, Int(1) << k), make_rat(r + 1, Int(1) << k)};
}

IV sqrt3_iv(unsigned k) {
    Int scaled = Int(3) << (2 * k);
    Int r = isqrt(scaled);
    return {make_rat(r, Int(1) << k), make_rat(r + 1, Int(1) << k)};
}

// Enclosure of the real embedding x + y c + z c^2.
IV real_embedding_iv(const CubicElement& e, const IV& c, const IV& c2) {
    return iv_add(iv_point(e.x()), iv_add(iv_scale(c, e.y()), iv_scale(c2, e.z())));
}

}  // namespace

int real_embedding_sign(const CubicElement& e) {
    if (e.is_zero()) return 0;
    for (unsigned k = 32;; k *= 2) {
        IV c = cbrt_iv(e.m(), k);
        IV c2 = iv_mul(c, c);
        IV v = real_embedding_iv(e, c, c2);
        if (v.lo > 0) return 1;
        if (v.hi < 0) return -1;
        if (k > 1u << 20) throw std::logic_error("real_embedding_sign: no resolution");
    }
}

SquareResult is_square(const CubicElement& e, unsigned max_bits) {
    if (e.is_zero()) throw std::invalid_argument("is_square: input must be nonzero");
    const Int& m = e.m();
    Int d = lcm(lcm(den(e.x()), den(e.y())), den(e.z()));
    Int max_den = 2 * d * d;
    // Rounding is unambiguous once widths fall below 1/(2*max_den^2).
    Rat tol = make_rat(1, 2 * max_den * max_den);

    SquareResult res;
    for (unsigned k = 96; k <= max_bits; k *= 2) {
        res.bits_used = k;
        IV c = cbrt_iv(m, k);
        IV c2 = iv_mul(c, c);
        IV s3 = sqrt3_iv(k);

        IV sigma0 = real_embedding_iv(e, c, c2);
        if (sigma0.hi < 0) {
            res.status = SquareStatus::not_square;  // negative at the real place
            return res;
        }
        if (sigma0.lo <= 0) continue;  // sign unresolved; refine

        IV r0 = iv_sqrt(sigma0, k);

        // Complex embedding w -> c*zeta_3: real and imaginary parts.
        IV yc = iv_scale(c, e.y());
        IV zc2 = iv_scale(c2, e.z());
        IV re = iv_sub(iv_point(e.x()), iv_scale(iv_add(yc, zc2), Rat(1, 2)));
        IV im = iv_scale(iv_mul(s3, iv_sub(yc, zc2)), Rat(1, 2));

        // Complex square root: p^2 - q^2 = re, 2pq = +-|im|.
        IV mod2 = iv_add(iv_mul(re, re), iv_mul(im, im));
        IV mod = iv_sqrt(mod2, k);
        IV p = iv_sqrt(iv_scale(iv_add(mod, re), Rat(1, 2)), k);
        IV q = iv_sqrt(iv_scale(iv_sub(mod, re), Rat(1, 2)), k);

        // The square roots of sigma1(e) are +-(p + sign(im) q i); instead of
        // resolving the sign of im we try all four sign patterns and let the
        // exact verification reject the spurious ones.
        bool tight = true;
        for (int branch = 0; branch < 4 && tight; ++branch) {
            IV tre = branch & 2 ? iv_scale(p, Rat(-1)) : p;
            IV tim = branch & 1 ? iv_scale(q, Rat(-1)) : q;
            // Candidate root s = u + v w + z w^2 from
            //   u + A + B = r0,  u - (A+B)/2 = Re T,  (sqrt3/2)(A - B) = Im T
            // with A = v c, B = w c^2.
            IV apb = iv_scale(iv_sub(r0, tre), Rat(2, 3));
            IV amb = iv_div_pos(iv_scale(tim, Rat(2)), s3);
            IV A = iv_scale(iv_add(apb, amb), Rat(1, 2));
            IV B = iv_scale(iv_sub(apb, amb), Rat(1, 2));
            IV u = iv_sub(r0, apb);
            IV v = iv_div_pos(A, c);
            IV w = iv_div_pos(B, c2);
            if (width(u) >= tol || width(v) >= tol || width(w) >= tol) {
                tight = false;
                break;
            }
            CubicElement cand(m, best_rational_bounded_den(mid(u), max_den),
                              best_rational_bounded_den(mid(v), max_den),
                              best_rational_bounded_den(mid(w), max_den));
            if (cand * cand == e) {
                res.status = SquareStatus::square;
                res.root = cand;
                return res;
            }
        }
        if (tight) {
            // Both branches were resolved beyond ambiguity and failed the
            // exact verification: no root within the denominator bound.
            res.status = SquareStatus::not_square;
            return res;
        }
    }
    res.status = SquareStatus::undecided;
    return res;
}

SqrtMinpoly minpoly_sqrt(const CubicElement& e) {
    Poly cp = e.charpoly();
    std::vector<Rat> f(7, Rat(0));
    for (int i = 0; i <= 3; ++i) f[static_cast<size_t>(2 * i)] = cp.c[static_cast<size_t>(i)];
    SqrtMinpoly mp;
    mp.coeffs = Poly(f).primitive_integer_coeffs();
    mp.flagged_reducible = is_square(e).status == SquareStatus::square;
    return mp;
}

std::string SqrtMinpoly::str() const {
    std::vector<Rat> c;
    c.reserve(coeffs.size());
    for (const Int& x : coeffs) c.emplace_back(x);
    return Poly(c).str();
}

}  // namespace cubiclab::cubic
