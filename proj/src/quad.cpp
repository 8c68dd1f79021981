#include "cubiclab/quad.hpp"

#include <algorithm>
#include <sstream>

namespace cubiclab::quad {

QuadElement::QuadElement(Int m, Rat u, Rat v) : m_(std::move(m)), u_(std::move(u)), v_(std::move(v)) {
    if (m_ < 1 || mod_pos(-m_, Int(4)) != 1)
        throw std::invalid_argument("QuadElement: -m = 1 mod 4 required");
}

QuadElement QuadElement::operator+(const QuadElement& o) const {
    if (m_ != o.m_) throw std::invalid_argument("QuadElement: mixed fields");
    return QuadElement(m_, u_ + o.u_, v_ + o.v_);
}

QuadElement QuadElement::operator-(const QuadElement& o) const {
    if (m_ != o.m_) throw std::invalid_argument("QuadElement: mixed fields");
    return QuadElement(m_, u_ - o.u_, v_ - o.v_);
}

QuadElement QuadElement::operator*(const QuadElement& o) const {
    if (m_ != o.m_) throw std::invalid_argument("QuadElement: mixed fields");
    return QuadElement(m_, u_ * o.u_ - Rat(m_) * v_ * o.v_, u_ * o.v_ + v_ * o.u_);
}

QuadElement QuadElement::pow(unsigned long n) const {
    QuadElement r(m_, Rat(1), Rat(0));
    QuadElement b = *this;
    while (n > 0) {
        if (n & 1) r = r * b;
        b = b * b;
        n >>= 1;
    }
    return r;
}

bool QuadElement::is_integral() const {
    Rat u2 = 2 * u_, v2 = 2 * v_;
    return is_integer(u2) && is_integer(v2) && is_integer(u_ - v_);
}

std::string QuadElement::str() const {
    std::ostringstream os;
    if (u_ != 0 || v_ == 0) os << cubiclab::str(u_);
    if (v_ != 0) {
        if (v_ > 0 && (u_ != 0)) os << "+";
        if (v_ == -1) os << "-";
        else if (v_ != 1) os << cubiclab::str(v_) << "*";
        os << "sqrt(-" << m_.get_str() << ")";
    }
    return os.str();
}

CubeIdentityRecord cube_identity(const Int& b) {
    if (b == 0) throw std::invalid_argument("cube_identity: b must be nonzero");
    Int b3 = ipow(b, 3);
    Int m = 8 * b3 + 3;
    QuadElement tau(m, Rat(3 * b3 + 1), Rat(b3));
    QuadElement half_root(m, Rat(-1, 2), Rat(-1, 2));
    QuadElement half_cube = half_root.pow(3);
    QuadElement foot_root(m, Rat(3, 2), Rat(1, 2));
    CubeIdentityRecord rec{
        b, m, tau, half_root, half_cube,
        false, Int(0), false, foot_root.pow(3), false, true,
    };
    rec.cube_matches = half_cube == tau;
    rec.norm_expected = ipow(2 * b3 + 1, 3);
    rec.norm_matches = tau.norm() == Rat(rec.norm_expected);
    rec.footnote_matches = rec.footnote_cube == QuadElement(m, Rat(-9 * b3), Rat(3 - b3));
    if (!rec.ok()) throw std::logic_error("cube_identity: identity failed");
    return rec;
}

// ---------------------------------------------------------------------------
// Binary quadratic forms.

bool QuadForm::is_reduced() const {
    if (a <= 0 || c <= 0) return false;
    if (abs(b) > a || a > c) return false;
    if ((abs(b) == a || a == c) && b < 0) return false;
    return true;
}

bool QuadForm::operator<(const QuadForm& o) const {
    if (a != o.a) return a < o.a;
    if (b != o.b) return b < o.b;
    return c < o.c;
}

std::string QuadForm::str() const {
    std::ostringstream os;
    os << "(" << a.get_str() << "," << b.get_str() << "," << c.get_str() << ")";
    return os.str();
}

QuadForm principal_form(const Int& m) {
    if (mod_pos(-m, Int(4)) != 1) throw std::invalid_argument("principal_form: -m = 1 mod 4 required");
    return QuadForm{Int(1), Int(1), (1 + m) / 4};
}

QuadForm reduce(QuadForm f) {
    if (f.a <= 0) throw std::invalid_argument("reduce: positive definite forms only");
    Int D = f.disc();
    if (D >= 0) throw std::invalid_argument("reduce: negative discriminant required");
    while (true) {
        // Normalize b into (-a, a].
        Int r = mod_pos(f.b, 2 * f.a);
        if (r > f.a) r -= 2 * f.a;
        f.c = (r * r - D) / (4 * f.a);
        f.b = r;
        if (f.a > f.c) {
            f = QuadForm{f.c, -f.b, f.a};
            continue;
        }
        break;
    }
    if ((f.a == f.c || f.a == abs(f.b)) && f.b < 0) f.b = -f.b;
    return f;
}

namespace {

// x = r mod n solving a x = c (mod n0); returns (r, n).
std::pair<Int, Int> solve_linear_congruence(const Int& a, const Int& c, const Int& n0) {
    Int g = gcd(a, n0);
    if (c % g != 0) throw std::logic_error("solve_linear_congruence: inconsistent");
    Int n = n0 / g;
    Int r = mod_pos(c / g * mod_inverse(mod_pos(a / g, n), n), n);
    return {r, n};
}

// Merge x = r1 (mod n1) with x = r2 (mod n2).
std::pair<Int, Int> crt_merge(const Int& r1, const Int& n1, const Int& r2, const Int& n2) {
    Int g = gcd(n1, n2);
    if (mod_pos(r2 - r1, g) != 0) throw std::logic_error("crt_merge: inconsistent");
    Int l = n1 / g * n2;
    Int k = mod_pos((r2 - r1) / g * mod_inverse(mod_pos(n1 / g, n2 / g), n2 / g), n2 / g);
    return {mod_pos(r1 + n1 * k, l), l};
}

}  // namespace

QuadForm compose(const QuadForm& f, const QuadForm& g) {
    Int D = f.disc();
    if (D != g.disc()) throw std::invalid_argument("compose: discriminants differ");
    // Dirichlet composition: with e = gcd(a1, a2, (b1+b2)/2) and
    // a3 = a1 a2 / e^2, the middle coefficient is the unique B mod 2a3 with
    //   B = b1 (mod 2a1/e), B = b2 (mod 2a2/e),
    //   ((b1+b2)/2) B = (b1 b2 + D)/2 (mod 2 a1 a2 / e).
    Int a1 = f.a, b1 = f.b, a2 = g.a, b2 = g.b;
    Int s = (b1 + b2) / 2;
    Int e = gcd(gcd(a1, a2), s);
    Int a3 = a1 * a2 / (e * e);
    auto c1 = std::make_pair(mod_pos(b1, 2 * a1 / e), 2 * a1 / e);
    auto c2 = std::make_pair(mod_pos(b2, 2 * a2 / e), 2 * a2 / e);
    auto merged = crt_merge(c1.first, c1.second, c2.first, c2.second);
    if (s != 0) {
        auto c3 = solve_linear_congruence(s, (b1 * b2 + D) / 2, 2 * a1 * a2 / e);
        merged = crt_merge(merged.first, merged.second, c3.first, c3.second);
    }
    Int B = mod_pos(merged.first, 2 * a3);
    Int c3v = (B * B - D) / (4 * a3);
    if ((B * B - D) % (4 * a3) != 0) throw std::logic_error("compose: B lift failed");
    QuadForm r = reduce(QuadForm{a3, B, c3v});
    if (r.disc() != D) throw std::logic_error("compose: discriminant not preserved");
    return r;
}

QuadForm form_inverse(const QuadForm& f) { return reduce(QuadForm{f.a, -f.b, f.c}); }

QuadForm form_pow(const QuadForm& f, const Int& n) {
    Int D = f.disc();
    if (n < 0) return form_pow(form_inverse(f), -n);
    QuadForm acc = principal_form(-D);
    QuadForm base = reduce(f);
    Int k = n;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) acc = compose(acc, base);
        k >>= 1;
        if (k > 0) base = compose(base, base);
    }
    return acc;
}

FormClassGroup class_group(const Int& m) {
    if (m < 3 || mod_pos(-m, Int(4)) != 1)
        throw std::invalid_argument("class_group: -m = 1 mod 4 required");
    FormClassGroup g;
    g.m = m;
    g.fundamental = intarith::cubefree_squarefree_profile(m).is_squarefree;
    Int D = -m;
    for (Int a = 1; 3 * a * a <= m; ++a) {  // reduced forms have a <= sqrt(m/3)
        for (Int b = -a + 1; b <= a; ++b) {
            if (mpz_even_p(b.get_mpz_t())) continue;  // D odd
            Int num = b * b - D;
            if (num % (4 * a) != 0) continue;
            Int c = num / (4 * a);
            if (c < a) continue;
            if (gcd(gcd(a, b), c) != 1) continue;  // primitive forms only
            QuadForm f{a, b, c};
            if (f.is_reduced()) g.forms.push_back(f);
        }
    }
    std::sort(g.forms.begin(), g.forms.end());
    g.h = static_cast<long>(g.forms.size());

    // Structure: relations e_i + e_j - e_k from the composition table, SNF.
    int n = static_cast<int>(g.forms.size());
    intarith::RelationLattice lat(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            QuadForm prod = compose(g.forms[static_cast<size_t>(i)], g.forms[static_cast<size_t>(j)]);
            int k = g.index_of(prod);
            std::vector<Int> rel(static_cast<size_t>(n), Int(0));
            rel[static_cast<size_t>(i)] += 1;
            rel[static_cast<size_t>(j)] += 1;
            rel[static_cast<size_t>(k)] -= 1;
            lat.add(rel);
        }
    auto snf = intarith::smith_normal_form(lat.basis_matrix());
    Int order = 1;
    for (const Int& d : snf.diagonal()) {
        if (d == 0) throw std::logic_error("class_group: relation lattice not of full rank");
        if (d > 1) g.divisors.push_back(d);
        order *= d;
    }
    if (snf.S.rows < snf.S.cols || order != g.h)
        throw std::logic_error("class_group: group order does not match form count");
    return g;
}

int FormClassGroup::index_of(const QuadForm& reduced) const {
    auto it = std::lower_bound(forms.begin(), forms.end(), reduced);
    if (it == forms.end() || !(*it == reduced))
        throw std::invalid_argument("FormClassGroup: form not in group");
    return static_cast<int>(it - forms.begin());
}

Int FormClassGroup::class_order(const QuadForm& f) const {
    QuadForm id = principal_form(m);
    QuadForm acc = reduce(f);
    Int k = 1;
    while (!(acc == id)) {
        acc = compose(acc, f);
        ++k;
        if (k > h) throw std::logic_error("class_order: exceeded group order");
    }
    return k;
}

PointQuadClass point_to_quad_class(const mordell::CurvePoint& p, const FormClassGroup& g) {
    if (p.m() != g.m) throw std::invalid_argument("point_to_quad_class: curve/group mismatch");
    PointQuadClass out;
    if (p.is_infinity()) {
        out.infinity = true;
        out.ideal_class = principal_form(g.m);
        out.ideal_norm = 1;
        out.principal = true;
        out.cube_principal = true;
        out.norm_cube_ok = out.membership_ok = true;
        return out;
    }
    const Int &r = p.r(), &s = p.s(), &t = p.t();
    const Int& m = g.m;
    Int shared = gcd(r, s);
    if (shared > 1) {
        out.degenerate_prime = intarith::factor(shared).factors.front().p;
        throw std::domain_error("point_to_quad_class: r and s share the prime " +
                                out.degenerate_prime->get_str());
    }
    // sqrt(-m) = c mod the ideal, with c = -s * t^{-3} mod r; lift to the odd
    // residue B mod 2r so that B^2 = -m mod 4r.
    Int c = mod_pos(-s * mod_inverse(ipow(t, 3), r), r);
    Int B = c;
    if (mpz_even_p(B.get_mpz_t())) B += r;  // r is odd for points on these curves
    B = mod_pos(B, 2 * r);
    if ((B * B + m) % (4 * r) != 0) throw std::logic_error("point_to_quad_class: residue lift failed");
    QuadForm form{r, B, (B * B + m) / (4 * r)};
    out.ideal_class = reduce(form);
    out.ideal_norm = r;
    out.principal = out.ideal_class == principal_form(m);
    out.class_order = g.class_order(out.ideal_class);
    out.cube_principal = form_pow(out.ideal_class, Int(3)) == principal_form(m);
    // N(s + t^3 sqrt(-m)) = s^2 + m t^6 = r^3 is the curve equation.
    Int gen_norm = s * s + m * ipow(t, 6);
    out.norm_cube_ok = gen_norm == ipow(r, 3);
    out.norm_square_reading_ok = gen_norm == r * r;
    out.membership_ok = mod_pos(s + ipow(t, 3) * c, r) == 0;
    return out;
}

}  // namespace cubiclab::quad
