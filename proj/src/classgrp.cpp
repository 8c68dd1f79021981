#include "cubiclab/classgrp.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace cubiclab::classgrp {

namespace {

// The monogenicity gate: m squarefree and m != +-1 mod 9, so that Z[w] is
// the maximal order and Dedekind splitting applies at every prime.
void require_monogenic(const Int& m) {
    static std::map<Int, bool> cache;
    static std::mutex mu;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(m);
        if (it != cache.end()) {
            if (!it->second) throw std::invalid_argument("monogenic case required (m squarefree, m != +-1 mod 9)");
            return;
        }
    }
    bool ok = m >= 2;
    if (ok) {
        Int r9 = mod_pos(m, Int(9));
        ok = r9 != 1 && r9 != 8 && intarith::cubefree_squarefree_profile(m).is_squarefree;
    }
    {
        std::lock_guard<std::mutex> lock(mu);
        cache[m] = ok;
    }
    if (!ok) throw std::invalid_argument("monogenic case required (m squarefree, m != +-1 mod 9)");
}

// Discrete cube root mod p for p = 1 mod 3 (Adleman-Manders-Miller digit
// extraction in the 3-Sylow subgroup). Requires a to be a cubic residue.
Int cube_root_amm(const Int& a, const Int& p) {
    Int t = p - 1;
    unsigned long s = 0;
    while (t % 3 == 0) { t /= 3; ++s; }
    // deterministic cubic non-residue
    Int g = 2;
    while (powmod(g, (p - 1) / 3, p) == 1) ++g;
    Int b = powmod(g, t, p);         // generates the 3-Sylow subgroup
    Int e1 = powmod(a, t, p);        // Sylow component of a
    Int e2 = powmod(a, ipow(Int(3), s), p);  // order-t component
    // digits of dlog_b(e1), base 3
    Int k = 0;
    Int binv = mod_inverse(b, p);
    Int z = powmod(b, ipow(Int(3), s - 1), p);  // primitive cube root of unity
    for (unsigned long i = 0; i < s; ++i) {
        Int w = powmod(e1 * powmod(binv, k, p) % p, ipow(Int(3), s - 1 - i), p);
        Int d = -1;
        Int zd = 1;
        for (int cand = 0; cand < 3; ++cand) {
            if (w == zd) { d = cand; break; }
            zd = zd * z % p;
        }
        if (d < 0) throw std::logic_error("cube_root_amm: dlog digit not found");
        k += d * ipow(Int(3), i);
    }
    if (k % 3 != 0) throw std::logic_error("cube_root_amm: input is not a cubic residue");
    Int root1 = powmod(b, k / 3, p);
    Int root2 = t == 1 ? Int(1) : powmod(e2, mod_inverse(Int(3), t), p);
    // CRT the two components back together.
    Int p3s = ipow(Int(3), s);
    Int u = mod_inverse(mod_pos(t, p3s), p3s);
    Int v = t == 1 ? Int(0) : mod_inverse(mod_pos(p3s, t), t);
    Int x = powmod(root1, u, p) * powmod(root2, v, p) % p;
    if (powmod(x, Int(3), p) != mod_pos(a, p)) throw std::logic_error("cube_root_amm: verification failed");
    return x;
}

}  // namespace

Int PrimeIdeal::norm() const { return ipow(p, static_cast<unsigned long>(f)); }

std::string PrimeIdeal::label() const {
    std::ostringstream os;
    os << "p" << p.get_str();
    switch (kind) {
        case PrimeKind::split1: os << "r" << root.get_str(); break;
        case PrimeKind::split2: os << "f2"; break;
        case PrimeKind::inert: os << "f3"; break;
        case PrimeKind::ramified: os << "e3"; break;
    }
    return os.str();
}

bool PrimeIdeal::operator==(const PrimeIdeal& o) const {
    return p == o.p && kind == o.kind && root == o.root;
}

bool PrimeIdeal::operator<(const PrimeIdeal& o) const {
    if (p != o.p) return p < o.p;
    if (kind != o.kind) return static_cast<int>(kind) < static_cast<int>(o.kind);
    return root < o.root;
}

std::vector<PrimeIdeal> split_prime(const Int& p, const Int& m) {
    require_monogenic(m);
    if (p < 2 || !intarith::is_prime(p)) throw std::invalid_argument("split_prime: p must be prime");
    std::vector<PrimeIdeal> out;
    if (m % p == 0 || p == 3) {
        // x^3 - m = (x - c)^3 mod p: totally ramified.
        PrimeIdeal q;
        q.p = p;
        q.kind = PrimeKind::ramified;
        q.e = 3;
        q.f = 1;
        q.root = mod_pos(m, p);
        out.push_back(q);
        return out;
    }
    if (mod_pos(p, Int(3)) == 2) {
        // Cubing is a bijection mod p: one root, one quadratic factor.
        Int c = p == 2 ? mod_pos(m, p) : powmod(mod_pos(m, p), mod_inverse(Int(3), p - 1), p);
        PrimeIdeal lin{p, PrimeKind::split1, 1, 1, c, Int(0), Int(0)};
        PrimeIdeal quad{p, PrimeKind::split2, 1, 2, Int(0), mod_pos(c, p), mod_pos(c * c, p)};
        out.push_back(lin);
        out.push_back(quad);
        return out;
    }
    // p = 1 mod 3: either three roots or none.
    if (powmod(mod_pos(m, p), (p - 1) / 3, p) != 1) {
        out.push_back(PrimeIdeal{p, PrimeKind::inert, 1, 3, Int(0), Int(0), Int(0)});
        return out;
    }
    Int c0 = cube_root_amm(m, p);
    Int g = 2;
    while (powmod(g, (p - 1) / 3, p) == 1) ++g;
    Int zeta = powmod(g, (p - 1) / 3, p);
    std::vector<Int> roots{c0, c0 * zeta % p, c0 * zeta % p * zeta % p};
    std::sort(roots.begin(), roots.end());
    for (const Int& c : roots) out.push_back(PrimeIdeal{p, PrimeKind::split1, 1, 1, c, Int(0), Int(0)});
    return out;
}

Int ideal_norm(const IdealExponents& factors) {
    Int n = 1;
    for (const auto& f : factors)
        for (int i = 0; i < f.exponent; ++i) n *= f.ideal.norm();
    return n;
}

std::string ideal_str(const IdealExponents& factors) {
    if (factors.empty()) return "(1)";
    std::ostringstream os;
    bool first = true;
    for (const auto& f : factors) {
        if (!first) os << "*";
        os << f.ideal.label();
        if (f.exponent != 1) os << "^" << f.exponent;
        first = false;
    }
    return os.str();
}

namespace {

// Valuation of an integral element at a degree-1 unramified prime (p, w - c):
// substitute Hensel lifts of the root until the image is nonzero mod p^k.
int valuation_deg1(const Int& x, const Int& y, const Int& z, const Int& m, const Int& p, Int c,
                   int cap) {
    int v = 0;
    Int pk = p;
    while (v < cap) {
        if (mod_pos(x + y * c + z * c * c, pk) != 0) break;
        ++v;
        Int pk1 = pk * p;
        // Newton step for f(c) = c^3 - m mod pk1.
        Int fc = mod_pos(c * c * c - m, pk1);
        Int fpc = mod_pos(3 * c * c, pk1);
        c = mod_pos(c - fc * mod_inverse(fpc, pk1), pk1);
        pk = pk1;
    }
    return v;
}

}  // namespace

ElementFactorization factor_element(const cubic::CubicElement& e) {
    if (!e.integral()) throw std::invalid_argument("factor_element: integral coordinates required");
    if (e.is_zero()) throw std::invalid_argument("factor_element: nonzero element required");
    const Int& m = e.m();
    require_monogenic(m);
    ElementFactorization out{e, {}, to_int(e.norm())};
    Int x = to_int(e.x()), y = to_int(e.y()), z = to_int(e.z());
    Int n = abs(out.norm);
    if (n == 1) return out;  // unit
    for (const auto& pe : intarith::factor(n).factors) {
        const Int& p = pe.p;
        int vn = static_cast<int>(pe.e);
        auto ideals = split_prime(p, m);
        if (ideals.size() == 1 && ideals[0].kind == PrimeKind::ramified) {
            out.factors.push_back({ideals[0], vn});
            continue;
        }
        if (ideals.size() == 1 && ideals[0].kind == PrimeKind::inert) {
            if (vn % 3 != 0) throw std::logic_error("factor_element: inert valuation not divisible by 3");
            out.factors.push_back({ideals[0], vn / 3});
            continue;
        }
        if (ideals.size() == 2) {  // split1 + split2
            int v1 = valuation_deg1(x, y, z, m, p, ideals[0].root, vn);
            int v2 = (vn - v1) / 2;
            if (v1 + 2 * v2 != vn || v2 < 0)
                throw std::logic_error("factor_element: norm bookkeeping failed at p = " + p.get_str());
            if (v1 > 0) out.factors.push_back({ideals[0], v1});
            if (v2 > 0) out.factors.push_back({ideals[1], v2});
            continue;
        }
        // three degree-1 primes
        int total = 0;
        for (const auto& q : ideals) {
            int v = valuation_deg1(x, y, z, m, p, q.root, vn);
            total += v;
            if (v > 0) out.factors.push_back({q, v});
        }
        if (total != vn) throw std::logic_error("factor_element: norm bookkeeping failed at p = " + p.get_str());
    }
    std::sort(out.factors.begin(), out.factors.end(),
              [](const IdealFactor& a, const IdealFactor& b) { return a.ideal < b.ideal; });
    return out;
}

Int minkowski_bound(const Int& m) {
    require_monogenic(m);
    // (4/pi)(3!/3^3) sqrt(27 m^2) = (8 sqrt(3) / (3 pi)) m, rounded up with
    // an upper sqrt(3) estimate and a lower pi estimate.
    const unsigned k = 64;
    Rat sqrt3_up = make_rat(isqrt(Int(3) << (2 * k)) + 1, Int(1) << k);
    Rat pi_lo = make_rat(Int("314159265358979323846"), ipow(Int(10), 20));
    Rat bound = Rat(8) * sqrt3_up * Rat(m) / (Rat(3) * pi_lo);
    return rat_ceil(bound);
}

// ---------------------------------------------------------------------------
// Class group construction.

namespace {

std::vector<Int> snf_divisor_list(const intarith::IntMatrix& basis, int n, bool& finite) {
    auto snf = intarith::smith_normal_form(basis);
    finite = basis.rows == n;
    std::vector<Int> divisors;
    for (const Int& d : snf.diagonal()) {
        if (d == 0) finite = false;
        if (d > 1) divisors.push_back(d);
    }
    return divisors;
}

}  // namespace

ClassGroup class_group(const Int& m, const Int& relation_bound) {
    require_monogenic(m);
    if (relation_bound < 1) throw std::invalid_argument("class_group: relation bound must be positive");
    ClassGroup cg;
    cg.m = m;
    cg.bound = minkowski_bound(m);
    cg.relation_bound = relation_bound;
    for (Int p = 2; p <= cg.bound; ++p) {
        if (!intarith::is_prime(p)) continue;
        for (const auto& q : split_prime(p, m))
            if (q.norm() <= cg.bound) cg.factor_base.push_back(q);
    }
    std::sort(cg.factor_base.begin(), cg.factor_base.end());
    int n = static_cast<int>(cg.factor_base.size());

    std::vector<Int> fb_primes;
    for (const auto& q : cg.factor_base)
        if (fb_primes.empty() || fb_primes.back() != q.p) fb_primes.push_back(q.p);

    // Deterministic relation stream: expanding coordinate shells, lexicographic
    // within each shell; keep elements whose norms factor over the base.
    std::vector<std::vector<Int>> rels;
    long bound = static_cast<long>(relation_bound.get_si());
    Int m2 = m * m;
    for (long rho = 1; rho <= bound; ++rho) {
        for (long x = -rho; x <= rho; ++x)
            for (long y = -rho; y <= rho; ++y)
                for (long z = -rho; z <= rho; ++z) {
                    if (std::max({labs(x), labs(y), labs(z)}) != rho) continue;
                    if (std::gcd(std::gcd(labs(x), labs(y)), labs(z)) != 1) continue;
                    Int X(x), Y(y), Z(z);
                    Int norm = X * X * X + m * Y * Y * Y + m2 * Z * Z * Z - 3 * m * X * Y * Z;
                    Int a = abs(norm);
                    if (a <= 1) continue;
                    for (const Int& p : fb_primes)
                        while (a % p == 0) a /= p;
                    if (a != 1) continue;
                    auto fact = factor_element(cubic::CubicElement::from_integers(m, X, Y, Z));
                    std::vector<Int> vec(static_cast<size_t>(n), Int(0));
                    bool in_base = true;
                    for (const auto& f : fact.factors) {
                        auto it = std::lower_bound(cg.factor_base.begin(), cg.factor_base.end(), f.ideal);
                        if (it == cg.factor_base.end() || !(*it == f.ideal)) { in_base = false; break; }
                        vec[static_cast<size_t>(it - cg.factor_base.begin())] = f.exponent;
                    }
                    if (in_base) rels.push_back(std::move(vec));
                }
    }
    cg.relations_total = static_cast<long>(rels.size());

    // Stabilization: the group from the first 75% of the stream must agree
    // with the full one.
    intarith::RelationLattice partial(n), full(n);
    size_t cut = (rels.size() * 3 + 3) / 4;
    for (size_t i = 0; i < rels.size(); ++i) {
        if (i < cut) partial.add(rels[i]);
        full.add(rels[i]);
    }
    bool partial_finite = false, full_finite = false;
    auto partial_div = snf_divisor_list(partial.basis_matrix(), n, partial_finite);
    auto snf = intarith::smith_normal_form(full.basis_matrix());
    full_finite = full.size() == n;
    std::vector<Int> diag = snf.diagonal();
    std::vector<int> divisor_cols;
    for (size_t i = 0; i < diag.size(); ++i) {
        if (diag[i] == 0) full_finite = false;
        if (diag[i] > 1) {
            cg.divisors.push_back(diag[i]);
            divisor_cols.push_back(static_cast<int>(i));
        }
    }
    cg.stabilized = partial_finite && full_finite && partial_div == cg.divisors;
    if (!full_finite) {
        cg.divisors.clear();
        cg.h = 0;
        cg.stabilized = false;
        return cg;
    }
    cg.h = 1;
    for (const Int& d : cg.divisors) cg.h *= d;
    // Class vectors of factor-base ideals from the column transform V.
    for (int j = 0; j < n; ++j) {
        std::vector<Int> v;
        v.reserve(divisor_cols.size());
        for (size_t i = 0; i < divisor_cols.size(); ++i)
            v.push_back(mod_pos(snf.V.at(j, divisor_cols[static_cast<size_t>(i)]), cg.divisors[i]));
        cg.fb_vectors.push_back(std::move(v));
    }
    return cg;
}

std::string ClassGroup::structure_str() const {
    if (divisors.empty()) return h == 1 ? "trivial" : "unstabilized";
    std::ostringstream os;
    bool first = true;
    for (const Int& d : divisors) {
        if (!first) os << " x ";
        os << "Z/" << d.get_str();
        first = false;
    }
    return os.str();
}

bool ClassGroup::is_zero_vector(const std::vector<Int>& v) const {
    for (const Int& c : v)
        if (c != 0) return false;
    return true;
}

namespace {

// Greedy pairwise reduction of a rank-3 lattice basis under the diagonal
// quadratic form diag(1, f2, f2^2) with f2 ~ m^(2/3); enough to make the
// Minkowski-small vectors reachable by small coefficient combinations.
struct LatticeBasis {
    std::array<std::array<Int, 3>, 3> b;
    Rat f2;

    Rat dot(int i, int j) const {
        Rat s = 0;
        Rat w = 1;
        for (int k = 0; k < 3; ++k) {
            s += w * Rat(b[static_cast<size_t>(i)][static_cast<size_t>(k)]) *
                 Rat(b[static_cast<size_t>(j)][static_cast<size_t>(k)]);
            w *= f2;
        }
        return s;
    }

    void reduce() {
        bool changed = true;
        int guard = 0;
        while (changed && ++guard < 200) {
            changed = false;
            // order by norm
            for (int i = 0; i < 3; ++i)
                for (int j = i + 1; j < 3; ++j)
                    if (dot(j, j) < dot(i, i)) std::swap(b[static_cast<size_t>(i)], b[static_cast<size_t>(j)]);
            for (int i = 1; i < 3; ++i)
                for (int j = 0; j < i; ++j) {
                    Rat djj = dot(j, j);
                    if (djj == 0) continue;
                    Int mu = round_nearest(dot(i, j) / djj);
                    if (mu == 0) continue;
                    Rat before = dot(i, i);
                    for (int k = 0; k < 3; ++k)
                        b[static_cast<size_t>(i)][static_cast<size_t>(k)] -= mu * b[static_cast<size_t>(j)][static_cast<size_t>(k)];
                    if (dot(i, i) < before) {
                        changed = true;
                    } else {
                        for (int k = 0; k < 3; ++k)
                            b[static_cast<size_t>(i)][static_cast<size_t>(k)] += mu * b[static_cast<size_t>(j)][static_cast<size_t>(k)];
                    }
                }
        }
    }
};

}  // namespace

std::vector<Int> ClassGroup::class_of_prime(const PrimeIdeal& P) const {
    if (h == 0) throw std::logic_error("class_of_prime: group not stabilized");
    auto it = std::lower_bound(factor_base.begin(), factor_base.end(), P);
    if (it != factor_base.end() && *it == P)
        return fb_vectors[static_cast<size_t>(it - factor_base.begin())];
    std::vector<Int> zero(divisors.size(), Int(0));
    if (P.kind == PrimeKind::inert) return zero;  // (p) is principal

    // Ideal lattice of P as a sublattice of Z^3.
    LatticeBasis lat;
    lat.f2 = make_rat(iroot(m * m << 48, 3) + 1, Int(1) << 16);
    const Int& p = P.p;
    if (P.kind == PrimeKind::split2) {
        lat.b = {{{p, Int(0), Int(0)}, {Int(0), p, Int(0)}, {mod_pos(P.q0, p), mod_pos(P.q1, p), Int(1)}}};
    } else {
        lat.b = {{{p, Int(0), Int(0)},
                  {mod_pos(-P.root, p), Int(1), Int(0)},
                  {mod_pos(-P.root * P.root, p), Int(0), Int(1)}}};
    }
    lat.reduce();

    std::vector<Int> fb_primes;
    for (const auto& q : factor_base)
        if (fb_primes.empty() || fb_primes.back() != q.p) fb_primes.push_back(q.p);

    Int pf = P.norm();
    for (long A = 2; A <= 64; A *= 2) {
        for (long a = -A; a <= A; ++a)
            for (long bcoef = -A; bcoef <= A; ++bcoef)
                for (long ccoef = -A; ccoef <= A; ++ccoef) {
                    if (std::max({labs(a), labs(bcoef), labs(ccoef)}) <= A / 2 && A > 2) continue;
                    if (a == 0 && bcoef == 0 && ccoef == 0) continue;
                    Int X = a * lat.b[0][0] + bcoef * lat.b[1][0] + ccoef * lat.b[2][0];
                    Int Y = a * lat.b[0][1] + bcoef * lat.b[1][1] + ccoef * lat.b[2][1];
                    Int Z = a * lat.b[0][2] + bcoef * lat.b[1][2] + ccoef * lat.b[2][2];
                    cubic::CubicElement cand = cubic::CubicElement::from_integers(m, X, Y, Z);
                    Rat nr = cand.norm();
                    if (nr == 0) continue;
                    Int nn = abs(to_int(nr));
                    if (nn % pf != 0) continue;
                    Int cof = nn / pf;
                    for (const Int& q : fb_primes)
                        while (cof % q == 0) cof /= q;
                    if (cof != 1) continue;
                    auto fact = factor_element(cand);
                    // Need v_P = 1 and everything else inside the base.
                    std::vector<Int> cls(divisors.size(), Int(0));
                    bool usable = true;
                    bool seen = false;
                    for (const auto& fac : fact.factors) {
                        if (fac.ideal == P) {
                            if (fac.exponent != 1) { usable = false; break; }
                            seen = true;
                            continue;
                        }
                        auto jt = std::lower_bound(factor_base.begin(), factor_base.end(), fac.ideal);
                        if (jt == factor_base.end() || !(*jt == fac.ideal)) { usable = false; break; }
                        const auto& vec = fb_vectors[static_cast<size_t>(jt - factor_base.begin())];
                        for (size_t i = 0; i < cls.size(); ++i) cls[i] += Int(fac.exponent) * vec[i];
                    }
                    if (!usable || !seen) continue;
                    // (cand) = P * smooth, so [P] = -[smooth].
                    for (size_t i = 0; i < cls.size(); ++i) cls[i] = mod_pos(-cls[i], divisors[i]);
                    return cls;
                }
    }
    throw std::runtime_error("class_of_prime: resolution search exhausted for " + P.label());
}

std::vector<Int> ClassGroup::class_of(const IdealExponents& factors) const {
    std::vector<Int> acc(divisors.size(), Int(0));
    for (const auto& f : factors) {
        auto v = class_of_prime(f.ideal);
        for (size_t i = 0; i < acc.size(); ++i)
            acc[i] = mod_pos(acc[i] + Int(f.exponent) * v[i], divisors[i]);
    }
    return acc;
}

PointIdealClass point_ideal_class(const mordell::CurvePoint& p, const ClassGroup& cg) {
    if (p.is_infinity()) throw std::invalid_argument("point_ideal_class: affine point required");
    if (p.m() != cg.m) throw std::invalid_argument("point_ideal_class: curve/group mismatch");
    PointIdealClass out{p,
                        mordell::weil_representative(p),
                        {},
                        {},
                        std::vector<Int>(cg.divisors.size(), Int(0)),
                        false,
                        std::nullopt};
    auto fact = factor_element(out.alpha);
    out.alpha_factors = fact.factors;
    for (const auto& f : fact.factors) {
        if (f.exponent % 2 != 0) {
            out.violation_prime = f.ideal.p;
            return out;  // possible only under violated preconditions
        }
        out.half.push_back({f.ideal, f.exponent / 2});
    }
    out.class_vector = cg.class_of(out.half);
    out.trivial = cg.is_zero_vector(out.class_vector);
    return out;
}

PrincipalityResult is_principal(const IdealExponents& ideal, const ClassGroup& cg,
                                const Int& coord_bound) {
    IdealExponents target = ideal;
    std::sort(target.begin(), target.end(),
              [](const IdealFactor& a, const IdealFactor& b) { return a.ideal < b.ideal; });
    Int n = ideal_norm(target);
    long bound = static_cast<long>(coord_bound.get_si());
    const Int& m = cg.m;
    Int m2 = m * m;
    for (long rho = 1; rho <= bound; ++rho) {
        for (long x = -rho; x <= rho; ++x)
            for (long y = -rho; y <= rho; ++y)
                for (long z = -rho; z <= rho; ++z) {
                    if (std::max({labs(x), labs(y), labs(z)}) != rho) continue;
                    Int X(x), Y(y), Z(z);
                    Int norm = X * X * X + m * Y * Y * Y + m2 * Z * Z * Z - 3 * m * X * Y * Z;
                    if (abs(norm) != n) continue;
                    auto fact = factor_element(cubic::CubicElement::from_integers(m, X, Y, Z));
                    if (fact.factors == target)
                        return {Principality::principal, fact.element};
                }
    }
    if (cg.stabilized && !cg.is_zero_vector(cg.class_of(target)))
        return {Principality::not_principal, std::nullopt};
    return {Principality::not_found_under_bound, std::nullopt};
}

int quadratic_symbol(const cubic::CubicElement& e, const PrimeIdeal& P) {
    if (P.kind != PrimeKind::split1 && P.kind != PrimeKind::ramified)
        throw std::invalid_argument("quadratic_symbol: degree-1 prime required");
    if (P.p == 2) throw std::invalid_argument("quadratic_symbol: odd prime required");
    if (!e.integral()) throw std::invalid_argument("quadratic_symbol: integral element required");
    Int res = mod_pos(to_int(e.x()) + to_int(e.y()) * P.root + to_int(e.z()) * P.root * P.root, P.p);
    if (res == 0) throw std::invalid_argument("quadratic_symbol: element lies in the prime");
    return intarith::jacobi(res, P.p);
}

}  // namespace cubiclab::classgrp
