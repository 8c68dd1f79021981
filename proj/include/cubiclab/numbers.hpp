#pragma once

// Shared GMP-backed integer/rational helpers used across the library.

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace cubiclab {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Int num(const Rat& q) { return Int(q.get_num()); }
inline Int den(const Rat& q) { return Int(q.get_den()); }

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline Int to_int(const Rat& q) {
    if (!is_integer(q)) throw std::invalid_argument("to_int: not an integer");
    return Int(q.get_num());
}

// Floor of a rational.
inline Int rat_floor(const Rat& q) {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline Int rat_ceil(const Rat& q) {
    Int r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

// Nearest integer, ties toward +infinity. Deterministic.
inline Int round_nearest(const Rat& q) {
    return rat_floor(q + Rat(1, 2));
}

inline Int isqrt(const Int& n) {
    if (n < 0) throw std::invalid_argument("isqrt: negative input");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool perfect_square(const Int& n, Int* root = nullptr) {
    if (n < 0) return false;
    if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return false;
    if (root) *root = isqrt(n);
    return true;
}

// Floor of the k-th root of n >= 0.
inline Int iroot(const Int& n, unsigned long k) {
    if (n < 0) throw std::invalid_argument("iroot: negative input");
    Int r;
    mpz_root(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

inline Int ipow(const Int& b, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

// Nonnegative representative of a mod n (n > 0).
inline Int mod_pos(const Int& a, const Int& n) {
    Int r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline Int gcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int lcm(const Int& a, const Int& b) {
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// g = gcd(a,b) = s*a + t*b.
inline Int xgcd(const Int& a, const Int& b, Int& s, Int& t) {
    Int g;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int mod_inverse(const Int& a, const Int& n) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t()) == 0)
        throw std::domain_error("mod_inverse: not invertible");
    return r;
}

inline Int powmod(const Int& b, const Int& e, const Int& n) {
    Int r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline std::string str(const Int& n) { return n.get_str(); }

inline std::string str(const Rat& q) {
    if (is_integer(q)) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// Best rational approximation to x with denominator <= max_den, via the
// continued-fraction convergent/semiconvergent walk.
Rat best_rational_bounded_den(const Rat& x, const Int& max_den);

}  // namespace cubiclab
