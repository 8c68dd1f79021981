#pragma once

// Ideal arithmetic and class groups of Z[w] for squarefree m with
// m != +-1 mod 9 (the monogenic case): prime splitting via x^3 - m mod p,
// element factorization into prime ideals, relation-matrix class groups,
// principality search, point ideal classes, and quadratic residue symbols.

#include <optional>
#include <vector>

#include "cubiclab/cubic.hpp"
#include "cubiclab/mordell.hpp"
#include "cubiclab/numbers.hpp"

namespace cubiclab::classgrp {

enum class PrimeKind { split1, split2, inert, ramified };

struct PrimeIdeal {
    Int p;
    PrimeKind kind = PrimeKind::split1;
    int e = 1;  // ramification index
    int f = 1;  // residue degree
    Int root;   // c with c^3 = m mod p, for kind split1/ramified
    Int q1, q0; // x^2 + q1 x + q0, the degree-2 factor mod p, for kind split2

    Int norm() const;
    std::string label() const;  // "p37r21", "p2q", "p3ram", "p7in"
    bool operator==(const PrimeIdeal& o) const;
    bool operator<(const PrimeIdeal& o) const;
};

// Dedekind splitting of p in Z[w]; valid for squarefree m with m != +-1 mod 9.
// Ideals are returned with ascending roots first, then the degree-2/3 part.
std::vector<PrimeIdeal> split_prime(const Int& p, const Int& m);

struct IdealFactor {
    PrimeIdeal ideal;
    int exponent = 0;
    bool operator==(const IdealFactor& o) const { return ideal == o.ideal && exponent == o.exponent; }
};

using IdealExponents = std::vector<IdealFactor>;

Int ideal_norm(const IdealExponents& factors);
std::string ideal_str(const IdealExponents& factors);

struct ElementFactorization {
    cubic::CubicElement element;
    IdealExponents factors;  // sorted, nonzero exponents
    Int norm;                // norm of the element (signed)
};

// Exact prime-ideal valuations of a nonzero integral element; norms are
// accounted for exactly (product of ideal norms = |N(e)|).
ElementFactorization factor_element(const cubic::CubicElement& e);

// Ceiling of (4/pi)(3!/3^3) sqrt(|d_K|) with d_K = -27 m^2, as an exact
// integer upper estimate.
Int minkowski_bound(const Int& m);

struct ClassGroup {
    Int m;
    Int bound;                           // minkowski_bound(m)
    std::vector<PrimeIdeal> factor_base; // all prime ideals of norm <= bound
    std::vector<Int> divisors;           // elementary divisors > 1
    Int h = 0;                           // class number (product of divisors); 0 if unstabilized
    std::vector<std::vector<Int>> fb_vectors;  // class vector per factor-base ideal
    bool stabilized = false;
    long relations_total = 0;
    Int relation_bound;

    std::string structure_str() const;  // "trivial", "Z/2", "Z/3 x Z/6"
    // Class vector of an arbitrary prime ideal; non-factor-base primes are
    // resolved by a short-element search in the ideal lattice.
    std::vector<Int> class_of_prime(const PrimeIdeal& P) const;
    std::vector<Int> class_of(const IdealExponents& factors) const;
    bool is_zero_vector(const std::vector<Int>& v) const;
};

ClassGroup class_group(const Int& m, const Int& relation_bound);

struct PointIdealClass {
    mordell::CurvePoint point;
    cubic::CubicElement alpha;        // r - t^2 w
    IdealExponents alpha_factors;     // (alpha) = prod P^(2a)
    IdealExponents half;              // the ideal with (alpha) = half^2
    std::vector<Int> class_vector;
    bool trivial = false;
    std::optional<Int> violation_prime;  // set if an odd exponent appears
};

// Certified (alpha) = a_P^2 decomposition and the class of a_P.
PointIdealClass point_ideal_class(const mordell::CurvePoint& p, const ClassGroup& cg);

enum class Principality { principal, not_principal, not_found_under_bound };

struct PrincipalityResult {
    Principality status = Principality::not_found_under_bound;
    std::optional<cubic::CubicElement> generator;  // verified by exact refactorization
};

// Bounded coordinate-box search for a generator; "not principal" is reported
// only from a nonzero class vector in a stabilized group.
PrincipalityResult is_principal(const IdealExponents& ideal, const ClassGroup& cg,
                                const Int& coord_bound = Int(12));

// [e / P]_2 for a degree-1 prime ideal P of odd norm p not dividing N(e).
int quadratic_symbol(const cubic::CubicElement& e, const PrimeIdeal& P);

}  // namespace cubiclab::classgrp
