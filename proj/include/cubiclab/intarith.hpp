#pragma once

// Integer utilities: deterministic factorization, residue symbols,
// square/cube-free profiles, difference-table polynomial fitting, and
// Smith normal form of integer matrices.

#include <optional>
#include <vector>

#include "cubiclab/numbers.hpp"

namespace cubiclab::intarith {

struct PrimePower {
    Int p;
    unsigned e = 1;
    bool operator==(const PrimePower& o) const { return p == o.p && e == o.e; }
};

struct Factorization {
    Int n;
    std::vector<PrimePower> factors;  // primes strictly increasing

    Int reconstruct() const;
    // "5*11*41^2*61"; "1" for the empty factorization.
    std::string str() const;
    std::optional<unsigned> exponent_of(const Int& p) const;
};

// Deterministic Miller-Rabin (fixed witness set, proven for n < 3.3e24;
// larger inputs get an extended fixed witness set).
bool is_prime(const Int& n);

// n >= 1. Trial division to 1e6, then perfect-power extraction and
// Pollard rho (Brent) with deterministic parameters.
Factorization factor(const Int& n);

// Jacobi symbol (a/n) for odd n >= 1.
int jacobi(const Int& a, const Int& n);

struct CubefreeProfile {
    bool is_squarefree = false;
    bool is_cubefree = false;
    std::vector<Int> squared_primes_2mod3;  // primes p with p^2 | m, p = 2 mod 3
};

CubefreeProfile cubefree_squarefree_profile(const Int& m);

// ---------------------------------------------------------------------------
// Rational polynomials (ascending coefficients).

struct Poly {
    std::vector<Rat> c;

    Poly() = default;
    explicit Poly(std::vector<Rat> coeffs);

    int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
    Rat eval(const Rat& x) const;
    Poly derivative() const;
    void strip();  // drop leading zeros
    bool operator==(const Poly& o) const { return c == o.c; }
    std::string str(const std::string& var = "x") const;

    // Integer coefficient vector after clearing denominators and dividing by
    // content; sign normalized to positive leading coefficient.
    std::vector<Int> primitive_integer_coeffs() const;
};

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, const Rat& s);

// Resultant of a and b (exact, fraction-field Euclidean algorithm).
Rat resultant(const Poly& a, const Poly& b);

// disc(f) = (-1)^(n(n-1)/2) Res(f, f') / lc(f).
Rat poly_discriminant(const Poly& f);

// ---------------------------------------------------------------------------
// Newton forward-difference fit for values at arguments 1..k.

struct DifferenceFit {
    std::vector<std::vector<Int>> table;  // table[0] = input values
    int constant_order = -1;              // least d with constant d-th differences
    Poly poly;                            // unique interpolant of degree < k
    bool integral = false;                // all coefficients integers
    std::vector<Int> int_coeffs;          // set when integral
};

DifferenceFit fit_polynomial(const std::vector<Int>& values);

// ---------------------------------------------------------------------------
// Integer matrices and Smith normal form.

struct IntMatrix {
    int rows = 0, cols = 0;
    std::vector<Int> a;  // row-major

    IntMatrix() = default;
    IntMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    Int& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Int& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static IntMatrix identity(int n);
    IntMatrix mul(const IntMatrix& o) const;
    bool operator==(const IntMatrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

struct SmithResult {
    IntMatrix U, S, V;  // U*A*V = S, U and V unimodular, S diagonal, d1 | d2 | ...
    std::vector<Int> diagonal() const;
};

SmithResult smith_normal_form(const IntMatrix& A);

// Incremental integer row-echelon accumulator: keeps a basis of the lattice
// generated by the added rows. Used to pre-reduce large relation streams
// before the SNF step.
class RelationLattice {
  public:
    explicit RelationLattice(int n) : n_(n), rows_(static_cast<size_t>(n)) {}
    void add(std::vector<Int> v);
    // Basis rows stacked by pivot column; k x n with k <= n.
    IntMatrix basis_matrix() const;
    int size() const;

  private:
    int n_;
    std::vector<std::optional<std::vector<Int>>> rows_;  // indexed by pivot column
};

}  // namespace cubiclab::intarith
