#pragma once

// Exact arithmetic in K = Q(cbrt(m)) over the basis 1, w, w^2 (w^3 = m):
// field/element types, the unit family and its algebraic identities,
// square testing by embedding reconstruction, and minimal polynomials of
// square roots.

#include <optional>

#include "cubiclab/intarith.hpp"
#include "cubiclab/numbers.hpp"

namespace cubiclab::cubic {

struct CubicField {
    Int m;                        // cubefree, >= 2
    std::optional<Int> family_b;  // m = 8b^3 + 3
    std::optional<Int> family_a;  // m = a^3 + 3
    Int disc;                     // field discriminant for squarefree-part data
    bool monogenic = false;       // m squarefree and m != +-1 mod 9

    static CubicField create(const Int& m);
};

// x + y*w + z*w^2 with exact rational coordinates.
class CubicElement {
  public:
    CubicElement(Int m, Rat x, Rat y, Rat z)
        : m_(std::move(m)), x_(std::move(x)), y_(std::move(y)), z_(std::move(z)) {}
    static CubicElement from_integers(const Int& m, const Int& x, const Int& y, const Int& z) {
        return CubicElement(m, Rat(x), Rat(y), Rat(z));
    }

    const Int& m() const { return m_; }
    const Rat& x() const { return x_; }
    const Rat& y() const { return y_; }
    const Rat& z() const { return z_; }

    bool is_zero() const { return x_ == 0 && y_ == 0 && z_ == 0; }
    bool integral() const { return is_integer(x_) && is_integer(y_) && is_integer(z_); }

    CubicElement operator+(const CubicElement& o) const;
    CubicElement operator-(const CubicElement& o) const;
    CubicElement operator*(const CubicElement& o) const;
    CubicElement operator-() const;
    CubicElement scaled(const Rat& s) const { return CubicElement(m_, x_ * s, y_ * s, z_ * s); }
    CubicElement pow(unsigned long n) const;
    bool operator==(const CubicElement& o) const {
        return m_ == o.m_ && x_ == o.x_ && y_ == o.y_ && z_ == o.z_;
    }

    Rat norm() const;   // x^3 + m y^3 + m^2 z^3 - 3 m x y z
    Rat trace() const { return 3 * x_; }
    // Characteristic polynomial of multiplication by this element (monic cubic).
    intarith::Poly charpoly() const;

    std::string str() const;  // e.g. "9-4w", "5+2w+w^2"

  private:
    void require_same_field(const CubicElement& o) const;
    Int m_;
    Rat x_, y_, z_;
};

CubicElement omega(const Int& m);

// The unit 1 + a^2 w - a w^2 for m = a^3 + 3; verified to equal -(1/3)(a-w)^3
// and to have norm 1.
CubicElement family_unit(const CubicField& f);

// eps*alpha = beta^2 together with the norm identity (4b^3+1)^3 - b^3 m^2 = 3b^3+1
// for m = 8b^3+3.
struct FamilyIdentity {
    Int b, m;
    CubicElement eps, alpha, beta;
    CubicElement eps_alpha, beta_sq;
    bool product_matches = false;
    Int norm_lhs, norm_rhs;
    bool norm_matches = false;
    bool ok() const { return product_matches && norm_matches; }
};

FamilyIdentity epsilon_alpha_beta_identity(const Int& b);

// x = 1, y = z = 0 mod 4 (integer coordinates required).
bool congruent_one_mod4(const CubicElement& e);

// Exact sign of the image under the real embedding w -> m^(1/3).
int real_embedding_sign(const CubicElement& e);

enum class SquareStatus { square, not_square, undecided };

struct SquareResult {
    SquareStatus status = SquareStatus::undecided;
    std::optional<CubicElement> root;  // verified exactly when status == square
    unsigned bits_used = 0;
};

// Decides whether e is a square in K by reconstructing candidate square roots
// from the real and complex embeddings at increasing precision, rounding to
// rationals of denominator <= 2*den(e)^2, and verifying exactly. Sound: a
// returned root always squares to e; "not_square" means no root exists within
// the denominator bound (which covers (1/2)Z[w], enough for integral inputs in
// the monogenic case); precision exhaustion yields "undecided".
SquareResult is_square(const CubicElement& e, unsigned max_bits = 10000);

struct SqrtMinpoly {
    std::vector<Int> coeffs;  // ascending, degree 6, content 1
    bool flagged_reducible = false;
    std::string str() const;
};

// charpoly_e(x^2), content-normalized; vanishes at sqrt(e).
SqrtMinpoly minpoly_sqrt(const CubicElement& e);

}  // namespace cubiclab::cubic
