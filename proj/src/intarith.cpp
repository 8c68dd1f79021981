#include "cubiclab/intarith.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace cubiclab {

Rat best_rational_bounded_den(const Rat& x, const Int& max_den) {
    if (max_den < 1) throw std::invalid_argument("best_rational_bounded_den: bound < 1");
    // Continued-fraction walk; stop before the denominator exceeds max_den,
    // then test the best semiconvergent against the last convergent.
    Int p0 = 1, q0 = 0;  // h_{-1}/k_{-1}
    Int p1 = rat_floor(x), q1 = 1;
    Rat frac = x - Rat(p1);
    while (frac != 0) {
        Rat inv = 1 / frac;
        Int a = rat_floor(inv);
        frac = inv - Rat(a);
        Int p2 = a * p1 + p0;
        Int q2 = a * q1 + q0;
        if (q2 > max_den) {
            // Largest partial step keeping the denominator in bounds.
            Int astar = (max_den - q0) / q1;
            Int ps = astar * p1 + p0;
            Int qs = astar * q1 + q0;
            Rat conv = make_rat(p1, q1);
            if (qs >= 1) {
                Rat semi = make_rat(ps, qs);
                if (abs(x - semi) < abs(x - conv)) return semi;
            }
            return conv;
        }
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    }
    return make_rat(p1, q1);
}

}  // namespace cubiclab

namespace cubiclab::intarith {

// ---------------------------------------------------------------------------
// Primality and factorization.

namespace {

constexpr unsigned long kTrialBound = 1000000;

bool miller_rabin_witness(const Int& n, const Int& a) {
    // Returns true if a proves n composite.
    Int nm1 = n - 1;
    unsigned long s = mpz_scan1(nm1.get_mpz_t(), 0);
    Int d = nm1 >> s;
    Int x = powmod(mod_pos(a, n), d, n);
    if (x == 1 || x == nm1) return false;
    for (unsigned long i = 1; i < s; ++i) {
        x = x * x % n;
        if (x == nm1) return false;
    }
    return true;
}

// First primes, used as Miller-Rabin bases. The first 12 prove primality
// for n < 3.3e24; the extension keeps larger inputs deterministic.
const unsigned long kWitnesses[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                                    41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89};

Int pollard_brent(const Int& n) {
    // Brent's cycle variant with deterministic parameters: x0 = 2 and
    // increments c = 1, 2, 3, ...
    for (Int c = 1;; ++c) {
        Int x = 2, y = 2, d = 1, q = 1, ys = 0;
        unsigned long r = 1;
        const unsigned long batch = 128;
        while (d == 1) {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
            unsigned long k = 0;
            while (k < r && d == 1) {
                ys = y;
                unsigned long lim = std::min(batch, r - k);
                for (unsigned long i = 0; i < lim; ++i) {
                    y = (y * y + c) % n;
                    q = q * abs(x - y) % n;
                }
                d = gcd(q, n);
                k += batch;
            }
            r <<= 1;
        }
        if (d == n) {
            // Backtrack one step at a time.
            d = 1;
            while (d == 1) {
                ys = (ys * ys + c) % n;
                d = gcd(abs(x - ys), n);
            }
        }
        if (d != n) return d;
        // Cycle collapsed onto n itself; retry with the next increment.
    }
}

void factor_into(const Int& n, std::map<Int, unsigned>& out);

void factor_composite(const Int& n, std::map<Int, unsigned>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out[n] += 1;
        return;
    }
    // Perfect powers first: keeps Pollard rho off squares.
    if (mpz_perfect_power_p(n.get_mpz_t())) {
        for (unsigned long k = 2; k <= mpz_sizeinbase(n.get_mpz_t(), 2); ++k) {
            Int r = iroot(n, k);
            if (ipow(r, k) == n) {
                std::map<Int, unsigned> base;
                factor_into(r, base);
                for (const auto& [p, e] : base) out[p] += e * static_cast<unsigned>(k);
                return;
            }
        }
    }
    Int d = pollard_brent(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

void factor_into(const Int& n, std::map<Int, unsigned>& out) {
    factor_composite(n, out);
}

}  // namespace

bool is_prime(const Int& n) {
    if (n < 2) return false;
    for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul, 31ul, 37ul}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    for (unsigned long a : kWitnesses) {
        Int base(a);
        if (mod_pos(base, n) == 0) continue;
        if (miller_rabin_witness(n, base)) return false;
    }
    return true;
}

Factorization factor(const Int& n) {
    if (n < 1) throw std::invalid_argument("factor: input must be >= 1");
    Factorization f;
    f.n = n;
    Int rem = n;
    std::map<Int, unsigned> acc;
    // Trial division, stopping early once the remaining cofactor is prime.
    for (unsigned long p = 2; p <= kTrialBound && rem > 1; p = (p == 2 ? 3 : p + 2)) {
        Int pp(p);
        if (pp * pp > rem) break;
        if (rem % pp == 0) {
            unsigned e = 0;
            while (rem % pp == 0) { rem /= pp; ++e; }
            acc[pp] = e;
        }
    }
    if (rem > 1) {
        if (rem <= Int(kTrialBound) * Int(kTrialBound) || is_prime(rem)) {
            acc[rem] += 1;  // below the trial square it must be prime
        } else {
            factor_into(rem, acc);
        }
    }
    for (const auto& [p, e] : acc) f.factors.push_back({p, e});
    return f;
}

Int Factorization::reconstruct() const {
    Int r = 1;
    for (const auto& pe : factors) r *= ipow(pe.p, pe.e);
    return r;
}

std::string Factorization::str() const {
    if (factors.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& pe : factors) {
        if (!first) os << "*";
        os << pe.p.get_str();
        if (pe.e > 1) os << "^" << pe.e;
        first = false;
    }
    return os.str();
}

std::optional<unsigned> Factorization::exponent_of(const Int& p) const {
    for (const auto& pe : factors)
        if (pe.p == p) return pe.e;
    return std::nullopt;
}

int jacobi(const Int& a_in, const Int& n_in) {
    if (n_in <= 0 || n_in % 2 == 0) throw std::invalid_argument("jacobi: modulus must be odd and positive");
    Int a = mod_pos(a_in, n_in), n = n_in;
    int t = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            Int r = n % 8;
            if (r == 3 || r == 5) t = -t;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) t = -t;
        a = a % n;
    }
    return n == 1 ? t : 0;
}

CubefreeProfile cubefree_squarefree_profile(const Int& m) {
    if (m < 2) throw std::invalid_argument("cubefree_squarefree_profile: m must be >= 2");
    Factorization f = factor(m);
    CubefreeProfile prof;
    prof.is_squarefree = true;
    prof.is_cubefree = true;
    for (const auto& pe : f.factors) {
        if (pe.e >= 2) {
            prof.is_squarefree = false;
            if (pe.p % 3 == 2) prof.squared_primes_2mod3.push_back(pe.p);
        }
        if (pe.e >= 3) prof.is_cubefree = false;
    }
    return prof;
}

// ---------------------------------------------------------------------------
// Polynomials.

Poly::Poly(std::vector<Rat> coeffs) : c(std::move(coeffs)) { strip(); }

void Poly::strip() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

Rat Poly::eval(const Rat& x) const {
    Rat r = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
    return r;
}

Poly Poly::derivative() const {
    Poly d;
    for (size_t i = 1; i < c.size(); ++i) d.c.push_back(c[i] * Rat(static_cast<long>(i)));
    d.strip();
    return d;
}

std::string Poly::str(const std::string& var) const {
    if (c.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Rat& q = c[static_cast<size_t>(i)];
        if (q == 0) continue;
        if (!first) os << (q > 0 ? "+" : "-");
        else if (q < 0) os << "-";
        Rat aq = abs(q);
        if (aq != 1 || i == 0) os << cubiclab::str(aq);
        if (i >= 1) {
            if (aq != 1) os << "*";
            os << var;
            if (i >= 2) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

std::vector<Int> Poly::primitive_integer_coeffs() const {
    if (c.empty()) return {};
    Int l = 1;
    for (const Rat& q : c) l = lcm(l, den(q));
    std::vector<Int> v;
    v.reserve(c.size());
    for (const Rat& q : c) v.push_back(to_int(q * Rat(l)));
    Int g = 0;
    for (const Int& x : v) g = gcd(g, x);
    if (g == 0) g = 1;
    if (v.back() < 0) g = -g;
    for (Int& x : v) x /= g;
    return v;
}

Poly poly_add(const Poly& a, const Poly& b) {
    Poly r;
    r.c.resize(std::max(a.c.size(), b.c.size()));
    for (size_t i = 0; i < r.c.size(); ++i) {
        if (i < a.c.size()) r.c[i] += a.c[i];
        if (i < b.c.size()) r.c[i] += b.c[i];
    }
    r.strip();
    return r;
}

Poly poly_sub(const Poly& a, const Poly& b) { return poly_add(a, poly_scale(b, Rat(-1))); }

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.c.empty() || b.c.empty()) return Poly();
    Poly r;
    r.c.assign(a.c.size() + b.c.size() - 1, Rat(0));
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    r.strip();
    return r;
}

Poly poly_scale(const Poly& a, const Rat& s) {
    Poly r = a;
    for (Rat& q : r.c) q *= s;
    r.strip();
    return r;
}

namespace {

// Remainder of a / b over Q.
Poly poly_rem(Poly a, const Poly& b) {
    while (a.degree() >= b.degree() && a.degree() >= 0) {
        Rat q = a.c.back() / b.c.back();
        int shift = a.degree() - b.degree();
        for (size_t i = 0; i < b.c.size(); ++i)
            a.c[i + static_cast<size_t>(shift)] -= q * b.c[i];
        a.strip();
        if (a.degree() < 0) break;
    }
    return a;
}

}  // namespace

Rat resultant(const Poly& a, const Poly& b) {
    if (a.degree() < 0 || b.degree() < 0) return Rat(0);
    // res(a, b) = lc(b)^(deg a - deg r) * (-1)^(deg a * deg b) * res(b, r)
    if (a.degree() == 0) {
        Rat r = 1;
        for (int i = 0; i < b.degree(); ++i) r *= a.c[0];
        return r;
    }
    if (b.degree() == 0) {
        Rat r = 1;
        for (int i = 0; i < a.degree(); ++i) r *= b.c[0];
        return r;
    }
    Poly r = poly_rem(a, b);
    if (r.degree() < 0) return Rat(0);
    Rat lead = b.c.back();
    Rat scale = 1;
    for (int i = 0; i < a.degree() - r.degree(); ++i) scale *= lead;
    Rat sign = (a.degree() * b.degree()) % 2 == 0 ? Rat(1) : Rat(-1);
    return scale * sign * resultant(b, r);
}

Rat poly_discriminant(const Poly& f) {
    int n = f.degree();
    if (n < 1) throw std::invalid_argument("poly_discriminant: degree must be >= 1");
    Rat r = resultant(f, f.derivative()) / f.c.back();
    if ((n * (n - 1) / 2) % 2 == 1) r = -r;
    return r;
}

// ---------------------------------------------------------------------------
// Difference-table fit.

DifferenceFit fit_polynomial(const std::vector<Int>& values) {
    if (values.size() < 2) throw std::invalid_argument("fit_polynomial: need at least 2 values");
    DifferenceFit fit;
    fit.table.push_back(values);
    while (fit.table.back().size() > 1) {
        const auto& prev = fit.table.back();
        std::vector<Int> next;
        next.reserve(prev.size() - 1);
        for (size_t i = 0; i + 1 < prev.size(); ++i) next.push_back(prev[i + 1] - prev[i]);
        fit.table.push_back(std::move(next));
    }
    for (size_t d = 0; d < fit.table.size(); ++d) {
        const auto& row = fit.table[d];
        bool constant = true;
        for (size_t i = 1; i < row.size(); ++i)
            if (row[i] != row[0]) { constant = false; break; }
        if (constant) { fit.constant_order = static_cast<int>(d); break; }
    }
    // Newton forward form anchored at argument 1:
    //   p(x) = sum_j table[j][0] * C(x-1, j)
    Poly p;
    Poly basis(std::vector<Rat>{Rat(1)});
    for (size_t j = 0; j < fit.table.size(); ++j) {
        p = poly_add(p, poly_scale(basis, Rat(fit.table[j][0])));
        // basis *= (x - 1 - j) / (j + 1)
        Poly lin(std::vector<Rat>{Rat(-1 - static_cast<long>(j)), Rat(1)});
        basis = poly_scale(poly_mul(basis, lin), Rat(1, static_cast<long>(j) + 1));
    }
    fit.poly = p;
    fit.integral = true;
    for (const Rat& q : p.c)
        if (!is_integer(q)) { fit.integral = false; break; }
    if (fit.integral) {
        for (const Rat& q : p.c) fit.int_coeffs.push_back(to_int(q));
    }
    return fit;
}

// ---------------------------------------------------------------------------
// Matrices, SNF, relation lattice.

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::mul(const IntMatrix& o) const {
    if (cols != o.rows) throw std::invalid_argument("IntMatrix::mul: shape mismatch");
    IntMatrix r(rows, o.cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k) {
            const Int& x = at(i, k);
            if (x == 0) continue;
            for (int j = 0; j < o.cols; ++j) r.at(i, j) += x * o.at(k, j);
        }
    return r;
}

std::vector<Int> SmithResult::diagonal() const {
    std::vector<Int> d;
    for (int i = 0; i < std::min(S.rows, S.cols); ++i) d.push_back(S.at(i, i));
    return d;
}

namespace {

void swap_rows(IntMatrix& m, int i, int j) {
    if (i == j) return;
    for (int k = 0; k < m.cols; ++k) std::swap(m.at(i, k), m.at(j, k));
}

void swap_cols(IntMatrix& m, int i, int j) {
    if (i == j) return;
    for (int k = 0; k < m.rows; ++k) std::swap(m.at(k, i), m.at(k, j));
}

// row i -= q * row j
void row_sub(IntMatrix& m, int i, int j, const Int& q) {
    if (q == 0) return;
    for (int k = 0; k < m.cols; ++k) m.at(i, k) -= q * m.at(j, k);
}

void col_sub(IntMatrix& m, int i, int j, const Int& q) {
    if (q == 0) return;
    for (int k = 0; k < m.rows; ++k) m.at(k, i) -= q * m.at(k, j);
}

void negate_row(IntMatrix& m, int i) {
    for (int k = 0; k < m.cols; ++k) m.at(i, k) = -m.at(i, k);
}

Int div_nearest(const Int& a, const Int& b) {
    return round_nearest(make_rat(a, b));
}

}  // namespace

SmithResult smith_normal_form(const IntMatrix& A) {
    SmithResult res;
    res.S = A;
    res.U = IntMatrix::identity(A.rows);
    res.V = IntMatrix::identity(A.cols);
    IntMatrix& S = res.S;
    IntMatrix& U = res.U;
    IntMatrix& V = res.V;
    int kmax = std::min(A.rows, A.cols);

    for (int k = 0; k < kmax; ++k) {
        // Pivot: minimal nonzero |entry| in the trailing block.
        int pi = -1, pj = -1;
        for (int i = k; i < S.rows; ++i)
            for (int j = k; j < S.cols; ++j) {
                if (S.at(i, j) == 0) continue;
                if (pi < 0 || abs(S.at(i, j)) < abs(S.at(pi, pj))) { pi = i; pj = j; }
            }
        if (pi < 0) break;  // trailing block is zero
        swap_rows(S, k, pi); swap_rows(U, k, pi);
        swap_cols(S, k, pj); swap_cols(V, k, pj);

        bool again = true;
        while (again) {
            again = false;
            // Clear column k with nearest-quotient steps; a nonzero remainder
            // is strictly smaller than the pivot, so promote it and repeat.
            for (int i = k + 1; i < S.rows; ++i) {
                if (S.at(i, k) == 0) continue;
                Int q = div_nearest(S.at(i, k), S.at(k, k));
                row_sub(S, i, k, q); row_sub(U, i, k, q);
                if (S.at(i, k) != 0) {
                    swap_rows(S, k, i); swap_rows(U, k, i);
                    again = true;
                }
            }
            for (int j = k + 1; j < S.cols; ++j) {
                if (S.at(k, j) == 0) continue;
                Int q = div_nearest(S.at(k, j), S.at(k, k));
                col_sub(S, j, k, q); col_sub(V, j, k, q);
                if (S.at(k, j) != 0) {
                    swap_cols(S, k, j); swap_cols(V, k, j);
                    again = true;
                }
            }
            if (again) continue;
            // Pivot must divide the rest of the block for the divisor chain.
            for (int i = k + 1; i < S.rows && !again; ++i)
                for (int j = k + 1; j < S.cols && !again; ++j)
                    if (S.at(i, j) % S.at(k, k) != 0) {
                        row_sub(S, k, i, Int(-1)); row_sub(U, k, i, Int(-1));
                        again = true;
                    }
        }
        if (S.at(k, k) < 0) { negate_row(S, k); negate_row(U, k); }
    }
    return res;
}

void RelationLattice::add(std::vector<Int> v) {
    if (static_cast<int>(v.size()) != n_) throw std::invalid_argument("RelationLattice::add: wrong length");
    for (int j = 0; j < n_; ++j) {
        if (v[static_cast<size_t>(j)] == 0) continue;
        auto& slot = rows_[static_cast<size_t>(j)];
        if (!slot) {
            if (v[static_cast<size_t>(j)] < 0)
                for (Int& x : v) x = -x;
            slot = std::move(v);
            return;
        }
        std::vector<Int>& r = *slot;
        Int s, t;
        Int g = xgcd(r[static_cast<size_t>(j)], v[static_cast<size_t>(j)], s, t);
        Int rj_g = r[static_cast<size_t>(j)] / g;
        Int vj_g = v[static_cast<size_t>(j)] / g;
        for (int k = 0; k < n_; ++k) {
            Int rk = r[static_cast<size_t>(k)];
            Int vk = v[static_cast<size_t>(k)];
            r[static_cast<size_t>(k)] = s * rk + t * vk;
            v[static_cast<size_t>(k)] = rj_g * vk - vj_g * rk;
        }
    }
}

IntMatrix RelationLattice::basis_matrix() const {
    IntMatrix m(size(), n_);
    int i = 0;
    for (const auto& slot : rows_) {
        if (!slot) continue;
        for (int j = 0; j < n_; ++j) m.at(i, j) = (*slot)[static_cast<size_t>(j)];
        ++i;
    }
    return m;
}

int RelationLattice::size() const {
    int k = 0;
    for (const auto& slot : rows_)
        if (slot) ++k;
    return k;
}

}  // namespace cubiclab::intarith
