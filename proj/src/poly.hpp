#pragma once

#include "prelude.hpp"

#include <vector>

namespace pisot {

// Integer polynomial, coefficients ascending, no trailing zeros.
// The zero polynomial has an empty coefficient vector and degree -1.
struct IntPoly {
    std::vector<mpz_class> c;

    IntPoly() = default;
    explicit IntPoly(std::vector<mpz_class> coeffs) : c(std::move(coeffs)) { normalize(); }
    static IntPoly from_si(std::initializer_list<long> coeffs);

    void normalize();
    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    bool is_monic() const { return !c.empty() && c.back() == 1; }
    const mpz_class& leading() const { return c.back(); }
    mpz_class constant() const { return c.empty() ? mpz_class(0) : c.front(); }

    IntPoly add(const IntPoly& o) const;
    IntPoly sub(const IntPoly& o) const;
    IntPoly mul(const IntPoly& o) const;
    IntPoly neg() const;
    IntPoly scale(const mpz_class& k) const;
    IntPoly derivative() const;
    // Coefficients reversed: z^deg * p(1/z).
    IntPoly reverse() const;
    // p(-x)
    IntPoly compose_neg() const;
    // p(k*x)
    IntPoly scale_arg(const mpz_class& k) const;
    // k^deg * p(x/k)
    IntPoly scale_arg_inv(const mpz_class& k) const;

    mpz_class content() const;           // nonnegative; 0 only for the zero poly
    IntPoly primitive() const;           // content divided out, sign kept
    IntPoly primitive_normalized() const;  // primitive with positive leading coeff

    mpq_class eval_q(const mpq_class& x) const;
    mpz_class eval_z(const mpz_class& x) const;
    // Sign of p(a / 2^k) computed exactly.
    int sign_at_dyadic(const mpz_class& a, unsigned long k) const;

    bool operator==(const IntPoly& o) const { return c == o.c; }

    std::string to_string() const;
};

// Exact quotient; throws internal_error if the division is not exact.
IntPoly divexact(const IntPoly& a, const IntPoly& b);
// Quotient if the division is exact over Z, nullopt otherwise.
std::optional<IntPoly> try_divide(const IntPoly& a, const IntPoly& b);

// Primitive gcd with positive leading coefficient.
IntPoly gcd_primitive(const IntPoly& a, const IntPoly& b);

bool is_squarefree(const IntPoly& p);

mpz_class det_bareiss(std::vector<std::vector<mpz_class>> m);

// Res(p, q) via the Sylvester matrix.
mpz_class resultant(const IntPoly& p, const IntPoly& q);

mpz_class poly_discriminant(const IntPoly& p);

// Rational polynomial, same conventions.
struct RatPoly {
    std::vector<mpq_class> c;

    RatPoly() = default;
    explicit RatPoly(std::vector<mpq_class> coeffs) : c(std::move(coeffs)) { normalize(); }
    static RatPoly from_int(const IntPoly& p);

    void normalize();
    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    const mpq_class& leading() const { return c.back(); }

    RatPoly add(const RatPoly& o) const;
    RatPoly sub(const RatPoly& o) const;
    RatPoly mul(const RatPoly& o) const;
    RatPoly scale(const mpq_class& k) const;
    mpq_class eval(const mpq_class& x) const;

    // Clears denominators and the content; sign kept.
    IntPoly to_primitive_int() const;
};

// Remainder of a by b, b nonzero.
RatPoly rat_rem(const RatPoly& a, const RatPoly& b);

// Sturm sequence of p (integer, sign-true scaling). p need not be squarefree;
// counts below then count distinct roots.
std::vector<IntPoly> sturm_chain(const IntPoly& p);

int sturm_variations_at(const std::vector<IntPoly>& chain, const mpq_class& x);

// Number of distinct real roots in the open interval (a, b); requires
// p(a) != 0 and p(b) != 0.
int sturm_count_open(const std::vector<IntPoly>& chain, const mpq_class& a, const mpq_class& b);
// Number of distinct real roots in (a, +inf); requires p(a) != 0.
int sturm_count_above(const std::vector<IntPoly>& chain, const mpq_class& a);
int sturm_count_all(const std::vector<IntPoly>& chain);

// Cauchy bound: every complex root has |z| < bound.
mpq_class cauchy_root_bound(const IntPoly& p);

struct CircleRootCount {
    int at_one = 0;        // 1 if z = 1 is a root
    int at_minus_one = 0;  // 1 if z = -1 is a root
    int pair_count = 0;    // conjugate pairs strictly inside the upper/lower circle
    int total() const { return at_one + at_minus_one + 2 * pair_count; }
};

// Exact count of roots of squarefree p on the unit circle |z| = 1.
CircleRootCount count_roots_on_unit_circle(const IntPoly& p);

// Exact count of roots of squarefree p with |z| = 1 after substituting
// x -> scale * x; i.e. roots of p with |root| = scale.
CircleRootCount count_roots_on_circle(const IntPoly& p, const mpq_class& radius);

}  // namespace pisot
