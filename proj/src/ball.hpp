#pragma once

#include "prelude.hpp"

#include <string>
#include <utility>
#include <vector>

namespace pisot {

// RAII wrapper over mpfr_t.
class Real {
  public:
    explicit Real(mpfr_prec_t prec = 64) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, 2);
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    int sgn() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  private:
    mpfr_t v_;
};

// Closed interval c +/- r. The radius is a certified upper bound on the
// distance from the center to any value the ball represents; every operation
// widens r to absorb its own rounding.
class RBall {
  public:
    static constexpr mpfr_prec_t kRadPrec = 32;

    RBall() : RBall(64) {}
    explicit RBall(mpfr_prec_t prec) : c_(prec), r_(kRadPrec) {}

    static RBall from_si(long v, mpfr_prec_t prec);
    static RBall from_mpz(const mpz_class& v, mpfr_prec_t prec);
    static RBall from_mpq(const mpq_class& v, mpfr_prec_t prec);
    // Exact point ball from an existing float value.
    static RBall from_real(Real c);
    // Ball covering [lo, hi].
    static RBall from_endpoints(const Real& lo, const Real& hi, mpfr_prec_t prec);
    static RBall pi(mpfr_prec_t prec);

    const Real& center() const { return c_; }
    const Real& radius() const { return r_; }
    mpfr_prec_t prec() const { return c_.prec(); }
    bool exact() const { return r_.is_zero(); }

    RBall add(const RBall& o) const;
    RBall sub(const RBall& o) const;
    RBall mul(const RBall& o) const;
    RBall mul_mpz(const mpz_class& k) const;
    // Requires the divisor to exclude zero; throws precision_error otherwise.
    RBall div(const RBall& o) const;
    RBall neg() const;
    RBall abs() const;
    RBall mul_2exp(long k) const;
    // Requires a nonnegative upper endpoint; the lower endpoint is clamped at 0.
    RBall sqrt() const;
    RBall pow_ui(unsigned long e) const;
    static RBall max(const RBall& a, const RBall& b);

    Real lower() const;  // rounded down
    Real upper() const;  // rounded up
    // 0 when the ball straddles zero or is the exact zero point.
    int sign() const;
    bool contains_zero() const;

    Tri less_than(const RBall& o) const;
    Tri less_than_mpq(const mpq_class& q) const;
    // Compares |this| against an exact nonnegative bound.
    Tri abs_leq_mpq(const mpq_class& q) const;

    // The unique integer in the ball, if the ball rounds to exactly one.
    std::optional<mpz_class> unique_integer_floor() const;
    std::optional<mpz_class> unique_integer_round() const;

    // Shortest decimal string that identifies the center; digits fixed so the
    // output is stable across runs.
    std::string to_string(int digits = 20) const;
    double center_double() const { return c_.to_double(); }
    double radius_double() const { return mpfr_get_d(r_.raw(), MPFR_RNDU); }

  private:
    Real c_;
    Real r_;

    void bump_ulp(int ternary);
    friend class CBall;
};

// Complex disc: center (re, im), radius r.
class CBall {
  public:
    CBall() : CBall(64) {}
    explicit CBall(mpfr_prec_t prec) : re_(prec), im_(prec), r_(RBall::kRadPrec) {}
    CBall(const RBall& re, const RBall& im);
    static CBall from_rball(const RBall& x);
    static CBall from_mpq(const mpq_class& re, const mpq_class& im, mpfr_prec_t prec);

    const Real& re_center() const { return re_; }
    const Real& im_center() const { return im_; }
    const Real& radius() const { return r_; }
    mpfr_prec_t prec() const { return re_.prec(); }

    CBall add(const CBall& o) const;
    CBall sub(const CBall& o) const;
    CBall mul(const CBall& o) const;
    CBall mul_mpz(const mpz_class& k) const;
    // Requires the divisor disc to exclude zero.
    CBall div(const CBall& o) const;
    CBall neg() const;
    CBall conj() const;
    CBall inflate(const Real& extra) const;

    RBall abs() const;
    RBall real_part() const;
    RBall imag_part() const;

    // Upper bound on |center| + r.
    Real abs_upper() const;
    // Lower bound on |center| - r, clamped at 0.
    Real abs_lower() const;

    bool contains_zero() const;
    // Whether the disc is disjoint from disc o.
    Tri disjoint(const CBall& o) const;
    // Whether this disc is contained in the closed disc o.
    Tri contained_in(const CBall& o) const;

    std::string to_string(int digits = 20) const;

  private:
    Real re_, im_, r_;
};

// Evaluates sum coeffs[k] * x^k by Horner.
RBall eval_poly(const std::vector<mpz_class>& coeffs, const RBall& x);
CBall eval_poly(const std::vector<mpz_class>& coeffs, const CBall& x);
RBall eval_poly_q(const std::vector<mpq_class>& coeffs, const RBall& x);
CBall eval_poly_q(const std::vector<mpq_class>& coeffs, const CBall& x);

std::string real_to_string(mpfr_srcptr v, int digits);

}  // namespace pisot
