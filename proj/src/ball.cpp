#include "ball.hpp"

#include <algorithm>
#include <cstdio>

namespace pisot {

namespace {

// Adds 2^(exp(c) - prec(c) + bits) to r, an upper bound on `bits` ulps of c.
void add_ulps(Real& r, const Real& c, int bits) {
    if (c.is_zero()) return;
    mpfr_exp_t e = mpfr_get_exp(c.raw());
    mpfr_t u;
    mpfr_init2(u, 8);
    mpfr_set_ui_2exp(u, 1, e - c.prec() + bits, MPFR_RNDU);
    mpfr_add(r.raw(), r.raw(), u, MPFR_RNDU);
    mpfr_clear(u);
}

void radd(Real& r, const Real& x) { mpfr_add(r.raw(), r.raw(), x.raw(), MPFR_RNDU); }

Real abs_up(const Real& x) {
    Real a(RBall::kRadPrec);
    mpfr_abs(a.raw(), x.raw(), MPFR_RNDU);
    return a;
}

Real abs_down(const Real& x) {
    Real a(RBall::kRadPrec);
    mpfr_abs(a.raw(), x.raw(), MPFR_RNDD);
    return a;
}

}  // namespace

void RBall::bump_ulp(int ternary) {
    if (ternary != 0) add_ulps(r_, c_, 1);
}

RBall RBall::from_si(long v, mpfr_prec_t prec) {
    RBall b(prec);
    int t = mpfr_set_si(b.c_.raw(), v, MPFR_RNDN);
    b.bump_ulp(t);
    return b;
}

RBall RBall::from_mpz(const mpz_class& v, mpfr_prec_t prec) {
    RBall b(prec);
    int t = mpfr_set_z(b.c_.raw(), v.get_mpz_t(), MPFR_RNDN);
    b.bump_ulp(t);
    return b;
}

RBall RBall::from_mpq(const mpq_class& v, mpfr_prec_t prec) {
    RBall b(prec);
    int t = mpfr_set_q(b.c_.raw(), v.get_mpq_t(), MPFR_RNDN);
    b.bump_ulp(t);
    return b;
}

RBall RBall::from_real(Real c) {
    RBall b(c.prec());
    b.c_ = std::move(c);
    return b;
}

RBall RBall::from_endpoints(const Real& lo, const Real& hi, mpfr_prec_t prec) {
    RBall b(prec);
    // halving is exact, so only the midpoint add can round
    int t = mpfr_add(b.c_.raw(), lo.raw(), hi.raw(), MPFR_RNDN);
    mpfr_div_2ui(b.c_.raw(), b.c_.raw(), 1, MPFR_RNDN);
    Real half(kRadPrec);
    mpfr_sub(half.raw(), hi.raw(), lo.raw(), MPFR_RNDU);
    mpfr_div_2ui(half.raw(), half.raw(), 1, MPFR_RNDU);
    b.r_ = half;
    b.bump_ulp(t);
    return b;
}

RBall RBall::pi(mpfr_prec_t prec) {
    RBall b(prec);
    mpfr_const_pi(b.c_.raw(), MPFR_RNDN);
    b.bump_ulp(1);
    return b;
}

RBall RBall::add(const RBall& o) const {
    RBall out(std::max(prec(), o.prec()));
    int t = mpfr_add(out.c_.raw(), c_.raw(), o.c_.raw(), MPFR_RNDN);
    out.r_ = r_;
    radd(out.r_, o.r_);
    out.bump_ulp(t);
    return out;
}

RBall RBall::sub(const RBall& o) const {
    RBall out(std::max(prec(), o.prec()));
    int t = mpfr_sub(out.c_.raw(), c_.raw(), o.c_.raw(), MPFR_RNDN);
    out.r_ = r_;
    radd(out.r_, o.r_);
    out.bump_ulp(t);
    return out;
}

RBall RBall::mul(const RBall& o) const {
    RBall out(std::max(prec(), o.prec()));
    int t = mpfr_mul(out.c_.raw(), c_.raw(), o.c_.raw(), MPFR_RNDN);
    Real a1 = abs_up(c_), a2 = abs_up(o.c_);
    Real term(kRadPrec);
    mpfr_mul(term.raw(), a1.raw(), o.r_.raw(), MPFR_RNDU);
    radd(out.r_, term);
    mpfr_mul(term.raw(), a2.raw(), r_.raw(), MPFR_RNDU);
    radd(out.r_, term);
    mpfr_mul(term.raw(), r_.raw(), o.r_.raw(), MPFR_RNDU);
    radd(out.r_, term);
    out.bump_ulp(t);
    return out;
}

RBall RBall::mul_mpz(const mpz_class& k) const {
    RBall out(prec());
    int t = mpfr_mul_z(out.c_.raw(), c_.raw(), k.get_mpz_t(), MPFR_RNDN);
    Real ka(kRadPrec);
    mpfr_set_z(ka.raw(), k.get_mpz_t(), MPFR_RNDU);
    mpfr_abs(ka.raw(), ka.raw(), MPFR_RNDU);
    mpfr_mul(out.r_.raw(), r_.raw(), ka.raw(), MPFR_RNDU);
    out.bump_ulp(t);
    return out;
}

RBall RBall::mul_2exp(long k) const {
    RBall out(prec());
    mpfr_mul_2si(out.c_.raw(), c_.raw(), k, MPFR_RNDN);
    mpfr_mul_2si(out.r_.raw(), r_.raw(), k, MPFR_RNDU);
    return out;
}

RBall RBall::div(const RBall& o) const {
    Real bl = abs_down(o.c_);
    Real gap(kRadPrec);
    mpfr_sub(gap.raw(), bl.raw(), o.r_.raw(), MPFR_RNDD);
    if (mpfr_sgn(gap.raw()) <= 0)
        throw precision_error("ball division: divisor interval touches zero");
    RBall out(std::max(prec(), o.prec()));
    int t = mpfr_div(out.c_.raw(), c_.raw(), o.c_.raw(), MPFR_RNDN);
    // |x/y - a/b| <= (|b| ra + |a| rb) / (|b| (|b| - rb))
    Real num(kRadPrec), term(kRadPrec), den(kRadPrec);
    Real au = abs_up(c_), bu = abs_up(o.c_);
    mpfr_mul(num.raw(), bu.raw(), r_.raw(), MPFR_RNDU);
    mpfr_mul(term.raw(), au.raw(), o.r_.raw(), MPFR_RNDU);
    mpfr_add(num.raw(), num.raw(), term.raw(), MPFR_RNDU);
    mpfr_mul(den.raw(), bl.raw(), gap.raw(), MPFR_RNDD);
    mpfr_div(term.raw(), num.raw(), den.raw(), MPFR_RNDU);
    radd(out.r_, term);
    out.bump_ulp(t);
    return out;
}

RBall RBall::neg() const {
    RBall out(prec());
    mpfr_neg(out.c_.raw(), c_.raw(), MPFR_RNDN);
    out.r_ = r_;
    return out;
}

RBall RBall::abs() const {
    RBall out(prec());
    mpfr_abs(out.c_.raw(), c_.raw(), MPFR_RNDN);
    out.r_ = r_;
    return out;
}

RBall RBall::sqrt() const {
    Real lo = lower(), hi = upper();
    if (mpfr_sgn(hi.raw()) < 0) throw precision_error("sqrt of negative ball");
    if (mpfr_sgn(lo.raw()) < 0) mpfr_set_zero(lo.raw(), 1);
    Real slo(prec()), shi(prec());
    mpfr_sqrt(slo.raw(), lo.raw(), MPFR_RNDD);
    mpfr_sqrt(shi.raw(), hi.raw(), MPFR_RNDU);
    return from_endpoints(slo, shi, prec());
}

RBall RBall::pow_ui(unsigned long e) const {
    RBall acc = from_si(1, prec());
    RBall base = *this;
    while (e > 0) {
        if (e & 1) acc = acc.mul(base);
        e >>= 1;
        if (e) base = base.mul(base);
    }
    return acc;
}

RBall RBall::max(const RBall& a, const RBall& b) {
    Real lo(std::max(a.prec(), b.prec())), hi(lo.prec());
    Real al = a.lower(), bl = b.lower(), au = a.upper(), bu = b.upper();
    mpfr_max(lo.raw(), al.raw(), bl.raw(), MPFR_RNDD);
    mpfr_max(hi.raw(), au.raw(), bu.raw(), MPFR_RNDU);
    return from_endpoints(lo, hi, lo.prec());
}

Real RBall::lower() const {
    Real out(prec());
    mpfr_sub(out.raw(), c_.raw(), r_.raw(), MPFR_RNDD);
    return out;
}

Real RBall::upper() const {
    Real out(prec());
    mpfr_add(out.raw(), c_.raw(), r_.raw(), MPFR_RNDU);
    return out;
}

int RBall::sign() const {
    if (r_.is_zero()) return c_.sgn();
    Real lo = lower();
    if (mpfr_sgn(lo.raw()) > 0) return 1;
    Real hi = upper();
    if (mpfr_sgn(hi.raw()) < 0) return -1;
    return 0;
}

bool RBall::contains_zero() const { return sign() == 0; }

Tri RBall::less_than(const RBall& o) const {
    Real a = upper(), b = o.lower();
    if (mpfr_cmp(a.raw(), b.raw()) < 0) return Tri::True;
    Real c = lower(), d = o.upper();
    if (mpfr_cmp(c.raw(), d.raw()) >= 0) return Tri::False;
    return Tri::Unknown;
}

Tri RBall::less_than_mpq(const mpq_class& q) const {
    Real a = upper();
    if (mpfr_cmp_q(a.raw(), q.get_mpq_t()) < 0) return Tri::True;
    Real b = lower();
    if (mpfr_cmp_q(b.raw(), q.get_mpq_t()) >= 0) return Tri::False;
    return Tri::Unknown;
}

Tri RBall::abs_leq_mpq(const mpq_class& q) const {
    RBall a = abs();
    Real hi = a.upper();
    if (mpfr_cmp_q(hi.raw(), q.get_mpq_t()) <= 0) return Tri::True;
    Real lo = a.lower();
    if (mpfr_cmp_q(lo.raw(), q.get_mpq_t()) > 0) return Tri::False;
    return Tri::Unknown;
}

std::optional<mpz_class> RBall::unique_integer_floor() const {
    Real lo = lower(), hi = upper();
    mpz_class a, b;
    mpfr_get_z(a.get_mpz_t(), lo.raw(), MPFR_RNDD);
    mpfr_get_z(b.get_mpz_t(), hi.raw(), MPFR_RNDD);
    if (a == b) return a;
    return std::nullopt;
}

std::optional<mpz_class> RBall::unique_integer_round() const {
    Real lo = lower(), hi = upper();
    mpz_class a, b;
    mpfr_get_z(a.get_mpz_t(), lo.raw(), MPFR_RNDN);
    mpfr_get_z(b.get_mpz_t(), hi.raw(), MPFR_RNDN);
    if (a == b) return a;
    return std::nullopt;
}

std::string RBall::to_string(int digits) const { return real_to_string(c_.raw(), digits); }

std::string real_to_string(mpfr_srcptr v, int digits) {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Re", digits, v);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

CBall::CBall(const RBall& re, const RBall& im)
    : re_(std::max(re.prec(), im.prec())), im_(re_.prec()), r_(RBall::kRadPrec) {
    mpfr_set(re_.raw(), re.center().raw(), MPFR_RNDN);
    mpfr_set(im_.raw(), im.center().raw(), MPFR_RNDN);
    mpfr_hypot(r_.raw(), re.radius().raw(), im.radius().raw(), MPFR_RNDU);
    add_ulps(r_, r_, 1);
}

CBall CBall::from_rball(const RBall& x) {
    CBall out(x.prec());
    mpfr_set(out.re_.raw(), x.center().raw(), MPFR_RNDN);
    out.r_ = x.radius();
    return out;
}

CBall CBall::from_mpq(const mpq_class& re, const mpq_class& im, mpfr_prec_t prec) {
    RBall a = RBall::from_mpq(re, prec), b = RBall::from_mpq(im, prec);
    return CBall(a, b);
}

CBall CBall::add(const CBall& o) const {
    CBall out(std::max(prec(), o.prec()));
    int t1 = mpfr_add(out.re_.raw(), re_.raw(), o.re_.raw(), MPFR_RNDN);
    int t2 = mpfr_add(out.im_.raw(), im_.raw(), o.im_.raw(), MPFR_RNDN);
    out.r_ = r_;
    radd(out.r_, o.r_);
    if (t1) add_ulps(out.r_, out.re_, 1);
    if (t2) add_ulps(out.r_, out.im_, 1);
    return out;
}

CBall CBall::sub(const CBall& o) const { return add(o.neg()); }

CBall CBall::mul(const CBall& o) const {
    mpfr_prec_t p = std::max(prec(), o.prec());
    CBall out(p);
    Real p1(p), p2(p);
    // real part
    int t1 = mpfr_mul(p1.raw(), re_.raw(), o.re_.raw(), MPFR_RNDN);
    int t2 = mpfr_mul(p2.raw(), im_.raw(), o.im_.raw(), MPFR_RNDN);
    int t3 = mpfr_sub(out.re_.raw(), p1.raw(), p2.raw(), MPFR_RNDN);
    if (t1) add_ulps(out.r_, p1, 1);
    if (t2) add_ulps(out.r_, p2, 1);
    if (t3) add_ulps(out.r_, out.re_, 1);
    // imaginary part
    t1 = mpfr_mul(p1.raw(), re_.raw(), o.im_.raw(), MPFR_RNDN);
    t2 = mpfr_mul(p2.raw(), im_.raw(), o.re_.raw(), MPFR_RNDN);
    t3 = mpfr_add(out.im_.raw(), p1.raw(), p2.raw(), MPFR_RNDN);
    if (t1) add_ulps(out.r_, p1, 1);
    if (t2) add_ulps(out.r_, p2, 1);
    if (t3) add_ulps(out.r_, out.im_, 1);
    // |z1| r2 + |z2| r1 + r1 r2
    Real m1(RBall::kRadPrec), m2(RBall::kRadPrec), term(RBall::kRadPrec);
    mpfr_hypot(m1.raw(), re_.raw(), im_.raw(), MPFR_RNDU);
    mpfr_hypot(m2.raw(), o.re_.raw(), o.im_.raw(), MPFR_RNDU);
    mpfr_mul(term.raw(), m1.raw(), o.r_.raw(), MPFR_RNDU);
    radd(out.r_, term);
    mpfr_mul(term.raw(), m2.raw(), r_.raw(), MPFR_RNDU);
    radd(out.r_, term);
    mpfr_mul(term.raw(), r_.raw(), o.r_.raw(), MPFR_RNDU);
    radd(out.r_, term);
    return out;
}

CBall CBall::mul_mpz(const mpz_class& k) const {
    CBall out(prec());
    int t1 = mpfr_mul_z(out.re_.raw(), re_.raw(), k.get_mpz_t(), MPFR_RNDN);
    int t2 = mpfr_mul_z(out.im_.raw(), im_.raw(), k.get_mpz_t(), MPFR_RNDN);
    Real ka(RBall::kRadPrec);
    mpfr_set_z(ka.raw(), k.get_mpz_t(), MPFR_RNDU);
    mpfr_abs(ka.raw(), ka.raw(), MPFR_RNDU);
    mpfr_mul(out.r_.raw(), r_.raw(), ka.raw(), MPFR_RNDU);
    if (t1) add_ulps(out.r_, out.re_, 1);
    if (t2) add_ulps(out.r_, out.im_, 1);
    return out;
}

CBall CBall::div(const CBall& o) const {
    // Inverse of o: center conj(c)/|c|^2, radius r/(|c|_lo (|c|_lo - r)).
    Real clo(RBall::kRadPrec);
    mpfr_hypot(clo.raw(), o.re_.raw(), o.im_.raw(), MPFR_RNDD);
    Real gap(RBall::kRadPrec);
    mpfr_sub(gap.raw(), clo.raw(), o.r_.raw(), MPFR_RNDD);
    if (mpfr_sgn(gap.raw()) <= 0)
        throw precision_error("disc division: divisor disc touches zero");
    mpfr_prec_t p = std::max(prec(), o.prec());
    CBall inv(p);
    Real n2(p);
    int t1 = mpfr_sqr(n2.raw(), o.re_.raw(), MPFR_RNDN);
    Real tmp(p);
    int t2 = mpfr_sqr(tmp.raw(), o.im_.raw(), MPFR_RNDN);
    int t3 = mpfr_add(n2.raw(), n2.raw(), tmp.raw(), MPFR_RNDN);
    int t4 = mpfr_div(inv.re_.raw(), o.re_.raw(), n2.raw(), MPFR_RNDN);
    int t5 = mpfr_div(inv.im_.raw(), o.im_.raw(), n2.raw(), MPFR_RNDN);
    mpfr_neg(inv.im_.raw(), inv.im_.raw(), MPFR_RNDN);
    Real rad(RBall::kRadPrec);
    mpfr_mul(rad.raw(), clo.raw(), gap.raw(), MPFR_RNDD);
    mpfr_div(rad.raw(), o.r_.raw(), rad.raw(), MPFR_RNDU);
    inv.r_ = rad;
    // slack for the five rounded center operations
    if (t1 | t2 | t3 | t4 | t5) {
        add_ulps(inv.r_, inv.re_, 3);
        add_ulps(inv.r_, inv.im_, 3);
    }
    return mul(inv);
}

CBall CBall::neg() const {
    CBall out(prec());
    mpfr_neg(out.re_.raw(), re_.raw(), MPFR_RNDN);
    mpfr_neg(out.im_.raw(), im_.raw(), MPFR_RNDN);
    out.r_ = r_;
    return out;
}

CBall CBall::conj() const {
    CBall out = *this;
    mpfr_neg(out.im_.raw(), out.im_.raw(), MPFR_RNDN);
    return out;
}

CBall CBall::inflate(const Real& extra) const {
    CBall out = *this;
    mpfr_add(out.r_.raw(), out.r_.raw(), extra.raw(), MPFR_RNDU);
    return out;
}

RBall CBall::abs() const {
    // |  |z| - |c|  | <= |z - c| <= r
    RBall res(prec());
    int t = mpfr_hypot(res.c_.raw(), re_.raw(), im_.raw(), MPFR_RNDN);
    mpfr_set(res.r_.raw(), r_.raw(), MPFR_RNDU);
    res.bump_ulp(t);
    return res;
}

RBall CBall::real_part() const {
    RBall res(prec());
    mpfr_set(res.c_.raw(), re_.raw(), MPFR_RNDN);
    mpfr_set(res.r_.raw(), r_.raw(), MPFR_RNDU);
    return res;
}

RBall CBall::imag_part() const {
    RBall res(prec());
    mpfr_set(res.c_.raw(), im_.raw(), MPFR_RNDN);
    mpfr_set(res.r_.raw(), r_.raw(), MPFR_RNDU);
    return res;
}

Real CBall::abs_upper() const {
    Real h(RBall::kRadPrec);
    mpfr_hypot(h.raw(), re_.raw(), im_.raw(), MPFR_RNDU);
    mpfr_add(h.raw(), h.raw(), r_.raw(), MPFR_RNDU);
    return h;
}

Real CBall::abs_lower() const {
    Real h(RBall::kRadPrec);
    mpfr_hypot(h.raw(), re_.raw(), im_.raw(), MPFR_RNDD);
    mpfr_sub(h.raw(), h.raw(), r_.raw(), MPFR_RNDD);
    if (mpfr_sgn(h.raw()) < 0) mpfr_set_zero(h.raw(), 1);
    return h;
}

bool CBall::contains_zero() const {
    Real lo = abs_lower();
    return mpfr_sgn(lo.raw()) <= 0;
}

Tri CBall::disjoint(const CBall& o) const {
    CBall d = sub(o);
    Real dist_lo = d.abs_lower(), dist_hi = d.abs_upper();
    Real rsum(RBall::kRadPrec);
    mpfr_add(rsum.raw(), r_.raw(), o.r_.raw(), MPFR_RNDU);
    if (mpfr_cmp(dist_lo.raw(), rsum.raw()) > 0) return Tri::True;
    mpfr_add(rsum.raw(), r_.raw(), o.r_.raw(), MPFR_RNDD);
    if (mpfr_cmp(dist_hi.raw(), rsum.raw()) < 0) return Tri::False;
    return Tri::Unknown;
}

Tri CBall::contained_in(const CBall& o) const {
    CBall d = sub(o);
    // d carries both radii in d.r_; containment needs |c1-c2| + r1 <= r2,
    // so measure center distance without the radii.
    Real dist_hi(RBall::kRadPrec), dist_lo(RBall::kRadPrec);
    mpfr_hypot(dist_hi.raw(), d.re_.raw(), d.im_.raw(), MPFR_RNDU);
    mpfr_hypot(dist_lo.raw(), d.re_.raw(), d.im_.raw(), MPFR_RNDD);
    Real lhs(RBall::kRadPrec);
    mpfr_add(lhs.raw(), dist_hi.raw(), r_.raw(), MPFR_RNDU);
    // ulp slop for the rounded center subtraction inside sub()
    add_ulps(lhs, lhs, 1);
    if (mpfr_cmp(lhs.raw(), o.r_.raw()) <= 0) return Tri::True;
    Real lhs2(RBall::kRadPrec);
    mpfr_sub(lhs2.raw(), dist_lo.raw(), r_.raw(), MPFR_RNDD);
    add_ulps(lhs2, lhs2, -1);
    if (mpfr_cmp(lhs2.raw(), o.r_.raw()) > 0) return Tri::False;
    return Tri::Unknown;
}

std::string CBall::to_string(int digits) const {
    return "(" + real_to_string(re_.raw(), digits) + ", " + real_to_string(im_.raw(), digits) + ")";
}

RBall eval_poly(const std::vector<mpz_class>& coeffs, const RBall& x) {
    RBall acc = RBall::from_si(0, x.prec());
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        acc = acc.mul(x).add(RBall::from_mpz(*it, x.prec()));
    return acc;
}

CBall eval_poly(const std::vector<mpz_class>& coeffs, const CBall& x) {
    CBall acc(x.prec());
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        acc = acc.mul(x).add(CBall::from_rball(RBall::from_mpz(*it, x.prec())));
    return acc;
}

RBall eval_poly_q(const std::vector<mpq_class>& coeffs, const RBall& x) {
    RBall acc = RBall::from_si(0, x.prec());
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        acc = acc.mul(x).add(RBall::from_mpq(*it, x.prec()));
    return acc;
}

CBall eval_poly_q(const std::vector<mpq_class>& coeffs, const CBall& x) {
    CBall acc(x.prec());
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        acc = acc.mul(x).add(CBall::from_rball(RBall::from_mpq(*it, x.prec())));
    return acc;
}

}  // namespace pisot
