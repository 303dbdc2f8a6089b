#include "oracle.hpp"

#include "unitdisc.hpp"

#include <algorithm>

namespace pisot {

namespace {

// Multiplication matrix of x on the order basis; column j holds the
// coordinates of x * w_j.
std::vector<std::vector<mpz_class>> mult_matrix(const NumberField& f, const OrderElement& x) {
    int d = f.degree();
    std::vector<std::vector<mpz_class>> m(d, std::vector<mpz_class>(d));
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i)
            for (int l = 0; l < d; ++l) m[i][j] += x.coords[l] * f.mult(l, j, i);
    return m;
}

std::vector<std::vector<mpz_class>> mat_mul(const std::vector<std::vector<mpz_class>>& a,
                                            const std::vector<std::vector<mpz_class>>& b) {
    int d = static_cast<int>(a.size());
    std::vector<std::vector<mpz_class>> out(d, std::vector<mpz_class>(d));
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k)
            for (int j = 0; j < d; ++j) out[i][j] += a[i][k] * b[k][j];
    return out;
}

bool annihilates(const IntPoly& m, const std::vector<std::vector<mpz_class>>& mx) {
    int d = static_cast<int>(mx.size());
    std::vector<std::vector<mpz_class>> r(d, std::vector<mpz_class>(d));
    for (int i = 0; i < d; ++i) r[i][i] = m.leading();
    for (int k = m.degree() - 1; k >= 0; --k) {
        r = mat_mul(r, mx);
        for (int i = 0; i < d; ++i) r[i][i] += m.c[k];
    }
    for (const auto& row : r)
        for (const auto& v : row)
            if (v != 0) return false;
    return true;
}

// Product of the linear and quadratic real factors of the characteristic
// polynomial, with ball coefficients.
std::vector<RBall> char_poly_balls(const NumberField& f, const OrderElement& x, mpfr_prec_t p) {
    int s = f.real_places(), t = f.complex_places();
    auto emb = f.embed(x, p);
    std::vector<RBall> acc{RBall::from_si(1, p)};
    auto mul_factor = [&](const std::vector<RBall>& fac) {
        std::vector<RBall> next(acc.size() + fac.size() - 1, RBall::from_si(0, p));
        for (size_t i = 0; i < acc.size(); ++i)
            for (size_t j = 0; j < fac.size(); ++j) next[i + j] = next[i + j].add(acc[i].mul(fac[j]));
        acc = std::move(next);
    };
    for (int j = 0; j < s; ++j) {
        RBall r = emb[j].real_part();
        mul_factor({r.neg(), RBall::from_si(1, p)});
    }
    for (int j = 0; j < t; ++j) {
        const CBall& z = emb[s + j];
        RBall re = z.real_part();
        RBall n = re.mul(re).add(z.imag_part().mul(z.imag_part()));
        mul_factor({n, re.mul_2exp(1).neg(), RBall::from_si(1, p)});
    }
    return acc;
}

int cmp_elements(const NumberField& f, const OrderElement& a, const OrderElement& b) {
    const RunConfig& cfg = f.config();
    OrderElement diff = f.sub(a, b);
    if (diff.is_zero()) return 0;
    for (mpfr_prec_t p = cfg.precision; p; p = next_prec(p, cfg.max_precision)) {
        int sg = f.value(diff, p).sign();
        if (sg != 0) return sg;
    }
    return f.compare_value_to_mpq(diff, 0, 0);
}

}  // namespace

IntPoly independent_min_poly(const NumberField& f, const OrderElement& x,
                             const OracleConfig& ocfg) {
    int d = f.degree();
    IntPoly chi;
    bool rounded = false;
    for (mpfr_prec_t p = ocfg.precision; p; p = next_prec(p, 64 * f.config().max_precision)) {
        auto balls = char_poly_balls(f, x, p);
        std::vector<mpz_class> cz(balls.size());
        rounded = true;
        for (size_t i = 0; i < balls.size(); ++i) {
            auto n = balls[i].unique_integer_round();
            if (!n) {
                rounded = false;
                break;
            }
            cz[i] = std::move(*n);
        }
        if (rounded) {
            chi = IntPoly(std::move(cz));
            break;
        }
    }
    if (!rounded)
        throw precision_error("characteristic polynomial coefficients stay undecided");
    if (chi.degree() != d || !chi.is_monic())
        throw internal_error("characteristic polynomial expansion is malformed");

    IntPoly g = gcd_primitive(chi, chi.derivative());
    IntPoly m = g.degree() > 0 ? divexact(chi, g) : chi;
    if (!m.is_monic() || m.degree() < 1 || d % m.degree() != 0)
        throw internal_error("squarefree part of the characteristic polynomial is malformed");
    if (!annihilates(m, mult_matrix(f, x)))
        throw internal_error("recovered polynomial does not annihilate the multiplication matrix");
    return m;
}

std::vector<OrderElement> brute_force_pisot(const NumberField& f, const mpq_class& X,
                                            const OracleConfig& ocfg) {
    if (X <= 1) return {};
    int d = f.degree(), s = f.real_places(), t = f.complex_places(), np = s + t;
    mpfr_prec_t p = ocfg.precision;

    // Cramer bound per coordinate: |x_i| <= 2^t ||M|| prod_{k != i} ||col_k||
    // / sqrt|disc| where M = (X, 1, .., 1) and col_k is the split embedding
    // column of w_k.
    std::vector<RBall> colnorm;
    for (int k = 0; k < d; ++k) {
        OrderElement ek = f.zero();
        ek.coords[k] = 1;
        auto emb = f.embed(ek, p);
        RBall n2 = RBall::from_si(0, p);
        for (int j = 0; j < np; ++j) {
            RBall re = emb[j].real_part();
            n2 = n2.add(re.mul(re));
            if (j >= s) {
                RBall im = emb[j].imag_part();
                n2 = n2.add(im.mul(im));
            }
        }
        colnorm.push_back(n2.sqrt());
    }
    RBall xq = RBall::from_mpq(X, p);
    RBall m2 = xq.mul(xq).add(RBall::from_si(d - 1, p)).sqrt();
    RBall sd = RBall::from_mpz(abs(f.discriminant()), p).sqrt();

    std::vector<long> bound(d);
    for (int i = 0; i < d; ++i) {
        RBall c = m2.mul_2exp(t);
        for (int k = 0; k < d; ++k)
            if (k != i) c = c.mul(colnorm[k]);
        c = c.div(sd);
        Real u = c.upper();
        mpz_class ci;
        mpfr_get_z(ci.get_mpz_t(), u.raw(), MPFR_RNDU);
        if (ci > ocfg.coefficient_cap)
            throw input_error("oracle scan box exceeds the configured coefficient cap");
        bound[i] = ci.get_si();
    }

    std::vector<OrderElement> out;
    OrderElement x = f.zero();
    std::vector<long> odo(d);
    for (int i = 0; i < d; ++i) odo[i] = -bound[i];
    const RunConfig& cfg = f.config();
    for (;;) {
        for (int i = 0; i < d; ++i) x.coords[i] = odo[i];
        bool zero = std::all_of(odo.begin(), odo.end(), [](long v) { return v == 0; });
        if (!zero && cmp_value_q(f, x, 1) > 0 && cmp_value_q(f, x, X) <= 0) {
            bool small = true;
            for (int j = 1; j < np && small; ++j) {
                bool decided = false;
                for (mpfr_prec_t q = p; q; q = next_prec(q, cfg.max_precision)) {
                    CBall e = f.embed_place(x, j, q);
                    RBall a = j < s ? e.real_part().abs() : e.abs();
                    Real up = a.upper(), lo = a.lower();
                    if (mpfr_cmp_ui(up.raw(), 1) < 0) {
                        decided = true;
                        break;
                    }
                    if (mpfr_cmp_ui(lo.raw(), 1) >= 0) {
                        decided = true;
                        small = false;
                        break;
                    }
                }
                if (!decided) small = f.compare_abs_to_mpq(x, j, 1) == Cmp3::Less;
            }
            if (small) {
                IntPoly m = independent_min_poly(f, x, ocfg);
                if (m.degree() != d)
                    throw internal_error("a filtered candidate fails to generate the field");
                UnitDiscCount ud = analyze_unit_disc(m);
                if (ud.on_circle != 0 || ud.inside.value() != d - 1)
                    throw internal_error("the interval filter and the polynomial test disagree");
                out.push_back(x);
            }
        }
        int i = 0;
        while (i < d && odo[i] == bound[i]) {
            odo[i] = -bound[i];
            ++i;
        }
        if (i == d) break;
        ++odo[i];
    }
    std::sort(out.begin(), out.end(), [&](const OrderElement& a, const OrderElement& b) {
        return cmp_elements(f, a, b) < 0;
    });
    return out;
}

}  // namespace pisot
