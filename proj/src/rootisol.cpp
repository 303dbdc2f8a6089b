#include "rootisol.hpp"

#include <algorithm>
#include <cassert>

namespace pisot {

namespace {

mpq_class dyadic_pow2_bound(const mpq_class& b) {
    mpq_class pw = 1;
    while (pw < b) pw *= 2;
    return pw;
}

// Split point inside (lo, hi) where p does not vanish.
mpq_class nonroot_split(const IntPoly& p, const mpq_class& lo, const mpq_class& hi) {
    mpq_class mid = (lo + hi) / 2;
    if (p.eval_q(mid) != 0) return mid;
    mpq_class width = hi - lo;
    mpq_class off = width / 4;
    while (off != 0) {
        for (int sgn_dir : {1, -1}) {
            mpq_class cand = mid + (sgn_dir > 0 ? off : -off);
            if (cand > lo && cand < hi && p.eval_q(cand) != 0) return cand;
        }
        off /= 2;
    }
    throw internal_error("no nonroot split point found");
}

std::vector<DyadicInterval> isolate_real_intervals(const IntPoly& p,
                                                   const std::vector<IntPoly>& chain) {
    std::vector<DyadicInterval> out;
    mpq_class bound = dyadic_pow2_bound(cauchy_root_bound(p));
    struct Item {
        mpq_class lo, hi;
        int count;
    };
    std::vector<Item> stack;
    int total = sturm_count_open(chain, -bound, bound);
    if (total > 0) stack.push_back({-bound, bound, total});
    while (!stack.empty()) {
        Item it = stack.back();
        stack.pop_back();
        if (it.count == 1) {
            out.push_back({it.lo, it.hi});
            continue;
        }
        mpq_class mid = nonroot_split(p, it.lo, it.hi);
        int left = sturm_count_open(chain, it.lo, mid);
        int right = it.count - left;
        if (left > 0) stack.push_back({it.lo, mid, left});
        if (right > 0) stack.push_back({mid, it.hi, right});
    }
    std::sort(out.begin(), out.end(),
              [](const DyadicInterval& a, const DyadicInterval& b) { return a.lo < b.lo; });
    return out;
}

// Shrinks an isolating interval to width <= 2^-bits by exact sign bisection.
DyadicInterval refine_interval(const IntPoly& p, DyadicInterval iv, unsigned long bits) {
    if (iv.exact()) return iv;
    int slo = sgn(p.eval_q(iv.lo));
    assert(slo != 0 && sgn(p.eval_q(iv.hi)) == -slo);
    mpq_class target(mpz_class(1), mpz_class(1) << bits);
    while (iv.hi - iv.lo > target) {
        mpq_class mid = (iv.lo + iv.hi) / 2;
        int sm = sgn(p.eval_q(mid));
        if (sm == 0) return {mid, mid};
        if (sm == slo)
            iv.lo = mid;
        else
            iv.hi = mid;
    }
    return iv;
}

RBall ball_from_interval(const DyadicInterval& iv, mpfr_prec_t prec) {
    if (iv.exact()) return RBall::from_mpq(iv.lo, prec);
    Real lo(prec), hi(prec);
    mpfr_set_q(lo.raw(), iv.lo.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi.raw(), iv.hi.get_mpq_t(), MPFR_RNDU);
    return RBall::from_endpoints(lo, hi, prec);
}

// Plain complex floating point at a fixed precision, for the approximation
// phase only; certification never trusts these values.
struct FC {
    Real re, im;
    explicit FC(mpfr_prec_t p) : re(p), im(p) {}
};

FC fc_sub(const FC& a, const FC& b) {
    FC o(a.re.prec());
    mpfr_sub(o.re.raw(), a.re.raw(), b.re.raw(), MPFR_RNDN);
    mpfr_sub(o.im.raw(), a.im.raw(), b.im.raw(), MPFR_RNDN);
    return o;
}

FC fc_mul(const FC& a, const FC& b) {
    FC o(a.re.prec());
    Real t1(a.re.prec()), t2(a.re.prec());
    mpfr_mul(t1.raw(), a.re.raw(), b.re.raw(), MPFR_RNDN);
    mpfr_mul(t2.raw(), a.im.raw(), b.im.raw(), MPFR_RNDN);
    mpfr_sub(o.re.raw(), t1.raw(), t2.raw(), MPFR_RNDN);
    mpfr_mul(t1.raw(), a.re.raw(), b.im.raw(), MPFR_RNDN);
    mpfr_mul(t2.raw(), a.im.raw(), b.re.raw(), MPFR_RNDN);
    mpfr_add(o.im.raw(), t1.raw(), t2.raw(), MPFR_RNDN);
    return o;
}

FC fc_div(const FC& a, const FC& b) {
    FC o(a.re.prec());
    Real d(a.re.prec()), t1(a.re.prec()), t2(a.re.prec());
    mpfr_sqr(d.raw(), b.re.raw(), MPFR_RNDN);
    mpfr_sqr(t1.raw(), b.im.raw(), MPFR_RNDN);
    mpfr_add(d.raw(), d.raw(), t1.raw(), MPFR_RNDN);
    mpfr_mul(t1.raw(), a.re.raw(), b.re.raw(), MPFR_RNDN);
    mpfr_mul(t2.raw(), a.im.raw(), b.im.raw(), MPFR_RNDN);
    mpfr_add(t1.raw(), t1.raw(), t2.raw(), MPFR_RNDN);
    mpfr_div(o.re.raw(), t1.raw(), d.raw(), MPFR_RNDN);
    mpfr_mul(t1.raw(), a.im.raw(), b.re.raw(), MPFR_RNDN);
    mpfr_mul(t2.raw(), a.re.raw(), b.im.raw(), MPFR_RNDN);
    mpfr_sub(t1.raw(), t1.raw(), t2.raw(), MPFR_RNDN);
    mpfr_div(o.im.raw(), t1.raw(), d.raw(), MPFR_RNDN);
    return o;
}

bool fc_is_zero(const FC& a) { return a.re.is_zero() && a.im.is_zero(); }

FC fc_poly_eval(const IntPoly& p, const FC& z) {
    FC acc(z.re.prec());
    for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) {
        acc = fc_mul(acc, z);
        mpfr_add_z(acc.re.raw(), acc.re.raw(), it->get_mpz_t(), MPFR_RNDN);
    }
    return acc;
}

mpfr_exp_t fc_mag_exp(const FC& a) {
    mpfr_exp_t e1 = a.re.is_zero() ? mpfr_get_emin() : mpfr_get_exp(a.re.raw());
    mpfr_exp_t e2 = a.im.is_zero() ? mpfr_get_emin() : mpfr_get_exp(a.im.raw());
    return std::max(e1, e2);
}

struct CertifiedPoints {
    std::vector<CBall> discs;  // one per point, exactly one root each
};

// Certifies that around each of the d distinct nodes there is a disc with
// exactly one root of p: on the boundary of disc i,
// |sum_k W_k / (x - z_k)| < |lead(p)| pins the root count to the single node
// inside (interpolation identity plus the argument principle).
std::optional<std::vector<CBall>> certify_nodes(const IntPoly& p, const std::vector<CBall>& nodes,
                                                mpfr_prec_t w) {
    size_t d = nodes.size();
    std::vector<CBall> wvals;
    wvals.reserve(d);
    for (size_t i = 0; i < d; ++i) {
        CBall num = eval_poly(p.c, nodes[i]);
        CBall den = CBall::from_rball(RBall::from_si(1, w));
        for (size_t j = 0; j < d; ++j) {
            if (j == i) continue;
            CBall diff = nodes[i].sub(nodes[j]);
            if (diff.contains_zero()) return std::nullopt;
            den = den.mul(diff);
        }
        if (den.contains_zero()) return std::nullopt;
        wvals.push_back(num.div(den));
    }
    Real lead_lo(RBall::kRadPrec);
    mpfr_set_z(lead_lo.raw(), p.leading().get_mpz_t(), MPFR_RNDD);
    mpfr_abs(lead_lo.raw(), lead_lo.raw(), MPFR_RNDD);

    // radius_i = max(d |W_i| / |lead|, 2^-(w+16))
    std::vector<Real> radius;
    radius.reserve(d);
    for (size_t i = 0; i < d; ++i) {
        Real r(RBall::kRadPrec);
        mpfr_mul_ui(r.raw(), wvals[i].abs_upper().raw(), static_cast<unsigned long>(d), MPFR_RNDU);
        mpfr_div(r.raw(), r.raw(), lead_lo.raw(), MPFR_RNDU);
        Real floor_r(RBall::kRadPrec);
        mpfr_set_ui_2exp(floor_r.raw(), 1, -static_cast<mpfr_exp_t>(w + 16), MPFR_RNDU);
        mpfr_max(r.raw(), r.raw(), floor_r.raw(), MPFR_RNDU);
        radius.push_back(r);
    }
    for (size_t i = 0; i < d; ++i) {
        Real sum(RBall::kRadPrec);
        mpfr_set_zero(sum.raw(), 1);
        bool bad = false;
        for (size_t k = 0; k < d && !bad; ++k) {
            Real dist(RBall::kRadPrec);
            if (k == i) {
                mpfr_set(dist.raw(), radius[i].raw(), MPFR_RNDD);
            } else {
                CBall diff = nodes[i].sub(nodes[k]);
                Real dl = diff.abs_lower();
                mpfr_sub(dist.raw(), dl.raw(), radius[i].raw(), MPFR_RNDD);
                if (mpfr_sgn(dist.raw()) <= 0) {
                    bad = true;
                    break;
                }
            }
            Real term(RBall::kRadPrec);
            mpfr_div(term.raw(), wvals[k].abs_upper().raw(), dist.raw(), MPFR_RNDU);
            mpfr_add(sum.raw(), sum.raw(), term.raw(), MPFR_RNDU);
        }
        if (bad || mpfr_cmp(sum.raw(), lead_lo.raw()) >= 0) return std::nullopt;
    }
    // Pairwise disjoint discs make the disc-to-root assignment a bijection:
    // d discs, one root each, d roots in total.
    for (size_t i = 0; i < d; ++i) {
        for (size_t k = i + 1; k < d; ++k) {
            CBall diff = nodes[i].sub(nodes[k]);
            Real gap(RBall::kRadPrec);
            mpfr_sub(gap.raw(), diff.abs_lower().raw(), radius[i].raw(), MPFR_RNDD);
            mpfr_sub(gap.raw(), gap.raw(), radius[k].raw(), MPFR_RNDD);
            if (mpfr_sgn(gap.raw()) <= 0) return std::nullopt;
        }
    }
    std::vector<CBall> out;
    out.reserve(d);
    for (size_t i = 0; i < d; ++i) out.push_back(nodes[i].inflate(radius[i]));
    return out;
}

}  // namespace

std::vector<CBall> RootEnclosures::all_roots() const {
    std::vector<CBall> out;
    out.reserve(degree());
    for (const auto& r : real_roots) out.push_back(CBall::from_rball(r));
    for (const auto& z : complex_reps) {
        out.push_back(z);
        out.push_back(z.conj());
    }
    return out;
}

RootEnclosures isolate_roots(const IntPoly& p, mpfr_prec_t prec) {
    if (p.degree() < 1) throw input_error("root isolation needs degree >= 1");
    if (!is_squarefree(p)) throw internal_error("root isolation requires a squarefree polynomial");
    RootEnclosures out;
    out.poly = p;
    out.prec = prec;

    auto chain = sturm_chain(p);
    auto intervals = isolate_real_intervals(p, chain);
    unsigned long bits = static_cast<unsigned long>(prec) + 8;
    for (auto& iv : intervals) iv = refine_interval(p, iv, bits);

    // Separate the published balls; adjacent intervals share an endpoint.
    bool separated = false;
    for (int rounds = 0; rounds < 64 && !separated; ++rounds) {
        bool ok = true;
        std::vector<RBall> balls;
        balls.reserve(intervals.size());
        for (const auto& iv : intervals) balls.push_back(ball_from_interval(iv, prec));
        for (size_t i = 0; i + 1 < balls.size(); ++i) {
            Real a = balls[i].upper(), b = balls[i + 1].lower();
            if (mpfr_cmp(a.raw(), b.raw()) >= 0) {
                ok = false;
                break;
            }
        }
        if (ok) {
            out.real_roots = std::move(balls);
            out.real_intervals = intervals;
            separated = true;
            break;
        }
        bits *= 2;
        for (auto& iv : intervals) iv = refine_interval(p, iv, bits);
    }
    if (!separated) throw internal_error("real root separation failed");

    int d = p.degree();
    int s = static_cast<int>(intervals.size());
    if ((d - s) % 2 != 0) throw internal_error("real root count parity");
    int t = (d - s) / 2;
    if (t == 0) return out;

    mpq_class bound = cauchy_root_bound(p);
    for (mpfr_prec_t w = prec + 64;; w *= 2) {
        if (w > 64 * (prec + 64))
            throw precision_error("complex root certification failed to converge");
        // Aberth-Ehrlich on 2t moving points plus s frozen real nodes.
        std::vector<FC> pts;
        pts.reserve(d);
        for (int i = 0; i < s; ++i) {
            FC z(w);
            mpq_class mid = (intervals[i].lo + intervals[i].hi) / 2;
            mpfr_set_q(z.re.raw(), mid.get_mpq_t(), MPFR_RNDN);
            pts.push_back(std::move(z));
        }
        for (int j = 0; j < t; ++j) {
            Real ang(w), rad(w);
            mpfr_set_q(rad.raw(), bound.get_mpq_t(), MPFR_RNDN);
            mpfr_mul_si(rad.raw(), rad.raw(), 2 * j + 1, MPFR_RNDN);
            mpfr_div_si(rad.raw(), rad.raw(), 2 * t + 1, MPFR_RNDN);
            mpfr_const_pi(ang.raw(), MPFR_RNDN);
            mpfr_mul_si(ang.raw(), ang.raw(), 2 * j + 1, MPFR_RNDN);
            mpfr_div_si(ang.raw(), ang.raw(), 2 * t + 2, MPFR_RNDN);
            FC z(w), zc(w);
            Real c(w), sn(w);
            mpfr_sin_cos(sn.raw(), c.raw(), ang.raw(), MPFR_RNDN);
            mpfr_mul(z.re.raw(), rad.raw(), c.raw(), MPFR_RNDN);
            mpfr_mul(z.im.raw(), rad.raw(), sn.raw(), MPFR_RNDN);
            zc.re = z.re;
            mpfr_neg(zc.im.raw(), z.im.raw(), MPFR_RNDN);
            pts.push_back(std::move(z));
            pts.push_back(std::move(zc));
        }
        IntPoly dp = p.derivative();
        bool converged = false;
        for (int iter = 0; iter < 600 && !converged; ++iter) {
            converged = true;
            for (int i = s; i < d; ++i) {
                FC pv = fc_poly_eval(p, pts[i]);
                if (fc_is_zero(pv)) continue;
                FC dv = fc_poly_eval(dp, pts[i]);
                if (fc_is_zero(dv)) {
                    mpfr_nextabove(pts[i].re.raw());
                    converged = false;
                    continue;
                }
                FC newton = fc_div(pv, dv);
                FC ssum(w);
                for (int j = 0; j < d; ++j) {
                    if (j == i) continue;
                    FC diff = fc_sub(pts[i], pts[j]);
                    if (fc_is_zero(diff)) {
                        mpfr_nextabove(pts[i].re.raw());
                        diff = fc_sub(pts[i], pts[j]);
                    }
                    FC one(w);
                    mpfr_set_ui(one.re.raw(), 1, MPFR_RNDN);
                    FC inv = fc_div(one, diff);
                    mpfr_add(ssum.re.raw(), ssum.re.raw(), inv.re.raw(), MPFR_RNDN);
                    mpfr_add(ssum.im.raw(), ssum.im.raw(), inv.im.raw(), MPFR_RNDN);
                }
                FC denom = fc_mul(newton, ssum);
                mpfr_ui_sub(denom.re.raw(), 1, denom.re.raw(), MPFR_RNDN);
                mpfr_neg(denom.im.raw(), denom.im.raw(), MPFR_RNDN);
                if (fc_is_zero(denom)) {
                    mpfr_nextabove(pts[i].re.raw());
                    converged = false;
                    continue;
                }
                FC step = fc_div(newton, denom);
                mpfr_sub(pts[i].re.raw(), pts[i].re.raw(), step.re.raw(), MPFR_RNDN);
                mpfr_sub(pts[i].im.raw(), pts[i].im.raw(), step.im.raw(), MPFR_RNDN);
                if (!fc_is_zero(step) &&
                    fc_mag_exp(step) > fc_mag_exp(pts[i]) - static_cast<mpfr_exp_t>(w - 24))
                    converged = false;
            }
        }
        if (!converged) continue;

        // Symmetrize: keep upper-half iterates, mirror them exactly.
        std::vector<FC> upper;
        for (int i = s; i < d; ++i)
            if (mpfr_sgn(pts[i].im.raw()) > 0) upper.push_back(pts[i]);
        if (static_cast<int>(upper.size()) != t) continue;
        std::sort(upper.begin(), upper.end(), [](const FC& a, const FC& b) {
            int c = mpfr_cmp(a.re.raw(), b.re.raw());
            if (c != 0) return c < 0;
            return mpfr_cmp(a.im.raw(), b.im.raw()) < 0;
        });

        std::vector<CBall> nodes;
        nodes.reserve(d);
        for (int i = 0; i < s; ++i) {
            mpq_class mid = (intervals[i].lo + intervals[i].hi) / 2;
            nodes.push_back(CBall::from_mpq(mid, 0, w));
        }
        for (const FC& z : upper) {
            CBall n(w);
            n = CBall(RBall::from_real(z.re), RBall::from_real(z.im));
            nodes.push_back(n);
            nodes.push_back(n.conj());
        }
        auto cert = certify_nodes(p, nodes, w);
        if (!cert) continue;

        // Every real root lives in its isolating interval, so a real-node
        // disc whose radius is below the distance to every other interval
        // can only hold the root of its own interval.
        bool ok = true;
        Real maxrad(RBall::kRadPrec);
        mpfr_set_ui_2exp(maxrad.raw(), 1, -static_cast<mpfr_exp_t>(prec) + 4, MPFR_RNDU);
        for (int i = 0; i < s && ok; ++i) {
            const CBall& disc = (*cert)[i];
            for (int j : {i - 1, i + 1}) {
                if (j < 0 || j >= s) continue;
                Real endpoint(w), margin(w);
                mpfr_set_q(endpoint.raw(), (j < i ? intervals[j].hi : intervals[j].lo).get_mpq_t(),
                           j < i ? MPFR_RNDU : MPFR_RNDD);
                if (j < i)
                    mpfr_sub(margin.raw(), disc.re_center().raw(), endpoint.raw(), MPFR_RNDD);
                else
                    mpfr_sub(margin.raw(), endpoint.raw(), disc.re_center().raw(), MPFR_RNDD);
                if (mpfr_cmp(disc.radius().raw(), margin.raw()) >= 0) {
                    ok = false;
                    break;
                }
            }
        }
        // Complex discs: strictly off the real axis, radii within target.
        std::vector<CBall> reps;
        for (int j = 0; j < t && ok; ++j) {
            const CBall& disc = (*cert)[s + 2 * j];
            Real gap(RBall::kRadPrec);
            mpfr_sub(gap.raw(), disc.im_center().raw(), disc.radius().raw(), MPFR_RNDD);
            if (mpfr_sgn(gap.raw()) <= 0) {
                ok = false;
                break;
            }
            if (mpfr_cmp(disc.radius().raw(), maxrad.raw()) > 0) {
                ok = false;
                break;
            }
            reps.push_back(disc);
        }
        if (!ok) continue;
        out.complex_reps = std::move(reps);
        return out;
    }
}

RootEnclosures refine_roots(const RootEnclosures& base, mpfr_prec_t prec) {
    if (prec <= base.prec) return base;
    RootEnclosures fresh = isolate_roots(base.poly, prec);
    if (fresh.s() != base.s() || fresh.t() != base.t())
        throw internal_error("refinement changed the root signature");
    // Real roots match by ascending order. Complex representatives are
    // permuted back to the base order by disc overlap.
    std::vector<CBall> reordered;
    std::vector<bool> used(fresh.complex_reps.size(), false);
    for (const auto& old_rep : base.complex_reps) {
        int found = -1;
        for (size_t j = 0; j < fresh.complex_reps.size(); ++j) {
            if (used[j]) continue;
            if (fresh.complex_reps[j].disjoint(old_rep) != Tri::True) {
                found = static_cast<int>(j);
                break;
            }
        }
        if (found < 0) throw internal_error("refinement lost a complex root");
        used[found] = true;
        reordered.push_back(fresh.complex_reps[found]);
    }
    fresh.complex_reps = std::move(reordered);
    return fresh;
}

bool divisor_root_matches(const RootEnclosures& base, bool is_real, int index, const IntPoly& g) {
    if (g.degree() < 1) return false;
    // The published enclosures are isolating: exactly one root of base.poly
    // lies in the target ball.
    for (mpfr_prec_t p2 = std::max<mpfr_prec_t>(base.prec, 128);; p2 *= 2) {
        if (p2 > (mpfr_prec_t(1) << 22))
            throw internal_error("divisor root matching failed to converge");
        RootEnclosures ge = isolate_roots(g, p2);
        RootEnclosures be = refine_roots(base, p2);
        bool retry = false;
        if (is_real) {
            const RBall& target = be.real_roots[index];
            const RBall& home = base.real_roots[index];
            for (const auto& gr : ge.real_roots) {
                Real glo = gr.lower(), ghi = gr.upper();
                Real tlo = target.lower(), thi = target.upper();
                if (mpfr_cmp(ghi.raw(), tlo.raw()) < 0 || mpfr_cmp(glo.raw(), thi.raw()) > 0)
                    continue;  // disjoint from the refined target
                Real hlo = home.lower(), hhi = home.upper();
                if (mpfr_cmp(glo.raw(), hlo.raw()) >= 0 && mpfr_cmp(ghi.raw(), hhi.raw()) <= 0)
                    return true;  // inside the isolating ball
                retry = true;
                break;
            }
        } else {
            const CBall& target = be.complex_reps[index];
            const CBall& home = base.complex_reps[index];
            for (const auto& gz : ge.complex_reps) {
                if (gz.disjoint(target) == Tri::True) continue;
                if (gz.contained_in(home) == Tri::True) return true;
                retry = true;
                break;
            }
        }
        if (!retry) return false;
    }
}

Cmp3 compare_root_abs_to_mpq(const RootEnclosures& base, bool is_real, int index,
                             const mpq_class& r) {
    if (r < 0) return Cmp3::Greater;
    if (is_real) {
        if (r == 0) {
            int c = compare_real_root_to_mpq(base, index, 0);
            return c == 0 ? Cmp3::Equal : Cmp3::Greater;
        }
        int c1 = compare_real_root_to_mpq(base, index, r);
        int c2 = compare_real_root_to_mpq(base, index, -r);
        if (c1 == 0 || c2 == 0) return Cmp3::Equal;
        if (c1 < 0 && c2 > 0) return Cmp3::Less;
        return Cmp3::Greater;
    }
    if (r == 0) return Cmp3::Greater;  // representatives are strictly nonreal
    std::optional<IntPoly> circle_factor;
    bool circle_checked = false;
    RootEnclosures cur = base;
    for (mpfr_prec_t p2 = base.prec;; p2 *= 2) {
        RBall a = cur.complex_reps[index].abs();
        Tri lt = a.less_than_mpq(r);
        if (lt == Tri::True) return Cmp3::Less;
        if (lt == Tri::False) {
            // |z| >= r; separate > from =.
            Real lo = a.lower();
            if (mpfr_cmp_q(lo.raw(), r.get_mpq_t()) > 0) return Cmp3::Greater;
        }
        if (!circle_checked) {
            circle_checked = true;
            const IntPoly& p = base.poly;
            IntPoly q = p.scale_arg(r.get_num()).scale_arg_inv(r.get_den()).primitive();
            if (q.eval_z(1) == 0) q = divexact(q, IntPoly::from_si({-1, 1}));
            if (q.eval_z(-1) == 0) q = divexact(q, IntPoly::from_si({1, 1}));
            if (q.degree() >= 2) {
                IntPoly g = gcd_primitive(q, q.reverse());
                if (g.degree() >= 2) {
                    // back to the original variable: roots scaled by r
                    circle_factor =
                        g.scale_arg(r.get_den()).scale_arg_inv(r.get_num()).primitive();
                }
            }
        }
        if (circle_factor && divisor_root_matches(base, false, index, *circle_factor))
            return Cmp3::Equal;
        circle_factor.reset();  // no match: the root is off the circle
        if (p2 > (mpfr_prec_t(1) << 22))
            throw internal_error("modulus comparison failed to converge");
        cur = refine_roots(cur, p2 * 2);
    }
}

int compare_real_root_to_mpq(const RootEnclosures& base, int index, const mpq_class& q) {
    DyadicInterval iv = base.real_intervals[index];
    const IntPoly& p = base.poly;
    if (iv.exact()) return cmp(iv.lo, q);
    // The root lies strictly inside (lo, hi); the endpoints are non-roots.
    if (q <= iv.lo) return 1;
    if (q >= iv.hi) return -1;
    if (p.eval_q(q) == 0) return 0;  // unique root in the isolating interval
    int slo = sgn(p.eval_q(iv.lo));
    for (;;) {
        mpq_class mid = (iv.lo + iv.hi) / 2;
        int sm = sgn(p.eval_q(mid));
        if (sm == 0) return cmp(mid, q);
        if (sm == slo)
            iv.lo = mid;
        else
            iv.hi = mid;
        if (q <= iv.lo) return 1;
        if (q >= iv.hi) return -1;
    }
}

}  // namespace pisot
