#include "pisot.hpp"

#include "analysis.hpp"
#include "unitdisc.hpp"

#include <algorithm>

namespace pisot {

namespace {

// Smallest representable rational at or above the ball.
mpq_class rat_upper(const RBall& b) { return mpq_from_real(b.upper().raw()); }

}  // namespace

PisotCheck certify_pisot(const NumberField& f, const OrderElement& x) {
    PisotCheck out;
    const RunConfig& cfg = f.config();
    if (x.is_zero()) {
        out.reason = "not greater than 1";
        return out;
    }
    IntPoly m = f.min_poly(x);
    if (m.degree() != f.degree()) {
        out.reason = "not a generator of the field";
        return out;
    }
    if (cmp_value_q(f, x, 1) <= 0) {
        out.reason = "not greater than 1";
        return out;
    }
    UnitDiscCount ud = analyze_unit_disc(m);
    if (ud.on_circle > 0) {
        out.reason = "boundary-degenerate: a conjugate has modulus exactly 1";
        return out;
    }
    int inside = ud.inside.value();
    if (inside != f.degree() - 1) {
        out.reason = "a conjugate has modulus greater than 1";
        return out;
    }

    PisotCertificate cert;
    cert.element = x;
    cert.minimal_poly = std::move(m);
    cert.inside_count = inside;
    // enclosures rebuilt at doubled precision; the acceptance of the value
    // test must survive the rebuild
    mpfr_prec_t pc = 2 * cfg.precision;
    cert.value = f.value(x, pc);
    Real lo = cert.value.lower();
    if (mpfr_cmp_ui(lo.raw(), 1) <= 0 && f.compare_value_to_mpq(x, 0, 1) <= 0)
        throw internal_error("certificate did not survive re-verification");
    auto emb = f.embed(x, pc);
    for (int j = 1; j < f.num_places(); ++j) cert.conjugates.push_back(emb[j]);
    out.cert = std::move(cert);
    return out;
}

std::vector<PisotCertificate> enumerate_pisot(const MinkowskiLattice& L, const mpq_class& X,
                                              int workers) {
    const NumberField& f = L.field();
    if (X <= 1) return {};
    Region reg;
    reg.reals.push_back(cut_between_q(1, X, true, false, L.prec()));
    for (int j = 1; j < f.real_places(); ++j)
        reg.reals.push_back(cut_between_q(-1, 1, true, true, L.prec()));
    for (int j = 0; j < f.complex_places(); ++j)
        reg.discs.push_back(origin_disc_q(1, true, L.prec()));
    auto pts = enumerate_lattice_points(L, reg, workers, UndecidedPolicy::Error);
    std::vector<PisotCertificate> out;
    out.reserve(pts.size());
    for (auto& x : pts) {
        PisotCheck pc = certify_pisot(f, x);
        if (!pc.ok())
            throw internal_error("enumerated point failed Pisot certification: " + x.to_string() +
                                 " (" + pc.reason + ")");
        out.push_back(std::move(*pc.cert));
    }
    return out;
}

PisotCertificate min_pisot(const MinkowskiLattice& L, int workers) {
    RhoVector rho = compute_rho(L);
    mpq_class cap = rat_upper(bound_BK(L, rho)) + 2;
    for (mpq_class X = 2;; X *= 2) {
        auto v = enumerate_pisot(L, X, workers);
        if (!v.empty()) return std::move(v.front());
        if (X > cap) throw internal_error("no Pisot number found below the lattice bound");
    }
}

RBall epsilon_pisot_required_width(const MinkowskiLattice& L, const RhoVector& rho,
                                   const mpq_class& eps_pisot) {
    if (eps_pisot <= 0 || eps_pisot > 1) throw input_error("epsilon must lie in (0, 1]");
    return constant_c(L, rho, eps_pisot / 2).mul_2exp(1);
}

PisotCertificate epsilon_pisot_search(const MinkowskiLattice& L, const RhoVector& rho,
                                      const mpq_class& eps_pisot, const mpq_class& r_lo,
                                      const mpq_class& r_hi, int workers) {
    const NumberField& f = L.field();
    if (eps_pisot <= 0 || eps_pisot > 1) throw input_error("epsilon must lie in (0, 1]");
    if (r_lo < 1) throw input_error("interval must start at 1 or above");
    if (r_hi <= r_lo) throw input_error("interval is empty");

    // existence needs width >= 2 c(eps/2); certify it
    mpq_class width = r_hi - r_lo;
    {
        const MinkowskiLattice* cur = &L;
        const RhoVector* cur_rho = &rho;
        MinkowskiLattice rebuilt;
        RhoVector rho2;
        for (;;) {
            RBall need = epsilon_pisot_required_width(*cur, *cur_rho, eps_pisot);
            Real nu = need.upper(), nl = need.lower();
            if (mpfr_cmp_q(nu.raw(), width.get_mpq_t()) <= 0) break;
            if (mpfr_cmp_q(nl.raw(), width.get_mpq_t()) > 0)
                throw input_error("interval too short: needs width 2c = " + need.to_string());
            mpfr_prec_t np = next_prec(cur->prec(), f.config().max_precision);
            if (np == 0) throw precision_error("interval width sits on the existence bound");
            rebuilt = MinkowskiLattice::build(L.field_ptr(), np);
            rho2 = compute_rho(rebuilt);
            cur = &rebuilt;
            cur_rho = &rho2;
        }
    }

    Region reg;
    reg.reals.push_back(cut_between_q(r_lo, r_hi, false, false, L.prec()));
    for (int j = 1; j < f.real_places(); ++j)
        reg.reals.push_back(cut_between_q(-eps_pisot, eps_pisot, true, true, L.prec()));
    for (int j = 0; j < f.complex_places(); ++j)
        reg.discs.push_back(origin_disc_q(eps_pisot, true, L.prec()));
    auto pts = enumerate_lattice_points(L, reg, workers, UndecidedPolicy::Error);
    for (auto& x : pts) {
        PisotCheck pc = certify_pisot(f, x);
        if (pc.ok()) return std::move(*pc.cert);
    }
    throw internal_error("no Pisot point in an interval of guaranteed width");
}

namespace {

// Target enclosures for places 1..s+t-1, refined on demand.
using PlaceTargets = std::function<std::vector<CBall>(mpfr_prec_t)>;

OrderElement constructive_core(const MinkowskiLattice& L, const RhoVector& rho, const RBall& c,
                               const mpq_class& eps, const mpq_class& x1,
                               const PlaceTargets& targets) {
    const NumberField& f = L.field();
    int np = f.num_places();
    OrderElement alpha = find_alpha(L, rho, c, eps);
    TargetFn tf = [&](mpfr_prec_t p) {
        mpfr_prec_t q = p;
        std::vector<CBall> emb;
        for (;;) {
            emb = f.embed(alpha, q);
            bool split = true;
            for (const auto& e : emb)
                if (e.contains_zero()) {
                    split = false;
                    break;
                }
            if (split) break;
            q = next_prec(q, 64 * f.config().max_precision);
            if (q == 0) throw internal_error("nonzero embedding kept straddling zero");
        }
        auto xs = targets(q);
        std::vector<CBall> tv;
        tv.push_back(CBall::from_mpq(x1, 0, q).div(emb[0]));
        for (int j = 1; j < np; ++j) tv.push_back(xs[j - 1].div(emb[j]));
        return tv;
    };
    RoundingResult rr = round_to_lattice(L, rho, tf);
    return f.mul(alpha, rr.beta);
}

OrderElement direct_core(const MinkowskiLattice& L, const Theorem1Query& q, const mpq_class& cq,
                         int workers) {
    const NumberField& f = L.field();
    int s = f.real_places(), t = f.complex_places();
    Region reg;
    reg.reals.push_back(cut_between_q(q.x1 - cq, q.x1 + cq, false, false, L.prec()));
    for (int j = 1; j < s; ++j) {
        const auto& tgt = q.targets[j - 1];
        reg.reals.push_back(
            cut_between_q(tgt.first - q.epsilon, tgt.first + q.epsilon, false, false, L.prec()));
    }
    for (int j = 0; j < t; ++j) {
        const auto& tgt = q.targets[s - 1 + j];
        DiscCut dc;
        dc.center_re = tgt.first;
        dc.center_im = tgt.second;
        dc.radius = RBall::from_mpq(q.epsilon, L.prec());
        if (tgt.first == 0 && tgt.second == 0) dc.radius_exact = q.epsilon;
        reg.discs.push_back(std::move(dc));
    }
    auto pts = enumerate_lattice_points(L, reg, workers, UndecidedPolicy::Skip);
    if (pts.empty()) throw internal_error("target box contains no algebraic integer");

    // minimizer of |x1 - sigma_1|: the two neighbors of x1 in value order
    size_t lo = 0, hi = pts.size();
    while (lo < hi) {
        size_t mid = (lo + hi) / 2;
        if (cmp_value_q(f, pts[mid], q.x1) <= 0)
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo == 0) return std::move(pts.front());
    if (lo == pts.size()) return std::move(pts.back());
    if (cmp_value_q(f, pts[lo - 1], q.x1) == 0) return std::move(pts[lo - 1]);
    // |x1 - a| vs |b - x1| is the sign of a + b - 2 x1; ties go to the
    // smaller element
    OrderElement sum = f.add(pts[lo - 1], pts[lo]);
    int sg = cmp_value_q(f, sum, 2 * q.x1);
    return std::move(sg >= 0 ? pts[lo - 1] : pts[lo]);
}

// Certified dist <= bound with escalation; the exact path handles a real
// place whose distance equals the bound exactly.
RBall verify_dist_real(const NumberField& f, const OrderElement& theta, int place,
                       const mpq_class& x, const mpq_class& bound) {
    const RunConfig& cfg = f.config();
    for (mpfr_prec_t p = cfg.precision; p; p = next_prec(p, cfg.max_precision)) {
        RBall d = f.embed_place(theta, place, p).real_part().sub(RBall::from_mpq(x, p)).abs();
        Real du = d.upper(), dl = d.lower();
        if (mpfr_cmp_q(du.raw(), bound.get_mpq_t()) <= 0) return d;
        if (mpfr_cmp_q(dl.raw(), bound.get_mpq_t()) > 0)
            throw internal_error("constructed point misses its target bound");
    }
    mpz_class den = x.get_den(), num = x.get_num();
    OrderElement z = f.sub(f.mul_int(theta, den), f.mul_int(f.one(), num));
    Cmp3 c = f.compare_abs_to_mpq(z, place, den * bound);
    if (c == Cmp3::Greater) throw internal_error("constructed point misses its target bound");
    return f.embed_place(theta, place, cfg.max_precision).real_part().sub(
        RBall::from_mpq(x, cfg.max_precision)).abs();
}

RBall verify_dist_complex(const NumberField& f, const OrderElement& theta, int place,
                          const mpq_class& re, const mpq_class& im, const mpq_class& bound) {
    const RunConfig& cfg = f.config();
    for (mpfr_prec_t p = cfg.precision; p; p = next_prec(p, 64 * cfg.max_precision)) {
        RBall d = f.embed_place(theta, place, p).sub(CBall::from_mpq(re, im, p)).abs();
        Real du = d.upper(), dl = d.lower();
        if (mpfr_cmp_q(du.raw(), bound.get_mpq_t()) <= 0) return d;
        if (mpfr_cmp_q(dl.raw(), bound.get_mpq_t()) > 0)
            throw internal_error("constructed point misses its target bound");
    }
    throw precision_error("distance to a complex target sits on the bound");
}

// |x1 - theta| <= c where c itself is an enclosure.
RBall verify_dist_c(const NumberField& f, const OrderElement& theta, const mpq_class& x1,
                    const RBall& c) {
    const RunConfig& cfg = f.config();
    Real cl = c.lower(), cu = c.upper();
    for (mpfr_prec_t p = cfg.precision; p; p = next_prec(p, 64 * cfg.max_precision)) {
        RBall d = f.value(theta, p).sub(RBall::from_mpq(x1, p)).abs();
        Real du = d.upper(), dl = d.lower();
        if (mpfr_cmp(du.raw(), cl.raw()) <= 0) return d;
        if (mpfr_cmp(dl.raw(), cu.raw()) > 0)
            throw internal_error("constructed point misses the x1 bound");
    }
    throw precision_error("distance to x1 sits on the box constant");
}

void validate_query(const NumberField& f, const Theorem1Query& q) {
    int s = f.real_places(), np = f.num_places();
    if (static_cast<int>(q.targets.size()) != np - 1)
        throw input_error("expected " + std::to_string(np - 1) + " targets, got " +
                          std::to_string(q.targets.size()));
    if (q.epsilon <= 0 || q.epsilon >= 1) throw input_error("epsilon must lie in (0,1)");
    for (int j = 0; j < np - 1; ++j) {
        const auto& tgt = q.targets[j];
        if (j < s - 1) {
            if (tgt.second != 0)
                throw input_error("target for a real place must have zero imaginary part");
            if (abs(tgt.first) + q.epsilon >= 1)
                throw input_error("the closed epsilon-disc around target " + std::to_string(j + 2) +
                                  " leaves the open unit disc");
        } else {
            mpq_class margin = 1 - q.epsilon;
            if (tgt.first * tgt.first + tgt.second * tgt.second >= margin * margin)
                throw input_error("the closed epsilon-disc around target " + std::to_string(j + 2) +
                                  " leaves the open unit disc");
        }
    }
}

}  // namespace

Theorem1Result theorem1_construct(const MinkowskiLattice& L, const RhoVector& rho,
                                  const Theorem1Query& q, Theorem1Strategy strategy, int workers) {
    const NumberField& f = L.field();
    validate_query(f, q);
    int s = f.real_places(), np = f.num_places();
    RBall c = constant_c(L, rho, q.epsilon);

    OrderElement theta = f.zero();
    if (strategy == Theorem1Strategy::Constructive) {
        PlaceTargets targets = [&](mpfr_prec_t p) {
            std::vector<CBall> xs;
            for (int j = 1; j < np; ++j) {
                const auto& tgt = q.targets[j - 1];
                xs.push_back(CBall::from_mpq(tgt.first, tgt.second, p));
            }
            return xs;
        };
        theta = constructive_core(L, rho, c, q.epsilon, q.x1, targets);
    } else {
        theta = direct_core(L, q, rat_upper(c), workers);
    }

    Theorem1Result res;
    res.c = c;
    res.x1_distance = verify_dist_c(f, theta, q.x1, c);
    for (int j = 1; j < np; ++j) {
        const auto& tgt = q.targets[j - 1];
        res.target_distances.push_back(
            j < s ? verify_dist_real(f, theta, j, tgt.first, q.epsilon)
                  : verify_dist_complex(f, theta, j, tgt.first, tgt.second, q.epsilon));
    }
    res.theta = std::move(theta);
    return res;
}

namespace {

mpq_class default_decompose_limit(const MinkowskiLattice& L, const RhoVector& rho,
                                  const OrderElement& beta) {
    const NumberField& f = L.field();
    RBall v = f.value(beta, L.prec()).abs();
    RBall lim = bound_BK(L, rho).mul_2exp(1).add(v).add(RBall::from_si(4, L.prec()));
    return rat_upper(lim);
}

Decomposition decompose_constructive(const MinkowskiLattice& L, const RhoVector& rho,
                                     const OrderElement& beta, const EKCertificate& ek) {
    const NumberField& f = L.field();
    const RunConfig& cfg = f.config();
    RBall rmax = ek.rho_max;
    // eps = (1 - rho/2)/2 needs a rational upper bound on rho below 2
    mpq_class ru = rat_upper(rmax);
    for (mpfr_prec_t p = 2 * cfg.precision; ru >= 2; p = next_prec(p, 64 * cfg.max_precision)) {
        if (p == 0) throw precision_error("max conjugate modulus hugs 2");
        auto emb = f.embed(beta, p);
        rmax = RBall::from_si(0, p);
        for (int j = 1; j < f.num_places(); ++j) {
            RBall m = j < f.real_places() ? emb[j].real_part().abs() : emb[j].abs();
            rmax = RBall::max(rmax, m);
        }
        ru = rat_upper(rmax);
    }
    mpq_class eps = (1 - ru / 2) / 2;
    RBall c = constant_c(L, rho, eps);
    RBall one = RBall::from_si(1, L.prec());
    mpq_class x1 = rat_upper(f.value(beta, L.prec()).mul_2exp(1).add(one).add(c));
    PlaceTargets targets = [&](mpfr_prec_t p) {
        auto emb = f.embed(beta, p);
        CBall half = CBall::from_mpq(mpq_class(1, 2), 0, p);
        std::vector<CBall> xs;
        for (int j = 1; j < f.num_places(); ++j) xs.push_back(emb[j].mul(half));
        return xs;
    };
    OrderElement theta = constructive_core(L, rho, c, eps, x1, targets);
    PisotCheck p1 = certify_pisot(f, theta);
    PisotCheck p2 = certify_pisot(f, f.sub(theta, beta));
    if (!p1.ok() || !p2.ok())
        throw internal_error("guaranteed decomposition failed certification: " +
                             (p1.ok() ? p2.reason : p1.reason));
    return Decomposition{beta, std::move(*p1.cert), std::move(*p2.cert), std::move(rmax)};
}

}  // namespace

Decomposition decompose_in_EK(const MinkowskiLattice& L, const RhoVector& rho,
                              const OrderElement& beta, std::optional<mpq_class> search_limit,
                              int workers) {
    const NumberField& f = L.field();
    EKCertificate ek = is_in_EK(f, beta);
    if (!ek.inside)
        throw input_error("element is not in E_K: " + beta.to_string() +
                          (ek.boundary ? " (a conjugate has modulus exactly 2)" : ""));
    mpq_class limit = search_limit ? *search_limit : default_decompose_limit(L, rho, beta);
    for (int round = 0; round < 2; ++round) {
        auto pis = enumerate_pisot(L, limit, workers);
        for (auto& tp : pis) {
            OrderElement theta = f.add(tp.element, beta);
            PisotCheck pc = certify_pisot(f, theta);
            if (pc.ok())
                return Decomposition{beta, std::move(*pc.cert), std::move(tp),
                                     std::move(ek.rho_max)};
        }
        limit *= 2;
    }
    return decompose_constructive(L, rho, beta, ek);
}

std::vector<Decomposition> decompose_many(const MinkowskiLattice& L, const RhoVector& rho,
                                          const OrderElement& beta, int count, int workers) {
    const NumberField& f = L.field();
    if (count < 1) throw input_error("decomposition count must be positive");
    EKCertificate ek = is_in_EK(f, beta);
    if (!ek.inside)
        throw input_error("element is not in E_K: " + beta.to_string() +
                          (ek.boundary ? " (a conjugate has modulus exactly 2)" : ""));
    std::vector<Decomposition> out;
    mpq_class limit = default_decompose_limit(L, rho, beta);
    for (int round = 0; round < 8 && static_cast<int>(out.size()) < count; ++round) {
        out.clear();
        auto pis = enumerate_pisot(L, limit, workers);
        for (auto& tp : pis) {
            OrderElement theta = f.add(tp.element, beta);
            PisotCheck pc = certify_pisot(f, theta);
            if (!pc.ok()) continue;
            out.push_back(Decomposition{beta, std::move(*pc.cert), std::move(tp), ek.rho_max});
            if (static_cast<int>(out.size()) == count) break;
        }
        limit *= 2;
    }
    if (static_cast<int>(out.size()) < count)
        throw precision_error("could not collect " + std::to_string(count) +
                              " decompositions within the search cap");
    return out;
}

}  // namespace pisot
