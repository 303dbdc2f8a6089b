#include "minkowski.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace pisot {

namespace {

struct BallInverse {
    std::vector<std::vector<RBall>> inv;
    RBall det;
};

// Gauss-Jordan with certified pivots; nullopt when no pivot ball excludes
// zero (raise precision and retry).
std::optional<BallInverse> invert_ball_matrix(std::vector<std::vector<RBall>> m,
                                              mpfr_prec_t prec) {
    size_t n = m.size();
    std::vector<std::vector<RBall>> inv(n, std::vector<RBall>(n, RBall::from_si(0, prec)));
    for (size_t i = 0; i < n; ++i) inv[i][i] = RBall::from_si(1, prec);
    RBall det = RBall::from_si(1, prec);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = n;
        Real best(RBall::kRadPrec);
        for (size_t r = col; r < n; ++r) {
            Real lo = m[r][col].abs().lower();
            if (mpfr_sgn(lo.raw()) > 0 && (piv == n || mpfr_cmp(lo.raw(), best.raw()) > 0)) {
                piv = r;
                best = lo;
            }
        }
        if (piv == n) return std::nullopt;
        if (piv != col) {
            std::swap(m[piv], m[col]);
            std::swap(inv[piv], inv[col]);
            det = det.neg();
        }
        RBall p = m[col][col];
        det = det.mul(p);
        for (size_t j = 0; j < n; ++j) {
            m[col][j] = m[col][j].div(p);
            inv[col][j] = inv[col][j].div(p);
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            RBall f = m[r][col];
            if (f.contains_zero() && f.exact()) continue;
            for (size_t j = 0; j < n; ++j) {
                m[r][j] = m[r][j].sub(f.mul(m[col][j]));
                inv[r][j] = inv[r][j].sub(f.mul(inv[col][j]));
            }
        }
    }
    return BallInverse{std::move(inv), std::move(det)};
}

bool ball_contains_si(const RBall& b, long v) {
    Real lo = b.lower(), hi = b.upper();
    return mpfr_cmp_si(lo.raw(), v) <= 0 && mpfr_cmp_si(hi.raw(), v) >= 0;
}

}  // namespace

MinkowskiLattice MinkowskiLattice::build(std::shared_ptr<const NumberField> f,
                                         mpfr_prec_t prec) {
    const RunConfig& cfg = f->config();
    int d = f->degree(), s = f->real_places(), t = f->complex_places();
    for (mpfr_prec_t p = prec;; p = next_prec(p, 64 * cfg.max_precision)) {
        if (p == 0) throw precision_error("lattice basis inversion failed at the precision cap");
        auto data = f->embed_data(p);
        std::vector<std::vector<RBall>> tau(d, std::vector<RBall>(d, RBall::from_si(0, p)));
        for (int i = 0; i < d; ++i) {
            for (int pl = 0; pl < s; ++pl) {
                auto [is_real, idx] = f->place_root(pl);
                tau[pl][i] = eval_poly_q(f->spec().basis[i], data->roots.real_roots[idx]);
            }
            for (int j = 0; j < t; ++j) {
                const CBall& z = data->basis_embed[i][s + j];
                tau[s + 2 * j][i] = z.real_part();
                tau[s + 2 * j + 1][i] = z.imag_part();
            }
        }
        auto gi = invert_ball_matrix(tau, p);
        if (!gi) continue;

        mpz_class adisc = abs(f->discriminant());
        RBall adet = gi->det.abs();
        RBall det2 = adet.mul(adet).mul_2exp(2 * t);
        Real lo = det2.lower(), hi = det2.upper();
        if (!(mpfr_cmp_z(lo.raw(), adisc.get_mpz_t()) <= 0 &&
              mpfr_cmp_z(hi.raw(), adisc.get_mpz_t()) >= 0))
            throw internal_error("lattice determinant disagrees with the discriminant");
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                RBall e = RBall::from_si(0, p);
                for (int k = 0; k < d; ++k) e = e.add(tau[i][k].mul(gi->inv[k][j]));
                if (!ball_contains_si(e, i == j ? 1 : 0))
                    throw internal_error("lattice inverse check failed");
            }
        }

        MinkowskiLattice L;
        L.f_ = std::move(f);
        L.prec_ = p;
        L.tau_ = std::move(tau);
        L.tinv_ = std::move(gi->inv);
        L.det_ = std::move(adet);
        L.vol_ = RBall::from_mpz(adisc, p).sqrt().mul_2exp(-t);
        return L;
    }
}

RhoVector compute_rho(const MinkowskiLattice& L) {
    const NumberField& f = L.field();
    const RunConfig& cfg = f.config();
    int d = f.degree(), s = f.real_places(), t = f.complex_places();
    RhoVector rv;
    for (int pl = 0; pl < s; ++pl) {
        RBall pos = RBall::from_si(0, L.prec());
        RBall neg = pos;
        auto [is_real, idx] = f.place_root(pl);
        for (int i = 0; i < d; ++i) {
            RBall v = L.tau()[pl][i];
            int sg = v.sign();
            for (mpfr_prec_t p = L.prec(); sg == 0;) {
                p = next_prec(p, 64 * cfg.max_precision);
                if (p == 0) throw precision_error("basis embedding sign undecided");
                auto data = f.embed_data(p);
                v = eval_poly_q(f.spec().basis[i], data->roots.real_roots[idx]);
                sg = v.sign();
            }
            if (sg > 0)
                pos = pos.add(v);
            else
                neg = neg.add(v.neg());
        }
        rv.rho.push_back(RBall::max(pos, neg));
    }
    if (t > 0) {
        auto data = f.embed_data(L.prec());
        for (int j = 0; j < t; ++j) {
            RBall srow = RBall::from_si(0, L.prec());
            for (int i = 0; i < d; ++i) srow = srow.add(data->basis_embed[i][s + j].abs());
            rv.disc_radius.push_back(srow);
            rv.rho.push_back(srow.mul(srow));
        }
    }
    return rv;
}

bool parallelepiped_vertices_inside(const MinkowskiLattice& L, const RhoVector& rho) {
    const NumberField& f = L.field();
    const RunConfig& cfg = f.config();
    int d = f.degree(), s = f.real_places(), t = f.complex_places();
    RBall one = RBall::from_si(1, L.prec());
    RBall infl = one.add(one.mul_2exp(-40));
    for (unsigned mask = 0; mask < (1u << d); ++mask) {
        OrderElement x = f.zero();
        for (int i = 0; i < d; ++i)
            if (mask & (1u << i)) x.coords[i] = 1;
        bool decided = false;
        for (mpfr_prec_t p = L.prec(); !decided;) {
            auto emb = f.embed(x, p);
            bool undecided = false;
            for (int pl = 0; pl < s && !undecided; ++pl) {
                RBall v = emb[pl].real_part().abs();
                RBall b = rho.rho[pl].mul(infl);
                Real vu = v.upper(), vl = v.lower(), bl = b.lower(), bu = b.upper();
                if (mpfr_cmp(vu.raw(), bl.raw()) <= 0) continue;
                if (mpfr_cmp(vl.raw(), bu.raw()) > 0) return false;
                undecided = true;
            }
            for (int j = 0; j < t && !undecided; ++j) {
                RBall v = emb[s + j].abs();
                RBall b = rho.disc_radius[j].mul(infl);
                Real vu = v.upper(), vl = v.lower(), bl = b.lower(), bu = b.upper();
                if (mpfr_cmp(vu.raw(), bl.raw()) <= 0) continue;
                if (mpfr_cmp(vl.raw(), bu.raw()) > 0) return false;
                undecided = true;
            }
            if (!undecided) {
                decided = true;
                break;
            }
            p = next_prec(p, 64 * cfg.max_precision);
            if (p == 0) return false;
        }
    }
    return true;
}

RBall constant_c(const MinkowskiLattice& L, const RhoVector& rho, const mpq_class& epsilon) {
    if (epsilon <= 0 || epsilon >= 1) throw input_error("epsilon must lie in (0,1)");
    RBall c = bound_BK(L, rho);
    int d = L.field().degree();
    if (d > 1)
        c = c.div(RBall::from_mpq(epsilon, L.prec()).pow_ui(static_cast<unsigned long>(d - 1)));
    return c;
}

RBall bound_BK(const MinkowskiLattice& L, const RhoVector& rho) {
    int t = L.field().complex_places();
    RBall b = RBall::from_mpz(abs(L.field().discriminant()), L.prec()).sqrt().mul_2exp(t);
    for (const auto& r : rho.rho) b = b.mul(r);
    if (t > 0) b = b.div(RBall::pi(L.prec()).pow_ui(static_cast<unsigned long>(t)));
    return b;
}

RealCut cut_between_q(const mpq_class& lo, const mpq_class& hi, bool lo_strict, bool hi_strict,
                      mpfr_prec_t prec) {
    RealCut c;
    c.lo = RBall::from_mpq(lo, prec);
    c.hi = RBall::from_mpq(hi, prec);
    c.lo_strict = lo_strict;
    c.hi_strict = hi_strict;
    c.lo_exact = lo;
    c.hi_exact = hi;
    return c;
}

DiscCut origin_disc_q(const mpq_class& radius, bool strict, mpfr_prec_t prec) {
    DiscCut d;
    d.radius = RBall::from_mpq(radius, prec);
    d.strict = strict;
    d.radius_exact = radius;
    return d;
}

namespace {

struct BoxRow {
    Real mid;  // a representable point near the interval center
    Real rad;  // certified half width around mid covering the interval
};

// Axis-aligned hull of the region in tau coordinates; nullopt when a cut is
// certainly empty.
std::optional<std::vector<BoxRow>> region_box(const MinkowskiLattice& L, const Region& region) {
    mpfr_prec_t p = L.prec();
    std::vector<BoxRow> rows;
    auto push_row = [&](const RBall& mid, const RBall& half) -> bool {
        Real hu = half.upper();
        if (mpfr_sgn(hu.raw()) < 0) return false;
        // rad feeds the Gram weights 1/rad^2; storing it at radius precision
        // would cap every pivot at 2^-32 relative error, which no precision
        // escalation can recover
        BoxRow row{Real(std::max(p, mid.center().prec())), Real(std::max(p, mid.center().prec()))};
        mpfr_set(row.mid.raw(), mid.center().raw(), MPFR_RNDN);
        mpfr_add(row.rad.raw(), hu.raw(), mid.radius().raw(), MPFR_RNDU);
        mpfr_t tiny;
        mpfr_init2(tiny, 8);
        mpfr_set_ui_2exp(tiny, 1, -static_cast<mpfr_exp_t>(p), MPFR_RNDU);
        mpfr_add(row.rad.raw(), row.rad.raw(), tiny, MPFR_RNDU);
        mpfr_clear(tiny);
        rows.push_back(std::move(row));
        return true;
    };
    for (const auto& cut : region.reals) {
        RBall mid = cut.lo.add(cut.hi).mul_2exp(-1);
        RBall half = cut.hi.sub(cut.lo).mul_2exp(-1);
        if (!push_row(mid, half)) return std::nullopt;
    }
    for (const auto& dc : region.discs) {
        RBall r = dc.radius;
        if (!push_row(RBall::from_mpq(dc.center_re, p), r)) return std::nullopt;
        if (!push_row(RBall::from_mpq(dc.center_im, p), r)) return std::nullopt;
    }
    return rows;
}

struct FPData {
    std::vector<std::vector<RBall>> r;        // upper-triangular factor, reduced basis
    std::vector<RBall> astar;                 // target point, reduced coordinates
    std::vector<std::vector<mpz_class>> emit;  // reduced coords -> order coords
};

bool form_gram_schmidt(const std::vector<std::vector<double>>& G,
                       std::vector<std::vector<double>>& mu, std::vector<double>& bs) {
    int d = static_cast<int>(G.size());
    mu.assign(d, std::vector<double>(d, 0.0));
    bs.assign(d, 0.0);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < i; ++j) {
            double u = G[i][j];
            for (int k = 0; k < j; ++k) u -= mu[i][k] * mu[j][k] * bs[k];
            if (!(bs[j] > 0.0) || !std::isfinite(u)) return false;
            mu[i][j] = u / bs[j];
        }
        double b = G[i][i];
        for (int k = 0; k < i; ++k) b -= mu[i][k] * mu[i][k] * bs[k];
        if (!(b > 0.0) || !std::isfinite(b)) return false;
        bs[i] = b;
    }
    return true;
}

// LLL on the quadratic form given by a double approximation of A. Returns a
// unimodular U (a = U a') and its inverse V. A very lopsided weight matrix
// makes the raw coefficient basis enumerate slab after empty slab; only the
// tree shape depends on U, exhaustiveness never does.
void lll_transform(const std::vector<std::vector<RBall>>& A,
                   std::vector<std::vector<mpz_class>>& U,
                   std::vector<std::vector<mpz_class>>& V) {
    int d = static_cast<int>(A.size());
    U.assign(d, std::vector<mpz_class>(d, 0));
    V.assign(d, std::vector<mpz_class>(d, 0));
    for (int i = 0; i < d; ++i) U[i][i] = V[i][i] = 1;
    if (d <= 1) return;

    auto gram = [&]() {
        std::vector<std::vector<double>> G(d, std::vector<double>(d, 0.0));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                double acc = 0.0;
                for (int k = 0; k < d; ++k)
                    for (int l = 0; l < d; ++l)
                        acc += mpfr_get_d(A[k][l].center().raw(), MPFR_RNDN) *
                               U[k][i].get_d() * U[l][j].get_d();
                G[i][j] = acc;
            }
        return G;
    };
    std::vector<std::vector<double>> mu;
    std::vector<double> bs;
    auto refresh = [&]() { return form_gram_schmidt(gram(), mu, bs); };
    if (!refresh()) return;

    auto shear = [&](int k, int j, const mpz_class& q) {  // col k -= q * col j
        for (int i = 0; i < d; ++i) U[i][k] -= q * U[i][j];
        for (int c = 0; c < d; ++c) V[j][c] += q * V[k][c];
    };
    auto swap_cols = [&](int k, int j) {
        for (int i = 0; i < d; ++i) std::swap(U[i][k], U[i][j]);
        for (int c = 0; c < d; ++c) std::swap(V[k][c], V[j][c]);
    };

    int guard = 96 * d * d + 96;
    int k = 1;
    while (k < d && guard-- > 0) {
        for (int j = k - 1; j >= 0; --j) {
            if (std::abs(mu[k][j]) <= 0.5) continue;
            mpz_class q;
            mpz_set_d(q.get_mpz_t(), std::nearbyint(mu[k][j]));
            shear(k, j, q);
            if (!refresh()) return;
        }
        if (bs[k] >= (0.75 - mu[k][k - 1] * mu[k][k - 1]) * bs[k - 1]) {
            ++k;
        } else {
            swap_cols(k, k - 1);
            if (!refresh()) return;
            k = std::max(k - 1, 1);
        }
    }
}

// Cholesky of U^T (tau^T W tau) U with W = diag(1/rad^2); the box lies inside
// the ellipsoid sum_k ((tau a - mid)_k / rad_k)^2 <= d.
std::optional<FPData> fp_prepare(const MinkowskiLattice& L, const std::vector<BoxRow>& box) {
    mpfr_prec_t p = L.prec();
    int d = static_cast<int>(box.size());
    std::vector<RBall> w;
    for (int k = 0; k < d; ++k) {
        RBall rad = RBall::from_real(box[k].rad);
        if (rad.sign() <= 0) return std::nullopt;
        w.push_back(RBall::from_si(1, p).div(rad.mul(rad)));
    }
    std::vector<std::vector<RBall>> a(d, std::vector<RBall>(d, RBall::from_si(0, p)));
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            RBall acc = RBall::from_si(0, p);
            for (int k = 0; k < d; ++k)
                acc = acc.add(L.tau()[k][i].mul(L.tau()[k][j]).mul(w[k]));
            a[i][j] = acc;
            a[j][i] = acc;
        }

    FPData fp;
    std::vector<std::vector<mpz_class>> V;
    lll_transform(a, fp.emit, V);
    const auto& U = fp.emit;
    std::vector<std::vector<RBall>> au(d, std::vector<RBall>(d, RBall::from_si(0, p)));
    for (int k = 0; k < d; ++k)
        for (int j = 0; j < d; ++j) {
            RBall acc = RBall::from_si(0, p);
            for (int l = 0; l < d; ++l) acc = acc.add(a[k][l].mul_mpz(U[l][j]));
            au[k][j] = acc;
        }
    std::vector<std::vector<RBall>> ar(d, std::vector<RBall>(d, RBall::from_si(0, p)));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            RBall acc = RBall::from_si(0, p);
            for (int k = 0; k < d; ++k) acc = acc.add(au[k][j].mul_mpz(U[k][i]));
            ar[i][j] = acc;
        }

    fp.r.assign(d, std::vector<RBall>(d, RBall::from_si(0, p)));
    for (int k = 0; k < d; ++k) {
        RBall v = ar[k][k];
        for (int m = 0; m < k; ++m) v = v.sub(fp.r[m][k].mul(fp.r[m][k]));
        if (v.sign() <= 0) return std::nullopt;
        fp.r[k][k] = v.sqrt();
        for (int j = k + 1; j < d; ++j) {
            RBall u = ar[k][j];
            for (int m = 0; m < k; ++m) u = u.sub(fp.r[m][k].mul(fp.r[m][j]));
            fp.r[k][j] = u.div(fp.r[k][k]);
        }
    }
    std::vector<RBall> astar_raw;
    for (int i = 0; i < d; ++i) {
        RBall acc = RBall::from_si(0, p);
        for (int k = 0; k < d; ++k) acc = acc.add(L.tau_inverse()[i][k].mul(RBall::from_real(box[k].mid)));
        astar_raw.push_back(acc);
    }
    for (int i = 0; i < d; ++i) {
        RBall acc = RBall::from_si(0, p);
        for (int j = 0; j < d; ++j) acc = acc.add(astar_raw[j].mul_mpz(V[i][j]));
        fp.astar.push_back(acc);
    }
    return fp;
}

constexpr long kWindowCap = 10'000'000;
constexpr long kCandidateCap = 20'000'000;

void fp_descend(const FPData& fp, mpfr_prec_t p, int k, std::vector<mpz_class>& a,
                const RBall& budget, long& count, std::vector<std::vector<mpz_class>>& out) {
    RBall sqrtb = budget.sqrt();
    RBall partial = RBall::from_si(0, p);
    int d = static_cast<int>(fp.astar.size());
    for (int j = k + 1; j < d; ++j)
        partial = partial.add(fp.r[k][j].mul(RBall::from_mpz(a[j], p).sub(fp.astar[j])));
    RBall lo = fp.astar[k].add(partial.neg().sub(sqrtb).div(fp.r[k][k]));
    RBall hi = fp.astar[k].add(partial.neg().add(sqrtb).div(fp.r[k][k]));
    mpz_class nlo, nhi;
    Real e = lo.lower();
    mpfr_get_z(nlo.get_mpz_t(), e.raw(), MPFR_RNDU);
    e = hi.upper();
    mpfr_get_z(nhi.get_mpz_t(), e.raw(), MPFR_RNDD);
    if (nhi < nlo) return;
    if (nhi - nlo > kWindowCap) throw input_error("enumeration region too large");
    for (mpz_class n = nlo; n <= nhi; ++n) {
        a[k] = n;
        RBall term = fp.r[k][k].mul(RBall::from_mpz(n, p).sub(fp.astar[k])).add(partial);
        RBall nb = budget.sub(term.mul(term));
        Real nbu = nb.upper();
        if (mpfr_sgn(nbu.raw()) < 0) continue;
        if (k == 0) {
            if (++count > kCandidateCap) throw input_error("enumeration region too large");
            out.push_back(a);
        } else {
            fp_descend(fp, p, k - 1, a, nb, count, out);
        }
    }
}

enum class Verdict { In, Out, Undecided };

Verdict region_test_at(const NumberField& f, const Region& region, const OrderElement& x,
                       mpfr_prec_t p) {
    int s = f.real_places();
    auto emb = f.embed(x, p);
    bool undecided = false;
    for (size_t pl = 0; pl < region.reals.size(); ++pl) {
        const RealCut& cut = region.reals[pl];
        RBall v = emb[pl].real_part();
        Real vl = v.lower(), vu = v.upper();
        {
            Real bl = cut.lo.lower(), bu = cut.lo.upper();
            int c_lo = mpfr_cmp(vl.raw(), bu.raw());
            int c_hi = mpfr_cmp(vu.raw(), bl.raw());
            bool sat = cut.lo_strict ? c_lo > 0 : c_lo >= 0;
            bool vio = cut.lo_strict ? c_hi <= 0 : c_hi < 0;
            if (vio) return Verdict::Out;
            if (!sat) undecided = true;
        }
        {
            Real bl = cut.hi.lower(), bu = cut.hi.upper();
            int c_lo = mpfr_cmp(vu.raw(), bl.raw());
            int c_hi = mpfr_cmp(vl.raw(), bu.raw());
            bool sat = cut.hi_strict ? c_lo < 0 : c_lo <= 0;
            bool vio = cut.hi_strict ? c_hi >= 0 : c_hi > 0;
            if (vio) return Verdict::Out;
            if (!sat) undecided = true;
        }
    }
    for (size_t j = 0; j < region.discs.size(); ++j) {
        const DiscCut& dc = region.discs[j];
        CBall center = CBall::from_mpq(dc.center_re, dc.center_im, p);
        RBall dist = emb[s + j].sub(center).abs();
        Real dl = dist.lower(), du = dist.upper();
        Real bl = dc.radius.lower(), bu = dc.radius.upper();
        bool sat = dc.strict ? mpfr_cmp(du.raw(), bl.raw()) < 0 : mpfr_cmp(du.raw(), bl.raw()) <= 0;
        bool vio = dc.strict ? mpfr_cmp(dl.raw(), bu.raw()) >= 0 : mpfr_cmp(dl.raw(), bu.raw()) > 0;
        if (vio) return Verdict::Out;
        if (!sat) undecided = true;
    }
    return undecided ? Verdict::Undecided : Verdict::In;
}

bool region_member(const NumberField& f, const Region& region, const OrderElement& x,
                   UndecidedPolicy policy) {
    const RunConfig& cfg = f.config();
    for (mpfr_prec_t p = cfg.precision;;) {
        Verdict v = region_test_at(f, region, x, p);
        if (v == Verdict::In) return true;
        if (v == Verdict::Out) return false;
        p = next_prec(p, cfg.max_precision);
        if (p == 0) break;
    }
    // exact resolution cut by cut
    int s = f.real_places();
    for (size_t pl = 0; pl < region.reals.size(); ++pl) {
        const RealCut& cut = region.reals[pl];
        if (!cut.lo_exact || !cut.hi_exact) {
            if (policy == UndecidedPolicy::Skip) return false;
            throw precision_error("membership undecided with no exact bound for element " +
                                  x.to_string());
        }
        int cl = f.compare_value_to_mpq(x, static_cast<int>(pl), *cut.lo_exact);
        if (cut.lo_strict ? cl <= 0 : cl < 0) return false;
        int ch = f.compare_value_to_mpq(x, static_cast<int>(pl), *cut.hi_exact);
        if (cut.hi_strict ? ch >= 0 : ch > 0) return false;
    }
    for (size_t j = 0; j < region.discs.size(); ++j) {
        const DiscCut& dc = region.discs[j];
        if (!dc.radius_exact || dc.center_re != 0 || dc.center_im != 0) {
            if (policy == UndecidedPolicy::Skip) return false;
            throw precision_error("membership undecided on a boundary-degenerate disc for " +
                                  x.to_string());
        }
        Cmp3 c = f.compare_abs_to_mpq(x, s + static_cast<int>(j), *dc.radius_exact);
        if (dc.strict ? c != Cmp3::Less : c == Cmp3::Greater) return false;
    }
    return true;
}

}  // namespace

std::vector<OrderElement> enumerate_lattice_points(const MinkowskiLattice& L, const Region& region,
                                                   int workers, UndecidedPolicy policy) {
    const NumberField& f = L.field();
    if (static_cast<int>(region.reals.size()) != f.real_places() ||
        static_cast<int>(region.discs.size()) != f.complex_places())
        throw input_error("region shape does not match the field signature");
    auto box = region_box(L, region);
    if (!box) return {};

    const MinkowskiLattice* cur = &L;
    MinkowskiLattice rebuilt;
    std::optional<FPData> fp;
    for (;;) {
        fp = fp_prepare(*cur, *box);
        if (fp) break;
        mpfr_prec_t np = next_prec(cur->prec(), 64 * f.config().max_precision);
        if (np == 0) throw precision_error("lattice too ill-conditioned to enumerate");
        rebuilt = MinkowskiLattice::build(L.field_ptr(), np);
        cur = &rebuilt;
        box = region_box(*cur, region);
        if (!box) return {};
    }

    int d = f.degree();
    std::vector<std::vector<mpz_class>> cand;
    std::vector<mpz_class> work(d);
    long count = 0;
    fp_descend(*fp, cur->prec(), d - 1, work, RBall::from_si(d, cur->prec()), count, cand);

    std::vector<OrderElement> elems;
    elems.reserve(cand.size());
    for (auto& c : cand) {
        std::vector<mpz_class> coords(d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) coords[i] += fp->emit[i][j] * c[j];
        elems.push_back(OrderElement{std::move(coords)});
    }

    std::vector<char> keep(elems.size(), 0);
    int nw = std::max(1, workers);
    if (nw == 1 || elems.size() < 16) {
        for (size_t i = 0; i < elems.size(); ++i)
            keep[i] = region_member(f, region, elems[i], policy) ? 1 : 0;
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errs(nw);
        for (int wix = 0; wix < nw; ++wix) {
            pool.emplace_back([&, wix] {
                try {
                    for (size_t i = wix; i < elems.size(); i += nw)
                        keep[i] = region_member(f, region, elems[i], policy) ? 1 : 0;
                } catch (...) {
                    errs[wix] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (auto& e : errs)
            if (e) std::rethrow_exception(e);
    }

    std::vector<OrderElement> out;
    for (size_t i = 0; i < elems.size(); ++i)
        if (keep[i]) out.push_back(std::move(elems[i]));
    sort_by_value(f, out);
    return out;
}

OrderElement find_alpha(const MinkowskiLattice& L, const RhoVector& rho, const RBall& c,
                        const mpq_class& epsilon) {
    if (epsilon <= 0 || epsilon >= 1) throw input_error("epsilon must lie in (0,1)");
    const NumberField& f = L.field();
    mpfr_prec_t p = L.prec();
    int s = f.real_places(), t = f.complex_places();
    RBall one = RBall::from_si(1, p);
    RBall infl = one.add(one.mul_2exp(-40));
    RBall eps = RBall::from_mpq(epsilon, p);
    Region reg;
    for (int pl = 0; pl < s; ++pl) {
        RBall b = (pl == 0 ? c : eps).mul(infl).div(rho.rho[pl]);
        RealCut cut;
        cut.lo = b.neg();
        cut.hi = b;
        reg.reals.push_back(std::move(cut));
    }
    for (int j = 0; j < t; ++j) {
        DiscCut dc;
        dc.radius = eps.mul(infl).div(rho.disc_radius[j]);
        reg.discs.push_back(std::move(dc));
    }
    auto pts = enumerate_lattice_points(L, reg, 1, UndecidedPolicy::Skip);
    for (const auto& x : pts) {
        if (x.is_zero()) continue;
        RBall v = f.value(x, p);
        int sg = v.sign();
        for (mpfr_prec_t q = p; sg == 0;) {
            q = next_prec(q, 64 * f.config().max_precision);
            if (q == 0) throw internal_error("sign of a nonzero element undecided");
            v = f.value(x, q);
            sg = v.sign();
        }
        if (sg < 0) continue;
        if (!region_member(f, reg, x, UndecidedPolicy::Skip))
            throw internal_error("candidate lost its region certificate on re-verification");
        return x;
    }
    throw internal_error("no lattice point found in the Minkowski box");
}

RoundingResult round_to_lattice(const MinkowskiLattice& L, const RhoVector& rho,
                                const TargetFn& target) {
    const NumberField& f = L.field();
    const RunConfig& cfg = f.config();
    int d = f.degree(), s = f.real_places(), t = f.complex_places();

    std::vector<mpz_class> floors(d);
    bool forced = false;
    const MinkowskiLattice* cur = &L;
    MinkowskiLattice rebuilt;
    for (mpfr_prec_t p = L.prec();;) {
        auto tv = target(p);
        if (static_cast<int>(tv.size()) != s + t)
            throw input_error("rounding target has the wrong place count");
        std::vector<RBall> y(d, RBall::from_si(0, p));
        for (int pl = 0; pl < s; ++pl) y[pl] = tv[pl].real_part();
        for (int j = 0; j < t; ++j) {
            y[s + 2 * j] = tv[s + j].real_part();
            y[s + 2 * j + 1] = tv[s + j].imag_part();
        }
        std::vector<std::optional<mpz_class>> fl(d);
        bool all = true;
        for (int i = 0; i < d; ++i) {
            RBall r = RBall::from_si(0, p);
            for (int k = 0; k < d; ++k) r = r.add(cur->tau_inverse()[i][k].mul(y[k]));
            fl[i] = r.unique_integer_floor();
            if (!fl[i]) {
                all = false;
                if (next_prec(p, cfg.max_precision) == 0) {
                    mpfr_get_z(floors[i].get_mpz_t(), r.center().raw(), MPFR_RNDD);
                    fl[i] = floors[i];
                    forced = true;
                    all = true;
                    continue;
                }
                break;
            }
        }
        if (all) {
            for (int i = 0; i < d; ++i) floors[i] = *fl[i];
            break;
        }
        p = next_prec(p, cfg.max_precision);
        rebuilt = MinkowskiLattice::build(L.field_ptr(), p);
        cur = &rebuilt;
    }

    OrderElement beta{floors};
    RBall one = RBall::from_si(1, L.prec());
    RBall infl = one.add(one.mul_2exp(-40));
    for (mpfr_prec_t p = L.prec();;) {
        auto tv = target(p);
        auto emb = f.embed(beta, p);
        std::vector<CBall> residual;
        bool undecided = false;
        for (int pl = 0; pl < s + t; ++pl) {
            bool complex_pl = pl >= s;
            CBall r = tv[pl].sub(emb[pl]);
            RBall a = complex_pl ? r.abs() : r.real_part().abs();
            RBall b = (complex_pl ? rho.disc_radius[pl - s] : rho.rho[pl]).mul(infl);
            Real au = a.upper(), al = a.lower(), blo = b.lower(), bup = b.upper();
            if (mpfr_cmp(al.raw(), bup.raw()) > 0 && !forced)
                throw internal_error("rounding residual escaped the containment box");
            if (mpfr_cmp(au.raw(), blo.raw()) > 0) undecided = true;
            residual.push_back(std::move(r));
        }
        if (!undecided || forced)
            return RoundingResult{std::move(beta), std::move(residual), forced};
        p = next_prec(p, 64 * cfg.max_precision);
        if (p == 0) throw internal_error("rounding residual containment undecidable");
    }
}

void sort_by_value(const NumberField& f, std::vector<OrderElement>& xs) {
    if (xs.size() < 2) return;
    const RunConfig& cfg = f.config();
    for (mpfr_prec_t p = cfg.precision;;) {
        std::vector<RBall> vals;
        vals.reserve(xs.size());
        for (const auto& x : xs) vals.push_back(f.value(x, p));
        std::vector<size_t> idx(xs.size());
        for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
            return mpfr_cmp(vals[a].center().raw(), vals[b].center().raw()) < 0;
        });
        bool ok = true;
        for (size_t i = 0; i + 1 < idx.size() && ok; ++i) {
            Real a = vals[idx[i]].upper(), b = vals[idx[i + 1]].lower();
            if (mpfr_cmp(a.raw(), b.raw()) >= 0) ok = false;
        }
        if (ok) {
            std::vector<OrderElement> sorted;
            sorted.reserve(xs.size());
            for (size_t i : idx) sorted.push_back(std::move(xs[i]));
            xs = std::move(sorted);
            return;
        }
        p = next_prec(p, 64 * cfg.max_precision);
        if (p == 0) throw internal_error("value ordering separation failed");
    }
}

}  // namespace pisot
