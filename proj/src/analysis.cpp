#include "analysis.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace pisot {

namespace {

std::string ball_str(const RBall& b) { return b.to_string(); }

}  // namespace

EKCertificate is_in_EK(const NumberField& f, const OrderElement& beta) {
    const RunConfig& cfg = f.config();
    EKCertificate out;
    out.element = beta;
    out.evidence = "interval";
    if (beta.is_zero()) return out;

    bool positive = false;
    for (mpfr_prec_t p = cfg.precision; p; p = next_prec(p, cfg.max_precision)) {
        int sg = f.value(beta, p).sign();
        if (sg != 0) {
            positive = sg > 0;
            break;
        }
        if (next_prec(p, cfg.max_precision) == 0) {
            out.evidence = "exact";
            positive = f.compare_value_to_mpq(beta, 0, 0) > 0;
        }
    }
    if (!positive) return out;

    int np = f.num_places(), s = f.real_places();
    std::vector<Tri> verdict(np - 1, Tri::Unknown);
    std::vector<RBall> moduli(np - 1);
    bool all_decided = np == 1;
    for (mpfr_prec_t p = 2 * cfg.precision; !all_decided; p = next_prec(p, cfg.max_precision)) {
        if (p == 0) break;
        auto emb = f.embed(beta, p);
        all_decided = true;
        for (int j = 1; j < np; ++j) {
            moduli[j - 1] = j < s ? emb[j].real_part().abs() : emb[j].abs();
            Real u = moduli[j - 1].upper(), l = moduli[j - 1].lower();
            if (mpfr_cmp_ui(u.raw(), 2) < 0)
                verdict[j - 1] = Tri::True;
            else if (mpfr_cmp_ui(l.raw(), 2) > 0)
                verdict[j - 1] = Tri::False;
            else {
                verdict[j - 1] = Tri::Unknown;
                all_decided = false;
            }
        }
    }
    if (!all_decided) {
        out.evidence = "exact";
        for (int j = 1; j < np; ++j) {
            if (verdict[j - 1] != Tri::Unknown) continue;
            Cmp3 c = f.compare_abs_to_mpq(beta, j, 2);
            if (c == Cmp3::Equal) {
                out.boundary = true;
                verdict[j - 1] = Tri::False;
            } else {
                verdict[j - 1] = c == Cmp3::Less ? Tri::True : Tri::False;
            }
        }
    }

    out.conjugate_moduli = std::move(moduli);
    out.rho_max = RBall::from_si(0, cfg.precision);
    bool all_in = true;
    for (int j = 1; j < np; ++j) {
        out.rho_max = RBall::max(out.rho_max, out.conjugate_moduli[j - 1]);
        if (verdict[j - 1] != Tri::True) all_in = false;
    }
    out.inside = all_in;
    return out;
}

std::vector<EKCertificate> enumerate_EK(const MinkowskiLattice& L, const mpq_class& bound,
                                        int workers) {
    const NumberField& f = L.field();
    if (bound <= 0) return {};
    Region reg;
    reg.reals.push_back(cut_between_q(0, bound, true, false, L.prec()));
    for (int j = 1; j < f.real_places(); ++j)
        reg.reals.push_back(cut_between_q(-2, 2, true, true, L.prec()));
    for (int j = 0; j < f.complex_places(); ++j)
        reg.discs.push_back(origin_disc_q(2, true, L.prec()));
    auto pts = enumerate_lattice_points(L, reg, workers, UndecidedPolicy::Error);
    std::vector<EKCertificate> out;
    out.reserve(pts.size());
    for (auto& x : pts) {
        EKCertificate ek = is_in_EK(f, x);
        if (!ek.inside)
            throw internal_error("enumerated point failed the membership recheck: " +
                                 x.to_string());
        out.push_back(std::move(ek));
    }
    return out;
}

GapReport consecutive_gaps(const MinkowskiLattice& L, const mpq_class& X, int workers) {
    const NumberField& f = L.field();
    GapReport rep;
    rep.field_name = f.spec().name;
    rep.bound = X;
    rep.pisot = enumerate_pisot(L, X, workers);
    if (rep.pisot.size() < 2)
        throw input_error("window holds fewer than two Pisot numbers; raise the bound");
    for (size_t i = 0; i + 1 < rep.pisot.size(); ++i)
        rep.gaps.push_back(f.sub(rep.pisot[i + 1].element, rep.pisot[i].element));

    std::map<std::vector<mpz_class>, int> mult;
    for (const auto& g : rep.gaps) ++mult[g.coords];
    std::vector<OrderElement> distinct;
    distinct.reserve(mult.size());
    for (const auto& [coords, n] : mult) distinct.push_back(OrderElement{coords});
    sort_by_value(f, distinct);
    for (auto& g : distinct) {
        int n = mult.at(g.coords);
        rep.distinct_gaps.emplace_back(std::move(g), n);
    }
    rep.min_gap = f.value(rep.distinct_gaps.front().first, 2 * f.config().precision);
    rep.max_gap = f.value(rep.distinct_gaps.back().first, 2 * f.config().precision);
    return rep;
}

VerificationReport verify_EK_equals_DK(const MinkowskiLattice& L, const RhoVector& rho,
                                       const mpq_class& bound, const mpq_class& search_limit,
                                       int workers) {
    const NumberField& f = L.field();
    VerificationReport rep;
    rep.claim = "every small-conjugate element is a difference of Pisot numbers, and conversely";
    rep.params = {{"bound", rational_to_string(bound)},
                  {"search_limit", rational_to_string(search_limit)}};
    rep.pass = true;

    auto ek = enumerate_EK(L, bound, workers);
    rep.notes.push_back("elements tested: " + std::to_string(ek.size()));
    for (const auto& cert : ek) {
        try {
            Decomposition d = decompose_in_EK(L, rho, cert.element, std::nullopt, workers);
            rep.witnesses.push_back(cert.element.to_string() + " = " +
                                    d.theta.element.to_string() + " - " +
                                    d.theta_minus_beta.element.to_string());
        } catch (const precision_error& e) {
            rep.pass = false;
            rep.counterexamples.push_back(cert.element.to_string() + ": " + e.what());
        } catch (const internal_error& e) {
            rep.pass = false;
            rep.counterexamples.push_back(cert.element.to_string() + ": " + e.what());
        }
    }

    auto pis = enumerate_pisot(L, search_limit, workers);
    int pairs = 0;
    for (size_t i = 0; i < pis.size(); ++i)
        for (size_t j = i + 1; j < pis.size(); ++j) {
            OrderElement d = f.sub(pis[j].element, pis[i].element);
            ++pairs;
            EKCertificate c = is_in_EK(f, d);
            if (!c.inside) {
                rep.pass = false;
                rep.counterexamples.push_back("difference " + d.to_string() +
                                              " escapes the conjugate bound");
            }
        }
    rep.notes.push_back("pairwise differences tested: " + std::to_string(pairs));
    return rep;
}

VerificationReport verify_corollary3(const MinkowskiLattice& L, const mpq_class& X, int workers) {
    const NumberField& f = L.field();
    const RunConfig& cfg = f.config();
    VerificationReport rep;
    int r = f.real_places() + f.complex_places() - 1;
    rep.claim = "the window shows at least 2^(r generators) distinct consecutive gaps";
    rep.params = {{"bound", rational_to_string(X)},
                  {"expected_min", std::to_string(1 << r)}};

    GapReport gaps = consecutive_gaps(L, X, workers);
    size_t need = static_cast<size_t>(1) << r;
    rep.pass = gaps.distinct_gaps.size() >= need;
    rep.notes.push_back("distinct gaps: " + std::to_string(gaps.distinct_gaps.size()));

    // sign-pattern witnesses: for eps in {+-1}^r find a gap with
    // sign(Re sigma_j(g)) = -eps_j at every non-identity place
    for (int mask = 0; mask < (1 << r); ++mask) {
        std::string pat;
        for (int j = 0; j < r; ++j) pat += (mask >> j) & 1 ? '-' : '+';
        bool found = false;
        for (const auto& [g, n] : gaps.distinct_gaps) {
            bool match = true;
            for (int j = 1; j <= r && match; ++j) {
                int want = (mask >> (j - 1)) & 1 ? 1 : -1;  // sign of Re sigma_j
                int got = 0;
                for (mpfr_prec_t p = cfg.precision; p; p = next_prec(p, cfg.max_precision)) {
                    got = f.embed_place(g, j, p).real_part().sign();
                    if (got != 0) break;
                }
                if (got != want) match = false;
            }
            if (match) {
                rep.witnesses.push_back("pattern " + pat + ": gap " + g.to_string());
                found = true;
                break;
            }
        }
        if (!found) rep.notes.push_back("pattern " + pat + " not yet observed in this window");
    }
    return rep;
}

VerificationReport density_probe(const MinkowskiLattice& L, const RhoVector& rho,
                                 const mpq_class& grid_step, const mpq_class& epsilon,
                                 int workers) {
    const NumberField& f = L.field();
    VerificationReport rep;
    rep.claim = "every admissible conjugate target is hit by a Pisot number within epsilon";
    rep.params = {{"grid_step", rational_to_string(grid_step)},
                  {"epsilon", rational_to_string(epsilon)}};
    if (grid_step <= 0 || grid_step > 2) throw input_error("grid step must lie in (0, 2]");
    if (epsilon <= 0 || epsilon >= 1) throw input_error("epsilon must lie in (0,1)");

    int s = f.real_places(), t = f.complex_places(), r = s + t - 1;
    if (r == 0) throw input_error("the rational field has no non-identity place to probe");

    // axis grids: reals need |x| + eps < 1, complex pairs need
    // |x|^2 < (1 - eps)^2
    std::vector<mpq_class> axis;
    for (mpq_class v = -1; v <= 1; v += grid_step) axis.push_back(v);

    std::vector<std::vector<std::pair<mpq_class, mpq_class>>> probes;
    std::vector<std::pair<mpq_class, mpq_class>> cur(r);
    int skipped = 0;
    std::function<void(int)> walk = [&](int j) {
        if (j == r) {
            probes.push_back(cur);
            return;
        }
        if (j < s - 1) {
            for (const mpq_class& a : axis) {
                if (abs(a) + epsilon >= 1) {
                    ++skipped;
                    continue;
                }
                cur[j] = {a, 0};
                walk(j + 1);
            }
        } else {
            mpq_class margin = 1 - epsilon;
            for (const mpq_class& a : axis)
                for (const mpq_class& b : axis) {
                    if (a * a + b * b >= margin * margin) {
                        ++skipped;
                        continue;
                    }
                    cur[j] = {a, b};
                    walk(j + 1);
                }
        }
    };
    walk(0);

    RBall c = constant_c(L, rho, epsilon);
    mpq_class x1 = mpq_from_real(c.upper().raw()) + 2;
    rep.pass = true;
    int hit = 0;
    for (const auto& tgt : probes) {
        Theorem1Query q;
        q.targets = tgt;
        q.epsilon = epsilon;
        q.x1 = x1;
        Theorem1Result res = theorem1_construct(L, rho, q, Theorem1Strategy::Direct, workers);
        PisotCheck pc = certify_pisot(f, res.theta);
        if (!pc.ok()) {
            rep.pass = false;
            std::string tstr;
            for (const auto& [a, b] : tgt)
                tstr += (tstr.empty() ? "" : ", ") + rational_to_string(a) + "+" +
                        rational_to_string(b) + "i";
            rep.counterexamples.push_back("target (" + tstr + "): nearest point " +
                                          res.theta.to_string() + " is not Pisot: " + pc.reason);
            continue;
        }
        ++hit;
    }
    rep.notes.push_back("targets probed: " + std::to_string(probes.size()));
    rep.notes.push_back("grid nodes outside the admissible margin: " + std::to_string(skipped));
    if (hit == static_cast<int>(probes.size()))
        rep.witnesses.push_back("all " + std::to_string(hit) + " probes answered within epsilon");
    else
        rep.pass = false;
    return rep;
}

VerificationReport discreteness_check(const MinkowskiLattice& L, const RhoVector& rho,
                                      const mpq_class& X, int workers) {
    const NumberField& f = L.field();
    const RunConfig& cfg = f.config();
    VerificationReport rep;
    int d = f.degree();
    rep.claim = "consecutive gaps clear the uniform floor and the lattice ceiling";
    rep.params = {{"bound", rational_to_string(X)}};
    rep.pass = true;

    GapReport gaps = consecutive_gaps(L, X, workers);
    mpq_class floor_q(1);
    floor_q /= mpz_class(1) << (d - 1);
    for (const auto& g : gaps.gaps) {
        if (cmp_value_q(f, g, floor_q) < 0) {
            rep.pass = false;
            rep.counterexamples.push_back("gap " + g.to_string() + " drops below 2^(1-degree)");
        }
        mpz_class nrm = f.norm(g);
        if (nrm == 0) {
            rep.pass = false;
            rep.counterexamples.push_back("gap " + g.to_string() + " has norm 0");
        }
    }
    rep.notes.push_back("gaps tested: " + std::to_string(gaps.gaps.size()));
    rep.notes.push_back("uniform floor 2^(1-degree) = " + rational_to_string(floor_q));

    RBall bk = bound_BK(L, rho);
    rep.notes.push_back("lattice ceiling = " + ball_str(bk));

    // min Pisot <= ceiling and max gap <= ceiling, certified by escalation
    auto le_ball = [&](const OrderElement& x, const char* label) {
        RBall lhs = f.value(x, 2 * cfg.precision), rhs = bk;
        for (mpfr_prec_t p = 2 * cfg.precision;; p = next_prec(p, 64 * cfg.max_precision)) {
            Real au = lhs.upper(), bl = rhs.lower();
            if (mpfr_cmp(au.raw(), bl.raw()) <= 0) return true;
            Real al = lhs.lower(), bu = rhs.upper();
            if (mpfr_cmp(al.raw(), bu.raw()) > 0) return false;
            if (p == 0)
                throw precision_error(std::string(label) + " sits on the lattice ceiling");
            MinkowskiLattice L2 = MinkowskiLattice::build(L.field_ptr(), p);
            rhs = bound_BK(L2, compute_rho(L2));
            lhs = f.value(x, p);
        }
    };
    RBall minp = f.value(gaps.pisot.front().element, 2 * cfg.precision);
    if (!le_ball(gaps.pisot.front().element, "smallest Pisot number")) {
        rep.pass = false;
        rep.counterexamples.push_back("smallest Pisot number " + ball_str(minp) +
                                      " exceeds the lattice ceiling " + ball_str(bk));
    }
    if (!le_ball(gaps.distinct_gaps.back().first, "largest gap")) {
        rep.pass = false;
        rep.counterexamples.push_back("largest gap " + ball_str(gaps.max_gap) +
                                      " exceeds the lattice ceiling " + ball_str(bk));
    }
    if (rep.pass)
        rep.witnesses.push_back("all " + std::to_string(gaps.gaps.size()) +
                                " gaps within [2^(1-degree), ceiling]");
    return rep;
}

}  // namespace pisot
