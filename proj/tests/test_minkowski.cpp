#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

#include <algorithm>

using namespace pisot;
using namespace testutil;

namespace {

MinkowskiLattice make_lattice(const char* json, mpfr_prec_t prec = 128) {
    return MinkowskiLattice::build(make_field(json, prec), prec);
}

// expected = a + b * sqrt(n)
bool encloses_surd(const RBall& v, long a, long b, unsigned long n) {
    auto expect = RBall::from_si(a, 256).add(
        RBall::from_si(b, 256).mul(RBall::from_si(static_cast<long>(n), 256).sqrt()));
    return v.sub(expect).contains_zero() && v.radius_double() < 1e-15;
}

}  // namespace

TEST_CASE("volume matches the discriminant formula") {
    auto L2 = make_lattice(kQ2);
    auto sqrt8 = RBall::from_si(8, 256).sqrt();
    CHECK(L2.volume().sub(sqrt8).contains_zero());
    CHECK(L2.volume().radius_double() < 1e-20);
    CHECK(L2.det_enclosure().sub(L2.volume()).contains_zero());

    auto Lp = make_lattice(kPlastic);
    // sqrt(23)/2 for one conjugate pair
    CHECK(Lp.volume().mul(Lp.volume()).sub(RBall::from_mpq(mpq_class(23, 4), 256)).contains_zero());
    CHECK(Lp.volume().radius_double() < 1e-20);

    auto Lr = make_lattice(kTotallyReal);
    CHECK(Lr.volume().sub(RBall::from_si(9, 128)).contains_zero());
    CHECK(Lr.volume().radius_double() < 1e-20);

    auto Lq = make_lattice(kRationals);
    CHECK(Lq.volume().exact());
    CHECK(Lq.volume().unique_integer_round().value() == 1);
}

TEST_CASE("box radii of the fundamental parallelepiped") {
    auto L = make_lattice(kQ2);
    auto rho = compute_rho(L);
    REQUIRE(rho.rho.size() == 2);
    CHECK(rho.disc_radius.empty());
    CHECK(encloses_surd(rho.rho[0], 1, 1, 2));
    CHECK(encloses_surd(rho.rho[1], 0, 1, 2));
    CHECK(parallelepiped_vertices_inside(L, rho));

    auto Lp = make_lattice(kPlastic);
    auto rp = compute_rho(Lp);
    REQUIRE(rp.rho.size() == 2);
    REQUIRE(rp.disc_radius.size() == 1);
    CHECK(parallelepiped_vertices_inside(Lp, rp));

    auto Lr = make_lattice(kTotallyReal);
    CHECK(parallelepiped_vertices_inside(Lr, compute_rho(Lr)));
}

TEST_CASE("lattice constants for the square root of two") {
    auto L = make_lattice(kQ2);
    auto rho = compute_rho(L);
    // B = 4 + 4 sqrt 2, c(1/2) = 2B, c(eps) * eps^(d-1) = B
    auto B = bound_BK(L, rho);
    CHECK(encloses_surd(B, 4, 4, 2));
    auto c_half = constant_c(L, rho, mpq_class(1, 2));
    CHECK(encloses_surd(c_half, 8, 8, 2));
    CHECK(c_half.sub(B.mul_2exp(1)).contains_zero());
    auto c_q = constant_c(L, rho, mpq_class(2, 5));
    CHECK(c_q.mul(RBall::from_mpq(mpq_class(2, 5), 256)).sub(B).contains_zero());
}

TEST_CASE("lattice constants for the mixed cubic") {
    auto L = make_lattice(kPlastic);
    auto rho = compute_rho(L);
    auto B = bound_BK(L, rho);
    CHECK(B.less_than_mpq(mpq_class("857421464737132204/10000000000000000")) == Tri::True);
    CHECK(B.less_than_mpq(mpq_class("857421464737132203/10000000000000000")) == Tri::False);
    auto c = constant_c(L, rho, mpq_class(1, 4));
    CHECK(c.less_than_mpq(mpq_class("13718743435794115252/10000000000000000")) == Tri::True);
    CHECK(c.less_than_mpq(mpq_class("13718743435794115251/10000000000000000")) == Tri::False);
    // c(1/4) = 16 B for degree 3
    CHECK(c.sub(B.mul_2exp(4)).contains_zero());
}

TEST_CASE("region enumeration agrees with exact scanning") {
    auto L = make_lattice(kQ2);
    const auto& f = L.field();

    Region region;
    region.reals.push_back(cut_between_q(mpq_class(0), mpq_class(5), true, false, 128));
    region.reals.push_back(cut_between_q(mpq_class(-1), mpq_class(1), true, true, 128));

    auto got = enumerate_lattice_points(L, region);
    std::vector<OrderElement> want;
    for (long a = -12; a <= 12; ++a)
        for (long b = -12; b <= 12; ++b) {
            auto x = elt({a, b});
            if (cmp_value_q(f, x, 0) <= 0) continue;
            if (cmp_value_q(f, x, 5) > 0) continue;
            if (f.compare_abs_to_mpq(x, 1, 1) != Cmp3::Less) continue;
            want.push_back(x);
        }
    sort_by_value(f, want);
    CHECK(got == want);
    REQUIRE(got.size() == 3);
    CHECK(got[0] == elt({1, 1}));
    CHECK(got[1] == elt({2, 1}));
    CHECK(got[2] == elt({2, 2}));
}

TEST_CASE("worker count does not change enumeration") {
    auto L = make_lattice(kPlastic);
    Region region;
    region.reals.push_back(cut_between_q(mpq_class(0), mpq_class(8), true, false, 128));
    region.discs.push_back(origin_disc_q(mpq_class(2), true, 128));
    auto w1 = enumerate_lattice_points(L, region, 1);
    auto w2 = enumerate_lattice_points(L, region, 2);
    auto w4 = enumerate_lattice_points(L, region, 4);
    CHECK(w1 == w2);
    CHECK(w1 == w4);
    CHECK(w1.size() > 4);
}

TEST_CASE("boundary points obey strictness exactly") {
    auto L = make_lattice(kQ2);
    // value in [2, 8] vs (2, 8): the rational points 2 and 8 sit exactly on
    // the endpoints
    Region closed, open;
    closed.reals.push_back(cut_between_q(2, 8, false, false, 128));
    closed.reals.push_back(cut_between_q(-20, 20, false, false, 128));
    open.reals.push_back(cut_between_q(2, 8, true, true, 128));
    open.reals.push_back(cut_between_q(-20, 20, false, false, 128));
    auto with_ends = enumerate_lattice_points(L, closed);
    auto without_ends = enumerate_lattice_points(L, open);
    auto has = [](const std::vector<OrderElement>& xs, const OrderElement& x) {
        return std::find(xs.begin(), xs.end(), x) != xs.end();
    };
    CHECK(has(with_ends, elt({2, 0})));
    CHECK(has(with_ends, elt({8, 0})));
    CHECK_FALSE(has(without_ends, elt({2, 0})));
    CHECK_FALSE(has(without_ends, elt({8, 0})));
    CHECK(with_ends.size() == without_ends.size() + 2);
}

TEST_CASE("rounding to the lattice lands inside the parallelepiped") {
    auto L = make_lattice(kQ2);
    auto rho = compute_rho(L);
    TargetFn target = [](mpfr_prec_t p) {
        return std::vector<CBall>{CBall::from_mpq(mpq_class(5, 2), 0, p),
                                  CBall::from_mpq(mpq_class(3, 10), 0, p)};
    };
    auto rr = round_to_lattice(L, rho, target);
    CHECK(rr.beta == elt({1, 0}));
    CHECK_FALSE(rr.floor_forced);
    REQUIRE(rr.residual.size() == 2);
    // beta = 1, so the residuals are 5/2 - 1 and 3/10 - 1
    CHECK(rr.residual[0].real_part().sub(RBall::from_mpq(mpq_class(3, 2), 128)).contains_zero());
    CHECK(rr.residual[1].real_part().sub(RBall::from_mpq(mpq_class(-7, 10), 128)).contains_zero());
    // residual stays within the box radii
    CHECK(rr.residual[0].abs().less_than(rho.rho[0].add(RBall::from_si(1, 128))) == Tri::True);
    CHECK(rr.residual[1].abs().less_than(rho.rho[1].add(RBall::from_si(1, 128))) == Tri::True);
}

TEST_CASE("alpha satisfies the shrunken box constraints") {
    auto L = make_lattice(kQ2);
    const auto& f = L.field();
    auto rho = compute_rho(L);
    auto c = constant_c(L, rho, mpq_class(1, 2));
    auto alpha = find_alpha(L, rho, c, mpq_class(1, 2));
    CHECK_FALSE(alpha.is_zero());
    CHECK(cmp_value_q(f, alpha, 0) > 0);
    // eps / rho_2 = 1/(2 sqrt 2) < 1/2
    CHECK(f.compare_abs_to_mpq(alpha, 1, mpq_class(1, 2)) == Cmp3::Less);
    // sigma_1(alpha) <= (c / rho_1)(1 + 2^-40) = 8(1 + 2^-40)
    CHECK(cmp_value_q(f, alpha, mpq_class(9)) < 0);
}

TEST_CASE("sorting by the identity place") {
    auto f = make_field(kQ2);
    std::vector<OrderElement> xs = {elt({3, 0}), elt({1, 1}), elt({0, 1}), elt({-2, 3})};
    sort_by_value(*f, xs);
    CHECK(xs[0] == elt({0, 1}));
    CHECK(xs[1] == elt({-2, 3}));   // 3 sqrt 2 - 2 = 2.24
    CHECK(xs[2] == elt({1, 1}));
    CHECK(xs[3] == elt({3, 0}));
}
