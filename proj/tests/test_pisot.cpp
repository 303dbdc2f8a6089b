#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "pisot.hpp"

using namespace pisot;
using namespace testutil;

namespace {

struct Setup {
    std::shared_ptr<const NumberField> f;
    MinkowskiLattice L;
    RhoVector rho;

    explicit Setup(const char* json, mpfr_prec_t prec = 128)
        : f(make_field(json, prec)), L(MinkowskiLattice::build(f, prec)), rho(compute_rho(L)) {}
};

std::vector<OrderElement> coords_of(const std::vector<PisotCertificate>& xs) {
    std::vector<OrderElement> out;
    for (const auto& c : xs) out.push_back(c.element);
    return out;
}

}  // namespace

TEST_CASE("certification accepts and explains rejections") {
    Setup s(kQ2);
    auto good = certify_pisot(*s.f, elt({1, 1}));
    REQUIRE(good.ok());
    CHECK(good.cert->minimal_poly == IntPoly::from_si({-1, -2, 1}));
    CHECK(good.cert->inside_count == 1);
    CHECK(good.cert->value.sub(RBall::from_si(1, 128)
                                   .add(RBall::from_si(2, 128).sqrt()))
              .contains_zero());
    REQUIRE(good.cert->conjugates.size() == 1);
    CHECK(good.cert->conjugates[0].abs().less_than_mpq(mpq_class(1)) == Tri::True);

    CHECK(certify_pisot(*s.f, s.f->zero()).reason == "not greater than 1");
    // rationals fail the generator test before the size test
    CHECK(certify_pisot(*s.f, elt({1, 0})).reason == "not a generator of the field");
    CHECK(certify_pisot(*s.f, elt({-3, 1})).reason == "not greater than 1");
    CHECK(certify_pisot(*s.f, elt({3, 0})).reason == "not a generator of the field");
    CHECK(certify_pisot(*s.f, elt({0, 1})).reason == "a conjugate has modulus greater than 1");
    CHECK_FALSE(certify_pisot(*s.f, elt({0, 1})).ok());
}

TEST_CASE("window enumeration is exact and ascending") {
    Setup s(kQ2);
    auto xs = enumerate_pisot(s.L, mpq_class(12));
    std::vector<OrderElement> want = {elt({1, 1}), elt({2, 1}), elt({2, 2}), elt({3, 2}),
                                      elt({4, 3}), elt({5, 3}), elt({5, 4}), elt({6, 4})};
    CHECK(coords_of(xs) == want);
    for (size_t i = 1; i < xs.size(); ++i)
        CHECK(xs[i - 1].value.less_than(xs[i].value) == Tri::True);

    // degree one: every rational integer above 1 qualifies
    Setup q(kRationals);
    auto qs = enumerate_pisot(q.L, mpq_class(5));
    CHECK(coords_of(qs) == std::vector<OrderElement>{elt({2}), elt({3}), elt({4}), elt({5})});
}

TEST_CASE("smallest element of the ordered search") {
    CHECK(min_pisot(Setup(kQ2).L).element == elt({1, 1}));
    CHECK(min_pisot(Setup(kQ7).L).element == elt({2, 1}));
    CHECK(min_pisot(Setup(kRationals).L).element == elt({2}));

    auto m = min_pisot(Setup(kPlastic).L);
    CHECK(m.element == elt({0, 1, 0}));
    CHECK(m.value.less_than_mpq(mpq_class(13248, 10000)) == Tri::True);
    CHECK(m.value.less_than_mpq(mpq_class(13247, 10000)) == Tri::False);
}

TEST_CASE("small-conjugate generators inside a window") {
    Setup s(kQ2);
    auto need = epsilon_pisot_required_width(s.L, s.rho, mpq_class(1));
    // 2 c(1/2) = 16 + 16 sqrt 2
    CHECK(need.sub(RBall::from_si(16, 256).add(
                       RBall::from_si(16, 256).mul(RBall::from_si(2, 256).sqrt())))
              .contains_zero());

    auto p = epsilon_pisot_search(s.L, s.rho, mpq_class(1), mpq_class(10), mpq_class(49));
    CHECK(p.element == elt({5, 4}));
    CHECK(p.conjugates[0].abs().less_than_mpq(mpq_class(1)) == Tri::True);

    auto tight = epsilon_pisot_search(s.L, s.rho, mpq_class(1, 10), mpq_class(10), mpq_class(2000));
    CHECK(tight.element == elt({7, 5}));
    CHECK(tight.conjugates[0].abs().less_than_mpq(mpq_class(1, 10)) == Tri::True);

    CHECK_THROWS_AS(
        epsilon_pisot_search(s.L, s.rho, mpq_class(1), mpq_class(10), mpq_class(12)),
        input_error);
    CHECK_THROWS_AS(
        epsilon_pisot_search(s.L, s.rho, mpq_class(1), mpq_class(1, 2), mpq_class(50)),
        input_error);
    CHECK_THROWS_AS(
        epsilon_pisot_search(s.L, s.rho, mpq_class(3, 2), mpq_class(10), mpq_class(50)),
        input_error);
}

TEST_CASE("prescribed-embedding search, both strategies") {
    Setup s(kQ2);
    Theorem1Query q;
    q.targets = {{mpq_class(1, 2), 0}};
    q.epsilon = mpq_class(2, 5);
    q.x1 = 50;

    auto direct = theorem1_construct(s.L, s.rho, q, Theorem1Strategy::Direct);
    CHECK(direct.theta == elt({26, 18}));
    CHECK(direct.x1_distance.less_than(direct.c) == Tri::True);
    REQUIRE(direct.target_distances.size() == 1);
    CHECK(direct.target_distances[0].less_than_mpq(q.epsilon) == Tri::True);

    auto made = theorem1_construct(s.L, s.rho, q, Theorem1Strategy::Constructive);
    CHECK(made.theta == elt({23, 16}));
    CHECK(made.x1_distance.less_than(made.c) == Tri::True);
    CHECK(made.target_distances[0].less_than_mpq(q.epsilon) == Tri::True);

    // the direct answer is the closest admissible point, so it cannot lose
    CHECK(direct.x1_distance.less_than(made.x1_distance.add(RBall::from_si(1, 128))) == Tri::True);
}

TEST_CASE("prescribed-embedding search with a complex place") {
    Setup s(kPlastic);
    Theorem1Query q;
    q.targets = {{mpq_class(1, 4), mpq_class(1, 4)}};
    q.epsilon = mpq_class(1, 4);
    q.x1 = 40;

    auto direct = theorem1_construct(s.L, s.rho, q, Theorem1Strategy::Direct);
    CHECK(direct.theta == elt({7, 12, 9}));
    CHECK(direct.target_distances[0].less_than_mpq(q.epsilon) == Tri::True);

    auto made = theorem1_construct(s.L, s.rho, q, Theorem1Strategy::Constructive);
    CHECK(made.x1_distance.less_than(made.c) == Tri::True);
    CHECK(made.target_distances[0].less_than_mpq(q.epsilon) == Tri::True);
}

TEST_CASE("query validation") {
    Setup s(kQ2);
    Theorem1Query q;
    q.targets = {{mpq_class(1, 2), 0}};
    q.epsilon = mpq_class(2, 5);
    q.x1 = 50;

    auto bad = q;
    bad.epsilon = 1;
    CHECK_THROWS_AS(theorem1_construct(s.L, s.rho, bad, Theorem1Strategy::Direct), input_error);
    bad = q;
    bad.targets.clear();
    CHECK_THROWS_AS(theorem1_construct(s.L, s.rho, bad, Theorem1Strategy::Direct), input_error);
    bad = q;
    bad.targets = {{mpq_class(1, 2), mpq_class(1, 2)}};  // real place, imaginary target
    CHECK_THROWS_AS(theorem1_construct(s.L, s.rho, bad, Theorem1Strategy::Direct), input_error);
    bad = q;
    bad.targets = {{mpq_class(7, 10), 0}};  // 7/10 + 2/5 leaves the unit disc
    CHECK_THROWS_AS(theorem1_construct(s.L, s.rho, bad, Theorem1Strategy::Direct), input_error);
}

TEST_CASE("differences of ordered pairs") {
    Setup s(kQ2);
    auto d1 = decompose_in_EK(s.L, s.rho, s.f->one());
    CHECK(d1.theta.element == elt({2, 1}));
    CHECK(d1.theta_minus_beta.element == elt({1, 1}));

    auto d2 = decompose_in_EK(s.L, s.rho, elt({0, 1}));
    CHECK(d2.theta.element == elt({2, 2}));
    CHECK(d2.theta_minus_beta.element == elt({2, 1}));

    auto d3 = decompose_in_EK(s.L, s.rho, elt({1, 2}));
    CHECK(s.f->sub(d3.theta.element, d3.theta_minus_beta.element) == elt({1, 2}));
    CHECK(d3.rho_max.less_than_mpq(mpq_class(2)) == Tri::True);

    CHECK_THROWS_AS(decompose_in_EK(s.L, s.rho, elt({3, 0})), input_error);
    CHECK_THROWS_AS(decompose_in_EK(s.L, s.rho, elt({-1, 0})), input_error);

    Setup p(kPlastic);
    auto dp = decompose_in_EK(p.L, p.rho, p.f->one());
    CHECK(p.f->sub(dp.theta.element, dp.theta_minus_beta.element) == p.f->one());

    Setup r(kRationals);
    auto dr = decompose_in_EK(r.L, r.rho, r.f->one());
    CHECK(dr.theta.element == elt({3}));
    CHECK(dr.theta_minus_beta.element == elt({2}));
}

TEST_CASE("several distinct decompositions of one") {
    Setup s(kQ2);
    auto many = decompose_many(s.L, s.rho, s.f->one(), 3);
    REQUIRE(many.size() == 3);
    CHECK(many[0].theta.element == elt({2, 1}));
    CHECK(many[1].theta.element == elt({3, 2}));
    CHECK(many[2].theta.element == elt({5, 3}));
    for (const auto& d : many) {
        CHECK(s.f->sub(d.theta.element, d.theta_minus_beta.element) == s.f->one());
        CHECK(d.theta.value.less_than(RBall::from_mpq(mpq_class(100), 128)) == Tri::True);
    }
}
