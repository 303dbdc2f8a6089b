#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "poly.hpp"
#include "unitdisc.hpp"

using namespace pisot;

namespace {
IntPoly P(std::initializer_list<long> c) { return IntPoly::from_si(c); }
}  // namespace

TEST_CASE("construction and normalization") {
    CHECK(P({-2, 0, 1}).degree() == 2);
    CHECK(P({0, 0, 0}).is_zero());
    CHECK(P({0, 0, 0}).degree() == -1);
    CHECK(P({5, 1, 0, 0}).degree() == 1);
    CHECK(P({-2, 0, 1}).is_monic());
    CHECK_FALSE(P({-2, 0, 2}).is_monic());
    CHECK(P({-2, 0, 3}).leading() == 3);
    CHECK(P({-2, 0, 3}).constant() == -2);
    CHECK(P({-2, 0, 1}).to_string() == "x^2 - 2");
}

TEST_CASE("ring operations") {
    CHECK(P({1, 1}).mul(P({-1, 1})) == P({-1, 0, 1}));
    CHECK(P({-1, 0, 1}).add(P({1, 0})) == P({0, 0, 1}));
    CHECK(P({-1, 0, 1}).sub(P({-1, 0, 1})).is_zero());
    CHECK(P({1, 2, 3}).neg() == P({-1, -2, -3}));
    CHECK(P({1, 2}).scale(mpz_class(3)) == P({3, 6}));
    CHECK(P({-1, -3, 0, 1}).derivative() == P({-3, 0, 3}));
    CHECK(P({-2, 0, 1}).reverse() == P({1, 0, -2}));
    CHECK(P({-1, -1, 0, 1}).compose_neg() == P({-1, 1, 0, -1}));
    CHECK(P({-2, 0, 1}).scale_arg(mpz_class(2)) == P({-2, 0, 4}));
    CHECK(P({-2, 0, 1}).scale_arg_inv(mpz_class(2)) == P({-8, 0, 1}));
}

TEST_CASE("content and primitive part") {
    CHECK(P({-4, 0, 2}).content() == 2);
    CHECK(P({-4, 0, 2}).primitive() == P({-2, 0, 1}));
    CHECK(P({4, 0, -2}).primitive() == P({2, 0, -1}));
    CHECK(P({4, 0, -2}).primitive_normalized() == P({-2, 0, 1}));
}

TEST_CASE("evaluation") {
    auto p = P({-2, 0, 1});
    CHECK(p.eval_q(mpq_class(3, 2)) == mpq_class(1, 4));
    CHECK(p.eval_z(3) == 7);
    CHECK(p.sign_at_dyadic(3, 1) == 1);   // p(3/2) = 1/4
    CHECK(p.sign_at_dyadic(1, 0) == -1);  // p(1) = -1
    CHECK(P({-4, 0, 1}).sign_at_dyadic(2, 0) == 0);
}

TEST_CASE("exact division") {
    CHECK(divexact(P({-1, 0, 1}), P({-1, 1})) == P({1, 1}));
    CHECK_THROWS_AS(divexact(P({-2, 0, 1}), P({-1, 1})), internal_error);
    CHECK(try_divide(P({-1, 0, 1}), P({1, 1})).value() == P({-1, 1}));
    CHECK(try_divide(P({-2, 0, 1}), P({-1, 1})) == std::nullopt);
}

TEST_CASE("primitive gcd") {
    auto a = P({-1, 0, 1}).mul(P({2, 1}));
    auto b = P({-1, 0, 1}).mul(P({3, 1}));
    CHECK(gcd_primitive(a, b) == P({-1, 0, 1}));
    CHECK(gcd_primitive(P({-2, 0, 1}), P({-3, 0, 1})).degree() == 0);
    // gcd with the derivative isolates the repeated factor
    auto sq = P({-1, 1}).mul(P({-1, 1}));
    CHECK(gcd_primitive(sq, sq.derivative()) == P({-1, 1}));
}

TEST_CASE("squarefree detection") {
    CHECK(is_squarefree(P({-2, 0, 1})));
    CHECK(is_squarefree(P({-1, -1, 0, 1})));
    CHECK_FALSE(is_squarefree(P({1, -2, 1})));
}

TEST_CASE("determinant and resultant") {
    CHECK(det_bareiss({{mpz_class(1), mpz_class(2)}, {mpz_class(3), mpz_class(4)}}) == -2);
    CHECK(resultant(P({-2, 0, 1}), P({-3, 0, 1})) == 1);
    // shared root forces a zero resultant
    CHECK(resultant(P({-1, 0, 1}), P({-1, 1})) == 0);
}

TEST_CASE("discriminants of the working polynomials") {
    CHECK(poly_discriminant(P({-2, 0, 1})) == 8);
    CHECK(poly_discriminant(P({-3, 0, 1})) == 12);
    CHECK(poly_discriminant(P({-1, -1, 1})) == 5);
    CHECK(poly_discriminant(P({-1, -1, 0, 1})) == -23);
    CHECK(poly_discriminant(P({-1, -3, 0, 1})) == 81);
    CHECK(poly_discriminant(P({-5, 1})) == 1);
}

TEST_CASE("Sturm chains count distinct real roots") {
    auto chain = sturm_chain(P({-2, 0, 1}));
    CHECK(sturm_count_all(chain) == 2);
    CHECK(sturm_count_open(chain, 0, 2) == 1);
    CHECK(sturm_count_open(chain, -2, 0) == 1);
    CHECK(sturm_count_above(chain, 0) == 1);
    CHECK(sturm_count_above(chain, -2) == 2);

    CHECK(sturm_count_all(sturm_chain(P({-1, -3, 0, 1}))) == 3);
    CHECK(sturm_count_all(sturm_chain(P({-1, -1, 0, 1}))) == 1);
    CHECK(sturm_count_all(sturm_chain(P({1, 0, 1}))) == 0);
    // multiplicities collapse to one
    CHECK(sturm_count_all(sturm_chain(P({1, -2, 1}))) == 1);
}

TEST_CASE("Cauchy bound dominates every root") {
    auto b = cauchy_root_bound(P({-2, 0, 1}));
    CHECK(b >= 2);
    auto chain = sturm_chain(P({-2, 0, 1}));
    CHECK(sturm_count_open(chain, -b, b) == 2);
}

TEST_CASE("rational polynomial helpers") {
    RatPoly half({mpq_class(1, 2), mpq_class(1, 2)});
    CHECK(half.eval(3) == 2);
    CHECK(half.to_primitive_int() == P({1, 1}));
    CHECK(RatPoly::from_int(P({-2, 0, 1})).eval(mpq_class(3, 2)) == mpq_class(1, 4));
    auto r = rat_rem(RatPoly::from_int(P({-2, 0, 1})), RatPoly::from_int(P({-1, 1})));
    CHECK(r.degree() == 0);
    CHECK(r.c[0] == -1);
    CHECK(half.mul(RatPoly({mpq_class(2)})).to_primitive_int() == P({1, 1}));
}

TEST_CASE("exact counts on the unit circle") {
    auto u = count_roots_on_unit_circle(P({-1, 0, 1}));
    CHECK(u.at_one == 1);
    CHECK(u.at_minus_one == 1);
    CHECK(u.pair_count == 0);
    CHECK(u.total() == 2);

    CHECK(count_roots_on_unit_circle(P({1, 0, 1})).pair_count == 1);
    CHECK(count_roots_on_unit_circle(P({1, 1, 1})).pair_count == 1);
    CHECK(count_roots_on_unit_circle(P({-1, -1, 1})).total() == 0);
    CHECK(count_roots_on_unit_circle(P({-1, -1, 0, 1})).total() == 0);
}

TEST_CASE("exact counts on scaled circles") {
    auto c2 = count_roots_on_circle(P({-4, 0, 1}), mpq_class(2));
    CHECK(c2.at_one == 1);
    CHECK(c2.at_minus_one == 1);
    CHECK(count_roots_on_circle(P({-3, 0, 1}), mpq_class(3)).total() == 0);
    CHECK(count_roots_on_circle(P({-1, -1, 1}), mpq_class(1)).total() == 0);
}

TEST_CASE("unit disc root location") {
    auto golden = analyze_unit_disc(P({-1, -1, 1}));
    CHECK(golden.on_circle == 0);
    CHECK(golden.inside.value() == 1);

    auto plastic = analyze_unit_disc(P({-1, -1, 0, 1}));
    CHECK(plastic.on_circle == 0);
    CHECK(plastic.inside.value() == 2);

    auto sqrt2 = analyze_unit_disc(P({-2, 0, 1}));
    CHECK(sqrt2.on_circle == 0);
    CHECK(sqrt2.inside.value() == 0);

    CHECK(analyze_unit_disc(P({-1, 0, 1})).on_circle == 2);

    auto split = analyze_unit_disc(P({2, -5, 2}));
    CHECK(split.on_circle == 0);
    CHECK(split.inside.value() == 1);
    CHECK(count_roots_in_unit_disc(P({2, -5, 2})) == 1);

    auto real9 = analyze_unit_disc(P({-1, -3, 0, 1}));
    CHECK(real9.on_circle == 0);
    CHECK(real9.inside.value() == 1);
}
