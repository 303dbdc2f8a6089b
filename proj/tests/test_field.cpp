#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

using namespace pisot;
using namespace testutil;

TEST_CASE("spec parsing rejects malformed input") {
    RunConfig cfg;
    CHECK_THROWS_AS(parse_field_spec("not json"), input_error);
    CHECK_THROWS_AS(parse_field_spec(R"({"name":"K"})"), input_error);
    CHECK_THROWS_AS(parse_field_spec(R"({"defining_polynomial":[-2,0,1],"foo":1})"), input_error);
    CHECK_THROWS_AS(parse_field_spec(R"({"defining_polynomial":[-2,0,1],"integral_basis":[["1"]]})"),
                    input_error);
    // reducible
    CHECK_THROWS_AS(NumberField::build(parse_field_spec(R"({"defining_polynomial":[-1,0,1]})"), cfg),
                    input_error);
    // not monic
    CHECK_THROWS_AS(NumberField::build(parse_field_spec(R"({"defining_polynomial":[-2,0,2]})"), cfg),
                    input_error);
    // basis not multiplicatively closed
    CHECK_THROWS_AS(
        NumberField::build(parse_field_spec(
                               R"({"defining_polynomial":[-2,0,1],
                                   "integral_basis":[["1","0"],["0","1/2"]]})"),
                           cfg),
        input_error);
    // module without 1
    CHECK_THROWS_AS(
        NumberField::build(parse_field_spec(
                               R"({"defining_polynomial":[-2,0,1],
                                   "integral_basis":[["2","0"],["0","1"]]})"),
                           cfg),
        input_error);
    // no real embedding
    CHECK_THROWS_AS(NumberField::build(parse_field_spec(R"({"defining_polynomial":[1,0,1]})"), cfg),
                    input_error);
}

TEST_CASE("canonical spec text is stable") {
    auto spec = parse_field_spec(kQ5);
    CHECK(spec.canonical() == spec.canonical());
    CHECK(spec.canonical() != parse_field_spec(kQ2).canonical());
}

TEST_CASE("degrees, signatures, discriminants") {
    struct Row {
        const char* json;
        int d, s, t;
        long disc;
    };
    const Row rows[] = {
        {kQ2, 2, 2, 0, 8},       {kQ3, 2, 2, 0, 12},         {kQ5, 2, 2, 0, 5},
        {kQ6, 2, 2, 0, 24},      {kQ7, 2, 2, 0, 28},         {kQ11, 2, 2, 0, 44},
        {kPlastic, 3, 1, 1, -23}, {kTotallyReal, 3, 3, 0, 81}, {kRationals, 1, 1, 0, 1},
    };
    for (const auto& r : rows) {
        auto f = make_field(r.json);
        CHECK(f->degree() == r.d);
        CHECK(f->real_places() == r.s);
        CHECK(f->complex_places() == r.t);
        CHECK(f->num_places() == r.s + r.t);
        CHECK(f->discriminant() == r.disc);
    }
}

TEST_CASE("order arithmetic in the golden-ratio module") {
    auto f = make_field(kQ5);
    auto w = elt({0, 1});
    // w = (1 + sqrt 5)/2 satisfies w^2 = w + 1
    CHECK(f->mul(w, w) == elt({1, 1}));
    CHECK(f->add(w, f->one()) == elt({1, 1}));
    CHECK(f->sub(w, w).is_zero());
    CHECK(f->neg(w) == elt({0, -1}));
    CHECK(f->mul_int(w, mpz_class(3)) == elt({0, 3}));
    CHECK(f->zero().is_zero());
    CHECK(f->one() == elt({1, 0}));
    CHECK(elt({2, -1}).to_string() == "2,-1");
}

TEST_CASE("minimal polynomials and generators") {
    auto f = make_field(kQ2);
    CHECK(f->min_poly(elt({1, 1})) == IntPoly::from_si({-1, -2, 1}));
    CHECK(f->min_poly(elt({0, 1})) == IntPoly::from_si({-2, 0, 1}));
    CHECK(f->min_poly(elt({3, 0})) == IntPoly::from_si({-3, 1}));
    CHECK(f->is_generator(elt({1, 1})));
    CHECK_FALSE(f->is_generator(elt({3, 0})));

    auto g = make_field(kQ5);
    CHECK(g->min_poly(elt({0, 1})) == IntPoly::from_si({-1, -1, 1}));

    auto h = make_field(kTotallyReal);
    CHECK(h->min_poly(elt({0, 1, 0})) == IntPoly::from_si({-1, -3, 0, 1}));
    CHECK(h->min_poly(elt({0, 0, 1})).degree() == 3);
}

TEST_CASE("norm and trace") {
    auto f = make_field(kQ2);
    CHECK(f->norm(elt({1, 1})) == -1);
    CHECK(f->trace(elt({1, 1})) == 2);
    CHECK(f->norm(elt({0, 1})) == -2);
    CHECK(f->trace(elt({0, 1})) == 0);
    CHECK(f->norm(elt({3, 0})) == 9);

    auto h = make_field(kPlastic);
    CHECK(h->norm(elt({0, 1, 0})) == 1);
    CHECK(h->trace(elt({0, 1, 0})) == 0);
    CHECK(h->norm(elt({2, 0, 0})) == 8);
}

TEST_CASE("embedding places are ordered identity first") {
    auto f = make_field(kQ2);
    auto [is_real, idx] = f->place_root(0);
    CHECK(is_real);
    CHECK(idx == f->real_places() - 1);

    auto v = f->value(elt({1, 1}), 128);
    CHECK(v.less_than_mpq(mpq_class(241421357, 100000000)) == Tri::True);
    CHECK(v.less_than_mpq(mpq_class(241421356, 100000000)) == Tri::False);

    auto em = f->embed(elt({0, 1}), 128);
    REQUIRE(em.size() == 2);
    CHECK(em[0].re_center().sgn() > 0);
    CHECK(em[1].re_center().sgn() < 0);
    CHECK(em[0].imag_part().contains_zero());

    auto h = make_field(kPlastic);
    auto em3 = h->embed(elt({0, 1, 0}), 128);
    REQUIRE(em3.size() == 2);
    CHECK(em3[0].imag_part().contains_zero());
    CHECK(em3[1].im_center().sgn() != 0);
    CHECK(h->embed_place(elt({0, 1, 0}), 1, 128).abs().less_than_mpq(mpq_class(1)) == Tri::True);
}

TEST_CASE("embedding is a ring homomorphism") {
    auto f = make_field(kTotallyReal);
    auto x = elt({1, -2, 1});
    auto y = elt({0, 3, -1});
    auto ex = f->embed(x, 128), ey = f->embed(y, 128);
    auto exy = f->embed(f->mul(x, y), 128);
    auto es = f->embed(f->add(x, y), 128);
    for (int j = 0; j < f->num_places(); ++j) {
        CHECK(exy[j].sub(ex[j].mul(ey[j])).contains_zero());
        CHECK(es[j].sub(ex[j].add(ey[j])).contains_zero());
    }
}

TEST_CASE("embedding data is memoized per precision") {
    auto f = make_field(kQ2);
    auto a = f->embed_data(128);
    auto b = f->embed_data(128);
    CHECK(a.get() == b.get());
    auto c = f->embed_data(256);
    CHECK(c->prec >= 256);
    CHECK(a.get() != c.get());
}

TEST_CASE("exact place comparisons") {
    auto f = make_field(kQ2);
    CHECK(f->compare_value_to_mpq(elt({2, 0}), 0, mpq_class(2)) == 0);
    CHECK(f->compare_value_to_mpq(elt({1, 1}), 0, mpq_class(2)) > 0);
    CHECK(f->compare_value_to_mpq(elt({1, 1}), 0, mpq_class(3)) < 0);
    CHECK(f->compare_value_to_mpq(elt({1, 1}), 1, mpq_class(0)) < 0);

    CHECK(f->compare_abs_to_mpq(elt({1, 1}), 1, mpq_class(1, 2)) == Cmp3::Less);
    CHECK(f->compare_abs_to_mpq(elt({1, 1}), 1, mpq_class(2, 5)) == Cmp3::Greater);
    CHECK(f->compare_abs_to_mpq(elt({2, 0}), 1, mpq_class(2)) == Cmp3::Equal);
    CHECK(f->compare_abs_to_mpq(elt({0, 2}), 1, mpq_class(2)) == Cmp3::Greater);

    auto h = make_field(kPlastic);
    CHECK(h->compare_abs_to_mpq(elt({0, 1, 0}), 1, mpq_class(1)) == Cmp3::Less);
    CHECK(h->compare_abs_to_mpq(elt({2, 0, 0}), 1, mpq_class(2)) == Cmp3::Equal);
}

TEST_CASE("certified value comparison helper") {
    auto f = make_field(kQ2);
    CHECK(cmp_value_q(*f, elt({3, 0}), mpq_class(3)) == 0);
    CHECK(cmp_value_q(*f, elt({1, 1}), mpq_class(1)) > 0);
    CHECK(cmp_value_q(*f, elt({-1, 1}), mpq_class(1)) < 0);
}

TEST_CASE("multiplication table is associative and commutative on samples") {
    auto f = make_field(kTotallyReal);
    auto a = elt({1, 2, 0}), b = elt({0, -1, 3}), c = elt({2, 0, 1});
    CHECK(f->mul(a, b) == f->mul(b, a));
    CHECK(f->mul(f->mul(a, b), c) == f->mul(a, f->mul(b, c)));
    CHECK(f->mul(a, f->one()) == a);
    CHECK(f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c)));
}
