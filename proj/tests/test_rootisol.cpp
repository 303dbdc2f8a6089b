#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rootisol.hpp"

using namespace pisot;

namespace {
IntPoly P(std::initializer_list<long> c) { return IntPoly::from_si(c); }
}  // namespace

TEST_CASE("totally real quadratic") {
    auto enc = isolate_roots(P({-2, 0, 1}), 128);
    REQUIRE(enc.s() == 2);
    CHECK(enc.t() == 0);
    CHECK(enc.degree() == 2);
    // ascending and symmetric
    CHECK(enc.real_roots[0].center().sgn() < 0);
    CHECK(enc.real_roots[1].center().sgn() > 0);
    CHECK(enc.real_roots[0].add(enc.real_roots[1]).contains_zero());
    for (int i = 0; i < 2; ++i) {
        CHECK(eval_poly(enc.poly.c, enc.real_roots[i]).contains_zero());
        CHECK_FALSE(enc.real_intervals[i].exact());
        CHECK(enc.real_intervals[i].lo < enc.real_intervals[i].hi);
    }
}

TEST_CASE("mixed cubic has one real root and one pair") {
    auto enc = isolate_roots(P({-1, -1, 0, 1}), 128);
    REQUIRE(enc.s() == 1);
    REQUIRE(enc.t() == 1);
    CHECK(enc.degree() == 3);
    CHECK(compare_real_root_to_mpq(enc, 0, mpq_class(13, 10)) > 0);
    CHECK(compare_real_root_to_mpq(enc, 0, mpq_class(27, 20)) < 0);
    // representative sits in the upper half plane
    CHECK(enc.complex_reps[0].im_center().sgn() > 0);
    CHECK(eval_poly(enc.poly.c, enc.complex_reps[0]).contains_zero());

    auto all = enc.all_roots();
    REQUIRE(all.size() == 3);
    // conjugate follows its representative
    CHECK(all[2].im_center().sgn() < 0);
    CHECK(all[1].add(all[2]).imag_part().contains_zero());
}

TEST_CASE("rational roots come out exact") {
    auto enc = isolate_roots(P({2, -3, 1}), 128);
    REQUIRE(enc.s() == 2);
    CHECK(enc.real_intervals[0].lo <= 1);
    CHECK(enc.real_intervals[0].hi >= 1);
    CHECK(enc.real_intervals[1].lo <= 2);
    CHECK(enc.real_intervals[1].hi >= 2);
    // equality against the exact rational root is decided, not escalated forever
    CHECK(compare_real_root_to_mpq(enc, 0, mpq_class(1)) == 0);
    CHECK(compare_real_root_to_mpq(enc, 1, mpq_class(2)) == 0);
}

TEST_CASE("refinement shrinks enclosures and keeps order") {
    auto base = isolate_roots(P({-1, 0, 0, 0, -1, 1}), 96);  // x^5 - x^4 - 1
    REQUIRE(base.s() == 1);
    REQUIRE(base.t() == 2);
    auto fine = refine_roots(base, 512);
    CHECK(fine.prec >= 512);
    CHECK(fine.real_roots[0].radius_double() < base.real_roots[0].radius_double());
    for (int j = 0; j < 2; ++j) {
        double dr = std::abs(fine.complex_reps[j].re_center().to_double() -
                             base.complex_reps[j].re_center().to_double());
        double di = std::abs(fine.complex_reps[j].im_center().to_double() -
                             base.complex_reps[j].im_center().to_double());
        CHECK(dr < 1e-5);
        CHECK(di < 1e-5);
        CHECK(mpfr_cmp(fine.complex_reps[j].radius().raw(), base.complex_reps[j].radius().raw()) <=
              0);
    }
}

TEST_CASE("factor roots are matched to the right enclosure") {
    // (x - 3)(x^2 - 2)
    auto base = isolate_roots(P({6, -2, -3, 1}), 128);
    REQUIRE(base.s() == 3);
    auto lin = P({-3, 1});
    auto quad = P({-2, 0, 1});
    CHECK(divisor_root_matches(base, true, 2, lin));
    CHECK_FALSE(divisor_root_matches(base, true, 0, lin));
    CHECK_FALSE(divisor_root_matches(base, true, 1, lin));
    CHECK(divisor_root_matches(base, true, 0, quad));
    CHECK(divisor_root_matches(base, true, 1, quad));
    CHECK_FALSE(divisor_root_matches(base, true, 2, quad));
}

TEST_CASE("real root versus rational, exact at equality") {
    auto enc = isolate_roots(P({-2, 0, 1}), 128);
    CHECK(compare_real_root_to_mpq(enc, 1, mpq_class(1)) > 0);
    CHECK(compare_real_root_to_mpq(enc, 1, mpq_class(3, 2)) < 0);
    CHECK(compare_real_root_to_mpq(enc, 1, mpq_class(141421356, 100000000)) > 0);
    CHECK(compare_real_root_to_mpq(enc, 1, mpq_class(141421357, 100000000)) < 0);
}

TEST_CASE("root modulus versus rational, including the circle case") {
    auto sqrt2 = isolate_roots(P({-2, 0, 1}), 128);
    CHECK(compare_root_abs_to_mpq(sqrt2, true, 1, mpq_class(3, 2)) == Cmp3::Less);
    CHECK(compare_root_abs_to_mpq(sqrt2, true, 0, mpq_class(1)) == Cmp3::Greater);

    auto pm2 = isolate_roots(P({-4, 0, 1}), 128);
    CHECK(compare_root_abs_to_mpq(pm2, true, 0, mpq_class(2)) == Cmp3::Equal);
    CHECK(compare_root_abs_to_mpq(pm2, true, 1, mpq_class(2)) == Cmp3::Equal);

    auto gauss = isolate_roots(P({1, 0, 1}), 128);
    REQUIRE(gauss.t() == 1);
    CHECK(compare_root_abs_to_mpq(gauss, false, 0, mpq_class(1)) == Cmp3::Equal);

    auto plastic = isolate_roots(P({-1, -1, 0, 1}), 128);
    CHECK(compare_root_abs_to_mpq(plastic, false, 0, mpq_class(1)) == Cmp3::Less);
    CHECK(compare_root_abs_to_mpq(plastic, true, 0, mpq_class(1)) == Cmp3::Greater);
}
