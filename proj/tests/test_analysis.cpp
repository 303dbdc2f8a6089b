#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "analysis.hpp"
#include "helpers.hpp"

#include <algorithm>

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

bool mentions(const std::vector<std::string>& xs, const std::string& needle) {
    return std::any_of(xs.begin(), xs.end(), [&](const std::string& s) {
        return s.find(needle) != std::string::npos;
    });
}

}  // namespace

TEST_CASE("small-conjugate membership") {
    Setup s(kQ2);
    auto in = is_in_EK(*s.f, elt({1, 1}));
    CHECK(in.inside);
    CHECK_FALSE(in.boundary);
    CHECK(in.evidence == "interval");
    CHECK(in.rho_max.less_than_mpq(mpq_class(2)) == Tri::True);
    REQUIRE(in.conjugate_moduli.size() == 1);

    CHECK(is_in_EK(*s.f, elt({1, 0})).inside);
    CHECK(is_in_EK(*s.f, elt({0, 1})).inside);

    // conjugate exactly 2: only the algebraic path can decide
    auto edge = is_in_EK(*s.f, elt({2, 0}));
    CHECK_FALSE(edge.inside);
    CHECK(edge.boundary);
    CHECK(edge.evidence == "exact");

    CHECK_FALSE(is_in_EK(*s.f, elt({5, 0})).inside);
    CHECK_FALSE(is_in_EK(*s.f, elt({-1, 0})).inside);
    CHECK_FALSE(is_in_EK(*s.f, s.f->zero()).inside);
    CHECK_FALSE(is_in_EK(*s.f, elt({0, 2})).inside);
}

TEST_CASE("membership enumeration in a window") {
    Setup s(kQ2);
    auto xs = enumerate_EK(s.L, mpq_class(4));
    REQUIRE(xs.size() == 5);
    CHECK(xs[0].element == elt({1, 0}));
    CHECK(xs[1].element == elt({0, 1}));
    CHECK(xs[2].element == elt({1, 1}));
    CHECK(xs[3].element == elt({2, 1}));
    CHECK(xs[4].element == elt({1, 2}));
    for (const auto& c : xs) CHECK(c.inside);
}

TEST_CASE("consecutive gaps with multiplicities") {
    Setup s(kQ2);
    auto g = consecutive_gaps(s.L, mpq_class(12));
    CHECK(g.pisot.size() == 8);
    CHECK(g.gaps.size() == 7);
    REQUIRE(g.distinct_gaps.size() == 3);
    CHECK(g.distinct_gaps[0].first == elt({1, 0}));
    CHECK(g.distinct_gaps[0].second == 4);
    CHECK(g.distinct_gaps[1].first == elt({0, 1}));
    CHECK(g.distinct_gaps[1].second == 2);
    CHECK(g.distinct_gaps[2].first == elt({1, 1}));
    CHECK(g.distinct_gaps[2].second == 1);
    CHECK(g.min_gap.sub(RBall::from_si(1, 128)).contains_zero());
    CHECK(g.max_gap.sub(RBall::from_si(1, 128).add(RBall::from_si(2, 128).sqrt()))
              .contains_zero());

    CHECK_THROWS_AS(consecutive_gaps(s.L, mpq_class(2)), input_error);
}

TEST_CASE("both inclusions of the difference identity hold on a window") {
    Setup s(kQ2);
    auto v = verify_EK_equals_DK(s.L, s.rho, mpq_class(4), mpq_class(22));
    CHECK(v.pass);
    CHECK(v.counterexamples.empty());
    CHECK(mentions(v.notes, "elements tested: 5"));
    CHECK(mentions(v.witnesses, "="));
}

TEST_CASE("sign patterns of consecutive gaps") {
    Setup s(kQ2);
    auto v = verify_corollary3(s.L, mpq_class(30));
    CHECK(v.pass);
    CHECK(mentions(v.witnesses, "pattern +"));
    CHECK(mentions(v.witnesses, "pattern -"));

    Setup r(kTotallyReal);
    auto vr = verify_corollary3(r.L, mpq_class(20));
    CHECK(vr.pass);
    CHECK(mentions(vr.witnesses, "pattern ++"));
    CHECK(mentions(vr.witnesses, "pattern --"));
    CHECK(mentions(vr.witnesses, "pattern +-"));
    CHECK(mentions(vr.witnesses, "pattern -+"));

    Setup p(kPlastic);
    CHECK(verify_corollary3(p.L, mpq_class(20)).pass);
}

TEST_CASE("grid density probe") {
    Setup s(kQ2);
    auto v = density_probe(s.L, s.rho, mpq_class(1, 2), mpq_class(1, 4));
    CHECK(v.pass);
    CHECK(mentions(v.notes, "targets probed: 3"));
    CHECK(mentions(v.notes, "grid nodes outside the admissible margin: 2"));
    CHECK(mentions(v.witnesses, "all 3 probes answered within epsilon"));

    CHECK_THROWS_AS(density_probe(s.L, s.rho, mpq_class(0), mpq_class(1, 4)), input_error);
    CHECK_THROWS_AS(density_probe(s.L, s.rho, mpq_class(1, 2), mpq_class(1)), input_error);

    Setup q(kRationals);
    CHECK_THROWS_AS(density_probe(q.L, q.rho, mpq_class(1, 2), mpq_class(1, 4)), input_error);
}

TEST_CASE("uniform discreteness bounds") {
    Setup s(kQ2);
    auto v = discreteness_check(s.L, s.rho, mpq_class(12));
    CHECK(v.pass);
    CHECK(v.counterexamples.empty());
    CHECK(mentions(v.notes, "uniform floor 2^(1-degree)"));
    CHECK(mentions(v.notes, "lattice ceiling"));

    Setup p(kPlastic);
    CHECK(discreteness_check(p.L, p.rho, mpq_class(8)).pass);

    // degree one: the ceiling is 1 but the smallest element is 2
    Setup q(kRationals);
    auto vq = discreteness_check(q.L, q.rho, mpq_class(40));
    CHECK_FALSE(vq.pass);
    CHECK(mentions(vq.counterexamples, "lattice ceiling"));
}
