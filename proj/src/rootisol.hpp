#pragma once

#include "ball.hpp"
#include "poly.hpp"

namespace pisot {

// Dyadic-rational interval [lo, hi] with a sign change of the polynomial
// across it; lo == hi marks an exact rational root.
struct DyadicInterval {
    mpq_class lo, hi;
    bool exact() const { return lo == hi; }
};

// Certified enclosures of all roots of a squarefree integer polynomial:
// each ball or disc contains exactly one root, and together they cover all
// of them. complex_reps holds one disc per conjugate pair, centered in the
// upper half plane; its index order is fixed at first isolation and kept
// by refine_roots.
struct RootEnclosures {
    IntPoly poly;
    mpfr_prec_t prec = 0;
    std::vector<RBall> real_roots;          // ascending
    std::vector<DyadicInterval> real_intervals;  // parallel to real_roots
    std::vector<CBall> complex_reps;

    int s() const { return static_cast<int>(real_roots.size()); }
    int t() const { return static_cast<int>(complex_reps.size()); }
    int degree() const { return s() + 2 * t(); }

    // All degree() enclosures: reals first (as discs), then rep/conjugate
    // for each pair.
    std::vector<CBall> all_roots() const;
};

RootEnclosures isolate_roots(const IntPoly& p, mpfr_prec_t prec);

// Same roots at higher precision; real roots keep ascending order and
// complex representatives keep the index order of `base`.
RootEnclosures refine_roots(const RootEnclosures& base, mpfr_prec_t prec);

// Decides whether the root of base.poly identified by (is_real, index) is
// also a root of the divisor g of base.poly. Exact: terminates for any g
// dividing base.poly.
bool divisor_root_matches(const RootEnclosures& base, bool is_real, int index, const IntPoly& g);

// Exact comparison helpers for a single identified real root against a
// rational. Terminate because the enclosure shrinks toward the root and
// rational equality is decided by evaluation.
int compare_real_root_to_mpq(const RootEnclosures& base, int index, const mpq_class& q);

enum class Cmp3 { Less, Equal, Greater };

// Exact comparison of |root| against a rational bound; the equality branch
// goes through the circle factor of base.poly at that radius.
Cmp3 compare_root_abs_to_mpq(const RootEnclosures& base, bool is_real, int index,
                             const mpq_class& r);

}  // namespace pisot
