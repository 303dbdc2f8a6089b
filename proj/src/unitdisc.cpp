#include "unitdisc.hpp"

namespace pisot {

namespace {

struct sc_degenerate {};

// Schur-Cohn transform count. Requires no roots on the unit circle; throws
// sc_degenerate when a chain step has |a_0| = |a_d|.
int sc_count(const IntPoly& p) {
    int n = p.degree();
    if (n <= 0) return 0;
    const mpz_class& a0 = p.c[0];
    const mpz_class& ad = p.leading();
    mpz_class delta = a0 * a0 - ad * ad;
    if (delta == 0) throw sc_degenerate{};
    IntPoly t = p.scale(a0).sub(p.reverse().scale(ad));
    if (t.is_zero()) throw sc_degenerate{};
    int m = sc_count(t.primitive());
    return delta > 0 ? m : n - m;
}

int isolation_count(const IntPoly& p) {
    RootEnclosures enc = isolate_roots(p, 128);
    int inside = 0;
    for (int i = 0; i < enc.s(); ++i)
        if (compare_root_abs_to_mpq(enc, true, i, 1) == Cmp3::Less) ++inside;
    for (int j = 0; j < enc.t(); ++j)
        if (compare_root_abs_to_mpq(enc, false, j, 1) == Cmp3::Less) inside += 2;
    return inside;
}

}  // namespace

UnitDiscCount analyze_unit_disc(const IntPoly& p) {
    if (p.degree() < 1) throw input_error("unit disc analysis needs degree >= 1");
    UnitDiscCount out;
    out.on_circle = count_roots_on_unit_circle(p).total();
    if (out.on_circle > 0) return out;
    try {
        out.inside = sc_count(p.primitive());
    } catch (const sc_degenerate&) {
        out.fallback_used = true;
        out.inside = isolation_count(p);
    }
    return out;
}

int count_roots_in_unit_disc(const IntPoly& p) {
    UnitDiscCount c = analyze_unit_disc(p);
    if (!c.inside) throw input_error("polynomial has roots on the unit circle");
    return *c.inside;
}

}  // namespace pisot
