#pragma once

#include "poly.hpp"
#include "rootisol.hpp"

namespace pisot {

struct UnitDiscCount {
    int on_circle = 0;
    // Count of roots with |z| < 1; absent when roots sit on the circle and
    // the interior count was not requested past them.
    std::optional<int> inside;
    bool fallback_used = false;
};

// Exact root location of a squarefree integer polynomial relative to the
// unit circle. The interior count comes from the rational Schur-Cohn
// recursion; when that chain degenerates (|a_0| = |a_d| at some step) the
// count falls back to certified root enclosures.
UnitDiscCount analyze_unit_disc(const IntPoly& p);

// Interior count for a polynomial known to have no roots on the circle.
int count_roots_in_unit_disc(const IntPoly& p);

}  // namespace pisot
