#pragma once

#include "field.hpp"

namespace pisot {

struct OracleConfig {
    // Refuse scans whose per-coordinate bound exceeds this.
    mpz_class coefficient_cap = 2'000'000;
    mpfr_prec_t precision = 192;
};

// Independent reference enumeration: a coordinate hypercube sized by Cramer
// bounds is scanned exhaustively and each candidate is tested against the
// definition directly. No lattice geometry is involved. Ascending by value.
std::vector<OrderElement> brute_force_pisot(const NumberField& f, const mpq_class& X,
                                            const OracleConfig& ocfg = {});

// Minimal polynomial recovered analytically: the characteristic polynomial is
// expanded from certified root enclosures, its coefficients rounded to unique
// integers, and the squarefree part is checked to annihilate the
// multiplication matrix exactly.
IntPoly independent_min_poly(const NumberField& f, const OrderElement& x,
                             const OracleConfig& ocfg = {});

}  // namespace pisot
