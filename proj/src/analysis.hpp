#pragma once

#include "pisot.hpp"

namespace pisot {

struct EKCertificate {
    OrderElement element;
    std::vector<RBall> conjugate_moduli;  // non-identity places
    RBall rho_max;
    bool inside = false;
    bool boundary = false;  // some modulus is exactly 2 (forces inside = false)
    // "interval" when certified enclosures decided every test, "exact" when
    // at least one comparison fell back to the algebraic path.
    std::string evidence;
};

// beta in E_K: beta > 0 and every non-identity conjugate modulus < 2.
EKCertificate is_in_EK(const NumberField& f, const OrderElement& beta);

// E_K intersected with (0, bound], ascending.
std::vector<EKCertificate> enumerate_EK(const MinkowskiLattice& L, const mpq_class& bound,
                                        int workers = 1);

struct GapReport {
    std::string field_name;
    mpq_class bound;
    std::vector<PisotCertificate> pisot;           // ascending
    std::vector<OrderElement> gaps;                 // consecutive differences
    std::vector<std::pair<OrderElement, int>> distinct_gaps;  // with multiplicity, ascending
    RBall max_gap, min_gap;                         // unset when gaps is empty
};

GapReport consecutive_gaps(const MinkowskiLattice& L, const mpq_class& X, int workers = 1);

struct VerificationReport {
    std::string claim;
    std::vector<std::pair<std::string, std::string>> params;
    bool pass = false;
    std::vector<std::string> witnesses;
    std::vector<std::string> notes;
    std::vector<std::string> counterexamples;
};

// Both inclusions of E_K = D_K on a window: every E_K element up to bound
// decomposes as a difference of Pisot numbers, and every pairwise Pisot
// difference up to search_limit lands in E_K.
VerificationReport verify_EK_equals_DK(const MinkowskiLattice& L, const RhoVector& rho,
                                       const mpq_class& bound, const mpq_class& search_limit,
                                       int workers = 1);

// Distinct-gap count against the 2^(s+t-1) lower bound, with sign-pattern
// witnesses sign(Re sigma_j(c)) = -eps_j reported per pattern.
VerificationReport verify_corollary3(const MinkowskiLattice& L, const mpq_class& X,
                                     int workers = 1);

// Conjugate-vector density probe: every grid target with an eps-margin
// inside the open unit disc must be hit by a Pisot number within eps.
VerificationReport density_probe(const MinkowskiLattice& L, const RhoVector& rho,
                                 const mpq_class& grid_step, const mpq_class& epsilon,
                                 int workers = 1);

// Uniform discreteness: consecutive gaps >= 2^(1-d), |Norm(gap)| >= 1,
// max gap <= B_K, min Pisot <= B_K.
VerificationReport discreteness_check(const MinkowskiLattice& L, const RhoVector& rho,
                                      const mpq_class& X, int workers = 1);

}  // namespace pisot
