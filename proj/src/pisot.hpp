#pragma once

#include "minkowski.hpp"

namespace pisot {

struct PisotCertificate {
    OrderElement element;
    IntPoly minimal_poly;            // monic, degree d
    RBall value;                     // the identity embedding, certified > 1
    std::vector<CBall> conjugates;   // non-identity places, in place order
    int inside_count = 0;            // minimal_poly roots strictly inside the unit circle
};

// Either a certificate or a rejection reason.
struct PisotCheck {
    std::optional<PisotCertificate> cert;
    std::string reason;

    bool ok() const { return cert.has_value(); }
};

PisotCheck certify_pisot(const NumberField& f, const OrderElement& x);

// All Pisot numbers of the order in (1, X], ascending. Every enumerated
// point must certify; a certification failure is an internal error.
std::vector<PisotCertificate> enumerate_pisot(const MinkowskiLattice& L, const mpq_class& X,
                                              int workers = 1);

// Smallest Pisot number, by doubling the enumeration window from 2 (the
// minimum never exceeds the lattice bound B_K).
PisotCertificate min_pisot(const MinkowskiLattice& L, int workers = 1);

// A Pisot generator in [r, r'] with every non-identity conjugate modulus
// below eps_pisot. Requires r >= 1 and r' - r >= 2 c(eps_pisot / 2).
PisotCertificate epsilon_pisot_search(const MinkowskiLattice& L, const RhoVector& rho,
                                      const mpq_class& eps_pisot, const mpq_class& r_lo,
                                      const mpq_class& r_hi, int workers = 1);

// The interval width epsilon_pisot_search needs: 2 c(eps_pisot / 2).
RBall epsilon_pisot_required_width(const MinkowskiLattice& L, const RhoVector& rho,
                                   const mpq_class& eps_pisot);

struct Theorem1Query {
    // Entries for places 2..s+t in place order: s-1 reals (imaginary part
    // must be 0), then t complex values. Each closed eps-disc around a
    // target must lie inside the open unit disc.
    std::vector<std::pair<mpq_class, mpq_class>> targets;
    mpq_class epsilon;
    mpq_class x1;
};

enum class Theorem1Strategy { Constructive, Direct };

struct Theorem1Result {
    OrderElement theta;
    RBall c;                      // the box constant for the query epsilon
    RBall x1_distance;            // certified |x1 - sigma_1(theta)| <= c
    std::vector<RBall> target_distances;  // certified <= epsilon per target
};

Theorem1Result theorem1_construct(const MinkowskiLattice& L, const RhoVector& rho,
                                  const Theorem1Query& q, Theorem1Strategy strategy,
                                  int workers = 1);

struct Decomposition {
    OrderElement beta;
    PisotCertificate theta;
    PisotCertificate theta_minus_beta;
    RBall rho_max;  // max non-identity conjugate modulus of beta, < 2
};

// Writes beta in E_K as a difference of two Pisot numbers: direct search
// over the Pisot list first, then the guaranteed box construction with
// targets sigma_j(beta)/2. search_limit defaults to 2 B_K + beta + 4.
Decomposition decompose_in_EK(const MinkowskiLattice& L, const RhoVector& rho,
                              const OrderElement& beta,
                              std::optional<mpq_class> search_limit = std::nullopt,
                              int workers = 1);

// count distinct decompositions, theta strictly increasing.
std::vector<Decomposition> decompose_many(const MinkowskiLattice& L, const RhoVector& rho,
                                          const OrderElement& beta, int count, int workers = 1);

}  // namespace pisot
