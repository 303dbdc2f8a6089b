#pragma once

#include "field.hpp"

#include <functional>

namespace pisot {

// Radii making the closed box/cylinder product contain the fundamental
// parallelepiped of the lattice: |real coord j| <= rho[j], complex place j
// inside the closed disc of radius disc_radius[j] (= sqrt(rho[s+j]) held
// directly to avoid a lossy square root).
struct RhoVector {
    std::vector<RBall> rho;
    std::vector<RBall> disc_radius;
};

// Constraint on the value at one real place.
struct RealCut {
    RBall lo, hi;
    bool lo_strict = false, hi_strict = false;
    // Exact endpoints, when available, unlock the exact decision path for
    // candidates sitting on the boundary.
    std::optional<mpq_class> lo_exact, hi_exact;
};

// Constraint |sigma_{s+j}(x) - center| <= radius (strict: <).
struct DiscCut {
    mpq_class center_re = 0, center_im = 0;
    RBall radius;
    bool strict = false;
    std::optional<mpq_class> radius_exact;  // usable only with center 0
};

struct Region {
    std::vector<RealCut> reals;  // one per real place, identity first
    std::vector<DiscCut> discs;  // one per complex place
};

RealCut cut_between_q(const mpq_class& lo, const mpq_class& hi, bool lo_strict, bool hi_strict,
                      mpfr_prec_t prec);
DiscCut origin_disc_q(const mpq_class& radius, bool strict, mpfr_prec_t prec);

// How a membership test that stays undecided at the precision cap with no
// exact fallback is resolved.
enum class UndecidedPolicy { Error, Skip };

class MinkowskiLattice {
  public:
    static MinkowskiLattice build(std::shared_ptr<const NumberField> f, mpfr_prec_t prec);

    const NumberField& field() const { return *f_; }
    std::shared_ptr<const NumberField> field_ptr() const { return f_; }
    mpfr_prec_t prec() const { return prec_; }
    // tau[row][i] = row-th real coordinate of the embedded basis vector
    // sigma(w_i); rows follow the place order, complex places contributing a
    // real and an imaginary row.
    const std::vector<std::vector<RBall>>& tau() const { return tau_; }
    const std::vector<std::vector<RBall>>& tau_inverse() const { return tinv_; }
    // sqrt(|disc|)/2^t from the exact discriminant.
    const RBall& volume() const { return vol_; }
    // |det tau| as certified by the ball elimination; contains volume().
    const RBall& det_enclosure() const { return det_; }

  private:
    std::shared_ptr<const NumberField> f_;
    mpfr_prec_t prec_ = 0;
    std::vector<std::vector<RBall>> tau_, tinv_;
    RBall vol_, det_;
};

RhoVector compute_rho(const MinkowskiLattice& L);

// Recheck of the defining containment at every parallelepiped vertex,
// against the radii inflated by 1 + 2^-40 (vertices may sit exactly on the
// boundary). Used by tests.
bool parallelepiped_vertices_inside(const MinkowskiLattice& L, const RhoVector& rho);

// c = 2^t sqrt(|disc|) rho_1...rho_{s+t} / (pi^t epsilon^{d-1})
RBall constant_c(const MinkowskiLattice& L, const RhoVector& rho, const mpq_class& epsilon);
RBall bound_BK(const MinkowskiLattice& L, const RhoVector& rho);

// All order elements whose embedding lies in the region, sorted by value at
// the identity place. The result is independent of the worker count.
std::vector<OrderElement> enumerate_lattice_points(const MinkowskiLattice& L, const Region& region,
                                                   int workers = 1,
                                                   UndecidedPolicy policy = UndecidedPolicy::Error);

// A nonzero alpha with |sigma_1(alpha)| <= c/rho_1, |sigma_j(alpha)| <=
// eps/rho_j, |sigma_{s+j}(alpha)| <= eps/disc_radius_j, the bounds widened by
// 1 + 2^-40 so the guaranteed point is decidable. Picks the smallest
// positive-value candidate.
OrderElement find_alpha(const MinkowskiLattice& L, const RhoVector& rho, const RBall& c,
                        const mpq_class& epsilon);

struct RoundingResult {
    OrderElement beta;
    std::vector<CBall> residual;  // target - sigma(beta), one per place
    bool floor_forced = false;    // a coordinate stayed integer-ambiguous at the cap
};

// Evaluates the rounding target at a requested precision; entries for real
// places must have imaginary center zero.
using TargetFn = std::function<std::vector<CBall>(mpfr_prec_t)>;

// beta = sum floor(r_i) w_i where tau(target) = sum r_i tau(sigma(w_i));
// the residual is certified inside the rho box inflated by 1 + 2^-40.
RoundingResult round_to_lattice(const MinkowskiLattice& L, const RhoVector& rho,
                                const TargetFn& target);

// Ascending by the identity-place value; input must be duplicate-free.
void sort_by_value(const NumberField& f, std::vector<OrderElement>& xs);

}  // namespace pisot
