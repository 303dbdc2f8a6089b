#pragma once

#include "ball.hpp"
#include "poly.hpp"
#include "rootisol.hpp"

#include <memory>
#include <mutex>
#include <vector>

namespace pisot {

struct FieldSpec {
    std::string name;
    IntPoly defining_poly;
    // basis[i] = power-basis coordinates of the i-th module generator w_i.
    std::vector<std::vector<mpq_class>> basis;

    // Stable serialization used for cache keys.
    std::string canonical() const;
};

// Parses the JSON field description; throws input_error naming the offending
// key on malformed input.
FieldSpec parse_field_spec(const std::string& json_text);

// Coordinates with respect to the order basis w_0..w_{d-1}; always integers.
struct OrderElement {
    std::vector<mpz_class> coords;

    bool operator==(const OrderElement& o) const { return coords == o.coords; }
    bool is_zero() const;
    std::string to_string() const;
};

// A real number field K = Q(x)/(p) together with an order given by a
// multiplicatively closed unital Z-module basis. Immutable after build;
// embedding data is memoized per precision and safe to share across threads.
class NumberField {
  public:
    static std::shared_ptr<const NumberField> build(const FieldSpec& spec, const RunConfig& cfg);

    const FieldSpec& spec() const { return spec_; }
    const RunConfig& config() const { return cfg_; }
    int degree() const { return d_; }
    int real_places() const { return s_; }
    int complex_places() const { return t_; }
    int num_places() const { return s_ + t_; }
    const mpz_class& discriminant() const { return disc_; }
    const mpz_class& mult(int i, int j, int k) const { return mult_[(i * d_ + j) * d_ + k]; }

    OrderElement zero() const;
    OrderElement one() const { return one_; }
    OrderElement add(const OrderElement& a, const OrderElement& b) const;
    OrderElement sub(const OrderElement& a, const OrderElement& b) const;
    OrderElement neg(const OrderElement& a) const;
    OrderElement mul(const OrderElement& a, const OrderElement& b) const;
    OrderElement mul_int(const OrderElement& a, const mpz_class& k) const;

    IntPoly min_poly(const OrderElement& x) const;
    bool is_generator(const OrderElement& x) const { return min_poly(x).degree() == d_; }
    mpz_class norm(const OrderElement& x) const;
    mpz_class trace(const OrderElement& x) const;

    // Place order: the identity embedding (largest real root) first, the
    // remaining real embeddings ascending, then one representative per
    // conjugate pair.
    struct EmbedData {
        mpfr_prec_t prec = 0;
        RootEnclosures roots;
        std::vector<std::vector<CBall>> basis_embed;  // [basis index][place]
    };
    std::shared_ptr<const EmbedData> embed_data(mpfr_prec_t prec) const;

    std::vector<CBall> embed(const OrderElement& x, mpfr_prec_t prec) const;
    CBall embed_place(const OrderElement& x, int place, mpfr_prec_t prec) const;
    // The identity embedding as a real ball.
    RBall value(const OrderElement& x, mpfr_prec_t prec) const;

    // Root index of the defining polynomial backing a place: (is_real, index
    // into roots.real_roots or roots.complex_reps).
    std::pair<bool, int> place_root(int place) const;

    // Exact identification of sigma_place(x) as a root of min_poly(x).
    struct PlacedRoot {
        IntPoly poly;
        RootEnclosures enc;
        int kind;  // 0 real root, 1 complex representative, 2 conjugate
        int index;
    };
    PlacedRoot locate_place_root(const OrderElement& x, int place) const;

    // Exact comparison sigma_place(x) vs q; the place value must be real
    // (always true for place 0).
    int compare_value_to_mpq(const OrderElement& x, int place, const mpq_class& q) const;
    // Exact comparison |sigma_place(x)| vs q.
    Cmp3 compare_abs_to_mpq(const OrderElement& x, int place, const mpq_class& q) const;

  private:
    NumberField() = default;

    FieldSpec spec_;
    RunConfig cfg_;
    int d_ = 0, s_ = 0, t_ = 0;
    mpz_class disc_;
    std::vector<mpz_class> mult_;  // d^3 tensor
    OrderElement one_;

    mutable std::mutex mu_;
    mutable std::vector<std::shared_ptr<const EmbedData>> ladder_;

    EmbedData make_embed_data(const RootEnclosures& roots) const;
};

// Certified three-way comparison of the identity value of x with q:
// enclosure refinement first, the exact root path once enclosures stop
// deciding (required when the two sides are equal).
int cmp_value_q(const NumberField& f, const OrderElement& x, const mpq_class& q);

}  // namespace pisot
