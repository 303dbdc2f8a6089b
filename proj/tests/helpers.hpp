#pragma once

#include "field.hpp"
#include "minkowski.hpp"

#include <memory>
#include <string>

namespace testutil {

using namespace pisot;

inline const char* kQ2 = R"j({"name":"Q(sqrt2)","defining_polynomial":[-2,0,1]})j";
inline const char* kQ3 = R"j({"name":"Q(sqrt3)","defining_polynomial":[-3,0,1]})j";
inline const char* kQ5 =
    R"j({"name":"Q(sqrt5)","defining_polynomial":[-5,0,1],
        "integral_basis":[["1","0"],["1/2","1/2"]]})j";
inline const char* kQ6 = R"j({"name":"Q(sqrt6)","defining_polynomial":[-6,0,1]})j";
inline const char* kQ7 = R"j({"name":"Q(sqrt7)","defining_polynomial":[-7,0,1]})j";
inline const char* kQ11 = R"j({"name":"Q(sqrt11)","defining_polynomial":[-11,0,1]})j";
inline const char* kPlastic = R"j({"name":"cubic-plastic","defining_polynomial":[-1,-1,0,1]})j";
inline const char* kTotallyReal =
    R"j({"name":"cubic-totally-real","defining_polynomial":[-1,-3,0,1]})j";
inline const char* kRationals = R"j({"name":"Q","defining_polynomial":[-1,1]})j";

inline std::shared_ptr<const NumberField> make_field(const char* json, mpfr_prec_t prec = 128,
                                                     int workers = 1) {
    RunConfig cfg;
    cfg.precision = prec;
    cfg.workers = workers;
    return NumberField::build(parse_field_spec(json), cfg);
}

inline OrderElement elt(std::initializer_list<long> coords) {
    OrderElement x;
    for (long c : coords) x.coords.emplace_back(c);
    return x;
}

// Enclosure test against an exact rational: the ball must contain q and be
// narrower than tol.
inline bool encloses(const RBall& b, const mpq_class& q, double tol = 1e-15) {
    return b.sub(RBall::from_mpq(q, b.prec())).contains_zero() && b.radius_double() < tol;
}

}  // namespace testutil
