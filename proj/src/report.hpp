#pragma once

#include "analysis.hpp"
#include "oracle.hpp"

namespace pisot {

// Every report is a JSON object with "schema": "v1", a "kind", scalar
// summary keys, and a "rows" array holding one entry per element, gap, or
// witness. Keys are emitted sorted and scalar arrays inline, so identical
// inputs produce byte-identical output.

std::string report_field_info(const NumberField& f, const MinkowskiLattice& L,
                              const RhoVector& rho);
std::string report_pisot_list(const NumberField& f, const std::vector<PisotCertificate>& xs,
                              const mpq_class& bound, const std::string& kind = "pisot-list");
std::string report_pisot_min(const NumberField& f, const PisotCertificate& c);
std::string report_gaps(const NumberField& f, const GapReport& g);
std::string report_ek_test(const NumberField& f, const EKCertificate& c);
std::string report_ek_list(const NumberField& f, const std::vector<EKCertificate>& xs,
                           const mpq_class& bound);
std::string report_decompositions(const NumberField& f, const std::vector<Decomposition>& ds);
std::string report_theorem1(const NumberField& f, const Theorem1Query& q, Theorem1Strategy st,
                            const Theorem1Result& r);
std::string report_epsilon_pisot(const NumberField& f, const mpq_class& eps, const mpq_class& lo,
                                 const mpq_class& hi, const RBall& width,
                                 const PisotCertificate& c);
std::string report_verification(const std::string& field_name, const VerificationReport& v);
std::string report_oracle_pisot(const NumberField& f, const std::vector<OrderElement>& xs,
                                const mpq_class& bound);

// Tabular projection: the rows array becomes a header plus one CSV line per
// row (arrays joined with spaces); a report without rows falls back to
// key,value lines over the scalar fields.
std::string report_to_csv(const std::string& json_text);

}  // namespace pisot
