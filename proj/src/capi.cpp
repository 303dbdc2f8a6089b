#include "pisotk/pisotk.h"

#include "report.hpp"

#include <json.hpp>

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

using namespace pisot;

struct ptk_field {
    std::shared_ptr<const NumberField> field;
    MinkowskiLattice lattice;
    RhoVector rho;
    int workers = 1;
};

namespace {

thread_local std::string g_error;

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename Fn>
ptk_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const input_error& e) {
        g_error = e.what();
        return PTK_ERR_INPUT;
    } catch (const precision_error& e) {
        g_error = e.what();
        return PTK_ERR_PRECISION;
    } catch (const internal_error& e) {
        g_error = e.what();
        return PTK_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_error = e.what();
        return PTK_ERR_INTERNAL;
    }
}

const char* require(const char* v, const char* what) {
    if (!v || !*v) throw input_error(std::string(what) + " is required");
    return v;
}

void guard(const ptk_field* f, char* const* out) {
    if (!f) throw input_error("field handle is required");
    if (!out) throw input_error("output pointer is required");
}

mpq_class parse_q(const char* v, const char* what) {
    return parse_decimal_or_rational(require(v, what));
}

OrderElement parse_coords(const NumberField& f, const char* text) {
    OrderElement x = f.zero();
    std::stringstream ss(require(text, "element coordinates"));
    std::string item;
    size_t i = 0;
    while (std::getline(ss, item, ',')) {
        if (i >= x.coords.size()) throw input_error("too many coordinates for the field degree");
        if (item.empty() || x.coords[i].set_str(item, 10) != 0)
            throw input_error("malformed coordinate: '" + item + "'");
        ++i;
    }
    if (i != x.coords.size())
        throw input_error("expected " + std::to_string(x.coords.size()) + " coordinates");
    return x;
}

mpq_class signed_rational(std::string s) {
    if (!s.empty() && s.front() == '+') s.erase(s.begin());
    return parse_decimal_or_rational(s);
}

std::vector<std::pair<mpq_class, mpq_class>> parse_targets(const char* text) {
    std::vector<std::pair<mpq_class, mpq_class>> out;
    std::stringstream ss(require(text, "targets"));
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw input_error("empty target entry");
        if (item.back() == 'i') {
            item.pop_back();
            size_t split = std::string::npos;
            for (size_t k = 1; k < item.size(); ++k)
                if (item[k] == '+' || item[k] == '-') split = k;
            if (split == std::string::npos)
                out.emplace_back(0, signed_rational(item));
            else
                out.emplace_back(signed_rational(item.substr(0, split)),
                                 signed_rational(item.substr(split)));
        } else {
            out.emplace_back(signed_rational(item), 0);
        }
    }
    return out;
}

mpq_class rat_upper(const RBall& b) { return mpq_from_real(b.upper().raw()); }

std::string cache_path(const ptk_field& h, const char* dir, const mpq_class& bound) {
    std::string key = h.field->spec().canonical() + "|" + rational_to_string(bound) + "|" +
                      std::to_string(h.field->config().precision);
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(key)));
    return std::string(dir) + "/pisot_" + hex + ".json";
}

// Cached enumerations hold coordinates only; every entry is re-certified on
// read and any mismatch falls back to a fresh run.
std::vector<PisotCertificate> cached_enumerate(const ptk_field& h, const mpq_class& bound,
                                               const char* cache_dir) {
    const NumberField& f = *h.field;
    std::string path;
    if (cache_dir && *cache_dir) {
        path = cache_path(h, cache_dir, bound);
        std::ifstream in(path);
        if (in) {
            try {
                nlohmann::json j = nlohmann::json::parse(in);
                if (j.at("spec_hash") == std::to_string(fnv1a64(f.spec().canonical())) &&
                    j.at("bound") == rational_to_string(bound)) {
                    std::vector<PisotCertificate> out;
                    for (const auto& row : j.at("coords")) {
                        OrderElement x = f.zero();
                        if (row.size() != x.coords.size()) throw std::runtime_error("shape");
                        for (size_t i = 0; i < x.coords.size(); ++i)
                            if (x.coords[i].set_str(row[i].get<std::string>(), 10) != 0)
                                throw std::runtime_error("coord");
                        PisotCheck pc = certify_pisot(f, x);
                        if (!pc.ok()) throw std::runtime_error("stale");
                        out.push_back(std::move(*pc.cert));
                    }
                    return out;
                }
            } catch (const std::exception&) {
                // unusable cache entry; recompute below
            }
        }
    }
    auto out = enumerate_pisot(h.lattice, bound, h.workers);
    if (!path.empty()) {
        nlohmann::json j;
        j["spec_hash"] = std::to_string(fnv1a64(f.spec().canonical()));
        j["bound"] = rational_to_string(bound);
        j["precision"] = static_cast<long>(f.config().precision);
        nlohmann::json coords = nlohmann::json::array();
        for (const auto& c : out) {
            nlohmann::json row = nlohmann::json::array();
            for (const auto& z : c.element.coords) row.push_back(z.get_str());
            coords.push_back(std::move(row));
        }
        j["coords"] = std::move(coords);
        std::ofstream outf(path);
        if (outf) outf << j.dump(1) << "\n";
    }
    return out;
}

}  // namespace

extern "C" {

const char* ptk_last_error(void) { return g_error.c_str(); }

void ptk_string_free(char* s) { std::free(s); }

ptk_status ptk_field_create(const char* spec_json, long precision, long max_precision,
                            int workers, ptk_field** out) {
    return guarded([&]() {
        if (!out) throw input_error("output handle is required");
        *out = nullptr;
        RunConfig cfg;
        if (precision > 0) cfg.precision = precision;
        if (max_precision > 0) cfg.max_precision = max_precision;
        if (cfg.max_precision < cfg.precision) cfg.max_precision = cfg.precision;
        auto h = std::make_unique<ptk_field>();
        h->field = NumberField::build(parse_field_spec(require(spec_json, "field spec")), cfg);
        h->lattice = MinkowskiLattice::build(h->field, cfg.precision);
        h->rho = compute_rho(h->lattice);
        h->workers = workers > 0 ? workers : 1;
        *out = h.release();
        return PTK_OK;
    });
}

void ptk_field_free(ptk_field* f) { delete f; }

ptk_status ptk_field_info(ptk_field* f, char** report_json) {
    return guarded([&]() {
        guard(f, report_json);
        *report_json = dup_string(report_field_info(*f->field, f->lattice, f->rho));
        return PTK_OK;
    });
}

ptk_status ptk_pisot_enum(ptk_field* f, const char* max_value, const char* cache_dir,
                          char** report_json) {
    return guarded([&]() {
        guard(f, report_json);
        mpq_class bound = parse_q(max_value, "enumeration bound");
        auto xs = cached_enumerate(*f, bound, cache_dir);
        *report_json = dup_string(report_pisot_list(*f->field, xs, bound));
        return PTK_OK;
    });
}

ptk_status ptk_pisot_min(ptk_field* f, char** report_json) {
    return guarded([&]() {
        guard(f, report_json);
        *report_json = dup_string(report_pisot_min(*f->field, min_pisot(f->lattice, f->workers)));
        return PTK_OK;
    });
}

ptk_status ptk_gaps(ptk_field* f, const char* max_value, char** report_json) {
    return guarded([&]() {
        guard(f, report_json);
        mpq_class bound = parse_q(max_value, "enumeration bound");
        *report_json =
            dup_string(report_gaps(*f->field, consecutive_gaps(f->lattice, bound, f->workers)));
        return PTK_OK;
    });
}

ptk_status ptk_ek_test(ptk_field* f, const char* coords, char** report_json) {
    return guarded([&]() {
        guard(f, report_json);
        OrderElement x = parse_coords(*f->field, coords);
        *report_json = dup_string(report_ek_test(*f->field, is_in_EK(*f->field, x)));
        return PTK_OK;
    });
}

ptk_status ptk_ek_enum(ptk_field* f, const char* max_value, char** report_json) {
    return guarded([&]() {
        guard(f, report_json);
        mpq_class bound = parse_q(max_value, "enumeration bound");
        auto xs = enumerate_EK(f->lattice, bound, f->workers);
        *report_json = dup_string(report_ek_list(*f->field, xs, bound));
        return PTK_OK;
    });
}

ptk_status ptk_decompose(ptk_field* f, const char* coords, int count, char** report_json) {
    return guarded([&]() {
        guard(f, report_json);
        OrderElement x = parse_coords(*f->field, coords);
        std::vector<Decomposition> ds;
        if (count <= 1)
            ds.push_back(decompose_in_EK(f->lattice, f->rho, x, std::nullopt, f->workers));
        else
            ds = decompose_many(f->lattice, f->rho, x, count, f->workers);
        *report_json = dup_string(report_decompositions(*f->field, ds));
        return PTK_OK;
    });
}

ptk_status ptk_theorem1(ptk_field* f, const char* x1, const char* targets, const char* epsilon,
                        const char* strategy, char** report_json) {
    return guarded([&]() {
        guard(f, report_json);
        Theorem1Query q;
        q.x1 = parse_q(x1, "x1");
        q.targets = parse_targets(targets);
        q.epsilon = parse_q(epsilon, "epsilon");
        std::string st = require(strategy, "strategy");
        Theorem1Strategy s;
        if (st == "direct")
            s = Theorem1Strategy::Direct;
        else if (st == "constructive")
            s = Theorem1Strategy::Constructive;
        else
            throw input_error("strategy must be 'direct' or 'constructive'");
        Theorem1Result r = theorem1_construct(f->lattice, f->rho, q, s, f->workers);
        *report_json = dup_string(report_theorem1(*f->field, q, s, r));
        return PTK_OK;
    });
}

ptk_status ptk_epsilon_pisot(ptk_field* f, const char* epsilon, const char* from,
                             char** report_json) {
    return guarded([&]() {
        guard(f, report_json);
        mpq_class eps = parse_q(epsilon, "epsilon");
        mpq_class lo = parse_q(from, "interval start");
        RBall need = epsilon_pisot_required_width(f->lattice, f->rho, eps);
        mpq_class hi = lo + rat_upper(need);
        PisotCertificate cert =
            epsilon_pisot_search(f->lattice, f->rho, eps, lo, hi, f->workers);
        *report_json = dup_string(report_epsilon_pisot(*f->field, eps, lo, hi, need, cert));
        return PTK_OK;
    });
}

ptk_status ptk_verify(ptk_field* f, const char* what, const char* max_value,
                      const char* search_limit, const char* grid_step, const char* epsilon,
                      char** report_json) {
    return guarded([&]() {
        guard(f, report_json);
        std::string w = require(what, "verification name");
        VerificationReport rep;
        if (w == "eq-ek-dk") {
            mpq_class bound = parse_q(max_value, "bound");
            mpq_class limit = search_limit && *search_limit
                                  ? parse_decimal_or_rational(search_limit)
                                  : rat_upper(bound_BK(f->lattice, f->rho).mul_2exp(1)) + bound + 4;
            rep = verify_EK_equals_DK(f->lattice, f->rho, bound, limit, f->workers);
        } else if (w == "corollary3") {
            rep = verify_corollary3(f->lattice, parse_q(max_value, "bound"), f->workers);
        } else if (w == "density") {
            rep = density_probe(f->lattice, f->rho, parse_q(grid_step, "grid step"),
                                parse_q(epsilon, "epsilon"), f->workers);
        } else if (w == "discreteness") {
            rep = discreteness_check(f->lattice, f->rho, parse_q(max_value, "bound"), f->workers);
        } else {
            throw input_error("unknown verification '" + w + "'");
        }
        *report_json = dup_string(report_verification(f->field->spec().name, rep));
        return rep.pass ? PTK_OK : PTK_VERIFY_FAIL;
    });
}

ptk_status ptk_oracle_pisot(ptk_field* f, const char* max_value, char** report_json) {
    return guarded([&]() {
        guard(f, report_json);
        mpq_class bound = parse_q(max_value, "enumeration bound");
        auto xs = brute_force_pisot(*f->field, bound);
        *report_json = dup_string(report_oracle_pisot(*f->field, xs, bound));
        return PTK_OK;
    });
}

ptk_status ptk_to_csv(const char* report_json, char** csv) {
    return guarded([&]() {
        if (!csv) throw input_error("output pointer is required");
        *csv = dup_string(report_to_csv(require(report_json, "report")));
        return PTK_OK;
    });
}

}  // extern "C"
