#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace pisot {

// Thrown for malformed user input: bad JSON, reducible polynomial, out-of-range
// parameters. Maps to exit code 2.
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when a certified computation still cannot decide a predicate at the
// precision cap. Maps to exit code 3.
struct precision_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Violations of internal invariants (a certificate that must hold by
// construction fails to verify). Maps to exit code 4.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

struct RunConfig {
    mpfr_prec_t precision = 128;
    mpfr_prec_t max_precision = 4096;
    int workers = 1;
    std::string cache_dir;  // empty: no cache
};

enum class Tri { False, True, Unknown };

inline mpfr_prec_t next_prec(mpfr_prec_t p, mpfr_prec_t cap) {
    return p >= cap ? 0 : std::min<mpfr_prec_t>(2 * p, cap);
}

// Runs f(prec) at doubling precisions until it returns a value.
template <class F>
auto escalate(const RunConfig& cfg, F&& f, const char* what)
    -> typename std::invoke_result_t<F, mpfr_prec_t>::value_type {
    mpfr_prec_t p = cfg.precision;
    for (;;) {
        auto r = f(p);
        if (r) return *r;
        p = next_prec(p, cfg.max_precision);
        if (p == 0)
            throw precision_error(std::string(what) +
                                  ": undecided at precision cap " +
                                  std::to_string(cfg.max_precision));
    }
}

// Parses "p/q" or "p". Throws input_error on malformed text or q == 0.
mpq_class parse_rational(const std::string& s);

// Parses a finite decimal or rational string ("2.5", "-0.125", "7/3") exactly.
mpq_class parse_decimal_or_rational(const std::string& s);

std::string rational_to_string(const mpq_class& q);

// The exact rational value of a finite float.
mpq_class mpq_from_real(mpfr_srcptr v);

uint64_t fnv1a64(const std::string& data);

}  // namespace pisot
