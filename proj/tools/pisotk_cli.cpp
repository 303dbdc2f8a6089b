#include <pisotk/pisotk.h>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Options {
    long precision = 0;
    long max_precision = 0;
    int workers = 0;
    std::string output;
    std::string format = "json";
    std::string cache;
};

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int fail(ptk_status st) {
    std::cerr << "error: " << ptk_last_error() << "\n";
    return static_cast<int>(st);
}

int emit(const Options& opt, char* report) {
    std::string text;
    if (opt.format == "csv") {
        char* csv = nullptr;
        ptk_status st = ptk_to_csv(report, &csv);
        ptk_string_free(report);
        if (st != PTK_OK) return fail(st);
        text = csv;
        ptk_string_free(csv);
    } else {
        text = report;
        ptk_string_free(report);
    }
    if (opt.output.empty() || opt.output == "-") {
        std::cout << text;
        return 0;
    }
    std::ofstream out(opt.output);
    if (!out) {
        std::cerr << "error: cannot write '" << opt.output << "'\n";
        return 2;
    }
    out << text;
    return 0;
}

// Opens the field and runs one API call; exit code mirrors the status.
int with_field(const Options& opt, const std::string& spec_path,
               const std::function<ptk_status(ptk_field*, char**)>& op) {
    auto spec = read_file(spec_path);
    if (!spec) {
        std::cerr << "error: cannot read field spec '" << spec_path << "'\n";
        return 2;
    }
    ptk_field* f = nullptr;
    ptk_status st = ptk_field_create(spec->c_str(), opt.precision, opt.max_precision,
                                     opt.workers, &f);
    if (st != PTK_OK) return fail(st);
    char* report = nullptr;
    st = ptk_status(op(f, &report));
    ptk_field_free(f);
    if (st != PTK_OK && st != PTK_VERIFY_FAIL) return fail(st);
    int rc = emit(opt, report);
    return rc != 0 ? rc : static_cast<int>(st);
}

std::string join(const std::vector<std::string>& xs) {
    std::string out;
    for (size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + xs[i];
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pisot number lattice toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    Options opt;
    app.add_option("--precision", opt.precision, "working precision in bits (default 128)")
        ->envname("PISOTK_PRECISION");
    app.add_option("--max-precision", opt.max_precision,
                   "escalation ceiling in bits (default 4096)");
    app.add_option("--workers", opt.workers, "parallel workers (default 1)");
    app.add_option("--output", opt.output, "write the report here instead of stdout");
    app.add_option("--format", opt.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--cache", opt.cache, "directory for memoized enumerations");

    int rc = 0;
    std::string spec, element, x1, eps, from, grid, limit, strategy = "direct";
    std::string max_v;
    std::vector<std::string> targets;
    int count = 1;

    auto* field = app.add_subcommand("field", "field-level data");
    auto* field_info = field->add_subcommand("info", "degree, discriminant, lattice constants");
    field_info->add_option("spec", spec, "field spec JSON")->required();
    field_info->callback([&] {
        rc = with_field(opt, spec, [](ptk_field* f, char** r) { return ptk_field_info(f, r); });
    });

    auto* pisot = app.add_subcommand("pisot", "Pisot number enumeration");
    auto* penum = pisot->add_subcommand("enum", "all Pisot numbers up to a bound");
    penum->add_option("spec", spec)->required();
    penum->add_option("--max", max_v, "upper bound on the value")->required();
    penum->callback([&] {
        rc = with_field(opt, spec, [&](ptk_field* f, char** r) {
            return ptk_pisot_enum(f, max_v.c_str(), opt.cache.empty() ? nullptr : opt.cache.c_str(),
                                  r);
        });
    });
    auto* pmin = pisot->add_subcommand("min", "smallest Pisot number of the field");
    pmin->add_option("spec", spec)->required();
    pmin->callback([&] {
        rc = with_field(opt, spec, [](ptk_field* f, char** r) { return ptk_pisot_min(f, r); });
    });

    auto* gaps = app.add_subcommand("gaps", "consecutive differences of the Pisot sequence");
    gaps->add_option("spec", spec)->required();
    gaps->add_option("--max", max_v)->required();
    gaps->callback([&] {
        rc = with_field(opt, spec,
                        [&](ptk_field* f, char** r) { return ptk_gaps(f, max_v.c_str(), r); });
    });

    auto* ek = app.add_subcommand("ek", "small-conjugate elements");
    auto* ektest = ek->add_subcommand("test", "membership of one element");
    ektest->add_option("spec", spec)->required();
    ektest->add_option("--element", element, "comma-separated integer coordinates")->required();
    ektest->callback([&] {
        rc = with_field(opt, spec,
                        [&](ptk_field* f, char** r) { return ptk_ek_test(f, element.c_str(), r); });
    });
    auto* ekenum = ek->add_subcommand("enum", "all members up to a bound");
    ekenum->add_option("spec", spec)->required();
    ekenum->add_option("--max", max_v)->required();
    ekenum->callback([&] {
        rc = with_field(opt, spec,
                        [&](ptk_field* f, char** r) { return ptk_ek_enum(f, max_v.c_str(), r); });
    });

    auto* dec = app.add_subcommand("decompose", "write an element as a difference of Pisot numbers");
    dec->add_option("spec", spec)->required();
    dec->add_option("--element", element)->required();
    dec->add_option("--count", count, "number of distinct decompositions");
    dec->callback([&] {
        rc = with_field(opt, spec, [&](ptk_field* f, char** r) {
            return ptk_decompose(f, element.c_str(), count, r);
        });
    });

    auto* th = app.add_subcommand("theorem1", "algebraic integer near prescribed embeddings");
    th->add_option("spec", spec)->required();
    th->add_option("--x1", x1, "target for the identity place")->required();
    th->add_option("--targets", targets, "targets for places 2.., real 'a' or complex 'a+bi'")
        ->required();
    th->add_option("--eps", eps, "radius around each target")->required();
    th->add_option("--strategy", strategy, "direct or constructive")
        ->check(CLI::IsMember({"direct", "constructive"}));
    th->callback([&] {
        rc = with_field(opt, spec, [&](ptk_field* f, char** r) {
            return ptk_theorem1(f, x1.c_str(), join(targets).c_str(), eps.c_str(),
                                strategy.c_str(), r);
        });
    });

    auto* ep = app.add_subcommand("epsilon-pisot", "Pisot number with uniformly small conjugates");
    ep->add_option("spec", spec)->required();
    ep->add_option("--eps", eps, "conjugate modulus bound in (0,1]")->required();
    ep->add_option("--from", from, "interval start (at least 1)")->required();
    ep->callback([&] {
        rc = with_field(opt, spec, [&](ptk_field* f, char** r) {
            return ptk_epsilon_pisot(f, eps.c_str(), from.c_str(), r);
        });
    });

    auto* verify = app.add_subcommand("verify", "checked claims over a window");
    for (const char* what : {"eq-ek-dk", "corollary3", "density", "discreteness"}) {
        auto* v = verify->add_subcommand(what);
        v->add_option("spec", spec)->required();
        v->add_option("--max", max_v, "window bound");
        v->add_option("--limit", limit, "search limit for decompositions");
        v->add_option("--grid-step", grid, "target grid spacing");
        v->add_option("--eps", eps, "target radius");
        v->callback([&, what] {
            rc = with_field(opt, spec, [&](ptk_field* f, char** r) {
                return ptk_verify(f, what, max_v.empty() ? nullptr : max_v.c_str(),
                                  limit.empty() ? nullptr : limit.c_str(),
                                  grid.empty() ? nullptr : grid.c_str(),
                                  eps.empty() ? nullptr : eps.c_str(), r);
            });
        });
    }

    auto* oracle = app.add_subcommand("oracle", "independent reference computations");
    auto* opisot = oracle->add_subcommand("pisot", "exhaustive scan enumeration");
    opisot->add_option("spec", spec)->required();
    opisot->add_option("--max", max_v)->required();
    opisot->callback([&] {
        rc = with_field(opt, spec, [&](ptk_field* f, char** r) {
            return ptk_oracle_pisot(f, max_v.c_str(), r);
        });
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
