#include "report.hpp"

#include <json.hpp>

#include <cctype>

namespace pisot {

mpq_class parse_rational(const std::string& s) {
    if (s.empty()) throw input_error("empty rational literal");
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw input_error("malformed rational literal: '" + s + "'");
    if (q.get_den() == 0) throw input_error("zero denominator in rational literal: '" + s + "'");
    q.canonicalize();
    return q;
}

mpq_class parse_decimal_or_rational(const std::string& s) {
    auto dot = s.find('.');
    if (dot == std::string::npos) return parse_rational(s);
    if (s.find('/') != std::string::npos)
        throw input_error("literal mixes decimal point and fraction: '" + s + "'");
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    size_t frac_len = s.size() - dot - 1;
    if (frac_len == 0 || digits.empty())
        throw input_error("malformed decimal literal: '" + s + "'");
    for (size_t i = 0; i < digits.size(); ++i) {
        char ch = digits[i];
        if (i == 0 && (ch == '-' || ch == '+')) continue;
        if (!std::isdigit(static_cast<unsigned char>(ch)))
            throw input_error("malformed decimal literal: '" + s + "'");
    }
    if (digits[0] == '+') digits.erase(0, 1);
    if (digits.empty() || digits == "-")
        throw input_error("malformed decimal literal: '" + s + "'");
    mpz_class num(digits);
    mpz_class den = 1;
    for (size_t i = 0; i < frac_len; ++i) den *= 10;
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

std::string rational_to_string(const mpq_class& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

mpq_class mpq_from_real(mpfr_srcptr v) {
    if (!mpfr_number_p(v)) throw internal_error("non-finite value has no rational form");
    if (mpfr_zero_p(v)) return 0;
    mpz_class m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v);
    mpq_class q(m);
    if (e >= 0) {
        mpz_class two = 1;
        mpz_mul_2exp(two.get_mpz_t(), two.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
        q *= two;
    } else {
        mpz_class den = 1;
        mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(-e));
        q /= den;
    }
    q.canonicalize();
    return q;
}

namespace {

using nlohmann::json;

bool scalar_array(const json& a) {
    for (const auto& v : a)
        if (v.is_object() || v.is_array()) return false;
    return true;
}

// Objects one key per line, arrays of scalars inline; keys are already
// sorted by the json container.
void render(const json& v, std::string& out, int depth) {
    std::string pad(2 * depth, ' ');
    std::string pad1(2 * (depth + 1), ' ');
    if (v.is_object()) {
        if (v.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (auto it = v.begin(); it != v.end(); ++it) {
            if (!first) out += ",\n";
            first = false;
            out += pad1 + json(it.key()).dump() + ": ";
            render(it.value(), out, depth + 1);
        }
        out += "\n" + pad + "}";
    } else if (v.is_array()) {
        if (v.empty()) {
            out += "[]";
            return;
        }
        if (scalar_array(v)) {
            out += "[";
            bool first = true;
            for (const auto& e : v) {
                if (!first) out += ", ";
                first = false;
                out += e.dump();
            }
            out += "]";
        } else {
            out += "[\n";
            bool first = true;
            for (const auto& e : v) {
                if (!first) out += ",\n";
                first = false;
                out += pad1;
                render(e, out, depth + 1);
            }
            out += "\n" + pad + "]";
        }
    } else {
        out += v.dump();
    }
}

std::string render_report(json j) {
    j["schema"] = "v1";
    std::string out;
    render(j, out, 0);
    out += "\n";
    return out;
}

json coords_json(const OrderElement& x) {
    json a = json::array();
    for (const auto& c : x.coords) a.push_back(c.get_str());
    return a;
}

std::string dec(const RBall& b) { return real_to_string(b.center().raw(), 20); }
std::string rad(const RBall& b) { return real_to_string(b.radius().raw(), 3); }

RBall place_modulus(const NumberField& f, const CBall& z, int place) {
    return place < f.real_places() ? z.real_part().abs() : z.abs();
}

json certificate_row(const NumberField& f, const PisotCertificate& c) {
    json row;
    row["coords"] = coords_json(c.element);
    row["value"] = dec(c.value);
    row["value_radius"] = rad(c.value);
    row["min_poly"] = c.minimal_poly.to_string();
    json mods = json::array();
    for (size_t j = 0; j < c.conjugates.size(); ++j)
        mods.push_back(dec(place_modulus(f, c.conjugates[j], static_cast<int>(j) + 1)));
    row["conjugate_moduli"] = std::move(mods);
    return row;
}

}  // namespace

std::string report_field_info(const NumberField& f, const MinkowskiLattice& L,
                              const RhoVector& rho) {
    json j;
    j["kind"] = "field-info";
    j["name"] = f.spec().name;
    j["defining_polynomial"] = f.spec().defining_poly.to_string();
    j["degree"] = f.degree();
    j["real_places"] = f.real_places();
    j["complex_places"] = f.complex_places();
    j["discriminant"] = f.discriminant().get_str();
    j["volume"] = dec(L.volume());
    j["volume_radius"] = rad(L.volume());
    RBall bk = bound_BK(L, rho);
    j["bound"] = dec(bk);
    j["bound_radius"] = rad(bk);
    json rows = json::array();
    for (int pl = 0; pl < f.num_places(); ++pl) {
        json row;
        row["place"] = pl + 1;
        bool cx = pl >= f.real_places();
        row["type"] = cx ? "complex" : "real";
        row["box_radius"] = dec(cx ? rho.disc_radius[pl - f.real_places()] : rho.rho[pl]);
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    return render_report(std::move(j));
}

std::string report_pisot_list(const NumberField& f, const std::vector<PisotCertificate>& xs,
                              const mpq_class& bound, const std::string& kind) {
    json j;
    j["kind"] = kind;
    j["field"] = f.spec().name;
    j["bound"] = rational_to_string(bound);
    j["count"] = xs.size();
    json rows = json::array();
    for (const auto& c : xs) rows.push_back(certificate_row(f, c));
    j["rows"] = std::move(rows);
    return render_report(std::move(j));
}

std::string report_pisot_min(const NumberField& f, const PisotCertificate& c) {
    json j;
    j["kind"] = "pisot-min";
    j["field"] = f.spec().name;
    json rows = json::array();
    rows.push_back(certificate_row(f, c));
    j["rows"] = std::move(rows);
    return render_report(std::move(j));
}

std::string report_gaps(const NumberField& f, const GapReport& g) {
    json j;
    j["kind"] = "gap-report";
    j["field"] = g.field_name;
    j["bound"] = rational_to_string(g.bound);
    j["pisot_count"] = g.pisot.size();
    j["gap_count"] = g.gaps.size();
    j["distinct_gap_count"] = g.distinct_gaps.size();
    j["min_gap"] = dec(g.min_gap);
    j["max_gap"] = dec(g.max_gap);
    json seq = json::array();
    for (const auto& x : g.gaps) seq.push_back(x.to_string());
    j["sequence"] = std::move(seq);
    json rows = json::array();
    for (const auto& [x, n] : g.distinct_gaps) {
        json row;
        row["coords"] = coords_json(x);
        row["value"] = dec(f.value(x, 2 * f.config().precision));
        row["multiplicity"] = n;
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    return render_report(std::move(j));
}

std::string report_ek_test(const NumberField& f, const EKCertificate& c) {
    json j;
    j["kind"] = "ek-test";
    j["field"] = f.spec().name;
    j["element"] = coords_json(c.element);
    j["in_ek"] = c.inside;
    j["boundary"] = c.boundary;
    j["verdict"] = c.inside ? "in" : (c.boundary ? "out, boundary" : "out");
    j["evidence"] = c.evidence;
    j["rho_max"] = dec(c.rho_max);
    json rows = json::array();
    for (size_t i = 0; i < c.conjugate_moduli.size(); ++i) {
        json row;
        row["place"] = static_cast<int>(i) + 2;
        row["modulus"] = dec(c.conjugate_moduli[i]);
        row["modulus_radius"] = rad(c.conjugate_moduli[i]);
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    return render_report(std::move(j));
}

std::string report_ek_list(const NumberField& f, const std::vector<EKCertificate>& xs,
                           const mpq_class& bound) {
    json j;
    j["kind"] = "ek-list";
    j["field"] = f.spec().name;
    j["bound"] = rational_to_string(bound);
    j["count"] = xs.size();
    json rows = json::array();
    for (const auto& c : xs) {
        json row;
        row["coords"] = coords_json(c.element);
        row["value"] = dec(f.value(c.element, 2 * f.config().precision));
        row["rho_max"] = dec(c.rho_max);
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    return render_report(std::move(j));
}

std::string report_decompositions(const NumberField& f, const std::vector<Decomposition>& ds) {
    json j;
    j["kind"] = "decomposition";
    j["field"] = f.spec().name;
    if (!ds.empty()) {
        j["element"] = coords_json(ds.front().beta);
        j["rho_max"] = dec(ds.front().rho_max);
    }
    j["count"] = ds.size();
    json rows = json::array();
    for (const auto& d : ds) {
        json row;
        row["theta_coords"] = coords_json(d.theta.element);
        row["theta_value"] = dec(d.theta.value);
        row["theta_min_poly"] = d.theta.minimal_poly.to_string();
        row["second_coords"] = coords_json(d.theta_minus_beta.element);
        row["second_value"] = dec(d.theta_minus_beta.value);
        row["second_min_poly"] = d.theta_minus_beta.minimal_poly.to_string();
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    return render_report(std::move(j));
}

std::string report_theorem1(const NumberField& f, const Theorem1Query& q, Theorem1Strategy st,
                            const Theorem1Result& r) {
    json j;
    j["kind"] = "theorem1";
    j["field"] = f.spec().name;
    j["strategy"] = st == Theorem1Strategy::Direct ? "direct" : "constructive";
    j["epsilon"] = rational_to_string(q.epsilon);
    j["x1"] = rational_to_string(q.x1);
    j["c"] = dec(r.c);
    j["c_radius"] = rad(r.c);
    j["theta_coords"] = coords_json(r.theta);
    j["theta_value"] = dec(f.value(r.theta, 2 * f.config().precision));
    j["theta_min_poly"] = f.min_poly(r.theta).to_string();
    j["x1_distance"] = dec(r.x1_distance);
    j["x1_distance_radius"] = rad(r.x1_distance);
    json rows = json::array();
    for (size_t i = 0; i < q.targets.size(); ++i) {
        json row;
        row["place"] = static_cast<int>(i) + 2;
        const auto& [re, im] = q.targets[i];
        std::string t = rational_to_string(re);
        if (static_cast<int>(i) >= f.real_places() - 1)
            t += (im < 0 ? "" : "+") + rational_to_string(im) + "i";
        row["target"] = t;
        row["distance"] = dec(r.target_distances[i]);
        row["distance_radius"] = rad(r.target_distances[i]);
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    return render_report(std::move(j));
}

std::string report_epsilon_pisot(const NumberField& f, const mpq_class& eps, const mpq_class& lo,
                                 const mpq_class& hi, const RBall& width,
                                 const PisotCertificate& c) {
    json j;
    j["kind"] = "epsilon-pisot";
    j["field"] = f.spec().name;
    j["epsilon"] = rational_to_string(eps);
    j["from"] = rational_to_string(lo);
    j["to"] = rational_to_string(hi);
    Real wu = width.upper();
    j["required_width"] = real_to_string(wu.raw(), 20);
    j["coords"] = coords_json(c.element);
    j["value"] = dec(c.value);
    j["value_radius"] = rad(c.value);
    j["min_poly"] = c.minimal_poly.to_string();
    json rows = json::array();
    for (size_t i = 0; i < c.conjugates.size(); ++i) {
        json row;
        row["place"] = static_cast<int>(i) + 2;
        row["modulus"] = dec(place_modulus(f, c.conjugates[i], static_cast<int>(i) + 1));
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    return render_report(std::move(j));
}

std::string report_verification(const std::string& field_name, const VerificationReport& v) {
    json j;
    j["kind"] = "verification";
    j["field"] = field_name;
    j["claim"] = v.claim;
    j["pass"] = v.pass;
    for (const auto& [k, val] : v.params) j[k] = val;
    json rows = json::array();
    auto add = [&rows](const char* type, const std::vector<std::string>& xs) {
        for (const auto& s : xs) {
            json row;
            row["type"] = type;
            row["text"] = s;
            rows.push_back(std::move(row));
        }
    };
    add("counterexample", v.counterexamples);
    add("witness", v.witnesses);
    add("note", v.notes);
    j["rows"] = std::move(rows);
    return render_report(std::move(j));
}

std::string report_oracle_pisot(const NumberField& f, const std::vector<OrderElement>& xs,
                                const mpq_class& bound) {
    json j;
    j["kind"] = "oracle-pisot";
    j["field"] = f.spec().name;
    j["bound"] = rational_to_string(bound);
    j["count"] = xs.size();
    json rows = json::array();
    for (const auto& x : xs) {
        json row;
        row["coords"] = coords_json(x);
        row["value"] = dec(f.value(x, 2 * f.config().precision));
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    return render_report(std::move(j));
}

namespace {

std::string csv_cell(const json& v) {
    std::string s;
    if (v.is_string()) {
        s = v.get<std::string>();
    } else if (v.is_array()) {
        bool first = true;
        for (const auto& e : v) {
            if (!first) s += " ";
            first = false;
            s += e.is_string() ? e.get<std::string>() : e.dump();
        }
    } else {
        s = v.dump();
    }
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

}  // namespace

std::string report_to_csv(const std::string& json_text) {
    json j = json::parse(json_text, nullptr, false);
    if (j.is_discarded()) throw input_error("report is not valid JSON");
    std::string out;
    auto rows = j.find("rows");
    if (rows != j.end() && rows->is_array() && !rows->empty()) {
        const json& first = rows->front();
        bool head = true;
        for (auto it = first.begin(); it != first.end(); ++it) {
            if (!head) out += ",";
            head = false;
            out += csv_cell(json(it.key()));
        }
        out += "\n";
        for (const auto& row : *rows) {
            bool lead = true;
            for (auto it = first.begin(); it != first.end(); ++it) {
                if (!lead) out += ",";
                lead = false;
                auto cell = row.find(it.key());
                out += cell != row.end() ? csv_cell(*cell) : "";
            }
            out += "\n";
        }
        return out;
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (it.key() == "rows" || it.value().is_object()) continue;
        out += csv_cell(json(it.key())) + "," + csv_cell(it.value()) + "\n";
    }
    return out;
}

uint64_t fnv1a64(const std::string& data) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace pisot
