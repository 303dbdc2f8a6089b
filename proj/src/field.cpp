#include "field.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace pisot {

namespace {

using Json = nlohmann::json;

mpz_class json_to_mpz(const Json& v, const std::string& where) {
    if (v.is_number_integer()) return mpz_class(static_cast<long>(v.get<std::int64_t>()));
    if (v.is_string()) {
        try {
            return mpz_class(v.get<std::string>());
        } catch (const std::invalid_argument&) {
            throw input_error(where + ": malformed integer '" + v.get<std::string>() + "'");
        }
    }
    throw input_error(where + ": expected an integer or integer string");
}

mpq_class json_to_mpq(const Json& v, const std::string& where) {
    if (v.is_number_integer()) return mpq_class(static_cast<long>(v.get<std::int64_t>()));
    if (v.is_string()) {
        try {
            return parse_rational(v.get<std::string>());
        } catch (const input_error& e) {
            throw input_error(where + ": " + e.what());
        }
    }
    throw input_error(where + ": expected a rational as 'p/q' string or integer");
}

// Gauss-Jordan inverse over Q; nullopt when singular.
std::optional<std::vector<std::vector<mpq_class>>> invert(
    std::vector<std::vector<mpq_class>> m) {
    size_t n = m.size();
    std::vector<std::vector<mpq_class>> inv(n, std::vector<mpq_class>(n, 0));
    for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(m[piv], m[col]);
        std::swap(inv[piv], inv[col]);
        mpq_class f = m[col][col];
        for (size_t j = 0; j < n; ++j) {
            m[col][j] /= f;
            inv[col][j] /= f;
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0) continue;
            mpq_class g = m[r][col];
            for (size_t j = 0; j < n; ++j) {
                m[r][j] -= g * m[col][j];
                inv[r][j] -= g * inv[col][j];
            }
        }
    }
    return inv;
}

std::vector<mpq_class> row_times_matrix(const std::vector<mpq_class>& u,
                                        const std::vector<std::vector<mpq_class>>& m) {
    size_t n = m.size();
    std::vector<mpq_class> v(n, 0);
    for (size_t k = 0; k < n; ++k)
        for (size_t i = 0; i < n; ++i) v[k] += u[i] * m[i][k];
    return v;
}

// x^k mod p for k = 0 .. upto, as power-basis coordinate rows. p monic.
std::vector<std::vector<mpz_class>> power_rows(const IntPoly& p, int upto) {
    int d = p.degree();
    std::vector<std::vector<mpz_class>> rows;
    rows.reserve(upto + 1);
    std::vector<mpz_class> cur(d, 0);
    cur[0] = 1;
    rows.push_back(cur);
    for (int k = 1; k <= upto; ++k) {
        std::vector<mpz_class> nxt(d, 0);
        mpz_class top = cur[d - 1];
        for (int j = d - 1; j >= 1; --j) nxt[j] = cur[j - 1];
        nxt[0] = 0;
        if (top != 0)
            for (int j = 0; j < d; ++j) nxt[j] -= top * p.c[j];
        cur = std::move(nxt);
        rows.push_back(cur);
    }
    return rows;
}

// Certifies irreducibility of monic squarefree p by ruling out every
// conjugation-closed proper subset of roots as a monic integer factor.
void check_irreducible(const IntPoly& p, const RunConfig& cfg) {
    int d = p.degree();
    if (d <= 1) return;
    for (mpfr_prec_t prec = std::max<mpfr_prec_t>(cfg.precision, 128);;
         prec = next_prec(prec, 8 * cfg.max_precision)) {
        if (prec == 0) throw precision_error("irreducibility test undecided at precision cap");
        RootEnclosures enc = isolate_roots(p, prec);
        int s = enc.s(), t = enc.t();
        int items = s + t;
        bool inconclusive = false;
        for (unsigned mask = 1; mask + 1 < (1u << items) && !inconclusive; ++mask) {
            int deg_sub = 0;
            for (int i = 0; i < items; ++i)
                if (mask & (1u << i)) deg_sub += i < s ? 1 : 2;
            if (deg_sub == 0 || deg_sub >= d) continue;
            // product of (x - root) over the subset, with conjugate pairs
            // multiplied as real quadratics
            std::vector<RBall> coeffs{RBall::from_si(1, prec)};
            for (int i = 0; i < items; ++i) {
                if (!(mask & (1u << i))) continue;
                if (i < s) {
                    const RBall& r = enc.real_roots[i];
                    std::vector<RBall> nxt(coeffs.size() + 1, RBall::from_si(0, prec));
                    for (size_t k = 0; k < coeffs.size(); ++k) {
                        nxt[k + 1] = nxt[k + 1].add(coeffs[k]);
                        nxt[k] = nxt[k].sub(r.mul(coeffs[k]));
                    }
                    coeffs = std::move(nxt);
                } else {
                    const CBall& z = enc.complex_reps[i - s];
                    RBall tr = z.real_part().mul_2exp(1);
                    RBall nm = z.real_part().mul(z.real_part()).add(
                        z.imag_part().mul(z.imag_part()));
                    std::vector<RBall> nxt(coeffs.size() + 2, RBall::from_si(0, prec));
                    for (size_t k = 0; k < coeffs.size(); ++k) {
                        nxt[k + 2] = nxt[k + 2].add(coeffs[k]);
                        nxt[k + 1] = nxt[k + 1].sub(tr.mul(coeffs[k]));
                        nxt[k] = nxt[k].add(nm.mul(coeffs[k]));
                    }
                    coeffs = std::move(nxt);
                }
            }
            // decide: an integer candidate in every ball, or some ball free
            // of integers
            std::vector<mpz_class> cand(coeffs.size());
            bool dead = false, undecided = false;
            for (size_t k = 0; k + 1 < coeffs.size(); ++k) {
                auto n = coeffs[k].unique_integer_round();
                if (!n) {
                    undecided = true;
                    break;
                }
                RBall gap = coeffs[k].sub(RBall::from_mpz(*n, prec));
                if (gap.abs().sign() > 0) {
                    dead = true;  // nearest integer certified outside
                    break;
                }
                cand[k] = *n;
            }
            if (undecided) {
                inconclusive = true;
                continue;
            }
            if (dead) continue;
            cand.back() = 1;
            IntPoly candidate(std::move(cand));
            if (candidate.degree() != deg_sub) continue;  // leading ball was off
            if (try_divide(p, candidate))
                throw input_error("defining_polynomial is reducible: divisible by " +
                                  candidate.to_string());
        }
        if (!inconclusive) return;
    }
}

}  // namespace

std::string FieldSpec::canonical() const {
    std::ostringstream os;
    os << "{\"defining_polynomial\":[";
    for (size_t i = 0; i < defining_poly.c.size(); ++i) {
        if (i) os << ",";
        os << defining_poly.c[i].get_str();
    }
    os << "],\"integral_basis\":[";
    for (size_t i = 0; i < basis.size(); ++i) {
        if (i) os << ",";
        os << "[";
        for (size_t j = 0; j < basis[i].size(); ++j) {
            if (j) os << ",";
            os << "\"" << rational_to_string(basis[i][j]) << "\"";
        }
        os << "]";
    }
    os << "],\"name\":\"" << name << "\"}";
    return os.str();
}

FieldSpec parse_field_spec(const std::string& json_text) {
    Json j;
    try {
        j = Json::parse(json_text);
    } catch (const Json::parse_error& e) {
        throw input_error(std::string("field spec: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw input_error("field spec: top level must be an object");
    FieldSpec spec;
    spec.name = j.value("name", std::string("K"));
    if (!j.contains("defining_polynomial") || !j["defining_polynomial"].is_array())
        throw input_error("field spec: 'defining_polynomial' must be an array");
    std::vector<mpz_class> coeffs;
    for (const auto& v : j["defining_polynomial"])
        coeffs.push_back(json_to_mpz(v, "defining_polynomial"));
    spec.defining_poly = IntPoly(std::move(coeffs));
    int d = spec.defining_poly.degree();
    if (d < 1) throw input_error("field spec: defining_polynomial must have degree >= 1");
    if (j.contains("integral_basis")) {
        const auto& b = j["integral_basis"];
        if (!b.is_array() || static_cast<int>(b.size()) != d)
            throw input_error("field spec: 'integral_basis' must be an array of " +
                              std::to_string(d) + " rows");
        for (const auto& row : b) {
            if (!row.is_array() || static_cast<int>(row.size()) != d)
                throw input_error("field spec: each integral_basis row needs " +
                                  std::to_string(d) + " entries");
            std::vector<mpq_class> r;
            for (const auto& v : row) r.push_back(json_to_mpq(v, "integral_basis"));
            spec.basis.push_back(std::move(r));
        }
    } else {
        for (int i = 0; i < d; ++i) {
            std::vector<mpq_class> r(d, 0);
            r[i] = 1;
            spec.basis.push_back(std::move(r));
        }
    }
    for (const auto& key : j.items()) {
        if (key.key() != "name" && key.key() != "defining_polynomial" &&
            key.key() != "integral_basis")
            throw input_error("field spec: unknown key '" + key.key() + "'");
    }
    return spec;
}

bool OrderElement::is_zero() const {
    for (const auto& c : coords)
        if (c != 0) return false;
    return true;
}

std::string OrderElement::to_string() const {
    std::string out;
    for (size_t i = 0; i < coords.size(); ++i) {
        if (i) out += ",";
        out += coords[i].get_str();
    }
    return out;
}

std::shared_ptr<const NumberField> NumberField::build(const FieldSpec& spec,
                                                      const RunConfig& cfg) {
    const IntPoly& p = spec.defining_poly;
    int d = p.degree();
    if (d < 1) throw input_error("defining_polynomial must have degree >= 1");
    if (!p.is_monic()) throw input_error("defining_polynomial must be monic");
    if (!is_squarefree(p))
        throw input_error("defining_polynomial is reducible: repeated factor");
    if (static_cast<int>(spec.basis.size()) != d)
        throw input_error("integral_basis must have one row per degree");

    auto binv_opt = invert(spec.basis);
    if (!binv_opt) throw input_error("integral_basis is singular");
    const auto& binv = *binv_opt;

    RootEnclosures roots = isolate_roots(p, cfg.precision);
    if (roots.s() == 0) throw input_error("field has no real embedding");
    check_irreducible(p, cfg);

    auto f = std::shared_ptr<NumberField>(new NumberField());
    f->spec_ = spec;
    f->cfg_ = cfg;
    f->d_ = d;
    f->s_ = roots.s();
    f->t_ = roots.t();

    // multiplication tensor over the order basis
    auto pw = power_rows(p, 2 * d - 2);
    f->mult_.assign(static_cast<size_t>(d) * d * d, mpz_class(0));
    for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j) {
            std::vector<mpq_class> prod(d, 0);
            for (int a = 0; a < d; ++a) {
                if (spec.basis[i][a] == 0) continue;
                for (int b = 0; b < d; ++b) {
                    if (spec.basis[j][b] == 0) continue;
                    mpq_class f2 = spec.basis[i][a] * spec.basis[j][b];
                    for (int k = 0; k < d; ++k)
                        if (pw[a + b][k] != 0) prod[k] += f2 * mpq_class(pw[a + b][k]);
                }
            }
            std::vector<mpq_class> v = row_times_matrix(prod, binv);
            for (int k = 0; k < d; ++k) {
                if (v[k].get_den() != 1)
                    throw input_error(
                        "integral_basis is not closed under multiplication: w_" +
                        std::to_string(i) + " * w_" + std::to_string(j) +
                        " leaves the module");
                f->mult_[(static_cast<size_t>(i) * d + j) * d + k] = v[k].get_num();
                f->mult_[(static_cast<size_t>(j) * d + i) * d + k] = v[k].get_num();
            }
        }
    }

    // the order must contain 1
    {
        std::vector<mpq_class> e0(d, 0);
        e0[0] = 1;
        std::vector<mpq_class> v = row_times_matrix(e0, binv);
        OrderElement one;
        for (int k = 0; k < d; ++k) {
            if (v[k].get_den() != 1)
                throw input_error("the module spanned by integral_basis does not contain 1");
            one.coords.push_back(v[k].get_num());
        }
        f->one_ = std::move(one);
    }

    // discriminant = det of the trace form on the order basis
    {
        std::vector<mpz_class> tr(d, 0);
        for (int m = 0; m < d; ++m)
            for (int i = 0; i < d; ++i) tr[m] += f->mult(m, i, i);
        std::vector<std::vector<mpz_class>> tmat(d, std::vector<mpz_class>(d, 0));
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                for (int m = 0; m < d; ++m) tmat[j][k] += f->mult(j, k, m) * tr[m];
        f->disc_ = det_bareiss(std::move(tmat));
        if (f->disc_ == 0) throw internal_error("degenerate trace form");
        bool power_basis = true;
        for (int i = 0; i < d && power_basis; ++i)
            for (int j = 0; j < d && power_basis; ++j)
                if (spec.basis[i][j] != (i == j ? 1 : 0)) power_basis = false;
        if (power_basis && f->disc_ != poly_discriminant(p))
            throw internal_error("trace form disagrees with the resultant discriminant");
    }

    f->ladder_.push_back(std::make_shared<EmbedData>(f->make_embed_data(roots)));
    return f;
}

NumberField::EmbedData NumberField::make_embed_data(const RootEnclosures& roots) const {
    EmbedData e;
    e.prec = roots.prec;
    e.roots = roots;
    e.basis_embed.resize(d_);
    for (int i = 0; i < d_; ++i) {
        e.basis_embed[i].reserve(num_places());
        for (int pl = 0; pl < num_places(); ++pl) {
            auto [is_real, idx] = place_root(pl);
            CBall root = is_real ? CBall::from_rball(roots.real_roots[idx])
                                 : roots.complex_reps[idx];
            e.basis_embed[i].push_back(eval_poly_q(spec_.basis[i], root));
        }
    }
    return e;
}

std::pair<bool, int> NumberField::place_root(int place) const {
    if (place == 0) return {true, s_ - 1};
    if (place < s_) return {true, place - 1};
    return {false, place - s_};
}

std::shared_ptr<const NumberField::EmbedData> NumberField::embed_data(mpfr_prec_t prec) const {
    std::lock_guard<std::mutex> lk(mu_);
    for (const auto& e : ladder_)
        if (e->prec >= prec) return e;
    RootEnclosures refined = refine_roots(ladder_.back()->roots, prec);
    auto e = std::make_shared<EmbedData>(make_embed_data(refined));
    ladder_.push_back(e);
    return e;
}

OrderElement NumberField::zero() const {
    OrderElement z;
    z.coords.assign(d_, mpz_class(0));
    return z;
}

OrderElement NumberField::add(const OrderElement& a, const OrderElement& b) const {
    OrderElement o = a;
    for (int i = 0; i < d_; ++i) o.coords[i] += b.coords[i];
    return o;
}

OrderElement NumberField::sub(const OrderElement& a, const OrderElement& b) const {
    OrderElement o = a;
    for (int i = 0; i < d_; ++i) o.coords[i] -= b.coords[i];
    return o;
}

OrderElement NumberField::neg(const OrderElement& a) const {
    OrderElement o = a;
    for (int i = 0; i < d_; ++i) o.coords[i] = -o.coords[i];
    return o;
}

OrderElement NumberField::mul(const OrderElement& a, const OrderElement& b) const {
    OrderElement o = zero();
    for (int i = 0; i < d_; ++i) {
        if (a.coords[i] == 0) continue;
        for (int j = 0; j < d_; ++j) {
            if (b.coords[j] == 0) continue;
            mpz_class f2 = a.coords[i] * b.coords[j];
            for (int k = 0; k < d_; ++k) {
                const mpz_class& m = mult(i, j, k);
                if (m != 0) o.coords[k] += f2 * m;
            }
        }
    }
    return o;
}

OrderElement NumberField::mul_int(const OrderElement& a, const mpz_class& k) const {
    OrderElement o = a;
    for (int i = 0; i < d_; ++i) o.coords[i] *= k;
    return o;
}

namespace {

// Multiplication-by-x matrix on coordinate columns: (M v) = coords of x * y
// when v = coords of y.
std::vector<std::vector<mpz_class>> mult_matrix(const NumberField& f, const OrderElement& x) {
    int d = f.degree();
    std::vector<std::vector<mpz_class>> m(d, std::vector<mpz_class>(d, 0));
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
            for (int i = 0; i < d; ++i)
                if (x.coords[i] != 0) m[k][j] += x.coords[i] * f.mult(i, j, k);
    return m;
}

}  // namespace

IntPoly NumberField::min_poly(const OrderElement& x) const {
    auto m = mult_matrix(*this, x);
    size_t n2 = static_cast<size_t>(d_) * d_;
    // Krylov sequence vec(M^k); first linear dependence gives the monic
    // minimal polynomial.
    std::vector<std::vector<mpq_class>> rows;      // reduced rows
    std::vector<std::vector<mpq_class>> combos;    // row = sum combo_j vec(M^j)
    std::vector<size_t> pivots;
    std::vector<std::vector<mpz_class>> mk(d_, std::vector<mpz_class>(d_, 0));
    for (int i = 0; i < d_; ++i) mk[i][i] = 1;
    for (int k = 0;; ++k) {
        std::vector<mpq_class> cur(n2);
        for (int i = 0; i < d_; ++i)
            for (int j = 0; j < d_; ++j) cur[static_cast<size_t>(i) * d_ + j] = mpq_class(mk[i][j]);
        std::vector<mpq_class> combo(static_cast<size_t>(k) + 1, 0);
        combo[k] = 1;
        for (size_t r = 0; r < rows.size(); ++r) {
            const mpq_class& pv = cur[pivots[r]];
            if (pv == 0) continue;
            mpq_class fct = pv / rows[r][pivots[r]];
            for (size_t c = 0; c < n2; ++c) cur[c] -= fct * rows[r][c];
            for (size_t c = 0; c < combos[r].size(); ++c) combo[c] -= fct * combos[r][c];
        }
        size_t piv = n2;
        for (size_t c = 0; c < n2; ++c)
            if (cur[c] != 0) {
                piv = c;
                break;
            }
        if (piv == n2) {
            std::vector<mpz_class> coeffs;
            coeffs.reserve(combo.size());
            for (auto& q : combo) {
                q.canonicalize();
                if (q.get_den() != 1)
                    throw internal_error("minimal polynomial is not integral");
                coeffs.push_back(q.get_num());
            }
            return IntPoly(std::move(coeffs));
        }
        rows.push_back(std::move(cur));
        combos.push_back(std::move(combo));
        pivots.push_back(piv);
        if (k >= d_) throw internal_error("minimal polynomial search exceeded the degree");
        // mk = M * mk
        std::vector<std::vector<mpz_class>> nxt(d_, std::vector<mpz_class>(d_, 0));
        for (int i = 0; i < d_; ++i)
            for (int l = 0; l < d_; ++l) {
                if (m[i][l] == 0) continue;
                for (int j = 0; j < d_; ++j) nxt[i][j] += m[i][l] * mk[l][j];
            }
        mk = std::move(nxt);
    }
}

mpz_class NumberField::norm(const OrderElement& x) const {
    return det_bareiss(mult_matrix(*this, x));
}

mpz_class NumberField::trace(const OrderElement& x) const {
    auto m = mult_matrix(*this, x);
    mpz_class t = 0;
    for (int i = 0; i < d_; ++i) t += m[i][i];
    return t;
}

std::vector<CBall> NumberField::embed(const OrderElement& x, mpfr_prec_t prec) const {
    auto data = embed_data(prec);
    std::vector<CBall> out;
    out.reserve(num_places());
    for (int pl = 0; pl < num_places(); ++pl) {
        CBall acc(data->prec);
        for (int i = 0; i < d_; ++i) {
            if (x.coords[i] == 0) continue;
            acc = acc.add(data->basis_embed[i][pl].mul_mpz(x.coords[i]));
        }
        out.push_back(std::move(acc));
    }
    return out;
}

CBall NumberField::embed_place(const OrderElement& x, int place, mpfr_prec_t prec) const {
    auto data = embed_data(prec);
    CBall acc(data->prec);
    for (int i = 0; i < d_; ++i) {
        if (x.coords[i] == 0) continue;
        acc = acc.add(data->basis_embed[i][place].mul_mpz(x.coords[i]));
    }
    return acc;
}

RBall NumberField::value(const OrderElement& x, mpfr_prec_t prec) const {
    return embed_place(x, 0, prec).real_part();
}

NumberField::PlacedRoot NumberField::locate_place_root(const OrderElement& x, int place) const {
    IntPoly m = min_poly(x);
    for (mpfr_prec_t p2 = std::max<mpfr_prec_t>(cfg_.precision, 128);; p2 *= 2) {
        if (p2 > (mpfr_prec_t(1) << 22))
            throw internal_error("place root identification failed to converge");
        RootEnclosures enc = isolate_roots(m, p2);
        CBall target = embed_place(x, place, p2);
        int found_kind = -1, found_index = -1, candidates = 0;
        for (int i = 0; i < enc.s() && candidates < 2; ++i) {
            if (CBall::from_rball(enc.real_roots[i]).disjoint(target) != Tri::True) {
                ++candidates;
                found_kind = 0;
                found_index = i;
            }
        }
        for (int j = 0; j < enc.t() && candidates < 2; ++j) {
            if (enc.complex_reps[j].disjoint(target) != Tri::True) {
                ++candidates;
                found_kind = 1;
                found_index = j;
            }
            if (candidates < 2 && enc.complex_reps[j].conj().disjoint(target) != Tri::True) {
                ++candidates;
                found_kind = 2;
                found_index = j;
            }
        }
        if (candidates == 1) {
            PlacedRoot pr{std::move(m), std::move(enc), found_kind, found_index};
            return pr;
        }
    }
}

int NumberField::compare_value_to_mpq(const OrderElement& x, int place, const mpq_class& q) const {
    PlacedRoot pr = locate_place_root(x, place);
    if (pr.kind != 0) throw internal_error("place value expected to be real");
    return compare_real_root_to_mpq(pr.enc, pr.index, q);
}

Cmp3 NumberField::compare_abs_to_mpq(const OrderElement& x, int place, const mpq_class& q) const {
    PlacedRoot pr = locate_place_root(x, place);
    if (pr.kind == 0) return compare_root_abs_to_mpq(pr.enc, true, pr.index, q);
    return compare_root_abs_to_mpq(pr.enc, false, pr.index, q);
}

int cmp_value_q(const NumberField& f, const OrderElement& x, const mpq_class& q) {
    const RunConfig& cfg = f.config();
    for (mpfr_prec_t p = cfg.precision; p; p = next_prec(p, cfg.max_precision)) {
        RBall v = f.value(x, p);
        Real up = v.upper(), lo = v.lower();
        if (mpfr_cmp_q(up.raw(), q.get_mpq_t()) < 0) return -1;
        if (mpfr_cmp_q(lo.raw(), q.get_mpq_t()) > 0) return 1;
    }
    return f.compare_value_to_mpq(x, 0, q);
}

}  // namespace pisot
