#include "poly.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace pisot {

IntPoly IntPoly::from_si(std::initializer_list<long> coeffs) {
    std::vector<mpz_class> v;
    for (long x : coeffs) v.emplace_back(x);
    return IntPoly(std::move(v));
}

void IntPoly::normalize() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

IntPoly IntPoly::add(const IntPoly& o) const {
    std::vector<mpz_class> v(std::max(c.size(), o.c.size()), mpz_class(0));
    for (size_t i = 0; i < c.size(); ++i) v[i] += c[i];
    for (size_t i = 0; i < o.c.size(); ++i) v[i] += o.c[i];
    return IntPoly(std::move(v));
}

IntPoly IntPoly::sub(const IntPoly& o) const { return add(o.neg()); }

IntPoly IntPoly::mul(const IntPoly& o) const {
    if (is_zero() || o.is_zero()) return IntPoly();
    std::vector<mpz_class> v(c.size() + o.c.size() - 1, mpz_class(0));
    for (size_t i = 0; i < c.size(); ++i)
        for (size_t j = 0; j < o.c.size(); ++j) v[i + j] += c[i] * o.c[j];
    return IntPoly(std::move(v));
}

IntPoly IntPoly::neg() const {
    std::vector<mpz_class> v = c;
    for (auto& x : v) x = -x;
    return IntPoly(std::move(v));
}

IntPoly IntPoly::scale(const mpz_class& k) const {
    if (k == 0) return IntPoly();
    std::vector<mpz_class> v = c;
    for (auto& x : v) x *= k;
    return IntPoly(std::move(v));
}

IntPoly IntPoly::derivative() const {
    if (c.size() <= 1) return IntPoly();
    std::vector<mpz_class> v(c.size() - 1);
    for (size_t i = 1; i < c.size(); ++i) v[i - 1] = c[i] * static_cast<long>(i);
    return IntPoly(std::move(v));
}

IntPoly IntPoly::reverse() const {
    std::vector<mpz_class> v(c.rbegin(), c.rend());
    return IntPoly(std::move(v));
}

IntPoly IntPoly::compose_neg() const {
    std::vector<mpz_class> v = c;
    for (size_t i = 1; i < v.size(); i += 2) v[i] = -v[i];
    return IntPoly(std::move(v));
}

IntPoly IntPoly::scale_arg(const mpz_class& k) const {
    std::vector<mpz_class> v = c;
    mpz_class pw = 1;
    for (size_t i = 1; i < v.size(); ++i) {
        pw *= k;
        v[i] *= pw;
    }
    return IntPoly(std::move(v));
}

IntPoly IntPoly::scale_arg_inv(const mpz_class& k) const {
    std::vector<mpz_class> v = c;
    mpz_class pw = 1;
    for (size_t i = v.size(); i-- > 0;) {
        v[i] *= pw;
        pw *= k;
    }
    return IntPoly(std::move(v));
}

mpz_class IntPoly::content() const {
    mpz_class g = 0;
    for (const auto& x : c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    return g;
}

IntPoly IntPoly::primitive() const {
    if (is_zero()) return *this;
    mpz_class g = content();
    std::vector<mpz_class> v = c;
    for (auto& x : v) x /= g;
    return IntPoly(std::move(v));
}

IntPoly IntPoly::primitive_normalized() const {
    IntPoly p = primitive();
    if (!p.is_zero() && p.leading() < 0) p = p.neg();
    return p;
}

mpq_class IntPoly::eval_q(const mpq_class& x) const {
    mpq_class acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + mpq_class(*it);
    return acc;
}

mpz_class IntPoly::eval_z(const mpz_class& x) const {
    mpz_class acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

int IntPoly::sign_at_dyadic(const mpz_class& a, unsigned long k) const {
    // sign of p(a / 2^k) = sign of sum c_i a^i 2^(k (d - i))
    if (is_zero()) return 0;
    mpz_class acc = 0;
    mpz_class ai = 1;
    size_t d = c.size() - 1;
    for (size_t i = 0; i <= d; ++i) {
        mpz_class term = c[i] * ai;
        term <<= static_cast<unsigned long>(k * (d - i));
        acc += term;
        if (i < d) ai *= a;
    }
    return sgn(acc);
}

std::string IntPoly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = c.size(); i-- > 0;) {
        if (c[i] == 0) continue;
        if (!first) os << (c[i] > 0 ? " + " : " - ");
        else if (c[i] < 0) os << "-";
        first = false;
        mpz_class a = ::abs(c[i]);
        if (a != 1 || i == 0) os << a.get_str();
        if (i > 0) os << "x";
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

std::optional<IntPoly> try_divide(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) return std::nullopt;
    if (a.is_zero()) return IntPoly();
    if (a.degree() < b.degree()) return std::nullopt;
    std::vector<mpz_class> rem = a.c;
    std::vector<mpz_class> quo(a.degree() - b.degree() + 1, mpz_class(0));
    const auto& lb = b.leading();
    for (int i = a.degree(); i >= b.degree(); --i) {
        mpz_class& top = rem[i];
        if (top == 0) continue;
        if (!mpz_divisible_p(top.get_mpz_t(), lb.get_mpz_t())) return std::nullopt;
        mpz_class q = top / lb;
        quo[i - b.degree()] = q;
        for (int j = 0; j <= b.degree(); ++j) rem[i - b.degree() + j] -= q * b.c[j];
    }
    for (const auto& x : rem)
        if (x != 0) return std::nullopt;
    return IntPoly(std::move(quo));
}

IntPoly divexact(const IntPoly& a, const IntPoly& b) {
    auto q = try_divide(a, b);
    if (!q) throw internal_error("polynomial division expected to be exact");
    return *q;
}

IntPoly gcd_primitive(const IntPoly& a, const IntPoly& b) {
    RatPoly x = RatPoly::from_int(a), y = RatPoly::from_int(b);
    while (!y.is_zero()) {
        RatPoly r = rat_rem(x, y);
        x = y;
        y = r;
    }
    if (x.is_zero()) return IntPoly();
    return x.to_primitive_int().primitive_normalized();
}

bool is_squarefree(const IntPoly& p) {
    if (p.degree() <= 1) return !p.is_zero();
    return gcd_primitive(p, p.derivative()).degree() == 0;
}

mpz_class det_bareiss(std::vector<std::vector<mpz_class>> m) {
    size_t n = m.size();
    if (n == 0) return 1;
    mpz_class prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
            if (swap_row == n) return 0;
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                mpz_class t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : mpz_class(-m[n - 1][n - 1]);
}

mpz_class resultant(const IntPoly& p, const IntPoly& q) {
    if (p.is_zero() || q.is_zero()) return 0;
    int dp = p.degree(), dq = q.degree();
    if (dp == 0) {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), p.c[0].get_mpz_t(), dq);
        return r;
    }
    if (dq == 0) {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), q.c[0].get_mpz_t(), dp);
        return r;
    }
    size_t n = static_cast<size_t>(dp + dq);
    std::vector<std::vector<mpz_class>> m(n, std::vector<mpz_class>(n, mpz_class(0)));
    for (int i = 0; i < dq; ++i)
        for (int j = 0; j <= dp; ++j) m[i][i + j] = p.c[dp - j];
    for (int i = 0; i < dp; ++i)
        for (int j = 0; j <= dq; ++j) m[dq + i][i + j] = q.c[dq - j];
    return det_bareiss(std::move(m));
}

mpz_class poly_discriminant(const IntPoly& p) {
    int d = p.degree();
    if (d < 1) throw input_error("discriminant needs degree >= 1");
    if (d == 1) return 1;
    mpz_class r = resultant(p, p.derivative());
    mpz_class disc;
    mpz_divexact(disc.get_mpz_t(), r.get_mpz_t(), p.leading().get_mpz_t());
    if ((static_cast<long>(d) * (d - 1) / 2) % 2 == 1) disc = -disc;
    return disc;
}

RatPoly RatPoly::from_int(const IntPoly& p) {
    std::vector<mpq_class> v;
    v.reserve(p.c.size());
    for (const auto& x : p.c) v.emplace_back(x);
    return RatPoly(std::move(v));
}

void RatPoly::normalize() {
    for (auto& x : c) x.canonicalize();
    while (!c.empty() && c.back() == 0) c.pop_back();
}

RatPoly RatPoly::add(const RatPoly& o) const {
    std::vector<mpq_class> v(std::max(c.size(), o.c.size()), mpq_class(0));
    for (size_t i = 0; i < c.size(); ++i) v[i] += c[i];
    for (size_t i = 0; i < o.c.size(); ++i) v[i] += o.c[i];
    return RatPoly(std::move(v));
}

RatPoly RatPoly::sub(const RatPoly& o) const { return add(o.scale(-1)); }

RatPoly RatPoly::mul(const RatPoly& o) const {
    if (is_zero() || o.is_zero()) return RatPoly();
    std::vector<mpq_class> v(c.size() + o.c.size() - 1, mpq_class(0));
    for (size_t i = 0; i < c.size(); ++i)
        for (size_t j = 0; j < o.c.size(); ++j) v[i + j] += c[i] * o.c[j];
    return RatPoly(std::move(v));
}

RatPoly RatPoly::scale(const mpq_class& k) const {
    std::vector<mpq_class> v = c;
    for (auto& x : v) x *= k;
    return RatPoly(std::move(v));
}

mpq_class RatPoly::eval(const mpq_class& x) const {
    mpq_class acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

IntPoly RatPoly::to_primitive_int() const {
    if (is_zero()) return IntPoly();
    mpz_class l = 1;
    for (const auto& x : c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    std::vector<mpz_class> v;
    v.reserve(c.size());
    for (const auto& x : c) {
        mpq_class y = x * mpq_class(l);
        v.push_back(y.get_num());
    }
    return IntPoly(std::move(v)).primitive();
}

RatPoly rat_rem(const RatPoly& a, const RatPoly& b) {
    if (b.is_zero()) throw internal_error("polynomial remainder by zero");
    RatPoly r = a;
    while (!r.is_zero() && r.degree() >= b.degree()) {
        mpq_class f = r.leading() / b.leading();
        int shift = r.degree() - b.degree();
        std::vector<mpq_class> v = r.c;
        for (int j = 0; j <= b.degree(); ++j) v[shift + j] -= f * b.c[j];
        v[r.degree()] = 0;
        r = RatPoly(std::move(v));
    }
    return r;
}

std::vector<IntPoly> sturm_chain(const IntPoly& p) {
    std::vector<IntPoly> chain;
    IntPoly f0 = p.primitive();
    if (f0.is_zero()) return chain;
    chain.push_back(f0);
    IntPoly f1 = p.derivative().primitive();
    if (f1.is_zero()) return chain;
    chain.push_back(f1);
    while (chain.back().degree() > 0) {
        RatPoly r = rat_rem(RatPoly::from_int(chain[chain.size() - 2]),
                            RatPoly::from_int(chain.back()));
        if (r.is_zero()) break;
        chain.push_back(r.scale(-1).to_primitive_int());
    }
    return chain;
}

namespace {

int variations(const std::vector<int>& signs) {
    int v = 0, last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

int variations_at_inf(const std::vector<IntPoly>& chain, int dir) {
    std::vector<int> signs;
    signs.reserve(chain.size());
    for (const auto& f : chain) {
        int s = sgn(f.leading());
        if (dir < 0 && f.degree() % 2 == 1) s = -s;
        signs.push_back(s);
    }
    return variations(signs);
}

}  // namespace

int sturm_variations_at(const std::vector<IntPoly>& chain, const mpq_class& x) {
    std::vector<int> signs;
    signs.reserve(chain.size());
    for (const auto& f : chain) signs.push_back(sgn(f.eval_q(x)));
    return variations(signs);
}

int sturm_count_open(const std::vector<IntPoly>& chain, const mpq_class& a, const mpq_class& b) {
    if (chain.empty()) return 0;
    assert(chain[0].eval_q(a) != 0 && chain[0].eval_q(b) != 0);
    return sturm_variations_at(chain, a) - sturm_variations_at(chain, b);
}

int sturm_count_above(const std::vector<IntPoly>& chain, const mpq_class& a) {
    if (chain.empty()) return 0;
    assert(chain[0].eval_q(a) != 0);
    return sturm_variations_at(chain, a) - variations_at_inf(chain, +1);
}

int sturm_count_all(const std::vector<IntPoly>& chain) {
    if (chain.empty()) return 0;
    return variations_at_inf(chain, -1) - variations_at_inf(chain, +1);
}

mpq_class cauchy_root_bound(const IntPoly& p) {
    if (p.degree() < 1) return 1;
    mpq_class m = 0;
    for (int i = 0; i < p.degree(); ++i) {
        mpq_class t = ::abs(mpq_class(p.c[i]) / mpq_class(p.leading()));
        if (t > m) m = t;
    }
    return m + 1;
}

CircleRootCount count_roots_on_unit_circle(const IntPoly& p) {
    if (p.degree() < 1) throw input_error("circle root count needs degree >= 1");
    if (!is_squarefree(p)) throw internal_error("circle root count requires a squarefree polynomial");
    CircleRootCount out;
    IntPoly q = p;
    if (q.eval_z(1) == 0) {
        out.at_one = 1;
        q = divexact(q, IntPoly::from_si({-1, 1}));
    }
    if (q.eval_z(-1) == 0) {
        out.at_minus_one = 1;
        q = divexact(q, IntPoly::from_si({1, 1}));
    }
    if (q.degree() < 2) return out;
    IntPoly g = gcd_primitive(q, q.reverse());
    if (g.degree() <= 0) return out;
    if (!(g == g.reverse()))
        throw internal_error("self-inverse factor is not palindromic");
    if (g.degree() % 2 != 0) throw internal_error("palindromic factor of odd degree");
    // g = z^k u(z + 1/z) with u built from the Chebyshev-like basis
    // D_0 = 2, D_1 = y, D_{j+1} = y D_j - D_{j-1}.
    int k = g.degree() / 2;
    IntPoly u(std::vector<mpz_class>{g.c[k]});
    IntPoly d_prev = IntPoly::from_si({2});
    IntPoly d_cur = IntPoly::from_si({0, 1});
    for (int j = 1; j <= k; ++j) {
        u = u.add(d_cur.scale(g.c[k + j]));
        IntPoly d_next = d_cur.mul(IntPoly::from_si({0, 1})).sub(d_prev);
        d_prev = d_cur;
        d_cur = d_next;
    }
    out.pair_count = sturm_count_open(sturm_chain(u), mpq_class(-2), mpq_class(2));
    return out;
}

CircleRootCount count_roots_on_circle(const IntPoly& p, const mpq_class& radius) {
    if (radius <= 0) throw input_error("circle radius must be positive");
    // roots of p on |x| = a/b are roots of b^d p(a y / b) on |y| = 1
    IntPoly q = p.scale_arg(radius.get_num()).scale_arg_inv(radius.get_den());
    return count_roots_on_unit_circle(q.primitive());
}

}  // namespace pisot
