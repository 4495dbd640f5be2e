#include "unimap/poly.hpp"

#include <algorithm>
#include <sstream>

#include "unimap/errors.hpp"

namespace unimap {

namespace {
size_t g_term_cap = 5'000'000;
const mpz_class kZero = 0;
}  // namespace

void IntPoly::set_term_cap(size_t cap) { g_term_cap = cap; }
size_t IntPoly::term_cap() { return g_term_cap; }

void IntPoly::check_cap() const {
    if (terms_.size() > g_term_cap)
        throw DegreeBlowup(std::to_string(terms_.size()) + " monomials");
}

IntPoly IntPoly::constant(const mpz_class& c) {
    IntPoly p;
    if (c != 0) p.terms_[{0, 0, 0}] = c;
    return p;
}

IntPoly IntPoly::monomial(const Mono& m, const mpz_class& c) {
    IntPoly p;
    if (c != 0) p.terms_[m] = c;
    return p;
}

unsigned IntPoly::deg_s() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.s);
    return d;
}

unsigned IntPoly::deg_t() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.t);
    return d;
}

unsigned IntPoly::deg_b() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.b);
    return d;
}

const mpz_class& IntPoly::coeff(const Mono& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? kZero : it->second;
}

void IntPoly::add_term(const Mono& m, const mpz_class& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

IntPoly IntPoly::operator-() const {
    IntPoly r;
    for (const auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    IntPoly r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, c);
    r.check_cap();
    return r;
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) {
    IntPoly r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
    r.check_cap();
    return r;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    IntPoly r;
    mpz_class prod;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            Mono m{ma.s + mb.s, ma.t + mb.t, ma.b + mb.b};
            prod = ca * cb;
            r.add_term(m, prod);
        }
    r.check_cap();
    return r;
}

IntPoly IntPoly::mul_z(const mpz_class& k) const {
    IntPoly r;
    if (k == 0) return r;
    for (const auto& [m, c] : terms_) r.terms_[m] = c * k;
    return r;
}

IntPoly IntPoly::mul_mono(const Mono& mm) const {
    IntPoly r;
    for (const auto& [m, c] : terms_)
        r.terms_[{m.s + mm.s, m.t + mm.t, m.b + mm.b}] = c;
    return r;
}

IntPoly IntPoly::pow_ui(unsigned k) const {
    IntPoly r = constant(1);
    IntPoly base = *this;
    while (k) {
        if (k & 1u) r = r * base;
        k >>= 1u;
        if (k) base = base * base;
    }
    return r;
}

IntPoly IntPoly::fold_b(unsigned q) const {
    if (q == 0) throw std::logic_error("fold_b: q = 0");
    IntPoly r;
    for (const auto& [m, c] : terms_)
        r.add_term({m.s, m.t + m.b / q, m.b % q}, c);
    return r;
}

IntPoly IntPoly::b_coefficient(unsigned j) const {
    IntPoly r;
    for (const auto& [m, c] : terms_)
        if (m.b == j) r.terms_[{m.s, m.t, 0}] = c;
    return r;
}

IntPoly IntPoly::t_to_b_signed(int sign) const {
    IntPoly r;
    for (const auto& [m, c] : terms_) {
        if (m.b != 0) throw std::logic_error("t_to_b_signed: B present");
        bool flip = sign < 0 && (m.t % 2 == 1);
        r.terms_[{m.s, 0, m.t}] = flip ? mpz_class(-c) : c;
    }
    return r;
}

IntPoly IntPoly::substitute_b(const IntPoly& replacement) const {
    // group by B exponent, then Horner in the replacement
    unsigned db = deg_b();
    std::vector<IntPoly> by_b(db + 1);
    for (const auto& [m, c] : terms_)
        by_b[m.b].add_term({m.s, m.t, 0}, c);
    IntPoly acc = by_b[db];
    for (int j = static_cast<int>(db) - 1; j >= 0; --j)
        acc = acc * replacement + by_b[j];
    return acc;
}

IntPoly IntPoly::div_exact(const IntPoly& d) const {
    if (d.is_zero()) throw std::logic_error("div_exact by zero");
    IntPoly rem = *this;
    IntPoly quot;
    const auto& dlead = *d.terms_.rbegin();
    while (!rem.is_zero()) {
        const auto& rlead = *rem.terms_.rbegin();
        const Mono &rm = rlead.first, &dm = dlead.first;
        if (rm.s < dm.s || rm.t < dm.t || rm.b < dm.b)
            throw std::logic_error("div_exact: leading monomial not divisible");
        mpz_class qc;
        mpz_class rcoef = rlead.second;
        if (!mpz_divisible_p(rcoef.get_mpz_t(), dlead.second.get_mpz_t()))
            throw std::logic_error("div_exact: leading coefficient not divisible");
        mpz_divexact(qc.get_mpz_t(), rcoef.get_mpz_t(), dlead.second.get_mpz_t());
        Mono qm{rm.s - dm.s, rm.t - dm.t, rm.b - dm.b};
        quot.add_term(qm, qc);
        rem = rem - d.mul_mono(qm).mul_z(qc);
    }
    return quot;
}

mpz_class IntPoly::content() const {
    mpz_class g = 0;
    for (const auto& [m, c] : terms_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

IntPoly IntPoly::primitive_part() const {
    if (terms_.empty()) return IntPoly();
    mpz_class g = content();
    IntPoly r = *this;
    for (auto& [m, c] : r.terms_)
        mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    return r;
}

Interval IntPoly::eval(const Interval& S, const Interval& T,
                       const Interval& B) const {
    const mpfr_prec_t prec = S.precision();
    auto powers = [prec](const Interval& x, unsigned maxdeg) {
        std::vector<Interval> pw;
        pw.reserve(maxdeg + 1);
        pw.push_back(Interval(1, prec));
        for (unsigned i = 1; i <= maxdeg; ++i) pw.push_back(pw.back() * x);
        return pw;
    };
    std::vector<Interval> ps = powers(S, deg_s());
    std::vector<Interval> pt = powers(T, deg_t());
    std::vector<Interval> pb = powers(B, deg_b());
    Interval acc(prec);
    for (const auto& [m, c] : terms_)
        acc = acc + (ps[m.s] * pt[m.t] * pb[m.b]).mul_z(c);
    return acc;
}

std::string IntPoly::str(const char* sname, const char* tname,
                         const char* bname) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // highest monomial first
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        mpz_class a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        bool unit = (a == 1) && (m.s || m.t || m.b);
        if (!unit) os << a.get_str();
        bool needsep = !unit;
        auto var = [&](const char* nm, unsigned e) {
            if (!e) return;
            if (needsep) os << "*";
            os << nm;
            if (e > 1) os << "^" << e;
            needsep = true;
        };
        var(sname, m.s);
        var(tname, m.t);
        var(bname, m.b);
    }
    return os.str();
}

// ---------------------------------------------------------------------------

UniPoly::UniPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }

UniPoly UniPoly::constant(const mpz_class& c) { return UniPoly({c}); }

UniPoly UniPoly::variable() { return UniPoly({0, 1}); }

void UniPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const mpz_class& UniPoly::leading() const {
    if (c_.empty()) return kZero;
    return c_.back();
}

const mpz_class& UniPoly::operator[](size_t i) const {
    return i < c_.size() ? c_[i] : kZero;
}

UniPoly UniPoly::operator-() const {
    UniPoly r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    UniPoly r;
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), 0);
    for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a[i] + b[i];
    r.trim();
    return r;
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly();
    UniPoly r;
    r.c_.resize(a.c_.size() + b.c_.size() - 1, 0);
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    r.trim();
    return r;
}

UniPoly UniPoly::mul_z(const mpz_class& k) const {
    if (k == 0) return UniPoly();
    UniPoly r = *this;
    for (auto& v : r.c_) v *= k;
    return r;
}

UniPoly UniPoly::pow_ui(unsigned k) const {
    UniPoly r = constant(1);
    UniPoly base = *this;
    while (k) {
        if (k & 1u) r = r * base;
        k >>= 1u;
        if (k) base = base * base;
    }
    return r;
}

mpz_class UniPoly::content() const {
    mpz_class g = 0;
    for (const auto& v : c_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

UniPoly UniPoly::primitive_part() const {
    if (is_zero()) return UniPoly();
    mpz_class g = content();
    UniPoly r = *this;
    for (auto& v : r.c_) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    if (r.leading() < 0) r = -r;
    return r;
}

Interval UniPoly::eval(const Interval& x) const {
    const mpfr_prec_t prec = x.precision();
    Interval acc(prec);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        acc = acc * x + Interval(*it, prec);
    return acc;
}

mpz_class UniPoly::eval_z(const mpz_class& x) const {
    mpz_class acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::string UniPoly::str(const char* var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        mpz_class a = c_[i];
        if (a == 0) continue;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        if (a != 1 || i == 0) os << a.get_str();
        if (i > 0) {
            if (a != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

namespace {
// pseudo-remainder of a by b (deg a >= deg b >= 0, b nonzero)
UniPoly prem(UniPoly a, const UniPoly& b) {
    int db = b.degree();
    while (!a.is_zero() && a.degree() >= db) {
        int shift = a.degree() - db;
        mpz_class la = a.leading();
        std::vector<mpz_class> shifted(static_cast<size_t>(shift), 0);
        for (const auto& v : b.coeffs()) shifted.push_back(v);
        a = a.mul_z(b.leading()) - UniPoly(std::move(shifted)).mul_z(la);
    }
    return a;
}
}  // namespace

UniPoly gcd_rational(UniPoly a, UniPoly b) {
    a = a.primitive_part();
    b = b.primitive_part();
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        UniPoly r = prem(a, b).primitive_part();
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

mpz_class binomial(unsigned long n, unsigned long k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

}  // namespace unimap
