#include "unimap/interval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace unimap {

RationalExponent::RationalExponent(unsigned long p_, unsigned long q_) {
    if (q_ == 0) throw ConfigError("exponent denominator must be positive");
    unsigned long g = std::gcd(p_, q_);
    p = p_ / g;
    q = q_ / g;
    if (p <= q) throw ConfigError("exponent r = p/q must satisfy p > q >= 1");
}

RationalExponent RationalExponent::parse(const std::string& text) {
    size_t slash = text.find('/');
    try {
        if (slash == std::string::npos)
            return RationalExponent(std::stoul(text), 1);
        return RationalExponent(std::stoul(text.substr(0, slash)),
                                std::stoul(text.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
        throw ConfigError("cannot parse exponent '" + text + "'");
    } catch (const std::out_of_range&) {
        throw ConfigError("exponent '" + text + "' out of range");
    }
}

std::string RationalExponent::str() const {
    return q == 1 ? std::to_string(p) : std::to_string(p) + "/" + std::to_string(q);
}

void Interval::init(mpfr_prec_t prec) {
    if (prec < MPFR_PREC_MIN || prec > kMaxPrec)
        throw ConfigError("precision out of range");
    prec_ = prec;
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
}

Interval::Interval(mpfr_prec_t prec) {
    init(prec);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

Interval::Interval(long value, mpfr_prec_t prec) {
    init(prec);
    mpfr_set_si(lo_, value, MPFR_RNDD);
    mpfr_set_si(hi_, value, MPFR_RNDU);
}

Interval::Interval(const mpz_class& value, mpfr_prec_t prec) {
    init(prec);
    mpfr_set_z(lo_, value.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(hi_, value.get_mpz_t(), MPFR_RNDU);
}

Interval::Interval(const Interval& other) {
    init(other.prec_);
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept {
    prec_ = other.prec_;
    mpfr_init2(lo_, MPFR_PREC_MIN);
    mpfr_init2(hi_, MPFR_PREC_MIN);
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(const Interval& other) {
    if (this == &other) return *this;
    if (prec_ != other.prec_) {
        mpfr_set_prec(lo_, other.prec_);
        mpfr_set_prec(hi_, other.prec_);
        prec_ = other.prec_;
    }
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
    return *this;
}

Interval& Interval::operator=(Interval&& other) noexcept {
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
    std::swap(prec_, other.prec_);
    return *this;
}

Interval::~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

Interval Interval::from_decimal(const std::string& text, mpfr_prec_t prec) {
    Interval r(prec);
    if (mpfr_set_str(r.lo_, text.c_str(), 10, MPFR_RNDD) != 0 ||
        mpfr_set_str(r.hi_, text.c_str(), 10, MPFR_RNDU) != 0)
        throw ConfigError("cannot parse decimal '" + text + "'");
    return r;
}

Interval Interval::from_endpoints_decimal(const std::string& lo,
                                          const std::string& hi,
                                          mpfr_prec_t prec) {
    Interval r(prec);
    if (mpfr_set_str(r.lo_, lo.c_str(), 10, MPFR_RNDD) != 0 ||
        mpfr_set_str(r.hi_, hi.c_str(), 10, MPFR_RNDU) != 0)
        throw ConfigError("cannot parse decimal endpoints");
    if (mpfr_cmp(r.lo_, r.hi_) > 0) throw ConfigError("interval endpoints reversed");
    return r;
}

Interval Interval::from_mpfr(const mpfr_t lo, const mpfr_t hi, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set(r.lo_, lo, MPFR_RNDD);
    mpfr_set(r.hi_, hi, MPFR_RNDU);
    if (mpfr_cmp(r.lo_, r.hi_) > 0) throw ConfigError("interval endpoints reversed");
    return r;
}

double Interval::lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double Interval::mid_d() const {
    mpfr_t m;
    mpfr_init2(m, prec_);
    mpfr_add(m, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(m, m, 1, MPFR_RNDN);
    double d = mpfr_get_d(m, MPFR_RNDN);
    mpfr_clear(m);
    return d;
}

double Interval::width_d() const {
    mpfr_t w;
    mpfr_init2(w, prec_);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    double d = mpfr_get_d(w, MPFR_RNDU);
    mpfr_clear(w);
    return d;
}

bool Interval::is_point() const { return mpfr_equal_p(lo_, hi_); }

bool Interval::is_exact_zero() const {
    return mpfr_zero_p(lo_) && mpfr_zero_p(hi_);
}

bool Interval::contains_zero() const {
    return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
}

int Interval::sign_certain() const {
    if (mpfr_sgn(lo_) > 0) return +1;
    if (mpfr_sgn(hi_) < 0) return -1;
    return 0;
}

bool Interval::contains(const Interval& inner) const {
    return mpfr_cmp(lo_, inner.lo_) <= 0 && mpfr_cmp(hi_, inner.hi_) >= 0;
}

bool Interval::intersects(const Interval& other) const {
    return mpfr_cmp(lo_, other.hi_) <= 0 && mpfr_cmp(other.lo_, hi_) <= 0;
}

double Interval::hausdorff_d(const Interval& other) const {
    mpfr_t d1, d2;
    mpfr_init2(d1, prec_);
    mpfr_init2(d2, prec_);
    mpfr_sub(d1, lo_, other.lo_, MPFR_RNDU);
    mpfr_abs(d1, d1, MPFR_RNDU);
    mpfr_sub(d2, hi_, other.hi_, MPFR_RNDU);
    mpfr_abs(d2, d2, MPFR_RNDU);
    if (mpfr_cmp(d2, d1) > 0) mpfr_swap(d1, d2);
    double d = mpfr_get_d(d1, MPFR_RNDU);
    mpfr_clear(d1);
    mpfr_clear(d2);
    return d;
}

Interval Interval::at_precision(mpfr_prec_t prec) const {
    Interval r(prec);
    mpfr_set(r.lo_, lo_, MPFR_RNDD);
    mpfr_set(r.hi_, hi_, MPFR_RNDU);
    return r;
}

Interval Interval::operator-() const {
    Interval r(prec_);
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
}

Interval Interval::abs() const {
    Interval r(prec_);
    if (mpfr_sgn(lo_) >= 0) return *this;
    if (mpfr_sgn(hi_) <= 0) return -*this;
    // straddles 0: [0, max(|lo|, hi)]
    mpfr_set_zero(r.lo_, 1);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    if (mpfr_cmp(hi_, r.hi_) > 0) mpfr_set(r.hi_, hi_, MPFR_RNDU);
    return r;
}

namespace {
void require_same_prec(const Interval& a, const Interval& b) {
    if (a.precision() != b.precision())
        throw std::logic_error("interval operands at different precision");
}
}  // namespace

Interval operator+(const Interval& a, const Interval& b) {
    require_same_prec(a, b);
    Interval r(a.precision());
    mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

Interval operator-(const Interval& a, const Interval& b) {
    require_same_prec(a, b);
    Interval r(a.precision());
    mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return r;
}

Interval operator*(const Interval& a, const Interval& b) {
    require_same_prec(a, b);
    Interval r(a.precision());
    mpfr_t t;
    mpfr_init2(t, a.precision());
    const __mpfr_struct* as[2] = {a.lo_, a.hi_};
    const __mpfr_struct* bs[2] = {b.lo_, b.hi_};
    bool first = true;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            mpfr_mul(t, as[i], bs[j], MPFR_RNDD);
            if (first || mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
            mpfr_mul(t, as[i], bs[j], MPFR_RNDU);
            if (first || mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
            first = false;
        }
    mpfr_clear(t);
    return r;
}

Interval Interval::mul_z(const mpz_class& k) const {
    Interval r(prec_);
    int s = mpz_sgn(k.get_mpz_t());
    if (s == 0) return Interval(prec_);
    if (s > 0) {
        mpfr_mul_z(r.lo_, lo_, k.get_mpz_t(), MPFR_RNDD);
        mpfr_mul_z(r.hi_, hi_, k.get_mpz_t(), MPFR_RNDU);
    } else {
        mpfr_mul_z(r.lo_, hi_, k.get_mpz_t(), MPFR_RNDD);
        mpfr_mul_z(r.hi_, lo_, k.get_mpz_t(), MPFR_RNDU);
    }
    return r;
}

Interval Interval::div_ui(unsigned long k) const {
    if (k == 0) throw std::logic_error("division by zero");
    Interval r(prec_);
    mpfr_div_ui(r.lo_, lo_, k, MPFR_RNDD);
    mpfr_div_ui(r.hi_, hi_, k, MPFR_RNDU);
    return r;
}

Interval Interval::pow_ui(unsigned long k) const {
    Interval r(prec_);
    if (k == 0) {
        mpfr_set_ui(r.lo_, 1, MPFR_RNDD);
        mpfr_set_ui(r.hi_, 1, MPFR_RNDU);
        return r;
    }
    if (k % 2 == 1 || mpfr_sgn(lo_) >= 0) {
        // monotone increasing branch
        mpfr_pow_ui(r.lo_, lo_, k, MPFR_RNDD);
        mpfr_pow_ui(r.hi_, hi_, k, MPFR_RNDU);
        return r;
    }
    if (mpfr_sgn(hi_) <= 0) {
        // even power of a nonpositive interval, decreasing
        mpfr_pow_ui(r.lo_, hi_, k, MPFR_RNDD);
        mpfr_pow_ui(r.hi_, lo_, k, MPFR_RNDU);
        return r;
    }
    // even power straddling zero: [0, max(|lo|, hi)^k]
    mpfr_set_zero(r.lo_, 1);
    mpfr_t m;
    mpfr_init2(m, prec_);
    mpfr_neg(m, lo_, MPFR_RNDU);
    if (mpfr_cmp(hi_, m) > 0) mpfr_set(m, hi_, MPFR_RNDU);
    mpfr_pow_ui(r.hi_, m, k, MPFR_RNDU);
    mpfr_clear(m);
    return r;
}

Interval Interval::rpow_frac(unsigned long num, unsigned long den) const {
    if (den == 0) throw std::logic_error("zero root index");
    Interval a = abs();
    Interval r(prec_);
    if (num == 0) {
        mpfr_set_ui(r.lo_, 1, MPFR_RNDD);
        mpfr_set_ui(r.hi_, 1, MPFR_RNDU);
        return r;
    }
    // t >= 0  ->  (t^{1/den})^{num} is increasing; round each stage outward
    mpfr_rootn_ui(r.lo_, a.lo_, den, MPFR_RNDD);
    mpfr_pow_ui(r.lo_, r.lo_, num, MPFR_RNDD);
    mpfr_rootn_ui(r.hi_, a.hi_, den, MPFR_RNDU);
    mpfr_pow_ui(r.hi_, r.hi_, num, MPFR_RNDU);
    return r;
}

namespace {
std::string endpoint_str(const mpfr_t v, mpfr_prec_t prec, size_t digits,
                         mpfr_rnd_t rnd) {
    if (digits == 0)
        digits = static_cast<size_t>(std::ceil(static_cast<double>(prec) * 0.30103)) + 3;
    if (mpfr_zero_p(v)) return "0";
    char* s = nullptr;
    // %R*e consumes the rounding mode argument
    if (mpfr_asprintf(&s, "%.*R*e", static_cast<int>(digits - 1), rnd, v) < 0)
        throw std::runtime_error("mpfr_asprintf failed");
    std::string out(s);
    mpfr_free_str(s);
    return out;
}
}  // namespace

std::string Interval::dec_lo(size_t digits) const {
    return endpoint_str(lo_, prec_, digits, MPFR_RNDD);
}

std::string Interval::dec_hi(size_t digits) const {
    return endpoint_str(hi_, prec_, digits, MPFR_RNDU);
}

bool contains_zero(const Interval& x) { return x.contains_zero(); }
int sign_certain(const Interval& x) { return x.sign_certain(); }

}  // namespace unimap
