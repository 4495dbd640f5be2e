#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

#include "unimap/errors.hpp"

namespace unimap {

// Precision ladder: certification loops start at kDefaultPrec and double up
// to kMaxPrec, then fail loudly with PrecisionExhausted.
inline constexpr mpfr_prec_t kDefaultPrec = 128;
inline constexpr mpfr_prec_t kMaxPrec = 8192;

// Exponent r = p/q > 1 in lowest terms.
struct RationalExponent {
    unsigned long p = 2;
    unsigned long q = 1;

    RationalExponent() = default;
    RationalExponent(unsigned long p_, unsigned long q_);

    // Accepts "p/q" or "p".
    static RationalExponent parse(const std::string& text);

    bool integer() const { return q == 1; }
    std::string str() const;
    bool operator==(const RationalExponent&) const = default;
};

// Closed arbitrary-precision interval [lo, hi] with outward rounding: every
// operation returns an interval containing the exact mathematical result.
// Values are immutable after construction as far as the public surface is
// concerned; all operations are pure and return fresh intervals.
class Interval {
  public:
    explicit Interval(mpfr_prec_t prec = kDefaultPrec);
    Interval(long value, mpfr_prec_t prec);
    Interval(const mpz_class& value, mpfr_prec_t prec);
    Interval(const Interval& other);
    Interval(Interval&& other) noexcept;
    Interval& operator=(const Interval& other);
    Interval& operator=(Interval&& other) noexcept;
    ~Interval();

    // [RNDD(text), RNDU(text)] — the tightest representable enclosure of a
    // decimal literal.
    static Interval from_decimal(const std::string& text, mpfr_prec_t prec);
    // Outward enclosure with separately given endpoints.
    static Interval from_endpoints_decimal(const std::string& lo,
                                           const std::string& hi,
                                           mpfr_prec_t prec);
    static Interval from_mpfr(const mpfr_t lo, const mpfr_t hi,
                              mpfr_prec_t prec);

    mpfr_prec_t precision() const { return prec_; }
    const __mpfr_struct* lo() const { return lo_; }
    const __mpfr_struct* hi() const { return hi_; }

    double lo_d() const;  // rounded down
    double hi_d() const;  // rounded up
    double mid_d() const;
    double width_d() const;  // upper bound on hi - lo

    bool is_point() const;
    bool is_exact_zero() const;
    bool contains_zero() const;
    // -1 or +1 only when 0 lies strictly outside [lo, hi]; 0 means unknown.
    int sign_certain() const;
    bool contains(const Interval& inner) const;
    bool intersects(const Interval& other) const;
    // max(|lo-lo'|, |hi-hi'|), rounded up; the criterion-4 gap metric.
    double hausdorff_d(const Interval& other) const;

    // Same numeric endpoints re-rounded outward at a new precision.
    Interval at_precision(mpfr_prec_t prec) const;

    Interval operator-() const;
    Interval abs() const;
    friend Interval operator+(const Interval& a, const Interval& b);
    friend Interval operator-(const Interval& a, const Interval& b);
    friend Interval operator*(const Interval& a, const Interval& b);

    Interval mul_z(const mpz_class& k) const;
    Interval div_ui(unsigned long k) const;  // exact positive integer divisor
    Interval pow_ui(unsigned long k) const;

    // |x|^{num/den}: outward-rounded den-th root of |x|, then num-th power.
    Interval rpow_frac(unsigned long num, unsigned long den) const;
    Interval rpow(const RationalExponent& r) const { return rpow_frac(r.p, r.q); }
    Interval root_q(unsigned long den) const { return rpow_frac(1, den); }

    // Decimal endpoints rounded outward; digits = 0 picks enough digits to
    // round-trip the working precision.
    std::string dec_lo(size_t digits = 0) const;
    std::string dec_hi(size_t digits = 0) const;

  private:
    void init(mpfr_prec_t prec);
    mpfr_t lo_;
    mpfr_t hi_;
    mpfr_prec_t prec_;
};

bool contains_zero(const Interval& x);
int sign_certain(const Interval& x);

}  // namespace unimap
