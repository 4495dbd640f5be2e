#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "unimap/interval.hpp"

namespace unimap {

// Exponent vector over the working variable set. Slot meanings are fixed by
// the caller; the elimination pipeline uses S (the quantity s), T (b'^q) and
// B (the radical b'), the resultant oracle reuses the slots for its own
// variable chain.
struct Mono {
    unsigned s = 0;
    unsigned t = 0;
    unsigned b = 0;

    auto operator<=>(const Mono&) const = default;
    // componentwise partial order
    bool dominates(const Mono& o) const {
        return s >= o.s && t >= o.t && b >= o.b;
    }
    bool strictly_dominates(const Mono& o) const {
        return s > o.s && t > o.t && b > o.b;
    }
};

// Sparse polynomial over Z in up to three variables. No zero coefficients
// are stored. Immutable-style API: operations return fresh values.
class IntPoly {
  public:
    using Terms = std::map<Mono, mpz_class>;

    IntPoly() = default;
    static IntPoly constant(const mpz_class& c);
    static IntPoly monomial(const Mono& m, const mpz_class& c);
    static IntPoly variable_s() { return monomial({1, 0, 0}, 1); }
    static IntPoly variable_t() { return monomial({0, 1, 0}, 1); }
    static IntPoly variable_b() { return monomial({0, 0, 1}, 1); }

    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const Terms& terms() const { return terms_; }

    unsigned deg_s() const;
    unsigned deg_t() const;
    unsigned deg_b() const;

    const mpz_class& coeff(const Mono& m) const;  // 0 if absent

    IntPoly operator-() const;
    friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
    IntPoly mul_z(const mpz_class& k) const;
    IntPoly mul_mono(const Mono& m) const;
    IntPoly pow_ui(unsigned k) const;

    // B^e -> T^(e/q) B^(e mod q)
    IntPoly fold_b(unsigned q) const;
    // coefficient of B^j with the B exponent removed
    IntPoly b_coefficient(unsigned j) const;
    // T^t -> sign^t * B^t  (rewrites T into the bivariate slot)
    IntPoly t_to_b_signed(int sign) const;
    // B -> replacement (general small-degree substitution)
    IntPoly substitute_b(const IntPoly& replacement) const;
    // exact division; throws std::logic_error if not divisible
    IntPoly div_exact(const IntPoly& d) const;

    mpz_class content() const;       // gcd of coefficients, >= 0
    IntPoly primitive_part() const;  // content removed (zero stays zero)

    Interval eval(const Interval& S, const Interval& T, const Interval& B) const;

    std::string str(const char* sname = "S", const char* tname = "T",
                    const char* bname = "B") const;

    // Intermediate sizes are capped; exceeded -> DegreeBlowup.
    static void set_term_cap(size_t cap);
    static size_t term_cap();

  private:
    void add_term(const Mono& m, const mpz_class& c);
    void check_cap() const;
    Terms terms_;
};

// Dense univariate polynomial over Z, ascending coefficients, no trailing
// zeros. The certificate representation.
class UniPoly {
  public:
    UniPoly() = default;
    explicit UniPoly(std::vector<mpz_class> coeffs);
    static UniPoly constant(const mpz_class& c);
    static UniPoly variable();  // S

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<mpz_class>& coeffs() const { return c_; }
    const mpz_class& leading() const;
    const mpz_class& operator[](size_t i) const;

    UniPoly operator-() const;
    friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
    UniPoly mul_z(const mpz_class& k) const;
    UniPoly pow_ui(unsigned k) const;
    bool operator==(const UniPoly&) const = default;

    mpz_class content() const;       // gcd of coefficients, >= 0
    UniPoly primitive_part() const;  // content removed, leading made positive

    Interval eval(const Interval& x) const;
    mpz_class eval_z(const mpz_class& x) const;

    std::string str(const char* var = "S") const;

  private:
    void trim();
    std::vector<mpz_class> c_;
};

// Nonconstant gcd test over Q via a primitive pseudo-remainder sequence.
UniPoly gcd_rational(UniPoly a, UniPoly b);

mpz_class binomial(unsigned long n, unsigned long k);

}  // namespace unimap
