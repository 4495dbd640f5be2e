#pragma once

#include <optional>
#include <string>
#include <vector>

#include "unimap/interval.hpp"

namespace unimap {

// Forward orbit of the critical point: xi[j-1] encloses f_c^j(0) for
// j = 1..n, signs[j-1] is the certified sign of xi_j for j = 1..n-1.
struct CriticalOrbit {
    RationalExponent r;
    Interval c;
    unsigned n = 1;
    std::vector<Interval> xi;
    std::vector<int> signs;
};

// A superstable parameter: isolating interval c with certified opposite
// signs of f_c^n(0) at the endpoints (or an exact dyadic root), primitive
// period n, and the orbit over the whole c-interval.
struct PeriodicPair {
    RationalExponent r;
    Interval c;
    unsigned n = 1;
    CriticalOrbit orbit;
    bool trivial = false;  // the (c=0, n=1) pair
};

struct TransversalityReport {
    PeriodicPair pair;
    Interval D;             // D_c(f_c^n(0)), certified nonzero
    Interval scaledD;       // q^{n-1} * D
    Interval A;             // (s_{n-1} xi_{n-1})^{r-1} * q^{n-2} * s_{n-1} * D_{n-1}
    Interval spatialDeriv;  // (f_c^{n-1})'(t) at t = c
    int ratioSign = 0;      // sign of spatialDeriv / D; 0 = unknown
    bool identity_ok = false;  // scaledD and p*A + q^{n-1} intersect
    mpfr_prec_t precisionUsed = kDefaultPrec;
};

struct FindResult {
    std::vector<PeriodicPair> pairs;  // sorted by c ascending
    std::vector<std::string> warnings;
};

// Iterates xi_{j+1} = |xi_j|^r + c with certified signs; throws
// SignUndecidable(j) when an enclosure straddles 0 for j < n.
CriticalOrbit critical_orbit(const Interval& c, const RationalExponent& r,
                             unsigned n);

// D_1 = 1; D_{j+1} = r (s_j xi_j)^{r-1} s_j D_j + 1. Also returns the
// scaled value q^{n-1} D_n and the algebraic-integer witness A_{n-1}
// with q^{n-1} D_n = p A_{n-1} + q^{n-1}.
void derivative_recursion(const CriticalOrbit& orbit, Interval& D,
                          Interval& scaledD, Interval& A);

// Product over j = 1..n-1 of r (s_j xi_j)^{r-1} s_j; empty product = 1.
Interval spatial_derivative(const CriticalOrbit& orbit);

// [-2^{q/(p-q)}, 0]: from the full map (|c|^{r-1} = 2) to the trivial
// parameter.
Interval scan_window(const RationalExponent& r, mpfr_prec_t prec = kDefaultPrec);

// Sign-change bisection of g_n(c) = f_c^n(0) on a uniform grid over the
// window. gridResolution = 0 picks the default 10 * 4^n capped at 10^6.
FindResult find_superstable(const RationalExponent& r, unsigned n,
                            const Interval& window,
                            unsigned long gridResolution = 0,
                            mpfr_prec_t prec = kDefaultPrec);

// Refines c-isolation and precision until sign_certain(D) != unknown.
TransversalityReport verify_transversality(const PeriodicPair& pair,
                                           mpfr_prec_t startPrec = kDefaultPrec);

// Re-isolates the pair's root to width <= 2^{-prec/2} and re-certifies the
// orbit at prec.
PeriodicPair refine_pair(const PeriodicPair& pair, mpfr_prec_t prec);

// Certified sign of g_n at an exact parameter value, via the precision
// ladder: -1/+1, or 0 when g_n(c) is exactly zero.
int sign_of_gn(const mpfr_t c, const RationalExponent& r, unsigned n,
               mpfr_prec_t startPrec);

unsigned long default_grid_resolution(unsigned n);

}  // namespace unimap
