#pragma once

#include <optional>
#include <vector>

#include "unimap/dynamics.hpp"
#include "unimap/relation.hpp"

namespace unimap {

// Monic integer certificate: P(s) = 0 for s = -(-c)^{r-1}, leading
// coefficient +1 after normalization (the +-1 leading coefficient IS the
// algebraic-integer statement).
struct Certificate {
    RationalExponent r;
    unsigned n = 2;
    std::vector<int> signs;
    UniPoly P;
    std::optional<Interval> witness_c;
    std::optional<Interval> residual;  // |P(s(c))| over the witness interval
    double witnessMaxMid = 0.0;  // max |midpoint| over intermediate checks
    unsigned witnessChecks = 0;
};

// Numeric values of s and the b_j over a certified pair, for the pipeline's
// master regression invariant (every intermediate vanishes at the witness).
struct PipelineWitness {
    Interval S;
    std::vector<Interval> b;  // b[j] encloses b_j, 1-based; b[0] unused
    mpfr_prec_t prec = 256;
};

// s = -(-c)^{(p-q)/q}; requires c <= 0.
Interval s_of_c(const Interval& c, const RationalExponent& r);

PipelineWitness make_witness(const PeriodicPair& pair, mpfr_prec_t prec = 256);

// Integer-exponent b recursion: b_1 = 1, b_{j+1} = (-s_j b_j)^p S + 1.
// Returns b_1..b_n (1-based position j-1). Requires q = 1.
std::vector<UniPoly> b_recursion_integer(const RationalExponent& r,
                                         const std::vector<int>& signs);

// The full elimination pipeline. signs must be the n-1 certified signs of a
// periodic pair (so signs[0] = -1). When a witness pair is supplied, every
// intermediate relation is evaluated at it and must enclose 0.
Certificate certify(const RationalExponent& r, unsigned n,
                    const std::vector<int>& signs,
                    const PeriodicPair* witnessPair = nullptr,
                    mpfr_prec_t witnessPrec = 256);

// |P(s(c))| over the pair's isolating interval; refinable via prec.
Interval evaluate_certificate(const UniPoly& P, const PeriodicPair& pair,
                              mpfr_prec_t prec = 256);

// Leading coefficient forced to +1 (input leading must be +-1).
UniPoly normalize_monic(const UniPoly& P);

// Interval value of Sum_j a_j(S,T) B^j at the witness values for the
// relation's radical index.
Interval eval_relation_at(const Relation& rel, const PipelineWitness& w);
Interval eval_bivariate_at(const BivariateRelation& biv, const PipelineWitness& w);

}  // namespace unimap
