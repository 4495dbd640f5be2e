#pragma once

#include <functional>
#include <vector>

#include "unimap/poly.hpp"

namespace unimap {

// Sum_j a[j] * B^j = 0 with coefficients in Z[S,T], where B = b'_k =
// |b_k|^{1/q} and T = B^q = |b_k| = -s_k b_k. The coefficient at
// dominantIndex is monic-dominant: its unique componentwise-maximal
// (S,T)-degree term has coefficient +-1 and dominates every term of every
// coefficient.
struct Relation {
    unsigned q = 1;
    std::vector<IntPoly> a;  // a[j] multiplies B^j; B-degree = a.size()-1
    unsigned dominantIndex = 0;
    unsigned radicalIndex = 0;  // k with B = b'_k
    int radicalSign = -1;       // s_k, so T rewrites to -s_k * b_k
    std::vector<int> signContext;

    unsigned b_degree() const { return static_cast<unsigned>(a.size()) - 1; }
};

// B-free identity in (S, T) produced by eliminate(), still tagged with the
// radical it quantifies over.
struct Eliminated {
    IntPoly poly;  // in (S, T)
    unsigned radicalIndex = 0;
    int radicalSign = -1;
    unsigned q = 1;
    std::vector<int> signContext;
};

// Polynomial identity in (S, b_varIndex) with leading term
// +-1 * b^m * S^nPrime strictly dominating all other terms in both degrees.
// The b variable lives in the B slot of IntPoly.
struct BivariateRelation {
    IntPoly poly;
    unsigned varIndex = 2;
    unsigned m = 0;
    unsigned nPrime = 0;
    std::vector<int> signContext;
};

// Builds the relation for b_n = 0 expanded through b_{n-1} in terms of
// B = b'_{n-2}: expands the p-th power, multiplies by B^{q-k2-1}
// (p^2 = k1 q + k2) and regroups B powers by residue mod q. Requires n >= 4.
Relation initial_relation(const RationalExponent& r, const std::vector<int>& signs);

// One cascade: multiply by (dominant coefficient) * B and substitute the top
// B power through the relation itself, q-1 times in total, then fold
// B^q -> T and regroup. B-degree drops by one.
Relation reduction_step(const Relation& rel);

// Applies reduction_step down to B-degree 1, then clears the radical via
// (a_1)^q T - (-a_0)^q = 0. Identity operation for q = 1 (no B present).
Eliminated eliminate(const Relation& rel,
                     const std::function<void(const Relation&)>& trace = {});

// T -> -s_k b_k
BivariateRelation to_bivariate(const Eliminated& e);

// Substitutes b_k = B^p S + 1 with B = b'_{k-1}, aligns the dominant term's
// B exponent to q-1 mod q, and regroups residues mod q. Requires k >= 3.
Relation descend(const BivariateRelation& biv, const RationalExponent& r,
                 int sign_km1);

// Invariant assertions; throw DominanceViolation.
void assert_relation_dominance(const Relation& rel);
void assert_poly_dominant(const IntPoly& g, const char* where);
void assert_bivariate_dominance(const BivariateRelation& biv);

}  // namespace unimap
