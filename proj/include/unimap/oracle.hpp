#pragma once

#include <vector>

#include "unimap/poly.hpp"

namespace unimap {

// Classical resultant of f and g with respect to the B slot, computed from
// the Sylvester matrix by fraction-free (Bareiss) elimination over the
// remaining variables. Independent cross-check route for the elimination
// pipeline; NOT guaranteed monic.
IntPoly resultant_b(const IntPoly& f, const IntPoly& g);

// Eliminates the radical chain u_k^q = -s_k b_k against b_n = 0 by iterated
// resultants, yielding a univariate polynomial with s(c) among its roots.
// primitivePart strips the integer content after each round: smaller
// coefficients, same root set, non-certifying (scaling is discarded).
UniPoly resultant_oracle(const RationalExponent& r, unsigned n,
                         const std::vector<int>& signs,
                         bool primitivePart = false);

}  // namespace unimap
