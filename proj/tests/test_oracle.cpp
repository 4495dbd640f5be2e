#include <doctest.h>

#include "unimap/certify.hpp"
#include "unimap/oracle.hpp"

using namespace unimap;

namespace {

const RationalExponent kR2{2, 1};
const RationalExponent kR32{3, 2};
const RationalExponent kR43{4, 3};

PeriodicPair find_one(const RationalExponent& r, unsigned n, size_t which = 0) {
    FindResult f = find_superstable(r, n, scan_window(r));
    REQUIRE(f.pairs.size() > which);
    return f.pairs[which];
}

}  // namespace

TEST_CASE("sylvester resultant sanity") {
    // Res_B(B^2 - S, B - T) = T^2 - S
    IntPoly f = IntPoly::monomial({0, 0, 2}, 1) - IntPoly::variable_s();
    IntPoly g = IntPoly::variable_b() - IntPoly::variable_t();
    IntPoly res = resultant_b(f, g);
    IntPoly expect = IntPoly::monomial({0, 2, 0}, 1) - IntPoly::variable_s();
    CHECK((res - expect).is_zero());

    // Res_B(B^2 - 2, B^2 - 3) = 1 (coprime)
    IntPoly f2 = IntPoly::monomial({0, 0, 2}, 1) - IntPoly::constant(2);
    IntPoly g2 = IntPoly::monomial({0, 0, 2}, 1) - IntPoly::constant(3);
    CHECK(resultant_b(f2, g2).str() == "1");
}

TEST_CASE("oracle equals the b recursion up to content for integer r") {
    for (unsigned n : {3u, 4u}) {
        FindResult f = find_superstable(kR2, n, scan_window(kR2));
        for (const auto& pair : f.pairs) {
            UniPoly oracle = resultant_oracle(kR2, n, pair.orbit.signs);
            UniPoly direct = b_recursion_integer(kR2, pair.orbit.signs)[n - 1];
            CHECK(oracle.primitive_part() == direct.primitive_part());
        }
    }
}

TEST_CASE("oracle and certificate share the witness root") {
    struct Case {
        RationalExponent r;
        unsigned n;
    };
    for (const Case& tc : {Case{kR32, 3}, Case{kR32, 4}, Case{kR43, 3}}) {
        FindResult f = find_superstable(tc.r, tc.n, scan_window(tc.r));
        REQUIRE(!f.pairs.empty());
        for (const auto& pair : f.pairs) {
            Certificate cert = certify(tc.r, tc.n, pair.orbit.signs, &pair);
            UniPoly oracle = resultant_oracle(tc.r, tc.n, pair.orbit.signs);

            Interval cres = evaluate_certificate(cert.P, pair, 256);
            Interval ores = evaluate_certificate(oracle, pair, 256);
            CHECK(cres.contains_zero());
            CHECK(ores.contains_zero());
            CHECK(cres.hi_d() < 1e-10);
            CHECK(ores.hi_d() < 1e-10);

            UniPoly g = gcd_rational(cert.P, oracle);
            CHECK(g.degree() >= 1);
        }
    }
}

TEST_CASE("primitive-part mode keeps the root set with smaller content") {
    PeriodicPair pair = find_one(kR32, 4);
    UniPoly full = resultant_oracle(kR32, 4, pair.orbit.signs);
    UniPoly prim = resultant_oracle(kR32, 4, pair.orbit.signs, true);
    CHECK(prim.content() == 1);
    CHECK(evaluate_certificate(prim, pair, 256).hi_d() < 1e-10);
    // same roots: the full output is a rational multiple of a common core
    CHECK(gcd_rational(full, prim).degree() == prim.degree());
}

TEST_CASE("gcd over the rationals behaves") {
    UniPoly a({2, 4});            // 2(2S + 1)? no: 4S + 2 = 2(2S+1)
    UniPoly b({1, 3, 2});         // (2S+1)(S+1)
    UniPoly g = gcd_rational(a, b);
    CHECK(g.degree() == 1);
    CHECK(g == UniPoly({1, 2}));  // primitive 2S + 1

    UniPoly c({1, 1});
    UniPoly d({1, 0, 1});  // S^2 + 1, coprime with S + 1
    CHECK(gcd_rational(c, d).degree() == 0);
}
