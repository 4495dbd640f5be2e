#include <doctest.h>

#include <cmath>
#include <random>

#include "unimap/dynamics.hpp"

using namespace unimap;

namespace {

const RationalExponent kR2{2, 1};
const RationalExponent kR32{3, 2};

PeriodicPair find_single(const RationalExponent& r, unsigned n) {
    FindResult f = find_superstable(r, n, scan_window(r));
    REQUIRE(f.pairs.size() == 1);
    return f.pairs[0];
}

// double-precision bisection oracle for a root of g(c) = f_c^n(0)
double gn_root_oracle(double lo, double hi, const RationalExponent& r, unsigned n) {
    auto g = [&](double c) {
        double x = c;
        for (unsigned j = 1; j < n; ++j)
            x = std::pow(std::fabs(x), static_cast<double>(r.p) / r.q) + c;
        return x;
    };
    for (int i = 0; i < 200; ++i) {
        double m = (lo + hi) / 2;
        if (g(lo) * g(m) <= 0)
            hi = m;
        else
            lo = m;
    }
    return (lo + hi) / 2;
}

}  // namespace

TEST_CASE("critical orbit hand vectors") {
    // c = -1, r = 2, n = 2: xi = (-1, 0) exactly
    CriticalOrbit o = critical_orbit(Interval(-1, 128), kR2, 2);
    CHECK(o.xi[0].is_point());
    CHECK(o.xi[0].lo_d() == -1.0);
    CHECK(o.xi[1].is_exact_zero());
    REQUIRE(o.signs.size() == 1);
    CHECK(o.signs[0] == -1);

    // c = 0, any r, n = 1: fixed critical point
    CriticalOrbit z = critical_orbit(Interval(0, 128), kR32, 1);
    CHECK(z.xi[0].is_exact_zero());
    CHECK(z.signs.empty());

    // straddling xi_j raises SignUndecidable with the step index
    CHECK_THROWS_AS(critical_orbit(Interval(-1, 128), kR2, 3), SignUndecidable);
}

TEST_CASE("orbit at the period-3 superstable parameter of r = 2") {
    PeriodicPair pair = find_single(kR2, 3);
    CHECK(pair.c.mid_d() == doctest::Approx(-1.754877666246693).epsilon(1e-9));
    CHECK(pair.orbit.signs == std::vector<int>{-1, 1});
    CHECK(pair.orbit.xi[1].mid_d() == doctest::Approx(1.3247179572447).epsilon(1e-9));
    CHECK(pair.orbit.xi[2].contains_zero());
}

TEST_CASE("derivative recursion hand vectors") {
    // r=2, c=-1, n=2: D = 2c+1 = -1 exactly
    CriticalOrbit o = critical_orbit(Interval(-1, 128), kR2, 2);
    Interval D(128), sD(128), A(128);
    derivative_recursion(o, D, sD, A);
    CHECK(D.is_point());
    CHECK(D.lo_d() == -1.0);

    // n=1: D = 1
    CriticalOrbit z = critical_orbit(Interval(-1, 128), kR2, 1);
    derivative_recursion(z, D, sD, A);
    CHECK(D.lo_d() == 1.0);
    CHECK(sD.lo_d() == 1.0);

    // r=3/2, c ~ -2.8955, n=3: D ~ -2.319 by hand recursion
    PeriodicPair p3 = find_single(kR32, 3);
    derivative_recursion(p3.orbit, D, sD, A);
    CHECK(D.mid_d() == doctest::Approx(-2.3189746832635).epsilon(1e-6));
}

TEST_CASE("spatial derivative hand vectors") {
    CriticalOrbit o = critical_orbit(Interval(-1, 128), kR2, 2);
    Interval s = spatial_derivative(o);
    CHECK(s.is_point());
    CHECK(s.lo_d() == -2.0);  // f'(x) = 2x at x = -1

    PeriodicPair p3 = find_single(kR2, 3);
    CHECK(spatial_derivative(p3.orbit).mid_d() ==
          doctest::Approx(-9.298871828979).epsilon(1e-9));

    CriticalOrbit one = critical_orbit(Interval(-1, 128), kR2, 1);
    CHECK(spatial_derivative(one).lo_d() == 1.0);  // empty product
}

TEST_CASE("scan window endpoints") {
    Interval w2 = scan_window(kR2);
    CHECK(w2.lo_d() == -2.0);
    CHECK(w2.hi_d() == 0.0);
    CHECK(scan_window(kR32).lo_d() == -4.0);
    Interval w3 = scan_window(RationalExponent(3, 1));
    CHECK(w3.lo_d() == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("find_superstable base cases") {
    FindResult n1 = find_superstable(kR2, 1, scan_window(kR2));
    REQUIRE(n1.pairs.size() == 1);
    CHECK(n1.pairs[0].trivial);
    CHECK(n1.pairs[0].c.is_exact_zero());

    PeriodicPair n2 = find_single(kR2, 2);
    CHECK(std::fabs(n2.c.mid_d() + 1.0) < 1e-12);

    // |c|^{r-1} = 1 forces c = -1 for every r
    PeriodicPair n2b = find_single(kR32, 2);
    CHECK(std::fabs(n2b.c.mid_d() + 1.0) < 1e-12);

    PeriodicPair n3 = find_single(kR2, 3);
    double oracle = gn_root_oracle(-1.9, -1.6, kR2, 3);
    CHECK(std::fabs(n3.c.mid_d() - oracle) < 1e-6);
}

TEST_CASE("find_superstable filters non-primitive roots and sorts") {
    // g_4 vanishes at the period-2 parameter c = -1; it must not be returned
    FindResult f = find_superstable(kR2, 4, scan_window(kR2));
    REQUIRE(f.pairs.size() == 2);
    CHECK(f.pairs[0].c.mid_d() == doctest::Approx(-1.9407998065294).epsilon(1e-9));
    CHECK(f.pairs[1].c.mid_d() == doctest::Approx(-1.3107026413368).epsilon(1e-9));
    CHECK(mpfr_cmp(f.pairs[0].c.lo(), f.pairs[1].c.lo()) < 0);
    for (const auto& pair : f.pairs) {
        // primitivity: every proper-divisor step is certified nonzero
        for (unsigned d = 1; d < pair.n; ++d)
            if (pair.n % d == 0) CHECK(pair.orbit.xi[d - 1].sign_certain() != 0);
    }
}

TEST_CASE("coarse grid with several roots in one cell is rejected") {
    // three period-5 roots of r=2 lie left of -1.6; two cells over the window
    CHECK_THROWS_AS(find_superstable(kR2, 5, scan_window(kR2), 2), WindowTooCoarse);
}

TEST_CASE("verify_transversality hand vectors") {
    TransversalityReport rep = verify_transversality(find_single(kR2, 2));
    CHECK(rep.D.sign_certain() == -1);
    CHECK(rep.D.mid_d() == doctest::Approx(-1.0));
    CHECK(rep.ratioSign == +1);  // -2 / -1
    CHECK(rep.identity_ok);

    FindResult n1 = find_superstable(kR2, 1, scan_window(kR2));
    TransversalityReport triv = verify_transversality(n1.pairs[0]);
    CHECK(triv.D.lo_d() == 1.0);
    CHECK(triv.D.sign_certain() == +1);

    TransversalityReport r32 = verify_transversality(find_single(kR32, 3));
    CHECK(r32.D.sign_certain() == -1);
    CHECK(r32.D.mid_d() == doctest::Approx(-2.31897468).epsilon(1e-6));
}

TEST_CASE("scaled derivative identity q^{n-1} D = p A + q^{n-1}") {
    for (unsigned n : {2u, 3u, 4u}) {
        FindResult f = find_superstable(kR32, n, scan_window(kR32));
        for (const auto& pair : f.pairs) {
            TransversalityReport rep = verify_transversality(pair);
            CHECK(rep.identity_ok);
        }
    }
}

TEST_CASE("sign sequences are locally constant on the isolating interval") {
    PeriodicPair pair = find_single(kR2, 3);
    // orbits at both endpoints carry the same certified signs as the interval
    for (const Interval& endpoint :
         {Interval::from_mpfr(pair.c.lo(), pair.c.lo(), 128),
          Interval::from_mpfr(pair.c.hi(), pair.c.hi(), 128)}) {
        CriticalOrbit o = critical_orbit(endpoint, kR2, 3);
        CHECK(o.signs == pair.orbit.signs);
    }
}

TEST_CASE("exact superstable grid points report a zero sign") {
    Interval c(-1, 128);
    CHECK(sign_of_gn(c.lo(), kR2, 2, 128) == 0);   // f_{-1}^2(0) = 0 exactly
    CHECK(sign_of_gn(c.lo(), kR2, 3, 128) == -1);  // f_{-1}^3(0) = -1
    CHECK(sign_of_gn(c.lo(), kR2, 4, 128) == 0);   // period 2 divides 4
}

TEST_CASE("spatial derivative matches a spatial finite difference") {
    // (f_c^{n-1})'(t) at t = c, differentiating in the space variable
    const mpfr_prec_t prec = 128;
    for (const RationalExponent& r : {kR2, kR32}) {
        double cd = r.q == 1 ? -1.31 : -2.17;
        Interval ci = Interval::from_decimal(std::to_string(cd), prec);
        CriticalOrbit orbit = critical_orbit(ci, r, 6);
        Interval sd = spatial_derivative(orbit);
        Interval h = Interval::from_decimal("1e-9", prec);
        auto fk = [&](Interval x) {
            for (unsigned j = 0; j < 5; ++j) x = x.rpow(r) + ci;
            return x;
        };
        double fd = (fk(ci + h) - fk(ci - h)).mid_d() / 2e-9;
        CHECK(std::fabs(fd - sd.mid_d()) / std::max(1.0, std::fabs(sd.mid_d())) <
              1e-5);
    }
}

TEST_CASE("finite differences match the derivative recursion") {
    const mpfr_prec_t prec = 128;
    std::mt19937_64 gen(42);
    std::uniform_real_distribution<double> uni(0.05, 0.95);
    for (const RationalExponent& r : {kR2, kR32}) {
        Interval w = scan_window(r, prec);
        double wl = w.lo_d();
        int done = 0;
        while (done < 5) {
            double c = wl * uni(gen);
            Interval ci = Interval::from_decimal(std::to_string(c), prec);
            CriticalOrbit orbit;
            try {
                orbit = critical_orbit(ci, r, 8);
            } catch (const SignUndecidable&) {
                continue;
            }
            Interval D(prec), sD(prec), A(prec);
            derivative_recursion(orbit, D, sD, A);

            Interval h = Interval::from_decimal("1e-8", prec);
            auto gn = [&](const Interval& cc) {
                Interval x = cc;
                for (unsigned j = 1; j < 8; ++j) x = x.rpow(r) + cc;
                return x;
            };
            Interval fd = (gn(ci + h) - gn(ci - h)) * Interval(1, prec);
            double fd_mid = fd.mid_d() / (2e-8);
            double rel = std::fabs(fd_mid - D.mid_d()) /
                         std::max(1.0, std::fabs(D.mid_d()));
            CHECK(rel < 1e-6);
            ++done;
        }
    }
}
