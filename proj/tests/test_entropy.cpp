#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "unimap/entropy.hpp"

using namespace unimap;

namespace {

const RationalExponent kR2{2, 1};
const RationalExponent kR32{3, 2};

// Brute-force lap oracle: count monotonicity changes of f^N sampled on a
// uniform grid over the invariant interval, plus one.
unsigned long lap_oracle(double c, const RationalExponent& r, unsigned N,
                         long samples = 100000) {
    double beta = beta_point(c, r);
    auto fN = [&](double x) {
        for (unsigned j = 0; j < N; ++j)
            x = std::pow(std::fabs(x), static_cast<double>(r.p) / r.q) + c;
        return x;
    };
    double prev2 = fN(-beta);
    double prev1 = fN(-beta + 2 * beta / samples);
    unsigned long changes = 0;
    for (long i = 2; i <= samples; ++i) {
        double x = -beta + 2 * beta * i / samples;
        double v = fN(x);
        if ((prev1 - prev2) * (v - prev1) < 0) ++changes;
        prev2 = prev1;
        prev1 = v;
    }
    return changes + 1;
}

LapSeries series_at(double c, const RationalExponent& r, unsigned N) {
    return lap_series(Interval::from_decimal(std::to_string(c), 128), r, N, 128);
}

}  // namespace

TEST_CASE("c = 0 has constant laps and zero entropy") {
    LapSeries s = lap_series(Interval(0, 128), kR2, 12, 128);
    for (unsigned long l : s.laps) CHECK(l == 2);
    CHECK(s.entropyEstimate == 0.0);
}

TEST_CASE("the full map doubles laps exactly") {
    LapSeries s = lap_series(Interval(-2, 128), kR2, 14, 128);
    unsigned long expect = 2;
    for (unsigned long l : s.laps) {
        CHECK(l == expect);
        expect *= 2;
    }
    LapSeries s18 = lap_series(Interval(-2, 128), kR2, 18, 128);
    CHECK(std::fabs(s18.entropyEstimate - std::log(2.0)) < 1e-9);
}

TEST_CASE("positive fixed point beta") {
    CHECK(beta_point(-2.0, kR2) == doctest::Approx(2.0));
    CHECK(beta_point(0.0, kR2) == doctest::Approx(1.0));
    // beta^{3/2} + c = beta at c = -4: beta = 4
    CHECK(beta_point(-4.0, kR32) == doctest::Approx(4.0));
}

TEST_CASE("superstable period-2 parameter has linear lap growth") {
    // at c = -1 (r = 2) the turning sets grow by one preimage pair per level
    LapSeries s = series_at(-1.0, kR2, 10);
    std::vector<unsigned long> expect{2, 4, 6, 8, 10, 12, 14, 16, 18, 20};
    CHECK(s.laps == expect);
    CHECK(lap_oracle(-1.0, kR2, 2) == 4);
}

TEST_CASE("attracting fixed point regime: laps 2n and the frozen estimate") {
    LapSeries s = series_at(-0.5, kR2, 18);
    for (unsigned n = 1; n <= 18; ++n) CHECK(s.laps[n - 1] == 2ul * n);
    // least-squares slope of log(2n) over n in [9,18]
    CHECK(s.entropyEstimate == doctest::Approx(0.07618017124714).epsilon(1e-9));
}

TEST_CASE("lap counts match the brute-force oracle at random parameters") {
    std::mt19937_64 gen(991);
    std::uniform_real_distribution<double> uni(0.02, 0.98);
    for (const RationalExponent& r : {kR2, kR32}) {
        double wl = scan_window(r).lo_d();
        for (int trial = 0; trial < 6; ++trial) {
            double c = wl * uni(gen);
            LapSeries s = series_at(c, r, 8);
            for (unsigned N : {4u, 6u, 8u})
                CHECK(s.laps[N - 1] == lap_oracle(c, r, N));
        }
    }
}

TEST_CASE("lap recursion: next count adds the laps whose image covers 0") {
    // turning-point oracle in doubles: T_{j+1} = {0} u f^{-1}(T_j)
    std::mt19937_64 gen(1234);
    std::uniform_real_distribution<double> uni(0.05, 0.95);
    const RationalExponent r = kR2;
    double wl = scan_window(r).lo_d();
    for (int trial = 0; trial < 8; ++trial) {
        double c = wl * uni(gen);
        double beta = beta_point(c, r);
        std::vector<double> turning{0.0};
        auto f = [&](double x) { return x * x + c; };
        unsigned long prev_laps = 2;
        for (unsigned n = 1; n <= 9; ++n) {
            // laps of f^n whose image contains 0: sign changes of f^n over
            // consecutive turning points (plus interval endpoints)
            std::vector<double> knots = turning;
            knots.push_back(-beta);
            knots.push_back(beta);
            std::sort(knots.begin(), knots.end());
            auto fn = [&](double x) {
                for (unsigned j = 0; j < n; ++j) x = f(x);
                return x;
            };
            unsigned long covering = 0;
            for (size_t i = 0; i + 1 < knots.size(); ++i)
                if (fn(knots[i]) * fn(knots[i + 1]) <= 0) ++covering;
            // advance the turning sets
            std::vector<double> next{0.0};
            for (double t : turning) {
                if (t < c) continue;
                double x = std::sqrt(t - c);
                if (x > beta) continue;
                next.push_back(x);
                next.push_back(-x);
            }
            std::sort(next.begin(), next.end());
            next.erase(std::unique(next.begin(), next.end(),
                                   [](double a, double b) {
                                       return std::fabs(a - b) < 1e-12;
                                   }),
                       next.end());
            unsigned long next_laps = next.size() + 1;
            CHECK(next_laps == prev_laps + covering);
            turning = std::move(next);
            prev_laps = next_laps;
        }
        // and the implementation agrees with the double recursion
        LapSeries s = series_at(c, r, 10);
        CHECK(s.laps[9] == prev_laps);
    }
}

TEST_CASE("turning sets match hand values") {
    // c = 0: only 0 ever maps to 0 inside the invariant interval
    auto t0 = turning_points(Interval(0, 128), kR2, 5, 128);
    for (const auto& level : t0) {
        REQUIRE(level.size() == 1);
        CHECK(level[0] == 0.0);
    }
    // full map: T_2 = {-sqrt 2, 0, sqrt 2}
    auto t2 = turning_points(Interval(-2, 128), kR2, 2, 128);
    REQUIRE(t2[1].size() == 3);
    CHECK(t2[1][0] == doctest::Approx(-std::sqrt(2.0)));
    CHECK(t2[1][1] == 0.0);
    CHECK(t2[1][2] == doctest::Approx(std::sqrt(2.0)));
    // c = -1: preimages of 0 are +-1
    auto t1 = turning_points(Interval(-1, 128), kR2, 2, 128);
    REQUIRE(t1[1].size() == 3);
    CHECK(t1[1][0] == doctest::Approx(-1.0));
    CHECK(t1[1][2] == doctest::Approx(1.0));
}

TEST_CASE("monotonicity scan output shape") {
    ScanResult scan = monotonicity_scan(kR2, 0.25, 10, 128);
    REQUIRE(scan.rows.size() == 9);  // -2 to 0 in steps of 0.25
    CHECK(scan.rows.front().c == doctest::Approx(-2.0));
    CHECK(scan.rows.back().c == 0.0);
    CHECK(scan.rows.back().entropy == 0.0);
    CHECK(scan.maxUpwardViolation >= 0.0);
    std::string csv = scan_csv(scan);
    CHECK(csv.substr(0, 16) == "c,entropy,laps_1");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 10);  // header + 9 rows
}
