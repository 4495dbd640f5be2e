#pragma once

#include <string>
#include <vector>

#include "unimap/dynamics.hpp"

namespace unimap {

struct LapSeries {
    RationalExponent r;
    Interval c;
    unsigned N = 0;
    std::vector<unsigned long> laps;  // laps[n-1] = l(f^n)
    double entropyEstimate = 0.0;
};

// Lap counts via the turning-point recursion T_{j+1} = {0} u f^{-1}(T_j)
// inside the invariant interval [-beta, beta]; l(f^n) = |T_n| + 1.
LapSeries lap_series(const Interval& c, const RationalExponent& r, unsigned N,
                     mpfr_prec_t prec = kDefaultPrec);

// The sorted turning sets T_1..T_N themselves (double projections of the
// high-precision points, for inspection and cross-checks).
std::vector<std::vector<double>> turning_points(const Interval& c,
                                                const RationalExponent& r,
                                                unsigned N,
                                                mpfr_prec_t prec = kDefaultPrec);

// Least-squares slope of log laps[n] over n in [ceil(N/2), N], clamped at 0.
double entropy_estimate(const std::vector<unsigned long>& laps);

// Positive fixed point beta with beta^r + c = beta (point estimate).
double beta_point(double c, const RationalExponent& r);

struct ScanRow {
    std::string c_str;
    double c = 0.0;
    double entropy = 0.0;
    std::vector<unsigned long> laps;
};

struct ScanResult {
    unsigned N = 0;
    std::vector<ScanRow> rows;          // c ascending
    double maxUpwardViolation = 0.0;    // max of e(c_{i+1}) - e(c_i), floored at 0
};

ScanResult monotonicity_scan(const RationalExponent& r, double gridStep,
                             unsigned N, mpfr_prec_t prec = kDefaultPrec);

// header "c,entropy,laps_1..laps_N"
std::string scan_csv(const ScanResult& scan);

}  // namespace unimap
