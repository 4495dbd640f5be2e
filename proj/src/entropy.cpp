#include "unimap/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace unimap {

namespace {

// Point value with round-to-nearest arithmetic; the lap machinery needs
// high-precision points, not enclosures.
struct Mp {
    mpfr_t v;
    explicit Mp(mpfr_prec_t p) {
        mpfr_init2(v, p);
        mpfr_set_zero(v, 1);
    }
    Mp(const Mp& o) {
        mpfr_init2(v, mpfr_get_prec(o.v));
        mpfr_set(v, o.v, MPFR_RNDN);
    }
    Mp(Mp&& o) noexcept {
        mpfr_init2(v, MPFR_PREC_MIN);
        mpfr_swap(v, o.v);
    }
    Mp& operator=(Mp o) noexcept {
        mpfr_swap(v, o.v);
        return *this;
    }
    ~Mp() { mpfr_clear(v); }
};

// beta solves x^r - x + c = 0 on x >= 1 (x > 0 and unique for c in the
// scan window).
Mp solve_beta(const mpfr_t c, const RationalExponent& r, mpfr_prec_t prec) {
    auto g = [&](const mpfr_t x, mpfr_t out) {
        mpfr_rootn_ui(out, x, r.q, MPFR_RNDN);
        mpfr_pow_ui(out, out, r.p, MPFR_RNDN);
        mpfr_sub(out, out, x, MPFR_RNDN);
        mpfr_add(out, out, c, MPFR_RNDN);
    };
    Mp lo(prec), hi(prec), mid(prec), val(prec);
    mpfr_set_ui(lo.v, 1, MPFR_RNDN);
    mpfr_set_ui(hi.v, 2, MPFR_RNDN);
    g(hi.v, val.v);
    while (mpfr_sgn(val.v) < 0) {
        mpfr_mul_2ui(hi.v, hi.v, 1, MPFR_RNDN);
        g(hi.v, val.v);
    }
    for (mpfr_prec_t i = 0; i < prec + 16; ++i) {
        mpfr_add(mid.v, lo.v, hi.v, MPFR_RNDN);
        mpfr_div_2ui(mid.v, mid.v, 1, MPFR_RNDN);
        g(mid.v, val.v);
        if (mpfr_sgn(val.v) == 0) return mid;
        if (mpfr_sgn(val.v) < 0)
            mpfr_set(lo.v, mid.v, MPFR_RNDN);
        else
            mpfr_set(hi.v, mid.v, MPFR_RNDN);
    }
    return hi;  // upper end of the final bracket
}

}  // namespace

double beta_point(double c, const RationalExponent& r) {
    Mp cc(64);
    mpfr_set_d(cc.v, c, MPFR_RNDN);
    Mp b = solve_beta(cc.v, r, 64);
    return mpfr_get_d(b.v, MPFR_RNDN);
}

namespace {

// Runs the turning-set recursion, handing each sorted level T_j to the
// callback. Only the current level is kept in memory.
template <typename PerLevel>
void walk_turning_levels(const Interval& c, const RationalExponent& r,
                         unsigned N, mpfr_prec_t prec, PerLevel&& perLevel) {
    Mp cv(prec);
    mpfr_set(cv.v, c.lo(), MPFR_RNDN);
    if (mpfr_sgn(cv.v) > 0) mpfr_set_zero(cv.v, 1);
    Mp beta = solve_beta(cv.v, r, prec);

    Mp tol(prec);
    mpfr_set_ui_2exp(tol.v, 1, -static_cast<mpfr_exp_t>(prec / 2), MPFR_RNDN);

    std::vector<Mp> level;
    level.emplace_back(prec);  // T_1 = {0}
    perLevel(1u, level);

    Mp u(prec), x(prec);
    for (unsigned j = 2; j <= N; ++j) {
        std::vector<Mp> next;
        next.reserve(2 * level.size() + 1);
        next.emplace_back(prec);  // 0 is always a turning point
        for (const Mp& t : level) {
            // preimages +-(t - c)^{1/r} exist iff t >= c
            mpfr_sub(u.v, t.v, cv.v, MPFR_RNDN);
            if (mpfr_sgn(u.v) < 0) continue;
            mpfr_rootn_ui(x.v, u.v, r.p, MPFR_RNDN);
            mpfr_pow_ui(x.v, x.v, r.q, MPFR_RNDN);
            if (mpfr_cmp(x.v, beta.v) > 0) continue;
            Mp pos(prec), neg(prec);
            mpfr_set(pos.v, x.v, MPFR_RNDN);
            mpfr_neg(neg.v, x.v, MPFR_RNDN);
            next.push_back(std::move(pos));
            next.push_back(std::move(neg));
        }
        std::sort(next.begin(), next.end(),
                  [](const Mp& a, const Mp& b) { return mpfr_cmp(a.v, b.v) < 0; });
        std::vector<Mp> dedup;
        dedup.reserve(next.size());
        for (Mp& p : next) {
            if (!dedup.empty()) {
                mpfr_sub(u.v, p.v, dedup.back().v, MPFR_RNDN);
                if (mpfr_cmpabs(u.v, tol.v) <= 0) continue;
            }
            dedup.push_back(std::move(p));
        }
        level = std::move(dedup);
        perLevel(j, level);
    }
}

}  // namespace

LapSeries lap_series(const Interval& c, const RationalExponent& r, unsigned N,
                     mpfr_prec_t prec) {
    LapSeries out;
    out.r = r;
    out.c = c;
    out.N = N;
    out.laps.reserve(N);
    walk_turning_levels(c, r, N, prec, [&](unsigned, const std::vector<Mp>& level) {
        out.laps.push_back(level.size() + 1);
    });
    out.entropyEstimate = entropy_estimate(out.laps);
    return out;
}

std::vector<std::vector<double>> turning_points(const Interval& c,
                                                const RationalExponent& r,
                                                unsigned N, mpfr_prec_t prec) {
    std::vector<std::vector<double>> sets;
    sets.reserve(N);
    walk_turning_levels(c, r, N, prec, [&](unsigned, const std::vector<Mp>& level) {
        std::vector<double> pts;
        pts.reserve(level.size());
        for (const Mp& t : level) pts.push_back(mpfr_get_d(t.v, MPFR_RNDN));
        sets.push_back(std::move(pts));
    });
    return sets;
}

double entropy_estimate(const std::vector<unsigned long>& laps) {
    const unsigned N = static_cast<unsigned>(laps.size());
    if (N < 2) return 0.0;
    const unsigned first = (N + 1) / 2;  // ceil(N/2)
    double xbar = 0, ybar = 0;
    unsigned count = 0;
    for (unsigned n = first; n <= N; ++n, ++count) {
        xbar += n;
        ybar += std::log(static_cast<double>(laps[n - 1]));
    }
    xbar /= count;
    ybar /= count;
    double num = 0, den = 0;
    for (unsigned n = first; n <= N; ++n) {
        double dx = n - xbar;
        num += dx * (std::log(static_cast<double>(laps[n - 1])) - ybar);
        den += dx * dx;
    }
    if (den == 0) return 0.0;
    return std::max(0.0, num / den);
}

ScanResult monotonicity_scan(const RationalExponent& r, double gridStep,
                             unsigned N, mpfr_prec_t prec) {
    if (gridStep <= 0) throw ConfigError("grid step must be positive");
    ScanResult out;
    out.N = N;

    Interval window = scan_window(r, prec);
    Mp c(prec), step(prec);
    mpfr_set(c.v, window.lo(), MPFR_RNDN);
    mpfr_set_d(step.v, gridStep, MPFR_RNDN);

    char buf[64];
    while (true) {
        bool last = mpfr_sgn(c.v) >= 0;
        if (last) mpfr_set_zero(c.v, 1);
        Interval ci = Interval::from_mpfr(c.v, c.v, prec);
        LapSeries series = lap_series(ci, r, N, prec);
        ScanRow row;
        mpfr_snprintf(buf, sizeof buf, "%.12R*g", MPFR_RNDN, c.v);
        row.c_str = buf;
        row.c = mpfr_get_d(c.v, MPFR_RNDN);
        row.entropy = series.entropyEstimate;
        row.laps = std::move(series.laps);
        out.rows.push_back(std::move(row));
        if (last) break;
        mpfr_add(c.v, c.v, step.v, MPFR_RNDN);
    }
    for (size_t i = 0; i + 1 < out.rows.size(); ++i)
        out.maxUpwardViolation = std::max(
            out.maxUpwardViolation, out.rows[i + 1].entropy - out.rows[i].entropy);
    out.maxUpwardViolation = std::max(out.maxUpwardViolation, 0.0);
    return out;
}

std::string scan_csv(const ScanResult& scan) {
    std::ostringstream os;
    os << "c,entropy";
    for (unsigned n = 1; n <= scan.N; ++n) os << ",laps_" << n;
    os << "\n";
    char ebuf[32];
    for (const ScanRow& row : scan.rows) {
        std::snprintf(ebuf, sizeof ebuf, "%.6f", row.entropy);
        os << row.c_str << "," << ebuf;
        for (unsigned long l : row.laps) os << "," << l;
        os << "\n";
    }
    return os.str();
}

}  // namespace unimap
