#include "unimap/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>

namespace unimap {

namespace {

Interval one(mpfr_prec_t prec) { return Interval(1, prec); }

mpz_class pow_z(unsigned long base, unsigned exp) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
    return r;
}

// f_c^n(0) without sign bookkeeping.
Interval eval_gn(const Interval& c, const RationalExponent& r, unsigned n) {
    Interval x = c;
    for (unsigned j = 1; j < n; ++j) x = x.rpow(r) + c;
    return x;
}

Interval point_at(const mpfr_t v, mpfr_prec_t prec) {
    return Interval::from_mpfr(v, v, prec);
}

}  // namespace

unsigned long default_grid_resolution(unsigned n) {
    unsigned long res = 10;
    for (unsigned i = 0; i < n && res < 1000000ul; ++i) res *= 4;
    return std::min(res, 1000000ul);
}

CriticalOrbit critical_orbit(const Interval& c, const RationalExponent& r,
                             unsigned n) {
    if (n < 1) throw ConfigError("period must be >= 1");
    CriticalOrbit orbit;
    orbit.r = r;
    orbit.c = c;
    orbit.n = n;
    orbit.xi.reserve(n);
    orbit.xi.push_back(c);
    for (unsigned j = 1; j < n; ++j) {
        if (int s = orbit.xi.back().sign_certain(); s != 0)
            orbit.signs.push_back(s);
        else
            throw SignUndecidable(j);
        orbit.xi.push_back(orbit.xi.back().rpow(r) + c);
    }
    return orbit;
}

void derivative_recursion(const CriticalOrbit& orbit, Interval& D,
                          Interval& scaledD, Interval& A) {
    const mpfr_prec_t prec = orbit.c.precision();
    const unsigned long p = orbit.r.p, q = orbit.r.q;
    D = one(prec);
    Interval Dprev = D;
    for (unsigned j = 1; j < orbit.n; ++j) {
        Dprev = D;
        // D_{j+1} = r (s_j xi_j)^{r-1} s_j D_j + 1, with (s_j xi_j) = |xi_j|
        Interval fpow = orbit.xi[j - 1].rpow_frac(p - q, q);
        D = (fpow * D).mul_z(mpz_class(static_cast<long>(orbit.signs[j - 1]) *
                                       static_cast<long>(p)))
                .div_ui(q) +
            one(prec);
    }
    scaledD = D.mul_z(pow_z(q, orbit.n - 1));
    if (orbit.n == 1) {
        A = Interval(prec);  // empty product convention: scaledD = p*0 + q^0
        return;
    }
    // A_{n-1} = (s_{n-1} xi_{n-1})^{r-1} * q^{n-2} * s_{n-1} * D_{n-1}
    Interval f = orbit.xi[orbit.n - 2].rpow_frac(p - q, q);
    A = (f * Dprev).mul_z(pow_z(q, orbit.n - 2) * orbit.signs[orbit.n - 2]);
}

Interval spatial_derivative(const CriticalOrbit& orbit) {
    const mpfr_prec_t prec = orbit.c.precision();
    const unsigned long p = orbit.r.p, q = orbit.r.q;
    Interval prod = one(prec);
    for (unsigned j = 1; j < orbit.n; ++j) {
        Interval f = orbit.xi[j - 1].rpow_frac(p - q, q);
        prod = (prod * f).mul_z(mpz_class(static_cast<long>(orbit.signs[j - 1]) *
                                          static_cast<long>(p)))
                   .div_ui(q);
    }
    return prod;
}

Interval scan_window(const RationalExponent& r, mpfr_prec_t prec) {
    Interval left = -Interval(2, prec).rpow_frac(r.q, r.p - r.q);
    return Interval::from_mpfr(left.lo(), Interval(prec).hi(), prec);
}

int sign_of_gn(const mpfr_t c, const RationalExponent& r, unsigned n,
               mpfr_prec_t startPrec) {
    for (mpfr_prec_t P = startPrec; P <= kMaxPrec; P *= 2) {
        Interval g = eval_gn(point_at(c, P), r, n);
        if (g.is_exact_zero()) return 0;
        if (int s = g.sign_certain(); s != 0) return s;
    }
    throw PrecisionExhausted("sign of f_c^n(0) at a scan point");
}

namespace {

// Exact dyadic bracket [a,b] with certified opposite signs of g_n, or the
// degenerate exact-root case a == b.
struct Bracket {
    Interval a, b;  // points
    int sa = 0, sb = 0;
    bool exact = false;

    Interval hull(mpfr_prec_t prec) const {
        return Interval::from_mpfr(a.lo(), b.lo(), prec);
    }
    double width() const {
        return exact ? 0.0 : hull(a.precision()).width_d();
    }
};

Bracket exact_bracket(const Interval& pt) {
    return Bracket{pt, pt, 0, 0, true};
}

// One bisection step; returns false when the midpoint is an exact root
// (bracket collapses to it) or the bracket cannot be split at the current
// point precision.
bool bisect_once(Bracket& br, const RationalExponent& r, unsigned n,
                 mpfr_prec_t evalPrec) {
    Interval m = (br.a + br.b).div_ui(2);
    if (mpfr_equal_p(m.lo(), br.a.lo()) || mpfr_equal_p(m.lo(), br.b.lo()))
        return false;
    int sm = sign_of_gn(m.lo(), r, n, evalPrec);
    if (sm == 0) {
        br = exact_bracket(m);
        return false;
    }
    if (sm == br.sa)
        br.a = m;
    else
        br.b = m;
    return true;
}

void bisect_to_width(Bracket& br, const RationalExponent& r, unsigned n,
                     mpfr_prec_t evalPrec, double targetWidth) {
    while (!br.exact && br.width() > targetWidth)
        if (!bisect_once(br, r, n, evalPrec)) return;
}

bool divides(unsigned d, unsigned n) { return d != 0 && n % d == 0; }

// Certify the orbit over the bracket hull, shrinking the bracket and raising
// precision as needed. Returns nullopt for a non-primitive root (g_d changes
// sign across the bracket for a proper divisor d of n).
std::optional<PeriodicPair> certify_bracket(Bracket br,
                                            const RationalExponent& r,
                                            unsigned n, mpfr_prec_t prec) {
    mpfr_prec_t P = prec;
    mpfr_prec_t pointPrec = br.a.precision();
    while (true) {
        try {
            Interval hull = br.hull(P);
            CriticalOrbit orbit = critical_orbit(hull, r, n);
            PeriodicPair pair;
            pair.r = r;
            pair.c = hull;
            pair.n = n;
            pair.orbit = std::move(orbit);
            return pair;
        } catch (const SignUndecidable& e) {
            unsigned j = e.step;
            if (br.exact) {
                // Orbit of an exact parameter: xi_j can only straddle 0 by
                // being exactly 0 (rounding shrinks with precision otherwise).
                Interval xj = eval_gn(br.hull(P), r, j);
                if (xj.is_exact_zero()) {
                    if (divides(j, n)) return std::nullopt;  // non-primitive
                    throw PrecisionExhausted("xi_j = 0 at non-divisor step");
                }
            } else if (divides(j, n)) {
                int saj = sign_of_gn(br.a.lo(), r, j, P);
                int sbj = sign_of_gn(br.b.lo(), r, j, P);
                if (saj == 0 || sbj == 0 || saj != sbj)
                    return std::nullopt;  // root of g_d inside: non-primitive
            }
            // Still undecided: shrink the bracket, then raise precision.
            if (!br.exact && br.width() > 0) {
                double target = br.width() / 1024.0;
                bisect_to_width(br, r, n, P, target);
                double tiny = std::ldexp(1.0, -static_cast<int>(pointPrec - 40));
                if (br.width() < tiny && pointPrec * 2 <= kMaxPrec) {
                    pointPrec *= 2;
                    br.a = br.a.at_precision(pointPrec);
                    br.b = br.b.at_precision(pointPrec);
                }
            }
            P *= 2;
            if (P > kMaxPrec)
                throw PrecisionExhausted("orbit sign certification for n=" +
                                         std::to_string(n));
        }
    }
}

std::string format_warning(double c, double mag, unsigned n) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "near-zero minimum |f_c^%u(0)| ~ %.3e at c ~ %.9g without a "
                  "sign change; possible unresolved root pair",
                  n, mag, c);
    return buf;
}

}  // namespace

FindResult find_superstable(const RationalExponent& r, unsigned n,
                            const Interval& window,
                            unsigned long gridResolution, mpfr_prec_t prec) {
    FindResult out;
    if (n < 1) throw ConfigError("period must be >= 1");
    if (n == 1) {
        // g_1(c) = c: the trivial pair at c = 0.
        PeriodicPair pair;
        pair.r = r;
        pair.c = Interval(prec);
        pair.n = 1;
        pair.orbit = critical_orbit(pair.c, r, 1);
        pair.trivial = true;
        out.pairs.push_back(std::move(pair));
        return out;
    }

    const unsigned long res =
        gridResolution ? gridResolution : default_grid_resolution(n);
    const mpfr_prec_t pointPrec = prec + 128;

    // Deterministic dyadic grid points covering the window.
    std::vector<Interval> pts;
    pts.reserve(res + 1);
    Interval wl = point_at(window.lo(), pointPrec);
    Interval wr = point_at(window.hi(), pointPrec);
    Interval step = ((wr - wl).div_ui(res));
    for (unsigned long i = 0; i <= res; ++i) {
        Interval ci = (i == res) ? wr : wl + step.mul_z(mpz_class(static_cast<unsigned long>(i)));
        pts.push_back(Interval::from_mpfr(ci.lo(), ci.lo(), pointPrec));
    }

    std::vector<int> sgn(res + 1);
    std::vector<double> mag(res + 1);
    for (unsigned long i = 0; i <= res; ++i) {
        Interval g = eval_gn(pts[i].at_precision(prec), r, n);
        mag[i] = std::abs(g.mid_d());
        if (g.is_exact_zero())
            sgn[i] = 0;
        else if (int s = g.sign_certain(); s != 0)
            sgn[i] = s;
        else
            sgn[i] = sign_of_gn(pts[i].lo(), r, n, prec * 2);
    }

    double scale = 1.0;
    for (double m : mag) scale = std::max(scale, m);

    struct Candidate {
        Bracket br;
        unsigned long cell;  // left grid index, res+1 for exact grid hits
    };
    std::vector<Candidate> cands;
    for (unsigned long i = 0; i <= res; ++i)
        if (sgn[i] == 0) cands.push_back({exact_bracket(pts[i]), res + 1});
    for (unsigned long i = 0; i < res; ++i)
        if (sgn[i] != 0 && sgn[i + 1] != 0 && sgn[i] != sgn[i + 1]) {
            Bracket br{pts[i], pts[i + 1], sgn[i], sgn[i + 1], false};
            cands.push_back({std::move(br), i});
        }

    const double targetWidth = std::ldexp(1.0, -static_cast<int>(prec / 2));
    for (auto& cand : cands) {
        Bracket& br = cand.br;
        bisect_to_width(br, r, n, prec, targetWidth);
        // Post-hoc isolation check: any further sign change in the parts of
        // the cell outside the isolating interval means the grid lumped
        // several roots into one cell.
        if (cand.cell <= res) {
            const Interval& L = pts[cand.cell];
            const Interval& R = pts[cand.cell + 1];
            auto subscan = [&](const Interval& lo, const Interval& hi) {
                Interval h = (hi - lo).div_ui(64);
                int prev = 0;
                for (int k = 0; k <= 64; ++k) {
                    Interval x = lo + h.mul_z(k);
                    int s = sign_of_gn(x.lo(), r, n, prec);
                    if (prev != 0 && s != 0 && s != prev)
                        throw WindowTooCoarse(
                            "several period-" + std::to_string(n) +
                            " roots share one grid cell; raise gridResolution");
                    if (s != 0) prev = s;
                }
            };
            subscan(L, br.a);
            subscan(br.b, R);
        }
        if (auto pair = certify_bracket(br, r, n, prec))
            out.pairs.push_back(std::move(*pair));
    }

    // Near-zero grid minima without a sign change are reported, not dropped.
    for (unsigned long i = 1; i + 1 <= res; ++i) {
        if (sgn[i] == 0) continue;
        bool local_min = mag[i] <= mag[i - 1] && mag[i] <= mag[i + 1];
        bool no_change = sgn[i - 1] == sgn[i] && sgn[i] == sgn[i + 1];
        if (local_min && no_change && mag[i] < 1e-6 * scale)
            out.warnings.push_back(format_warning(pts[i].mid_d(), mag[i], n));
    }

    std::sort(out.pairs.begin(), out.pairs.end(),
              [](const PeriodicPair& x, const PeriodicPair& y) {
                  return mpfr_cmp(x.c.lo(), y.c.lo()) < 0;
              });
    // Dedup overlapping enclosures, keeping the narrower one.
    std::vector<PeriodicPair> dedup;
    for (auto& p : out.pairs) {
        if (!dedup.empty() && dedup.back().c.intersects(p.c)) {
            if (p.c.width_d() < dedup.back().c.width_d()) dedup.back() = std::move(p);
        } else {
            dedup.push_back(std::move(p));
        }
    }
    out.pairs = std::move(dedup);
    return out;
}

namespace {

// Rebuild a certified bracket from a (possibly decimal round-tripped) pair
// interval.
Bracket recover_bracket(const PeriodicPair& pair, mpfr_prec_t startPrec) {
    const RationalExponent r = pair.r;
    const unsigned n = pair.n;
    const mpfr_prec_t pointPrec =
        std::max<mpfr_prec_t>(pair.c.precision(), startPrec) + 128;

    if (pair.c.is_point()) return exact_bracket(point_at(pair.c.lo(), pointPrec));

    Bracket br;
    br.a = point_at(pair.c.lo(), pointPrec);
    br.b = point_at(pair.c.hi(), pointPrec);
    br.sa = sign_of_gn(br.a.lo(), r, n, startPrec);
    br.sb = sign_of_gn(br.b.lo(), r, n, startPrec);
    if (br.sa == 0) return exact_bracket(br.a);
    if (br.sb == 0) return exact_bracket(br.b);
    if (br.sa != br.sb) return br;

    // Endpoints drifted outward past the root (e.g. decimal round-trip):
    // look for a sign-change subcell inside.
    Interval h = (br.b - br.a).div_ui(64);
    int prev = br.sa;
    Interval prevPt = br.a;
    for (int k = 1; k <= 64; ++k) {
        Interval x = br.a + h.mul_z(k);
        int s = sign_of_gn(x.lo(), r, n, startPrec);
        if (s == 0) return exact_bracket(x);
        if (s != prev) return Bracket{prevPt, x, prev, s, false};
        prevPt = x;
    }
    throw ConfigError("pair interval does not isolate a root of f_c^n(0)");
}

}  // namespace

PeriodicPair refine_pair(const PeriodicPair& pair, mpfr_prec_t prec) {
    Bracket br = recover_bracket(pair, prec);
    bisect_to_width(br, pair.r, pair.n, prec,
                    std::ldexp(1.0, -static_cast<int>(prec / 2)));
    auto refined = certify_bracket(br, pair.r, pair.n, prec);
    if (!refined) throw ConfigError("pair is not primitive: divisor period detected");
    refined->trivial = pair.trivial;
    return *refined;
}

TransversalityReport verify_transversality(const PeriodicPair& pair,
                                           mpfr_prec_t startPrec) {
    const RationalExponent r = pair.r;
    const unsigned n = pair.n;
    Bracket br = recover_bracket(pair, startPrec);

    for (mpfr_prec_t P = startPrec; P <= kMaxPrec; P *= 2) {
        std::optional<PeriodicPair> refined;
        try {
            refined = certify_bracket(br, r, n, P);
        } catch (const PrecisionExhausted&) {
            break;
        }
        if (!refined)
            throw ConfigError("pair is not primitive: divisor period detected");
        refined->trivial = pair.trivial;

        TransversalityReport rep;
        rep.pair = std::move(*refined);
        derivative_recursion(rep.pair.orbit, rep.D, rep.scaledD, rep.A);
        if (rep.D.sign_certain() != 0) {
            rep.spatialDeriv = spatial_derivative(rep.pair.orbit);
            int ss = rep.spatialDeriv.sign_certain();
            int sd = rep.D.sign_certain();
            rep.ratioSign = (ss == 0) ? 0 : ss * sd;
            mpz_class qpow;
            mpz_ui_pow_ui(qpow.get_mpz_t(), r.q, n - 1);
            Interval rhs = rep.A.mul_z(mpz_class(r.p)) +
                           Interval(qpow, rep.A.precision());
            rep.identity_ok = rep.scaledD.intersects(rhs);
            rep.precisionUsed = P;
            return rep;
        }
        // D still straddles 0: shrink the isolating interval and retry higher.
        if (!br.exact)
            bisect_to_width(br, r, n, P,
                            std::max(br.width() / 1024.0,
                                     std::ldexp(1.0, -static_cast<int>(P))));
    }
    throw PrecisionExhausted("transversality certification for n=" +
                             std::to_string(n));
}

}  // namespace unimap
