#include "unimap/certify.hpp"

#include <cmath>

#include "unimap/errors.hpp"

namespace unimap {

Interval s_of_c(const Interval& c, const RationalExponent& r) {
    return -c.rpow_frac(r.p - r.q, r.q);
}

PipelineWitness make_witness(const PeriodicPair& pair, mpfr_prec_t prec) {
    PipelineWitness w;
    w.prec = prec;
    // Re-isolate at the witness precision: the relation values amplify the
    // c-interval width by the (large) derivatives of the intermediate
    // polynomials.
    Interval c = refine_pair(pair, prec).c;
    w.S = s_of_c(c, pair.r);
    // b_1 = 1; b_{j+1} = |b_j|^r s + 1  (since -s_j b_j = |b_j|)
    w.b.resize(pair.n);
    if (pair.n >= 2) {
        w.b[1] = Interval(1, prec);
        for (unsigned j = 1; j + 1 < pair.n; ++j)
            w.b[j + 1] = w.b[j].rpow(pair.r) * w.S + Interval(1, prec);
    }
    return w;
}

std::vector<UniPoly> b_recursion_integer(const RationalExponent& r,
                                         const std::vector<int>& signs) {
    if (!r.integer()) throw ConfigError("b_recursion_integer requires q = 1");
    std::vector<UniPoly> b;
    b.push_back(UniPoly::constant(1));  // b_1
    const UniPoly S = UniPoly::variable();
    for (int s : signs) {
        UniPoly t = b.back().mul_z(-s).pow_ui(static_cast<unsigned>(r.p));
        b.push_back(t * S + UniPoly::constant(1));
    }
    return b;
}

UniPoly normalize_monic(const UniPoly& P) {
    const mpz_class& lead = P.leading();
    if (lead != 1 && lead != -1)
        throw DominanceViolation("certificate leading coefficient " +
                                 lead.get_str() + " is not a unit");
    return lead < 0 ? -P : P;
}

Interval eval_relation_at(const Relation& rel, const PipelineWitness& w) {
    const mpfr_prec_t prec = w.prec;
    if (rel.radicalIndex >= w.b.size())
        throw std::logic_error("witness has no value for the relation radical");
    Interval T = w.b[rel.radicalIndex].abs();
    Interval B = T.root_q(rel.q);
    Interval one(1, prec);
    Interval acc(prec);
    Interval bpow = one;
    for (unsigned j = 0; j < rel.a.size(); ++j) {
        if (j > 0) bpow = bpow * B;
        acc = acc + rel.a[j].eval(w.S, T, one) * bpow;
    }
    return acc;
}

Interval eval_bivariate_at(const BivariateRelation& biv, const PipelineWitness& w) {
    if (biv.varIndex >= w.b.size())
        throw std::logic_error("witness has no value for the bivariate index");
    Interval one(1, w.prec);
    return biv.poly.eval(w.S, one, w.b[biv.varIndex]);
}

namespace {

struct WitnessChecker {
    const PipelineWitness* w = nullptr;
    double maxMid = 0.0;
    unsigned checks = 0;

    void record(const Interval& v, const char* what) {
        if (!v.contains_zero())
            throw std::logic_error(std::string("pipeline witness check failed at ") +
                                   what + ": [" + v.dec_lo(8) + ", " +
                                   v.dec_hi(8) + "]");
        maxMid = std::max(maxMid, std::abs(v.mid_d()));
        ++checks;
    }
    void relation(const Relation& rel, const char* what) {
        if (w) record(eval_relation_at(rel, *w), what);
    }
    void bivariate(const BivariateRelation& biv) {
        if (w) record(eval_bivariate_at(biv, *w), "bivariate rewrite");
    }
};

void validate_signs(unsigned n, const std::vector<int>& signs) {
    if (signs.size() + 1 != n)
        throw ConfigError("sign sequence must have length n-1");
    for (int s : signs)
        if (s != -1 && s != 1) throw ConfigError("signs must be -1 or +1");
    if (!signs.empty() && signs[0] != -1)
        throw ConfigError("s_1 = sgn(c) must be -1");
}

// n = 3 closes directly: (-s_2 b_2)^p s^q = (-1)^q with b_2 = s + 1.
UniPoly certificate_n3(const RationalExponent& r, int s2) {
    const unsigned p = static_cast<unsigned>(r.p);
    const unsigned q = static_cast<unsigned>(r.q);
    long mu = (s2 == 1 && p % 2 == 1) ? -1 : 1;  // (-s_2)^p
    UniPoly body = (UniPoly::variable() + UniPoly::constant(1)).pow_ui(p);
    std::vector<mpz_class> shift(q, 0);
    shift.push_back(1);
    body = body * UniPoly(std::move(shift));  // * S^q
    long c0 = (q % 2 == 0) ? 1 : -1;          // (-1)^q
    return body.mul_z(mu) - UniPoly::constant(c0);
}

UniPoly univariate_from(const IntPoly& g) {
    if (g.deg_t() != 0 || g.deg_b() != 0)
        throw std::logic_error("polynomial is not univariate in S");
    std::vector<mpz_class> coeffs(g.deg_s() + 1, 0);
    for (const auto& [m, c] : g.terms()) coeffs[m.s] = c;
    return UniPoly(std::move(coeffs));
}

}  // namespace

Certificate certify(const RationalExponent& r, unsigned n,
                    const std::vector<int>& signs,
                    const PeriodicPair* witnessPair, mpfr_prec_t witnessPrec) {
    if (n < 2) throw ConfigError("certify requires n >= 2 (n = 1 is the trivial pair)");
    validate_signs(n, signs);

    Certificate cert;
    cert.r = r;
    cert.n = n;
    cert.signs = signs;

    PipelineWitness wit;
    WitnessChecker check;
    if (witnessPair) {
        if (witnessPair->n != n || witnessPair->r != r ||
            witnessPair->orbit.signs != signs)
            throw ConfigError("witness pair does not match the sign sequence");
        wit = make_witness(*witnessPair, witnessPrec);
        check.w = &wit;
    }

    UniPoly raw;
    if (n == 2) {
        raw = UniPoly::variable() + UniPoly::constant(1);  // b_2 = s + 1
    } else if (n == 3) {
        raw = certificate_n3(r, signs[1]);
    } else {
        Relation rel = initial_relation(r, signs);
        check.relation(rel, "initial relation");
        auto trace = [&](const Relation& step) { check.relation(step, "reduction step"); };
        Eliminated elim = eliminate(rel, trace);
        BivariateRelation biv = to_bivariate(elim);
        check.bivariate(biv);
        while (biv.varIndex > 2) {
            rel = descend(biv, r, signs[biv.varIndex - 2]);
            check.relation(rel, "descend");
            elim = eliminate(rel, trace);
            biv = to_bivariate(elim);
            check.bivariate(biv);
        }
        // b_2 = s + 1
        IntPoly sub = IntPoly::variable_s() + IntPoly::constant(1);
        raw = univariate_from(biv.poly.substitute_b(sub));
    }

    cert.P = normalize_monic(raw);
    cert.witnessMaxMid = check.maxMid;
    cert.witnessChecks = check.checks;
    if (witnessPair) {
        cert.witness_c = witnessPair->c;
        // refine until the residual bound is decisively small; large P have
        // steep gradients that amplify the witness width
        mpfr_prec_t rp = witnessPrec;
        Interval res = evaluate_certificate(cert.P, *witnessPair, rp);
        while (!(res.hi_d() < 1e-10) && rp * 2 <= kMaxPrec) {
            rp *= 2;
            res = evaluate_certificate(cert.P, *witnessPair, rp);
        }
        if (!res.contains_zero())
            throw std::logic_error("certificate does not vanish at its witness");
        cert.residual = res;
    }
    return cert;
}

Interval evaluate_certificate(const UniPoly& P, const PeriodicPair& pair,
                              mpfr_prec_t prec) {
    Interval s = s_of_c(refine_pair(pair, prec).c, pair.r);
    return P.eval(s).abs();
}

}  // namespace unimap
