#include "unimap/relation.hpp"

#include <functional>

#include "unimap/errors.hpp"

namespace unimap {

namespace {

bool is_unit(const mpz_class& c) { return c == 1 || c == -1; }

}  // namespace

void assert_poly_dominant(const IntPoly& g, const char* where) {
    if (g.is_zero()) throw DominanceViolation(std::string(where) + ": zero polynomial");
    unsigned maxS = g.deg_s(), maxT = g.deg_t();
    const mpz_class& lead = g.coeff({maxS, maxT, 0});
    if (!is_unit(lead))
        throw DominanceViolation(std::string(where) +
                                 ": no unit term at the componentwise maximum");
}

void assert_relation_dominance(const Relation& rel) {
    if (rel.dominantIndex >= rel.a.size())
        throw DominanceViolation("dominant index out of range");
    const IntPoly& dom = rel.a[rel.dominantIndex];
    if (dom.is_zero()) throw DominanceViolation("dominant coefficient vanished");
    const unsigned maxS = dom.deg_s(), maxT = dom.deg_t();
    if (!is_unit(dom.coeff({maxS, maxT, 0})))
        throw DominanceViolation("dominant coefficient has no unit maximal term");
    for (unsigned j = 0; j < rel.a.size(); ++j)
        for (const auto& [m, c] : rel.a[j].terms()) {
            if (m.s > maxS || m.t > maxT)
                throw DominanceViolation("coefficient term exceeds the dominant term");
            if (m.s == maxS && m.t == maxT && j != rel.dominantIndex)
                throw DominanceViolation("maximal term is not unique");
        }
}

void assert_bivariate_dominance(const BivariateRelation& biv) {
    const IntPoly& g = biv.poly;
    if (g.is_zero()) throw DominanceViolation("bivariate identity vanished");
    if (g.deg_t() != 0) throw DominanceViolation("bivariate identity carries T");
    if (!is_unit(g.coeff({biv.nPrime, 0, biv.m})))
        throw DominanceViolation("bivariate leading coefficient is not a unit");
    for (const auto& [m, c] : g.terms()) {
        if (m.b == biv.m && m.s == biv.nPrime) continue;
        if (m.b >= biv.m || m.s >= biv.nPrime)
            throw DominanceViolation(
                "bivariate term not strictly below the leading term");
    }
}

namespace {

// Split a folded polynomial (B-degree < q) into Relation coefficients.
Relation make_relation(const IntPoly& folded, unsigned q, unsigned radicalIndex,
                       int radicalSign, std::vector<int> signContext) {
    Relation rel;
    rel.q = q;
    rel.radicalIndex = radicalIndex;
    rel.radicalSign = radicalSign;
    rel.signContext = std::move(signContext);
    unsigned d = q == 1 ? 0 : q - 1;
    if (folded.deg_b() > d)
        throw DominanceViolation("unfolded B power left in a relation");
    rel.a.reserve(d + 1);
    for (unsigned j = 0; j <= d; ++j) rel.a.push_back(folded.b_coefficient(j));
    rel.dominantIndex = d;
    assert_relation_dominance(rel);
    return rel;
}

}  // namespace

Relation initial_relation(const RationalExponent& r, const std::vector<int>& signs) {
    const unsigned n = static_cast<unsigned>(signs.size()) + 1;
    if (n < 4) throw ConfigError("initial_relation requires period >= 4");
    const unsigned long p = r.p, q = r.q;
    const int s_n1 = signs[n - 2];

    // (-1)^p s_{n-1}^p, carried exactly (the displayed form assumes p odd)
    const long lead = (p % 2 == 1) ? -static_cast<long>(s_n1) : 1;
    const unsigned k2 = static_cast<unsigned>((p * p) % q);
    const unsigned shift = static_cast<unsigned>(q) - k2 - 1;

    IntPoly poly;
    for (unsigned long i = 0; i <= p; ++i) {
        Mono m{static_cast<unsigned>(q + i), 0,
               static_cast<unsigned>(p * i) + shift};
        poly = poly + IntPoly::monomial(m, binomial(p, i) * lead);
    }
    // the -(-1)^q constant picks up the same B^shift factor
    const long tail = (q % 2 == 0) ? -1 : 1;
    poly = poly + IntPoly::monomial({0, 0, shift}, tail);

    return make_relation(poly.fold_b(static_cast<unsigned>(q)),
                         static_cast<unsigned>(q), n - 2, signs[n - 3], signs);
}

Relation reduction_step(const Relation& rel) {
    const unsigned d = rel.b_degree();
    const unsigned q = rel.q;
    if (d < 1) throw ConfigError("reduction_step requires B-degree >= 1");
    if (q < 2) throw ConfigError("reduction_step requires q >= 2");
    assert_relation_dominance(rel);

    const IntPoly& ad = rel.a[d];
    IntPoly head = ad;
    std::vector<IntPoly> tail(rel.a.begin(), rel.a.end() - 1);

    // q-1 rounds of multiply-by-(a_d B) and substitute a_d B^d through the
    // base relation: t'_j = a_d t_{j-1} - t_{d-1} a_j, t'_0 = -t_{d-1} a_0.
    for (unsigned step = 1; step < q; ++step) {
        std::vector<IntPoly> next(d);
        const IntPoly& top = tail[d - 1];
        for (unsigned j = d; j-- > 1;) next[j] = ad * tail[j - 1] - top * rel.a[j];
        next[0] = -(top * rel.a[0]);
        tail = std::move(next);
        head = head * ad;
    }

    // head B^{d-1+q} folds to head T B^{d-1} and merges with the tail top.
    Relation out;
    out.q = q;
    out.radicalIndex = rel.radicalIndex;
    out.radicalSign = rel.radicalSign;
    out.signContext = rel.signContext;
    out.a.assign(tail.begin(), tail.end());
    out.a[d - 1] = head.mul_mono({0, 1, 0}) + tail[d - 1];
    out.dominantIndex = d - 1;
    assert_relation_dominance(out);
    return out;
}

Eliminated eliminate(const Relation& rel,
                     const std::function<void(const Relation&)>& trace) {
    assert_relation_dominance(rel);
    Eliminated out;
    out.radicalIndex = rel.radicalIndex;
    out.radicalSign = rel.radicalSign;
    out.q = rel.q;
    out.signContext = rel.signContext;

    if (rel.q == 1) {
        // no radical present; the single coefficient is the identity
        out.poly = rel.a[0];
        assert_poly_dominant(out.poly, "eliminate(q=1)");
        return out;
    }
    Relation cur = rel;
    while (cur.b_degree() >= 2) {
        cur = reduction_step(cur);
        if (trace) trace(cur);
    }
    if (cur.b_degree() != 1)
        throw ConfigError("eliminate requires B-degree >= 1 for q >= 2");
    // a_1 B + a_0 = 0  =>  a_1^q T - (-a_0)^q = 0
    out.poly = cur.a[1].pow_ui(cur.q).mul_mono({0, 1, 0}) -
               (-cur.a[0]).pow_ui(cur.q);
    assert_poly_dominant(out.poly, "eliminate");
    return out;
}

BivariateRelation to_bivariate(const Eliminated& e) {
    BivariateRelation biv;
    biv.poly = e.poly.t_to_b_signed(-e.radicalSign);
    biv.varIndex = e.radicalIndex;
    biv.m = biv.poly.deg_b();
    biv.nPrime = biv.poly.deg_s();
    biv.signContext = e.signContext;
    assert_bivariate_dominance(biv);
    return biv;
}

Relation descend(const BivariateRelation& biv, const RationalExponent& r,
                 int sign_km1) {
    if (biv.varIndex < 3) throw ConfigError("descend requires index >= 3");
    const unsigned q = static_cast<unsigned>(r.q);
    const unsigned p = static_cast<unsigned>(r.p);

    // b_k = B^p S + 1 with B = b'_{k-1}
    IntPoly repl = IntPoly::monomial({1, 0, p}, 1) + IntPoly::constant(1);
    IntPoly poly = biv.poly.substitute_b(repl);

    // align the dominant B exponent p*m to q-1 mod q; unique since (p,q)=1
    const unsigned pm = p * biv.m;
    const unsigned e = (q - 1 + q - pm % q) % q;
    poly = poly.mul_mono({0, 0, e}).fold_b(q);

    return make_relation(poly, q, biv.varIndex - 1, sign_km1, biv.signContext);
}

}  // namespace unimap
