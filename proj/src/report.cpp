#include "unimap/report.hpp"

#include <algorithm>

namespace unimap {

using nlohmann::json;

void RunConfig::validate() const {
    if (precisionBits < 32 || precisionBits > kMaxPrec)
        throw ConfigError("precision-bits out of range [32, 8192]");
    if (gridStep <= 0) throw ConfigError("grid-step must be positive");
    if (format != "json" && format != "csv")
        throw ConfigError("format must be json or csv");
}

unsigned certify_cap(const RunConfig& cfg) {
    if (cfg.maxCertifyPeriod) return cfg.maxCertifyPeriod;
    switch (cfg.r.q) {
        case 1: return cfg.maxPeriod;
        case 2: return 5;
        case 3: return 4;
        default: return 3;
    }
}

namespace {

json r_to_json(const RationalExponent& r) {
    return json{{"p", r.p}, {"q", r.q}};
}

json interval_to_json(const Interval& x) {
    return json{{"lo", x.dec_lo()}, {"hi", x.dec_hi()},
                {"prec", static_cast<long>(x.precision())}};
}

}  // namespace

json pair_to_json(const PeriodicPair& pair) {
    json j;
    j["r"] = r_to_json(pair.r);
    j["n"] = pair.n;
    j["c_lo"] = pair.c.dec_lo();
    j["c_hi"] = pair.c.dec_hi();
    j["prec"] = static_cast<long>(pair.c.precision());
    j["signs"] = pair.orbit.signs;
    j["trivial"] = pair.trivial;
    return j;
}

PeriodicPair pair_from_json(const json& j, mpfr_prec_t prec) {
    try {
        RationalExponent r(j.at("r").at("p").get<unsigned long>(),
                           j.at("r").at("q").get<unsigned long>());
        unsigned n = j.at("n").get<unsigned>();
        if (n < 1) throw ConfigError("pair period must be >= 1");
        mpfr_prec_t p = prec;
        if (j.contains("prec")) p = std::max<mpfr_prec_t>(p, j["prec"].get<long>());
        Interval c = Interval::from_endpoints_decimal(
            j.at("c_lo").get<std::string>(), j.at("c_hi").get<std::string>(), p);
        PeriodicPair pair;
        pair.r = r;
        pair.c = c;
        pair.n = n;
        pair.trivial = j.value("trivial", n == 1);
        // The orbit is re-certified by verify/certify; keep declared signs
        // for cross-checking.
        pair.orbit.r = r;
        pair.orbit.c = c;
        pair.orbit.n = n;
        if (j.contains("signs"))
            pair.orbit.signs = j["signs"].get<std::vector<int>>();
        return pair;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed pair JSON: ") + e.what());
    }
}

std::vector<PeriodicPair> parse_pairs(const json& doc, mpfr_prec_t prec) {
    std::vector<PeriodicPair> pairs;
    const json& arr = doc.contains("pairs") ? doc.at("pairs") : doc;
    if (!arr.is_array()) throw ConfigError("expected a JSON array of pairs");
    for (const auto& j : arr) pairs.push_back(pair_from_json(j, prec));
    return pairs;
}

json transversality_to_json(const TransversalityReport& rep) {
    json j;
    j["D"] = interval_to_json(rep.D);
    j["scaledD"] = interval_to_json(rep.scaledD);
    j["A"] = interval_to_json(rep.A);
    j["spatial_deriv"] = interval_to_json(rep.spatialDeriv);
    j["ratio_sign"] = rep.ratioSign;
    j["identity_ok"] = rep.identity_ok;
    j["precision_used"] = static_cast<long>(rep.precisionUsed);
    j["nonzero"] = rep.D.sign_certain() != 0;
    return j;
}

json certificate_to_json(const Certificate& cert) {
    json j;
    j["r"] = r_to_json(cert.r);
    j["n"] = cert.n;
    j["signs"] = cert.signs;
    std::vector<std::string> coeffs;
    for (const auto& c : cert.P.coeffs()) coeffs.push_back(c.get_str());
    j["P"] = coeffs;
    j["degree"] = cert.P.degree();
    j["monic"] = (cert.P.leading() == 1 || cert.P.leading() == -1);
    if (cert.witness_c) {
        j["witness"] = json{{"c_lo", cert.witness_c->dec_lo()},
                            {"c_hi", cert.witness_c->dec_hi()}};
    }
    if (cert.residual) j["residual"] = cert.residual->dec_hi();
    return j;
}

json cmd_find(const RunConfig& cfg) {
    cfg.validate();
    json out;
    out["command"] = "find";
    out["r"] = r_to_json(cfg.r);
    out["max_period"] = cfg.maxPeriod;
    out["pairs"] = json::array();
    out["warnings"] = json::array();
    Interval window = scan_window(cfg.r, cfg.precisionBits);
    for (unsigned n = 1; n <= cfg.maxPeriod; ++n) {
        FindResult found = find_superstable(cfg.r, n, window, cfg.gridResolution,
                                            cfg.precisionBits);
        for (const auto& pair : found.pairs) out["pairs"].push_back(pair_to_json(pair));
        for (const auto& w : found.warnings) out["warnings"].push_back(w);
    }
    return out;
}

json cmd_verify(const RunConfig& cfg, const json& pairsDoc) {
    cfg.validate();
    json out;
    out["command"] = "verify";
    out["r"] = r_to_json(cfg.r);
    out["reports"] = json::array();
    for (const auto& raw : parse_pairs(pairsDoc, cfg.precisionBits)) {
        TransversalityReport rep = verify_transversality(raw, cfg.precisionBits);
        json entry = pair_to_json(rep.pair);
        entry["trivial"] = raw.trivial;
        entry["transversality"] = transversality_to_json(rep);
        out["reports"].push_back(std::move(entry));
    }
    return out;
}

json cmd_certify(const RunConfig& cfg, const json& pairsDoc) {
    cfg.validate();
    const unsigned cap = certify_cap(cfg);
    json out;
    out["command"] = "certify";
    out["r"] = r_to_json(cfg.r);
    out["certificates"] = json::array();
    for (const auto& raw : parse_pairs(pairsDoc, cfg.precisionBits)) {
        if (raw.n == 1) continue;  // trivial pair carries no certificate
        if (raw.n > cap) {
            out["certificates"].push_back(
                json{{"n", raw.n},
                     {"status", "skipped: period beyond certification cap " +
                                    std::to_string(cap)}});
            continue;
        }
        TransversalityReport rep = verify_transversality(raw, cfg.precisionBits);
        Certificate cert =
            certify(cfg.r, raw.n, rep.pair.orbit.signs, &rep.pair, 256);
        out["certificates"].push_back(certificate_to_json(cert));
    }
    return out;
}

std::string cmd_entropy(const RunConfig& cfg) {
    cfg.validate();
    ScanResult scan =
        monotonicity_scan(cfg.r, cfg.gridStep, cfg.entropyN, cfg.precisionBits);
    std::string csv = scan_csv(scan);
    char buf[64];
    std::snprintf(buf, sizeof buf, "# max_upward_violation,%.6f\n",
                  scan.maxUpwardViolation);
    return csv + buf;
}

json cmd_report(const RunConfig& cfg) {
    cfg.validate();
    const unsigned cap = certify_cap(cfg);
    json out;
    out["command"] = "report";
    out["r"] = r_to_json(cfg.r);
    out["max_period"] = cfg.maxPeriod;
    out["pairs"] = json::array();

    json found = cmd_find(cfg);
    out["warnings"] = found["warnings"];
    unsigned transversal = 0, certified = 0;
    for (const auto& pj : found["pairs"]) {
        PeriodicPair raw = pair_from_json(pj, cfg.precisionBits);
        json entry = pj;
        TransversalityReport rep = verify_transversality(raw, cfg.precisionBits);
        entry["transversality"] = transversality_to_json(rep);
        ++transversal;
        if (raw.n == 1) {
            entry["status"] = "trivial";
        } else if (raw.n > cap) {
            entry["status"] = "transversal; certificate skipped (period beyond cap " +
                              std::to_string(cap) + ")";
        } else {
            Certificate cert =
                certify(cfg.r, raw.n, rep.pair.orbit.signs, &rep.pair, 256);
            entry["certificate"] = certificate_to_json(cert);
            entry["status"] = "transversal; certified";
            ++certified;
        }
        out["pairs"].push_back(std::move(entry));
    }
    out["summary"] = json{{"pairs", out["pairs"].size()},
                          {"transversal", transversal},
                          {"certified", certified}};
    return out;
}

}  // namespace unimap
