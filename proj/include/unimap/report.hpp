#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "unimap/certify.hpp"
#include "unimap/dynamics.hpp"
#include "unimap/entropy.hpp"

namespace unimap {

struct RunConfig {
    RationalExponent r{2, 1};
    unsigned maxPeriod = 3;
    mpfr_prec_t precisionBits = kDefaultPrec;
    unsigned long gridResolution = 0;  // 0 = default 10*4^n capped at 1e6
    double gridStep = 0.02;
    unsigned entropyN = 18;
    unsigned maxCertifyPeriod = 0;  // 0 = desk-scale default by q
    std::string outPath;
    std::string format = "json";  // json | csv (csv applies to entropy-scan)

    void validate() const;
};

// Desk-scale certification cap: degree growth is doubly exponential in n for
// q >= 2.
unsigned certify_cap(const RunConfig& cfg);

nlohmann::json pair_to_json(const PeriodicPair& pair);
PeriodicPair pair_from_json(const nlohmann::json& j, mpfr_prec_t prec);
std::vector<PeriodicPair> parse_pairs(const nlohmann::json& doc, mpfr_prec_t prec);

nlohmann::json transversality_to_json(const TransversalityReport& rep);
nlohmann::json certificate_to_json(const Certificate& cert);

// find: pairs for n = 1..maxPeriod over the scan window.
nlohmann::json cmd_find(const RunConfig& cfg);
// verify: transversality reports for given pairs (or pairs computed inline).
nlohmann::json cmd_verify(const RunConfig& cfg, const nlohmann::json& pairsDoc);
// certify: certificates with witness residuals for given pairs.
nlohmann::json cmd_certify(const RunConfig& cfg, const nlohmann::json& pairsDoc);
// entropy-scan CSV.
std::string cmd_entropy(const RunConfig& cfg);
// report: find + verify + certify bundled with per-pair status.
nlohmann::json cmd_report(const RunConfig& cfg);

}  // namespace unimap
