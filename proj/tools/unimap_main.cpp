#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "unimap/report.hpp"

namespace {

using unimap::RunConfig;

std::string resolve_out(const std::string& path) {
    if (path.empty()) return path;
    const char* dir = std::getenv("UNIMAP_OUT_DIR");
    std::filesystem::path p(path);
    if (dir && *dir && p.is_relative()) return (std::filesystem::path(dir) / p).string();
    return path;
}

void emit(const std::string& text, const std::string& outPath) {
    std::string resolved = resolve_out(outPath);
    if (resolved.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream os(resolved);
    if (!os) throw unimap::ConfigError("cannot open output file " + resolved);
    os << text;
}

nlohmann::json load_pairs(const std::string& inPath, const RunConfig& cfg) {
    if (inPath.empty()) return unimap::cmd_find(cfg);  // computed inline
    std::ifstream is(inPath);
    if (!is) throw unimap::ConfigError("cannot open pairs file " + inPath);
    return nlohmann::json::parse(is);
}

}  // namespace

namespace {

int run(int argc, char** argv) {
    CLI::App app{
        "unimap: superstable parameters of f_c(x) = |x|^r + c, certified "
        "transversality, and monic algebraic-integer certificates"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string rtext = "2/1";
    std::string inPath;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--r", rtext, "exponent r as p/q with p > q >= 1");
        cmd->add_option("--max-period", cfg.maxPeriod, "largest period to scan");
        cmd->add_option("--precision-bits", cfg.precisionBits,
                        "working interval precision in bits");
        cmd->add_option("--grid-step", cfg.gridStep, "entropy scan step in c");
        cmd->add_option("--grid-resolution", cfg.gridResolution,
                        "root-scan grid cells (0 = 10*4^n capped at 1e6)");
        cmd->add_option("--max-certify-period", cfg.maxCertifyPeriod,
                        "certification period cap (0 = desk-scale default)");
        cmd->add_option("--entropy-n", cfg.entropyN, "max iterate for lap counts");
        cmd->add_option("--out", cfg.outPath,
                        "output path (default stdout; UNIMAP_OUT_DIR prefixes "
                        "relative paths)");
        cmd->add_option("--format", cfg.format, "json or csv (entropy-scan)");
    };

    CLI::App* find = app.add_subcommand("find", "locate superstable parameters");
    CLI::App* verify =
        app.add_subcommand("verify", "certify transversality D_c(f_c^n(0)) != 0");
    CLI::App* certify =
        app.add_subcommand("certify", "emit monic integer certificates for s");
    CLI::App* entropy =
        app.add_subcommand("entropy-scan", "lap-count entropy over the window");
    CLI::App* report =
        app.add_subcommand("report", "find + verify + certify in one bundle");
    for (CLI::App* cmd : {find, verify, certify, entropy, report}) add_common(cmd);
    verify->add_option("--in", inPath, "pairs JSON from a prior find");
    certify->add_option("--in", inPath, "pairs JSON from a prior find");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        cfg.r = unimap::RationalExponent::parse(rtext);
        if (find->parsed()) {
            emit(unimap::cmd_find(cfg).dump(2), cfg.outPath);
        } else if (verify->parsed()) {
            emit(unimap::cmd_verify(cfg, load_pairs(inPath, cfg)).dump(2), cfg.outPath);
        } else if (certify->parsed()) {
            emit(unimap::cmd_certify(cfg, load_pairs(inPath, cfg)).dump(2), cfg.outPath);
        } else if (entropy->parsed()) {
            emit(unimap::cmd_entropy(cfg), cfg.outPath);
        } else if (report->parsed()) {
            emit(unimap::cmd_report(cfg).dump(2), cfg.outPath);
        }
    } catch (const unimap::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const unimap::WindowTooCoarse& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const unimap::PrecisionExhausted& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (...) {
        std::cerr << "unexpected error\n";
        return 4;
    }
}
