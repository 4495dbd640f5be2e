#pragma once

#include <stdexcept>
#include <string>

namespace unimap {

// A critical-orbit value straddles 0 at the working precision: either a true
// critical collision (period divisor) or the parameter interval is too wide.
struct SignUndecidable : std::runtime_error {
    unsigned step;
    explicit SignUndecidable(unsigned j)
        : std::runtime_error("sign of xi_" + std::to_string(j) +
                             " undecidable at current precision"),
          step(j) {}
};

// The precision ladder hit its hard cap. The certified facts this artifact
// refines toward hold exactly, so reaching the cap signals a bug upstream.
struct PrecisionExhausted : std::runtime_error {
    explicit PrecisionExhausted(const std::string& what)
        : std::runtime_error("precision ladder exhausted: " + what) {}
};

// Two roots of f_c^n(0) share one scan cell.
struct WindowTooCoarse : std::runtime_error {
    explicit WindowTooCoarse(const std::string& what)
        : std::runtime_error("grid too coarse: " + what) {}
};

// The monic-dominance invariant of the elimination cascade failed. The
// pipeline asserts the invariant at every step instead of proving it.
struct DominanceViolation : std::logic_error {
    explicit DominanceViolation(const std::string& what)
        : std::logic_error("monic dominance violated: " + what) {}
};

// Intermediate polynomial exceeded the configured term cap.
struct DegreeBlowup : std::runtime_error {
    explicit DegreeBlowup(const std::string& what)
        : std::runtime_error("term cap exceeded: " + what) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what)
        : std::runtime_error(what) {}
};

}  // namespace unimap
