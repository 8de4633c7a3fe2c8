#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "designlens/principles.hpp"
#include "designlens/rational.hpp"
#include "designlens/report.hpp"

namespace designlens {

enum class Comparator { le, ge, eq };

std::string_view to_string(Comparator cmp);

/// `(metric, comparator, limit)`. The metric is one of
///   - a per-subject metric (`dit`, `instability`, ...): every defined value
///     must satisfy the comparison;
///   - an aggregate (`max_dit`, `min_cbo`, `mean_wmc`);
///   - a finding count (`adp_cycles`, `<rule>_findings`, `findings`,
///     `violations`, `advisories`, `warnings`).
struct Gate {
    std::string metric;
    Comparator comparator = Comparator::le;
    Rational limit;

    friend bool operator==(const Gate&, const Gate&) = default;
};

struct GateConfig {
    Thresholds thresholds;
    std::vector<Gate> gates;
    std::set<std::string> fail_on;  // lower-case rule names and severities
    bool strict = false;            // warnings fail the run

    friend bool operator==(const GateConfig&, const GateConfig&) = default;
};

class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string path, std::string message);
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

/// Parses the config document and merges it over the defaults. Unknown keys
/// and out-of-range values throw ConfigError naming the key path.
GateConfig load_config(std::string_view document);

/// Normalizes and checks a fail-on token (`adp`, `SDP`, `warning`, ...).
std::string normalize_fail_on(std::string_view token);

bool is_gate_metric(std::string_view metric);

struct GateOutcome {
    std::vector<std::string> failures;  // one human-readable line each
    bool failed() const { return !failures.empty(); }
};

/// Evaluates gates, fail-on rules/severities and strict mode against the
/// rendered report values. UNDEFINED values never trip a gate.
GateOutcome evaluate_gates(const LayeredReport& report, const GateConfig& config);

}  // namespace designlens
