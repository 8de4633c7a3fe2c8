#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "designlens/metrics.hpp"
#include "designlens/model.hpp"
#include "designlens/rational.hpp"

namespace designlens {

// Declaration order is the report sort order.
enum class Rule { ADP, SDP, SAP_PAIN, SAP_USELESS, SRP, DIP, EMPTY_PACKAGE };
enum class Severity { violation, advisory, warning };

std::string_view to_string(Rule rule);
std::string_view to_string(Severity severity);
Severity severity_of(Rule rule);

using EvidenceValue = std::variant<std::int64_t, Rational, std::string, std::vector<std::string>>;

struct Evidence {
    std::string key;
    EvidenceValue value;

    friend bool operator==(const Evidence&, const Evidence&) = default;
};

/// One principle violation or advisory. `locus` is a package name, a
/// `pkg.Class`, an edge `from->to`, or for ADP the cycle `{a, b, ...}`.
struct Finding {
    Rule rule;
    Severity severity;
    std::string locus;
    std::vector<Evidence> evidence;

    friend bool operator==(const Finding&, const Finding&) = default;
};

/// Detector thresholds; the defaults are conventions, adjustable via config.
struct Thresholds {
    std::int64_t srp_lcom_min = 1;
    std::int64_t srp_method_min = 3;
    Rational sap_distance_min{7, 10};
    Rational sap_extreme{1, 5};  // closeness to the (A, I) corner

    friend bool operator==(const Thresholds&, const Thresholds&) = default;
};

/// Strongly connected components with two or more members. Members are
/// sorted; groups are ordered by their smallest member.
std::vector<std::vector<std::string>> detect_cycles(const DependencyGraph& packages);

std::vector<Finding> adp_violations(const DependencyGraph& packages);
std::vector<Finding> sdp_violations(const CodeModel& model, const MetricsReport& report);
std::vector<Finding> sap_zones(const MetricsReport& report, const Thresholds& thresholds);
std::vector<Finding> srp_advisories(const CodeModel& model, const MetricsReport& report, const Thresholds& thresholds);
std::vector<Finding> dip_advisories(const CodeModel& model);
std::vector<Finding> empty_package_warnings(const CodeModel& model);

/// Every check above, sorted by (rule, locus).
std::vector<Finding> run_all(const CodeModel& model, const MetricsReport& report, const Thresholds& thresholds);

}  // namespace designlens
