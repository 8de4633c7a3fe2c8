#include "designlens/gates.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <limits>

#include <json.hpp>

namespace designlens {

ConfigError::ConfigError(std::string path, std::string message)
    : std::runtime_error(path + ": " + message), path_(std::move(path)) {}

std::string_view to_string(Comparator cmp) {
    switch (cmp) {
        case Comparator::le: return "<=";
        case Comparator::ge: return ">=";
        case Comparator::eq: return "=";
    }
    return "?";
}

namespace {

using nlohmann::json;

constexpr std::array<std::string_view, 10> kMetrics = {"wmc", "lcom",        "dit",          "noc",     "cbo",
                                                       "ca",  "ce",          "instability",  "abstractness", "distance"};
constexpr std::array<std::string_view, 3> kAggregatePrefixes = {"max_", "min_", "mean_"};
constexpr std::array<std::string_view, 7> kRules = {"adp", "sdp", "sap_pain", "sap_useless", "srp", "dip",
                                                    "empty_package"};
constexpr std::array<std::string_view, 3> kSeverities = {"violation", "advisory", "warning"};

template <std::size_t N>
bool contains(const std::array<std::string_view, N>& list, std::string_view value) {
    return std::find(list.begin(), list.end(), value) != list.end();
}

std::string lower(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

bool compare(const Rational& value, Comparator cmp, const Rational& limit) {
    switch (cmp) {
        case Comparator::le: return value <= limit;
        case Comparator::ge: return value >= limit;
        case Comparator::eq: return value == limit;
    }
    return false;
}

std::optional<Comparator> parse_comparator(std::string_view text) {
    if (text == "<=" || text == "≤") return Comparator::le;
    if (text == ">=" || text == "≥") return Comparator::ge;
    if (text == "=" || text == "==") return Comparator::eq;
    return std::nullopt;
}

Rational non_negative_number(const json& value, const std::string& path) {
    if (!value.is_number()) throw ConfigError(path, "expected a number");
    std::optional<Rational> r;
    if (value.is_number_unsigned()) {
        auto u = value.get<std::uint64_t>();
        if (u > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
            throw ConfigError(path, "number out of range");
        r = Rational(static_cast<std::int64_t>(u));
    } else if (value.is_number_integer()) {
        r = Rational(value.get<std::int64_t>());
    } else {
        r = Rational::from_double(value.get<double>());
    }
    if (!r) throw ConfigError(path, "number out of range");
    if (*r < Rational(0)) throw ConfigError(path, "must be non-negative");
    return *r;
}

std::int64_t non_negative_integer(const json& value, const std::string& path) {
    Rational r = non_negative_number(value, path);
    if (!r.is_integer()) throw ConfigError(path, "expected an integer");
    return r.numerator();
}

std::string format_limit(const Rational& limit) {
    return limit.is_integer() ? std::to_string(limit.numerator()) : limit.to_fixed(4);
}

// Gates judge the values a reader sees, so 1/3 compares as 0.3333.
Rational displayed(const MetricValue& value) { return *Rational::from_decimal(render_value(value)); }

std::size_t count_findings(const std::vector<Finding>& findings, std::string_view counter) {
    auto count_if = [&](auto pred) {
        return static_cast<std::size_t>(std::count_if(findings.begin(), findings.end(), pred));
    };
    if (counter == "findings") return findings.size();
    if (counter == "violations") return count_if([](const Finding& f) { return f.severity == Severity::violation; });
    if (counter == "advisories") return count_if([](const Finding& f) { return f.severity == Severity::advisory; });
    if (counter == "warnings") return count_if([](const Finding& f) { return f.severity == Severity::warning; });
    std::string rule = counter == "adp_cycles" ? "adp" : std::string(counter.substr(0, counter.size() - 9));
    return count_if([&](const Finding& f) { return lower(to_string(f.rule)) == rule; });
}

bool is_counter(std::string_view metric) {
    if (metric == "adp_cycles" || metric == "findings" || metric == "violations" || metric == "advisories" ||
        metric == "warnings")
        return true;
    constexpr std::string_view suffix = "_findings";
    if (metric.size() > suffix.size() && metric.substr(metric.size() - suffix.size()) == suffix)
        return contains(kRules, metric.substr(0, metric.size() - suffix.size()));
    return false;
}

}  // namespace

bool is_gate_metric(std::string_view metric) {
    if (contains(kMetrics, metric) || is_counter(metric)) return true;
    for (auto prefix : kAggregatePrefixes)
        if (metric.substr(0, prefix.size()) == prefix && contains(kMetrics, metric.substr(prefix.size()))) return true;
    return false;
}

std::string normalize_fail_on(std::string_view token) {
    std::string t = lower(token);
    if (!contains(kRules, t) && !contains(kSeverities, t))
        throw ConfigError("fail_on", "unknown rule or severity '" + std::string(token) + "'");
    return t;
}

GateConfig load_config(std::string_view document) {
    json root;
    try {
        root = json::parse(document.begin(), document.end());
    } catch (const json::parse_error& e) {
        throw ConfigError("$", std::string("malformed config document: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("$", "expected an object");

    GateConfig config;
    for (const auto& [key, value] : root.items()) {
        if (key == "thresholds") {
            if (!value.is_object()) throw ConfigError("thresholds", "expected an object");
            for (const auto& [name, v] : value.items()) {
                const std::string path = "thresholds." + name;
                if (name == "srp_lcom_min") {
                    config.thresholds.srp_lcom_min = non_negative_integer(v, path);
                } else if (name == "srp_method_min") {
                    config.thresholds.srp_method_min = non_negative_integer(v, path);
                } else if (name == "sap_distance_min") {
                    config.thresholds.sap_distance_min = non_negative_number(v, path);
                } else if (name == "sap_extreme") {
                    Rational r = non_negative_number(v, path);
                    if (!(r < Rational(1, 2))) throw ConfigError(path, "must be below 0.5");
                    config.thresholds.sap_extreme = r;
                } else {
                    throw ConfigError(path, "unknown key");
                }
            }
        } else if (key == "gates") {
            if (!value.is_array()) throw ConfigError("gates", "expected an array");
            for (std::size_t i = 0; i < value.size(); ++i) {
                const std::string path = "gates[" + std::to_string(i) + "]";
                const auto& g = value[i];
                if (!g.is_array() || g.size() != 3) throw ConfigError(path, "expected [metric, comparator, limit]");
                if (!g[0].is_string()) throw ConfigError(path + "[0]", "expected a metric name");
                std::string metric = lower(g[0].get<std::string>());
                if (!is_gate_metric(metric)) throw ConfigError(path + "[0]", "unknown gate metric '" + metric + "'");
                if (!g[1].is_string()) throw ConfigError(path + "[1]", "expected a comparator");
                auto cmp = parse_comparator(g[1].get<std::string>());
                if (!cmp) throw ConfigError(path + "[1]", "comparator must be <=, >= or =");
                config.gates.push_back(Gate{metric, *cmp, non_negative_number(g[2], path + "[2]")});
            }
        } else if (key == "fail_on") {
            if (!value.is_array()) throw ConfigError("fail_on", "expected an array");
            for (std::size_t i = 0; i < value.size(); ++i) {
                const std::string path = "fail_on[" + std::to_string(i) + "]";
                if (!value[i].is_string()) throw ConfigError(path, "expected a string");
                try {
                    config.fail_on.insert(normalize_fail_on(value[i].get<std::string>()));
                } catch (const ConfigError&) {
                    throw ConfigError(path, "unknown rule or severity '" + value[i].get<std::string>() + "'");
                }
            }
        } else {
            throw ConfigError(key, "unknown key");
        }
    }
    return config;
}

GateOutcome evaluate_gates(const LayeredReport& report, const GateConfig& config) {
    GateOutcome outcome;
    const auto& findings = report.layers[3].findings;

    for (const auto& gate : config.gates) {
        const std::string label =
            "gate " + gate.metric + " " + std::string(to_string(gate.comparator)) + " " + format_limit(gate.limit);
        if (is_counter(gate.metric)) {
            auto n = static_cast<std::int64_t>(count_findings(findings, gate.metric));
            if (!compare(Rational(n), gate.comparator, gate.limit))
                outcome.failures.push_back(label + " failed: count is " + std::to_string(n));
            continue;
        }
        std::string_view stat;
        std::string_view metric = gate.metric;
        for (auto prefix : kAggregatePrefixes) {
            if (metric.substr(0, prefix.size()) == prefix) {
                stat = prefix.substr(0, prefix.size() - 1);
                metric.remove_prefix(prefix.size());
                break;
            }
        }
        for (const auto& layer : report.layers) {
            if (std::find(layer.metric_names.begin(), layer.metric_names.end(), metric) == layer.metric_names.end())
                continue;
            if (stat.empty()) {
                for (const auto& entry : layer.metrics) {
                    if (entry.name != metric || !entry.value) continue;
                    if (!compare(displayed(*entry.value), gate.comparator, gate.limit))
                        outcome.failures.push_back(label + " failed: " + entry.subject + " has " + entry.name + " " +
                                                   render_value(*entry.value));
                }
            } else if (const Aggregate* a = layer.aggregate(metric)) {
                MetricValue value = stat == "max" ? a->max : stat == "min" ? a->min : MetricValue(a->mean);
                if (!compare(displayed(value), gate.comparator, gate.limit))
                    outcome.failures.push_back(label + " failed: " + std::string(stat) + " is " + render_value(value));
            }
        }
    }

    for (const auto& f : findings) {
        const std::string rule = lower(to_string(f.rule));
        const std::string severity(to_string(f.severity));
        if (config.fail_on.count(rule) || config.fail_on.count(severity)) {
            outcome.failures.push_back("fail-on " + (config.fail_on.count(rule) ? rule : severity) + ": " +
                                       std::string(to_string(f.rule)) + " " + f.locus);
        } else if (config.strict && f.severity == Severity::warning) {
            outcome.failures.push_back("strict: warning " + std::string(to_string(f.rule)) + " " + f.locus);
        }
    }
    return outcome;
}

}  // namespace designlens
