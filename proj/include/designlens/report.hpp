#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "designlens/metrics.hpp"
#include "designlens/model.hpp"
#include "designlens/principles.hpp"
#include "designlens/rational.hpp"

namespace designlens {

/// Integer counts stay integers; ratios stay exact.
using MetricValue = std::variant<std::int64_t, Rational>;

Rational as_rational(const MetricValue& value);

struct MetricEntry {
    std::string subject;
    std::string name;
    std::optional<MetricValue> value;  // nullopt = UNDEFINED

    friend bool operator==(const MetricEntry&, const MetricEntry&) = default;
};

/// Summary over the defined values of one metric. `mean` is the exact mean
/// rounded half-even to four decimal places.
struct Aggregate {
    std::string metric;
    MetricValue min;
    MetricValue max;
    Rational mean;

    friend bool operator==(const Aggregate&, const Aggregate&) = default;
};

struct Layer {
    std::string name;
    std::vector<std::string> metric_names;  // column order
    std::vector<MetricEntry> metrics;       // subject-major, then column order
    std::vector<Aggregate> aggregates;      // only metrics with a defined value
    std::vector<Finding> findings;

    std::size_t finding_count() const { return findings.size(); }
    const Aggregate* aggregate(std::string_view metric) const;

    friend bool operator==(const Layer&, const Layer&) = default;
};

inline constexpr std::array<std::string_view, 4> kLayerNames = {"class design", "relationships", "packaging",
                                                                 "principles"};

/// Four layers in fixed order: class design (wmc, lcom), relationships
/// (dit, noc, cbo), packaging (ca, ce, instability, abstractness, distance)
/// and principles (the findings).
struct LayeredReport {
    std::array<Layer, 4> layers;

    friend bool operator==(const LayeredReport&, const LayeredReport&) = default;
};

LayeredReport build_report(const CodeModel& model, const MetricsReport& metrics, const std::vector<Finding>& findings);

enum class Format { text, json, csv };

std::optional<Format> parse_format(std::string_view name);

struct RenderOptions {
    bool color = false;  // ANSI styling, text format only
};

std::string render(const LayeredReport& report, Format format, RenderOptions options = {});

/// `3`, `0.3333`, or the empty optional for UNDEFINED.
std::string render_value(const MetricValue& value);

}  // namespace designlens
