#include "designlens/report.hpp"

#include <algorithm>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

namespace designlens {

namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

// Mean of the displayed (4-place) values, so the summary agrees with the
// rendered rows to within half a unit in the last place.
Rational rounded_mean(const std::vector<MetricValue>& values) {
    cpp_rational sum = 0;
    for (const auto& v : values) {
        Rational r = *Rational::from_decimal(render_value(v));
        sum += cpp_rational(cpp_int(r.numerator()), cpp_int(r.denominator()));
    }
    cpp_rational scaled = sum * 10000 / static_cast<long long>(values.size());
    cpp_int n = boost::multiprecision::numerator(scaled);
    cpp_int d = boost::multiprecision::denominator(scaled);
    bool negative = n < 0;
    if (negative) n = -n;
    cpp_int q = n / d;
    cpp_int r = n % d;
    if (2 * r > d || (2 * r == d && (q % 2) != 0)) ++q;
    if (negative) q = -q;
    return Rational(static_cast<std::int64_t>(q), 10000);
}

bool value_less(const MetricValue& a, const MetricValue& b) { return as_rational(a) < as_rational(b); }

std::vector<Aggregate> aggregate(const std::vector<std::string>& names, const std::vector<MetricEntry>& entries) {
    std::vector<Aggregate> out;
    for (const auto& name : names) {
        std::vector<MetricValue> defined;
        for (const auto& e : entries)
            if (e.name == name && e.value) defined.push_back(*e.value);
        if (defined.empty()) continue;
        auto [lo, hi] = std::minmax_element(defined.begin(), defined.end(), value_less);
        out.push_back(Aggregate{name, *lo, *hi, rounded_mean(defined)});
    }
    return out;
}

std::optional<MetricValue> maybe(const MaybeRational& value) {
    if (!value) return std::nullopt;
    return MetricValue(*value);
}

std::string json_string(std::string_view text) { return nlohmann::json(std::string(text)).dump(); }

std::string value_or(const std::optional<MetricValue>& value, std::string_view undefined) {
    return value ? render_value(*value) : std::string(undefined);
}

std::string evidence_value(const EvidenceValue& value, bool as_json) {
    struct Visitor {
        bool as_json;
        std::string operator()(std::int64_t v) const { return std::to_string(v); }
        std::string operator()(const Rational& v) const { return v.to_fixed(4); }
        std::string operator()(const std::string& v) const { return as_json ? json_string(v) : v; }
        std::string operator()(const std::vector<std::string>& v) const {
            std::string out = "[";
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) out += as_json ? "," : ", ";
                out += as_json ? json_string(v[i]) : v[i];
            }
            return out + "]";
        }
    };
    return std::visit(Visitor{as_json}, value);
}

std::string evidence_text(const Finding& f) {
    std::string out;
    for (std::size_t i = 0; i < f.evidence.size(); ++i) {
        if (i) out += "; ";
        out += f.evidence[i].key + "=" + evidence_value(f.evidence[i].value, false);
    }
    return out;
}

// JSON ------------------------------------------------------------------------

std::string render_json(const LayeredReport& report) {
    std::string out = "{\"layers\":[";
    for (std::size_t l = 0; l < report.layers.size(); ++l) {
        const Layer& layer = report.layers[l];
        if (l) out += ',';
        out += "{\"name\":" + json_string(layer.name) + ",\"metrics\":[";
        for (std::size_t i = 0; i < layer.metrics.size(); ++i) {
            const auto& m = layer.metrics[i];
            if (i) out += ',';
            out += "{\"subject\":" + json_string(m.subject) + ",\"name\":" + json_string(m.name) +
                   ",\"value\":" + value_or(m.value, "null") + "}";
        }
        out += "],\"aggregates\":{";
        for (std::size_t i = 0; i < layer.aggregates.size(); ++i) {
            const auto& a = layer.aggregates[i];
            if (i) out += ',';
            out += json_string(a.metric) + ":{\"min\":" + render_value(a.min) + ",\"max\":" + render_value(a.max) +
                   ",\"mean\":" + a.mean.to_fixed(4) + "}";
        }
        out += "},\"findings\":[";
        for (std::size_t i = 0; i < layer.findings.size(); ++i) {
            const auto& f = layer.findings[i];
            if (i) out += ',';
            out += "{\"rule\":" + json_string(to_string(f.rule)) + ",\"severity\":" + json_string(to_string(f.severity)) +
                   ",\"locus\":" + json_string(f.locus) + ",\"evidence\":{";
            for (std::size_t k = 0; k < f.evidence.size(); ++k) {
                if (k) out += ',';
                out += json_string(f.evidence[k].key) + ":" + evidence_value(f.evidence[k].value, true);
            }
            out += "}}";
        }
        out += "]}";
    }
    out += "]}\n";
    return out;
}

// CSV -------------------------------------------------------------------------

std::string csv_field(std::string_view text) {
    if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string render_csv(const LayeredReport& report) {
    std::ostringstream out;
    for (std::size_t l = 0; l < report.layers.size(); ++l) {
        const Layer& layer = report.layers[l];
        if (l) out << '\n';
        out << "# layer: " << layer.name << '\n';
        if (!layer.metric_names.empty()) {
            out << "subject,metric,value\n";
            for (const auto& m : layer.metrics)
                out << csv_field(m.subject) << ',' << csv_field(m.name) << ',' << value_or(m.value, "") << '\n';
            out << "aggregate,min,max,mean\n";
            for (const auto& a : layer.aggregates)
                out << csv_field(a.metric) << ',' << render_value(a.min) << ',' << render_value(a.max) << ','
                    << a.mean.to_fixed(4) << '\n';
        } else {
            out << "rule,severity,locus,evidence\n";
            for (const auto& f : layer.findings)
                out << to_string(f.rule) << ',' << to_string(f.severity) << ',' << csv_field(f.locus) << ','
                    << csv_field(evidence_text(f)) << '\n';
        }
    }
    return out.str();
}

// Text ------------------------------------------------------------------------

struct Style {
    bool color;
    std::string heading(std::string_view text) const {
        return color ? "\x1b[1m" + std::string(text) + "\x1b[0m" : std::string(text);
    }
    std::string severity(Severity s) const {
        std::string label = "[" + std::string(to_string(s)) + "]";
        if (!color) return label;
        const char* code = s == Severity::violation ? "\x1b[31m" : s == Severity::warning ? "\x1b[33m" : "\x1b[36m";
        return code + label + "\x1b[0m";
    }
};

void write_table(std::ostringstream& out, const std::vector<std::vector<std::string>>& rows) {
    if (rows.empty()) return;
    std::vector<std::size_t> width(rows.front().size(), 0);
    for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    for (const auto& row : rows) {
        std::string line = "  ";
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c == 0) {
                line += row[c] + std::string(width[c] - row[c].size(), ' ');
            } else {
                line += "  " + std::string(width[c] - row[c].size(), ' ') + row[c];
            }
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out << line << '\n';
    }
}

std::string render_text(const LayeredReport& report, const Style& style) {
    std::ostringstream out;
    for (std::size_t l = 0; l < report.layers.size(); ++l) {
        const Layer& layer = report.layers[l];
        if (l) out << '\n';
        out << style.heading("L" + std::to_string(l + 1) + " " + layer.name) << '\n';
        if (!layer.metric_names.empty()) {
            std::vector<std::vector<std::string>> rows;
            std::vector<std::string> header{"subject"};
            header.insert(header.end(), layer.metric_names.begin(), layer.metric_names.end());
            rows.push_back(header);
            const std::size_t columns = layer.metric_names.size();
            for (std::size_t i = 0; i < layer.metrics.size(); i += columns) {
                std::vector<std::string> row{layer.metrics[i].subject};
                for (std::size_t c = 0; c < columns; ++c) row.push_back(value_or(layer.metrics[i + c].value, "-"));
                rows.push_back(std::move(row));
            }
            for (std::string_view stat : {"min", "max", "mean"}) {
                std::vector<std::string> row{"(" + std::string(stat) + ")"};
                for (const auto& name : layer.metric_names) {
                    const Aggregate* a = layer.aggregate(name);
                    if (!a) {
                        row.push_back("-");
                    } else if (stat == "min") {
                        row.push_back(render_value(a->min));
                    } else if (stat == "max") {
                        row.push_back(render_value(a->max));
                    } else {
                        row.push_back(a->mean.to_fixed(4));
                    }
                }
                rows.push_back(std::move(row));
            }
            write_table(out, rows);
        }
        out << "  findings: " << layer.finding_count() << '\n';
        for (const auto& f : layer.findings) {
            out << "  " << style.severity(f.severity) << ' ' << to_string(f.rule) << ' ' << f.locus;
            std::string evidence = evidence_text(f);
            if (!evidence.empty()) out << "  " << evidence;
            out << '\n';
        }
    }
    return out.str();
}

}  // namespace

Rational as_rational(const MetricValue& value) {
    if (const auto* i = std::get_if<std::int64_t>(&value)) return Rational(*i);
    return std::get<Rational>(value);
}

std::string render_value(const MetricValue& value) {
    if (const auto* i = std::get_if<std::int64_t>(&value)) return std::to_string(*i);
    return std::get<Rational>(value).to_fixed(4);
}

const Aggregate* Layer::aggregate(std::string_view metric) const {
    for (const auto& a : aggregates)
        if (a.metric == metric) return &a;
    return nullptr;
}

LayeredReport build_report([[maybe_unused]] const CodeModel& model, const MetricsReport& metrics,
                           const std::vector<Finding>& findings) {
    LayeredReport report;
    for (std::size_t i = 0; i < kLayerNames.size(); ++i) report.layers[i].name = std::string(kLayerNames[i]);

    Layer& design = report.layers[0];
    Layer& relationships = report.layers[1];
    Layer& packaging = report.layers[2];
    Layer& principles = report.layers[3];

    design.metric_names = {"wmc", "lcom"};
    relationships.metric_names = {"dit", "noc", "cbo"};
    packaging.metric_names = {"ca", "ce", "instability", "abstractness", "distance"};

    for (const auto& [name, m] : metrics.per_class) {
        const std::string subject = name.str();
        design.metrics.push_back({subject, "wmc", MetricValue(m.wmc)});
        design.metrics.push_back({subject, "lcom", MetricValue(m.lcom)});
        relationships.metrics.push_back({subject, "dit", MetricValue(m.dit)});
        relationships.metrics.push_back({subject, "noc", MetricValue(m.noc)});
        relationships.metrics.push_back({subject, "cbo", MetricValue(m.cbo)});
    }
    for (const auto& [name, p] : metrics.per_package) {
        packaging.metrics.push_back({name, "ca", MetricValue(p.ca)});
        packaging.metrics.push_back({name, "ce", MetricValue(p.ce)});
        packaging.metrics.push_back({name, "instability", maybe(p.instability)});
        packaging.metrics.push_back({name, "abstractness", maybe(p.abstractness)});
        packaging.metrics.push_back({name, "distance", maybe(p.distance)});
    }
    for (Layer* layer : {&design, &relationships, &packaging})
        layer->aggregates = aggregate(layer->metric_names, layer->metrics);

    principles.findings = findings;
    return report;
}

std::optional<Format> parse_format(std::string_view name) {
    if (name == "text") return Format::text;
    if (name == "json") return Format::json;
    if (name == "csv") return Format::csv;
    return std::nullopt;
}

std::string render(const LayeredReport& report, Format format, RenderOptions options) {
    switch (format) {
        case Format::json: return render_json(report);
        case Format::csv: return render_csv(report);
        case Format::text: break;
    }
    return render_text(report, Style{options.color});
}

}  // namespace designlens
