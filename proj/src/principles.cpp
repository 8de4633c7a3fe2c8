#include "designlens/principles.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace designlens {

std::string_view to_string(Rule rule) {
    switch (rule) {
        case Rule::ADP: return "ADP";
        case Rule::SDP: return "SDP";
        case Rule::SAP_PAIN: return "SAP_PAIN";
        case Rule::SAP_USELESS: return "SAP_USELESS";
        case Rule::SRP: return "SRP";
        case Rule::DIP: return "DIP";
        case Rule::EMPTY_PACKAGE: return "EMPTY_PACKAGE";
    }
    return "UNKNOWN";
}

std::string_view to_string(Severity severity) {
    switch (severity) {
        case Severity::violation: return "violation";
        case Severity::advisory: return "advisory";
        case Severity::warning: return "warning";
    }
    return "unknown";
}

Severity severity_of(Rule rule) {
    switch (rule) {
        case Rule::ADP:
        case Rule::SDP: return Severity::violation;
        case Rule::EMPTY_PACKAGE: return Severity::warning;
        default: return Severity::advisory;
    }
}

namespace {

Finding make_finding(Rule rule, std::string locus, std::vector<Evidence> evidence) {
    return Finding{rule, severity_of(rule), std::move(locus), std::move(evidence)};
}

// Iterative Tarjan.
std::vector<std::vector<std::size_t>> strongly_connected(std::size_t n,
                                                         const std::vector<std::vector<std::size_t>>& adjacency) {
    constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::vector<std::vector<std::size_t>> components;
    std::size_t counter = 0;

    struct Frame {
        std::size_t node;
        std::size_t next_edge;
    };
    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != kUnvisited) continue;
        std::vector<Frame> frames{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            Frame& frame = frames.back();
            const std::size_t v = frame.node;
            if (frame.next_edge < adjacency[v].size()) {
                std::size_t w = adjacency[v][frame.next_edge++];
                if (index[w] == kUnvisited) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                std::vector<std::size_t> component;
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    component.push_back(w);
                } while (w != v);
                components.push_back(std::move(component));
            }
            frames.pop_back();
            if (!frames.empty()) {
                std::size_t parent = frames.back().node;
                low[parent] = std::min(low[parent], low[v]);
            }
        }
    }
    return components;
}

}  // namespace

std::vector<std::vector<std::string>> detect_cycles(const DependencyGraph& packages) {
    if (packages.granularity != Granularity::package)
        throw std::invalid_argument("cycle detection expects a package-granularity graph");

    std::map<QualifiedName, std::size_t> id;
    for (const auto& node : packages.nodes) id.emplace(node, id.size());
    std::vector<std::vector<std::size_t>> adjacency(id.size());
    for (const auto& edge : packages.edges) {
        if (edge.is_self()) continue;
        adjacency.at(id.at(edge.from)).push_back(id.at(edge.to));
    }

    std::vector<QualifiedName> names(id.size());
    for (const auto& [name, i] : id) names[i] = name;

    std::vector<std::vector<std::string>> groups;
    for (const auto& component : strongly_connected(names.size(), adjacency)) {
        if (component.size() < 2) continue;
        std::vector<std::string> members;
        for (auto i : component) members.push_back(names[i].str());
        std::sort(members.begin(), members.end());
        groups.push_back(std::move(members));
    }
    std::sort(groups.begin(), groups.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return groups;
}

std::vector<Finding> adp_violations(const DependencyGraph& packages) {
    std::vector<Finding> findings;
    for (auto& members : detect_cycles(packages)) {
        std::string locus = "{";
        for (std::size_t i = 0; i < members.size(); ++i) locus += (i ? ", " : "") + members[i];
        locus += "}";
        findings.push_back(make_finding(Rule::ADP, std::move(locus), {{"members", std::move(members)}}));
    }
    return findings;
}

std::vector<Finding> sdp_violations(const CodeModel& model, const MetricsReport& report) {
    std::vector<Finding> findings;
    for (const auto& edge : package_graph(model).edges) {
        const auto& from = report.per_package.at(edge.from.package).instability;
        const auto& to = report.per_package.at(edge.to.package).instability;
        if (!from || !to) continue;
        if (*to > *from)
            findings.push_back(make_finding(Rule::SDP, edge.from.package + "->" + edge.to.package,
                                            {{"from_instability", *from}, {"to_instability", *to}}));
    }
    return findings;
}

std::vector<Finding> sap_zones(const MetricsReport& report, const Thresholds& t) {
    std::vector<Finding> findings;
    const Rational one(1);
    for (const auto& [name, pkg] : report.per_package) {
        if (!pkg.abstractness || !pkg.instability || !pkg.distance) continue;
        const Rational& a = *pkg.abstractness;
        const Rational& i = *pkg.instability;
        const Rational& d = *pkg.distance;
        if (d < t.sap_distance_min) continue;
        std::vector<Evidence> evidence{{"abstractness", a}, {"instability", i}, {"distance", d}};
        if (a <= t.sap_extreme && i <= t.sap_extreme)
            findings.push_back(make_finding(Rule::SAP_PAIN, name, evidence));
        else if (a >= one - t.sap_extreme && i >= one - t.sap_extreme)
            findings.push_back(make_finding(Rule::SAP_USELESS, name, evidence));
    }
    return findings;
}

std::vector<Finding> srp_advisories(const CodeModel& model, const MetricsReport& report, const Thresholds& t) {
    std::vector<Finding> findings;
    for (const auto& name : model.class_names()) {
        const auto methods = static_cast<std::int64_t>(model.resolve(name).methods.size());
        const auto lcom_value = report.per_class.at(name).lcom;
        if (lcom_value >= t.srp_lcom_min && methods >= t.srp_method_min)
            findings.push_back(make_finding(Rule::SRP, name.str(), {{"lcom", lcom_value}, {"methods", methods}}));
    }
    return findings;
}

std::vector<Finding> dip_advisories(const CodeModel& model) {
    std::vector<Finding> findings;
    for (const auto& edge : class_graph(model).edges) {
        if (edge.kind == EdgeKind::inherit || edge.is_self()) continue;
        if (model.resolve(edge.from).is_abstract && !model.resolve(edge.to).is_abstract)
            findings.push_back(make_finding(Rule::DIP, edge.from.str() + "->" + edge.to.str(),
                                            {{"kind", std::string(to_string(edge.kind))}}));
    }
    return findings;
}

std::vector<Finding> empty_package_warnings(const CodeModel& model) {
    std::vector<Finding> findings;
    for (const auto& pkg : model.packages())
        if (pkg.classes.empty()) findings.push_back(make_finding(Rule::EMPTY_PACKAGE, pkg.name, {}));
    return findings;
}

std::vector<Finding> run_all(const CodeModel& model, const MetricsReport& report, const Thresholds& thresholds) {
    std::vector<Finding> all;
    auto append = [&all](std::vector<Finding> more) {
        all.insert(all.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
    };
    append(adp_violations(package_graph(model)));
    append(sdp_violations(model, report));
    append(sap_zones(report, thresholds));
    append(srp_advisories(model, report, thresholds));
    append(dip_advisories(model));
    append(empty_package_warnings(model));
    std::stable_sort(all.begin(), all.end(), [](const Finding& a, const Finding& b) {
        if (a.rule != b.rule) return a.rule < b.rule;
        return a.locus < b.locus;
    });
    return all;
}

}  // namespace designlens
