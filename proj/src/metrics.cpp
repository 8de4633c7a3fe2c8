#include "designlens/metrics.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace designlens {

namespace {

// Shared state for computing several metrics over one model.
class MetricContext {
public:
    explicit MetricContext(const CodeModel& model)
        : model_(model), classes_(class_graph(model)), packages_(package_graph(model, classes_)) {
        for (const auto& edge : classes_.edges) {
            if (edge.kind == EdgeKind::inherit) {
                ++children_[edge.to];
                continue;
            }
            if (edge.is_self()) continue;
            coupled_[edge.from].insert(edge.to);
            coupled_[edge.to].insert(edge.from);
        }
        for (const auto& edge : packages_.crossing) {
            incoming_[edge.to.package].insert(edge.from);
            outgoing_[edge.from.package].insert(edge.to);
        }
    }

    std::int64_t dit(const QualifiedName& name) {
        if (auto it = depth_.find(name); it != depth_.end()) return it->second;
        const ClassDef& cls = model_.resolve(name);
        std::int64_t depth = 0;
        for (const auto& parent : cls.parents) depth = std::max(depth, dit(parent) + 1);
        depth_.emplace(name, depth);
        return depth;
    }

    std::int64_t noc(const QualifiedName& name) const {
        model_.resolve(name);
        auto it = children_.find(name);
        return it == children_.end() ? 0 : it->second;
    }

    std::int64_t cbo(const QualifiedName& name) const {
        model_.resolve(name);
        auto it = coupled_.find(name);
        return it == coupled_.end() ? 0 : static_cast<std::int64_t>(it->second.size());
    }

    std::int64_t ca(std::string_view package) const { return count(incoming_, package); }
    std::int64_t ce(std::string_view package) const { return count(outgoing_, package); }

private:
    using ClassSets = std::map<std::string, std::set<QualifiedName>, std::less<>>;

    std::int64_t count(const ClassSets& sets, std::string_view package) const {
        if (!model_.find_package(package)) throw UnknownPackage("package '" + std::string(package) + "' is not declared");
        auto it = sets.find(package);
        return it == sets.end() ? 0 : static_cast<std::int64_t>(it->second.size());
    }

    const CodeModel& model_;
    DependencyGraph classes_;
    DependencyGraph packages_;
    std::map<QualifiedName, std::int64_t> children_;
    std::map<QualifiedName, std::set<QualifiedName>> coupled_;
    ClassSets incoming_;
    ClassSets outgoing_;
    std::map<QualifiedName, std::int64_t> depth_;
};

}  // namespace

std::int64_t wmc(const ClassDef& cls) {
    std::int64_t total = 0;
    for (const auto& method : cls.methods) total += method.weight;
    return total;
}

std::int64_t dit(const CodeModel& model, const QualifiedName& cls) { return MetricContext(model).dit(cls); }

std::int64_t noc(const CodeModel& model, const QualifiedName& cls) { return MetricContext(model).noc(cls); }

std::int64_t cbo(const CodeModel& model, const QualifiedName& cls) { return MetricContext(model).cbo(cls); }

std::int64_t lcom(const ClassDef& cls) {
    const auto& methods = cls.methods;
    if (methods.size() < 2) return 0;
    std::vector<std::set<std::string_view>> reads;
    reads.reserve(methods.size());
    for (const auto& m : methods) reads.emplace_back(m.reads.begin(), m.reads.end());

    std::int64_t disjoint = 0;
    std::int64_t sharing = 0;
    for (std::size_t i = 0; i < reads.size(); ++i) {
        for (std::size_t j = i + 1; j < reads.size(); ++j) {
            bool shares = std::any_of(reads[i].begin(), reads[i].end(),
                                      [&](std::string_view name) { return reads[j].count(name) != 0; });
            ++(shares ? sharing : disjoint);
        }
    }
    return std::max<std::int64_t>(disjoint - sharing, 0);
}

std::int64_t afferent(const CodeModel& model, std::string_view package) { return MetricContext(model).ca(package); }

std::int64_t efferent(const CodeModel& model, std::string_view package) { return MetricContext(model).ce(package); }

MaybeRational instability(std::int64_t ca, std::int64_t ce) {
    if (ca + ce == 0) return std::nullopt;
    return Rational(ce, ca + ce);
}

MaybeRational abstractness(const PackageDef& package) {
    if (package.classes.empty()) return std::nullopt;
    auto abstract_count = std::count_if(package.classes.begin(), package.classes.end(),
                                        [](const ClassDef& c) { return c.is_abstract; });
    return Rational(abstract_count, static_cast<std::int64_t>(package.classes.size()));
}

Rational main_sequence_distance(const Rational& a, const Rational& i) { return abs(a + i - Rational(1)); }

MetricsReport compute_all(const CodeModel& model) {
    MetricContext context(model);
    MetricsReport report;
    for (const auto& pkg : model.packages()) {
        for (const auto& cls : pkg.classes) {
            QualifiedName name{pkg.name, cls.name};
            ClassMetrics m;
            m.cls = name;
            m.wmc = wmc(cls);
            m.dit = context.dit(name);
            m.noc = context.noc(name);
            m.cbo = context.cbo(name);
            m.lcom = lcom(cls);
            report.per_class.emplace(name, m);
        }
        PackageMetrics p;
        p.package = pkg.name;
        p.ca = context.ca(pkg.name);
        p.ce = context.ce(pkg.name);
        p.instability = instability(p.ca, p.ce);
        p.abstractness = abstractness(pkg);
        if (p.instability && p.abstractness) p.distance = main_sequence_distance(*p.abstractness, *p.instability);
        report.per_package.emplace(pkg.name, p);
    }
    return report;
}

}  // namespace designlens
