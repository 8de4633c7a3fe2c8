#include "designlens/model.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace designlens {

bool is_identifier(std::string_view text) {
    if (text.empty()) return false;
    auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
    auto digit = [](char c) { return c >= '0' && c <= '9'; };
    if (!alpha(text.front())) return false;
    return std::all_of(text.begin() + 1, text.end(), [&](char c) { return alpha(c) || digit(c); });
}

std::optional<QualifiedName> QualifiedName::parse(std::string_view text) {
    auto dot = text.find('.');
    if (dot == std::string_view::npos) return std::nullopt;
    auto pkg = text.substr(0, dot);
    auto cls = text.substr(dot + 1);
    if (!is_identifier(pkg) || !is_identifier(cls)) return std::nullopt;
    return QualifiedName{std::string(pkg), std::string(cls)};
}

std::string_view to_string(AttributeKind kind) {
    switch (kind) {
        case AttributeKind::association: return "association";
        case AttributeKind::aggregation: return "aggregation";
        case AttributeKind::none: return "none";
    }
    return "none";
}

std::string_view to_string(EdgeKind kind) {
    switch (kind) {
        case EdgeKind::inherit: return "inherit";
        case EdgeKind::aggregation: return "aggregation";
        case EdgeKind::association: return "association";
        case EdgeKind::use: return "use";
    }
    return "use";
}

std::string_view to_string(ValidationCode code) {
    switch (code) {
        case ValidationCode::DuplicatePackage: return "DuplicatePackage";
        case ValidationCode::DuplicateClass: return "DuplicateClass";
        case ValidationCode::DuplicateMember: return "DuplicateMember";
        case ValidationCode::DuplicateEntry: return "DuplicateEntry";
        case ValidationCode::InvalidName: return "InvalidName";
        case ValidationCode::InvalidWeight: return "InvalidWeight";
        case ValidationCode::InvalidAttributeKind: return "InvalidAttributeKind";
        case ValidationCode::UnresolvedReference: return "UnresolvedReference";
        case ValidationCode::InheritanceCycle: return "InheritanceCycle";
        case ValidationCode::AbstractMethodInConcreteClass: return "AbstractMethodInConcreteClass";
        case ValidationCode::UnknownReadAttribute: return "UnknownReadAttribute";
    }
    return "Unknown";
}

const AttributeDef* ClassDef::find_attribute(std::string_view attribute) const {
    for (const auto& a : attributes)
        if (a.name == attribute) return &a;
    return nullptr;
}

std::string ValidationError::format() const {
    std::ostringstream out;
    if (!origin.empty()) out << origin << ':';
    if (position) out << position->line << ':' << position->column << ':';
    if (!origin.empty() || position) out << ' ';
    out << "error[" << to_string(code) << "]: " << locus << ": " << message;
    return out.str();
}

namespace {

std::string join_errors(const std::vector<ValidationError>& errors) {
    std::string text = "model validation failed";
    for (const auto& e : errors) text += "\n  " + e.format();
    return text;
}

class Validator {
public:
    explicit Validator(const std::vector<PackageDef>& packages) : packages_(packages) {}

    std::vector<ValidationError> run() {
        index_declarations();
        for (const auto& pkg : packages_)
            for (const auto& cls : pkg.classes) check_class(pkg, cls);
        check_inheritance_cycles();
        return std::move(errors_);
    }

private:
    void add(ValidationCode code, std::string locus, std::string message) {
        errors_.push_back(ValidationError{code, std::move(locus), std::move(message), std::nullopt, {}});
    }

    void index_declarations() {
        std::set<std::string> seen_packages;
        for (std::size_t p = 0; p < packages_.size(); ++p) {
            const auto& pkg = packages_[p];
            if (!is_identifier(pkg.name))
                add(ValidationCode::InvalidName, pkg.name, "package name '" + pkg.name + "' is not an identifier");
            // a repeated package keeps the first declaration's classes in the index
            bool first = seen_packages.insert(pkg.name).second;
            if (!first)
                add(ValidationCode::DuplicatePackage, pkg.name, "package '" + pkg.name + "' is declared more than once");
            std::set<std::string> seen_classes;
            for (const auto& cls : pkg.classes) {
                QualifiedName qn{pkg.name, cls.name};
                if (!is_identifier(cls.name))
                    add(ValidationCode::InvalidName, qn.str(), "class name '" + cls.name + "' is not an identifier");
                if (!seen_classes.insert(cls.name).second) {
                    add(ValidationCode::DuplicateClass, qn.str(),
                        "class '" + cls.name + "' is declared more than once in package '" + pkg.name + "'");
                    continue;
                }
                if (first) declared_.emplace(qn, &cls);
            }
        }
    }

    bool resolves(const QualifiedName& name) const { return declared_.count(name) != 0; }

    void check_reference(const QualifiedName& ref, const std::string& locus, std::string_view role) {
        if (!resolves(ref))
            add(ValidationCode::UnresolvedReference, locus,
                std::string(role) + " '" + ref.str() + "' does not name a declared class");
    }

    void check_class(const PackageDef& pkg, const ClassDef& cls) {
        QualifiedName self{pkg.name, cls.name};
        const std::string locus = self.str();

        std::set<QualifiedName> parents;
        for (const auto& parent : cls.parents) {
            if (!parents.insert(parent).second) {
                add(ValidationCode::DuplicateEntry, locus, "parent '" + parent.str() + "' is listed more than once");
                continue;
            }
            if (parent == self) continue;  // reported as an inheritance cycle
            check_reference(parent, locus, "parent");
        }

        std::set<std::string> attribute_names;
        for (const auto& attr : cls.attributes) {
            const std::string member = locus + "." + attr.name;
            if (!is_identifier(attr.name))
                add(ValidationCode::InvalidName, member, "attribute name '" + attr.name + "' is not an identifier");
            if (!attribute_names.insert(attr.name).second)
                add(ValidationCode::DuplicateMember, member, "attribute '" + attr.name + "' is declared more than once");
            if (attr.target.has_value() == (attr.kind == AttributeKind::none))
                add(ValidationCode::InvalidAttributeKind, member,
                    attr.target ? "class-typed attribute must be association or aggregation"
                                : "primitive attribute must have kind none");
            if (attr.target) check_reference(*attr.target, member, "attribute type");
        }

        std::set<std::string> method_names;
        for (const auto& method : cls.methods) {
            const std::string member = locus + "." + method.name;
            if (!is_identifier(method.name))
                add(ValidationCode::InvalidName, member, "method name '" + method.name + "' is not an identifier");
            if (!method_names.insert(method.name).second)
                add(ValidationCode::DuplicateMember, member, "method '" + method.name + "' is declared more than once");
            if (method.weight < 1)
                add(ValidationCode::InvalidWeight, member,
                    "weight " + std::to_string(method.weight) + " is not a positive integer");
            if (method.is_abstract && !cls.is_abstract)
                add(ValidationCode::AbstractMethodInConcreteClass, member,
                    "abstract method '" + method.name + "' in concrete class '" + locus + "'");
            std::set<std::string> reads;
            for (const auto& read : method.reads) {
                if (!reads.insert(read).second) {
                    add(ValidationCode::DuplicateEntry, member, "read '" + read + "' is listed more than once");
                    continue;
                }
                if (!cls.find_attribute(read))
                    add(ValidationCode::UnknownReadAttribute, member,
                        "reads '" + read + "', which is not an attribute of '" + locus + "'");
            }
            std::set<QualifiedName> uses;
            for (const auto& used : method.uses) {
                if (!uses.insert(used).second) {
                    add(ValidationCode::DuplicateEntry, member, "use '" + used.str() + "' is listed more than once");
                    continue;
                }
                check_reference(used, member, "used class");
            }
        }
    }

    // Tarjan over resolved parent links; any component with a cycle is one error.
    void check_inheritance_cycles() {
        std::map<QualifiedName, int> index, low;
        std::set<QualifiedName> on_stack;
        std::vector<QualifiedName> stack;
        int counter = 0;
        std::vector<std::vector<QualifiedName>> cycles;

        std::function<void(const QualifiedName&)> visit = [&](const QualifiedName& v) {
            index[v] = low[v] = counter++;
            stack.push_back(v);
            on_stack.insert(v);
            for (const auto& w : declared_.at(v)->parents) {
                if (!resolves(w)) continue;
                if (!index.count(w)) {
                    visit(w);
                    low[v] = std::min(low[v], low[w]);
                } else if (on_stack.count(w)) {
                    low[v] = std::min(low[v], index[w]);
                }
            }
            if (low[v] == index[v]) {
                std::vector<QualifiedName> component;
                QualifiedName w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack.erase(w);
                    component.push_back(w);
                } while (!(w == v));
                const auto& parents = declared_.at(v)->parents;
                bool self_loop = std::find(parents.begin(), parents.end(), v) != parents.end();
                if (component.size() > 1 || self_loop) {
                    std::sort(component.begin(), component.end());
                    cycles.push_back(std::move(component));
                }
            }
        };
        for (const auto& [name, cls] : declared_)
            if (!index.count(name)) visit(name);

        std::sort(cycles.begin(), cycles.end());
        for (const auto& cycle : cycles) {
            std::string members;
            for (const auto& m : cycle) members += (members.empty() ? "" : ", ") + m.str();
            add(ValidationCode::InheritanceCycle, cycle.front().str(), "inheritance cycle among {" + members + "}");
        }
    }

    const std::vector<PackageDef>& packages_;
    std::map<QualifiedName, const ClassDef*> declared_;
    std::vector<ValidationError> errors_;
};

}  // namespace

ValidationFailure::ValidationFailure(std::vector<ValidationError> errors)
    : std::runtime_error(join_errors(errors)), errors_(std::move(errors)) {}

std::vector<ValidationError> validate(const std::vector<PackageDef>& packages) {
    return Validator(packages).run();
}

CodeModel build_model(std::vector<PackageDef> packages) {
    auto errors = validate(packages);
    if (!errors.empty()) throw ValidationFailure(std::move(errors));
    return CodeModel(std::move(packages));
}

CodeModel::CodeModel(std::vector<PackageDef> packages) : packages_(std::move(packages)) {
    for (std::size_t p = 0; p < packages_.size(); ++p)
        for (std::size_t c = 0; c < packages_[p].classes.size(); ++c)
            index_.emplace(QualifiedName{packages_[p].name, packages_[p].classes[c].name}, std::make_pair(p, c));
    sorted_classes_.reserve(index_.size());
    for (const auto& [name, where] : index_) sorted_classes_.push_back(name);
}

const ClassDef* CodeModel::find(const QualifiedName& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return nullptr;
    return &packages_[it->second.first].classes[it->second.second];
}

const ClassDef& CodeModel::resolve(const QualifiedName& name) const {
    if (const auto* cls = find(name)) return *cls;
    throw NotFound("class '" + name.str() + "' is not declared");
}

const PackageDef* CodeModel::find_package(std::string_view name) const {
    for (const auto& pkg : packages_)
        if (pkg.name == name) return &pkg;
    return nullptr;
}

const ClassDef& resolve(const CodeModel& model, const QualifiedName& name) { return model.resolve(name); }

DependencyGraph class_graph(const CodeModel& model) {
    DependencyGraph graph;
    graph.granularity = Granularity::cls;
    graph.nodes = model.class_names();

    std::set<DependencyEdge> edges;
    for (const auto& pkg : model.packages()) {
        for (const auto& cls : pkg.classes) {
            QualifiedName from{pkg.name, cls.name};
            for (const auto& parent : cls.parents) edges.insert({from, parent, EdgeKind::inherit});
            for (const auto& attr : cls.attributes) {
                if (!attr.target) continue;
                auto kind = attr.kind == AttributeKind::aggregation ? EdgeKind::aggregation : EdgeKind::association;
                edges.insert({from, *attr.target, kind});
            }
            for (const auto& method : cls.methods)
                for (const auto& used : method.uses) edges.insert({from, used, EdgeKind::use});
        }
    }
    graph.edges.assign(edges.begin(), edges.end());
    return graph;
}

DependencyGraph package_graph(const CodeModel& model, const DependencyGraph& classes) {
    DependencyGraph graph;
    graph.granularity = Granularity::package;
    for (const auto& pkg : model.packages()) graph.nodes.push_back(QualifiedName{pkg.name, {}});
    std::sort(graph.nodes.begin(), graph.nodes.end());

    // package edge kind is the smallest kind among the class edges it collapses
    std::map<std::pair<std::string, std::string>, EdgeKind> collapsed;
    for (const auto& edge : classes.edges) {
        if (edge.from.package == edge.to.package) continue;
        graph.crossing.push_back(edge);
        auto key = std::make_pair(edge.from.package, edge.to.package);
        auto [it, inserted] = collapsed.emplace(key, edge.kind);
        if (!inserted) it->second = std::min(it->second, edge.kind);
    }
    for (const auto& [key, kind] : collapsed)
        graph.edges.push_back({QualifiedName{key.first, {}}, QualifiedName{key.second, {}}, kind});
    return graph;
}

DependencyGraph package_graph(const CodeModel& model) { return package_graph(model, class_graph(model)); }

}  // namespace designlens
