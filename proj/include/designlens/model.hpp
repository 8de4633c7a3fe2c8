#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace designlens {

bool is_identifier(std::string_view text);

/// `package.Class`. Ordering is lexicographic on (package, class) and is the
/// order used for every deterministic listing the analyzer produces.
struct QualifiedName {
    std::string package;
    std::string cls;

    std::string str() const { return cls.empty() ? package : package + "." + cls; }

    /// Accepts exactly `pkg.Class` with both segments identifiers.
    static std::optional<QualifiedName> parse(std::string_view text);

    friend bool operator==(const QualifiedName&, const QualifiedName&) = default;
    friend auto operator<=>(const QualifiedName&, const QualifiedName&) = default;
};

enum class AttributeKind { association, aggregation, none };

std::string_view to_string(AttributeKind kind);

struct AttributeDef {
    std::string name;
    std::optional<QualifiedName> target;  // absent for primitive-typed data
    AttributeKind kind = AttributeKind::none;

    friend bool operator==(const AttributeDef&, const AttributeDef&) = default;
};

struct MethodDef {
    std::string name;
    bool is_abstract = false;
    int weight = 1;
    std::vector<std::string> reads;    // instance data read by the method
    std::vector<QualifiedName> uses;   // classes whose services it invokes

    friend bool operator==(const MethodDef&, const MethodDef&) = default;
};

struct ClassDef {
    std::string name;
    bool is_abstract = false;
    std::vector<QualifiedName> parents;
    std::vector<AttributeDef> attributes;
    std::vector<MethodDef> methods;

    const AttributeDef* find_attribute(std::string_view attribute) const;

    friend bool operator==(const ClassDef&, const ClassDef&) = default;
};

struct PackageDef {
    std::string name;
    std::vector<ClassDef> classes;

    friend bool operator==(const PackageDef&, const PackageDef&) = default;
};

// ---------------------------------------------------------------------------
// Validation

enum class ValidationCode {
    DuplicatePackage,
    DuplicateClass,
    DuplicateMember,
    DuplicateEntry,
    InvalidName,
    InvalidWeight,
    InvalidAttributeKind,
    UnresolvedReference,
    InheritanceCycle,
    AbstractMethodInConcreteClass,
    UnknownReadAttribute,
};

std::string_view to_string(ValidationCode code);

struct SourcePosition {
    int line = 1;
    int column = 1;

    friend bool operator==(const SourcePosition&, const SourcePosition&) = default;
    friend auto operator<=>(const SourcePosition&, const SourcePosition&) = default;
};

/// One semantic defect. `locus` names the offending element as
/// `pkg`, `pkg.Class` or `pkg.Class.member`.
struct ValidationError {
    ValidationCode code;
    std::string locus;
    std::string message;
    std::optional<SourcePosition> position;
    std::string origin;  // source file, when known

    std::string format() const;

    friend bool operator==(const ValidationError&, const ValidationError&) = default;
};

class ValidationFailure : public std::runtime_error {
public:
    explicit ValidationFailure(std::vector<ValidationError> errors);
    const std::vector<ValidationError>& errors() const { return errors_; }

private:
    std::vector<ValidationError> errors_;
};

class NotFound : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Checks every model invariant and returns the complete list of violations
/// in a deterministic order (empty for a valid model).
std::vector<ValidationError> validate(const std::vector<PackageDef>& packages);

class CodeModel;

/// Returns a validated model or throws ValidationFailure carrying every error.
CodeModel build_model(std::vector<PackageDef> packages);

/// Immutable, validated universe of packages and classes.
class CodeModel {
public:
    CodeModel() = default;

    const std::vector<PackageDef>& packages() const { return packages_; }

    /// All declared class names in QualifiedName order.
    const std::vector<QualifiedName>& class_names() const { return sorted_classes_; }

    std::size_t class_count() const { return sorted_classes_.size(); }

    const ClassDef& resolve(const QualifiedName& name) const;
    const ClassDef* find(const QualifiedName& name) const;
    const PackageDef* find_package(std::string_view name) const;

    friend bool operator==(const CodeModel& a, const CodeModel& b) { return a.packages_ == b.packages_; }

private:
    friend CodeModel build_model(std::vector<PackageDef> packages);
    explicit CodeModel(std::vector<PackageDef> packages);

    std::vector<PackageDef> packages_;
    std::map<QualifiedName, std::pair<std::size_t, std::size_t>> index_;
    std::vector<QualifiedName> sorted_classes_;
};

/// Free-function form of CodeModel::resolve.
const ClassDef& resolve(const CodeModel& model, const QualifiedName& name);

// ---------------------------------------------------------------------------
// Dependency graphs

enum class EdgeKind { inherit, aggregation, association, use };

std::string_view to_string(EdgeKind kind);

struct DependencyEdge {
    QualifiedName from;
    QualifiedName to;
    EdgeKind kind = EdgeKind::use;

    bool is_self() const { return from == to; }

    friend bool operator==(const DependencyEdge&, const DependencyEdge&) = default;
    friend auto operator<=>(const DependencyEdge&, const DependencyEdge&) = default;
};

enum class Granularity { cls, package };

/// Typed directed graph. At package granularity node names carry an empty
/// class segment and `crossing` keeps the class-level edges that produced
/// the collapsed package edges.
struct DependencyGraph {
    Granularity granularity = Granularity::cls;
    std::vector<QualifiedName> nodes;   // sorted
    std::vector<DependencyEdge> edges;  // sorted by (from, to, kind), unique
    std::vector<DependencyEdge> crossing;

    friend bool operator==(const DependencyGraph&, const DependencyGraph&) = default;
};

DependencyGraph class_graph(const CodeModel& model);
DependencyGraph package_graph(const CodeModel& model);
DependencyGraph package_graph(const CodeModel& model, const DependencyGraph& classes);

}  // namespace designlens
