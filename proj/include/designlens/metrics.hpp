#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "designlens/model.hpp"
#include "designlens/rational.hpp"

namespace designlens {

struct ClassMetrics {
    QualifiedName cls;
    std::int64_t wmc = 0;
    std::int64_t dit = 0;
    std::int64_t noc = 0;
    std::int64_t cbo = 0;
    std::int64_t lcom = 0;

    friend bool operator==(const ClassMetrics&, const ClassMetrics&) = default;
};

/// Package coupling and abstractness. The ratio metrics are UNDEFINED
/// (nullopt) when their formula would divide by zero.
struct PackageMetrics {
    std::string package;
    std::int64_t ca = 0;
    std::int64_t ce = 0;
    MaybeRational instability;
    MaybeRational abstractness;
    MaybeRational distance;

    friend bool operator==(const PackageMetrics&, const PackageMetrics&) = default;
};

struct MetricsReport {
    std::map<QualifiedName, ClassMetrics> per_class;
    std::map<std::string, PackageMetrics> per_package;

    friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

class UnknownPackage : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Weighted methods per class: sum of declared method weights.
std::int64_t wmc(const ClassDef& cls);

/// Depth of inheritance: longest parent path to a root. Roots are 0.
std::int64_t dit(const CodeModel& model, const QualifiedName& cls);

/// Number of direct subclasses across all packages.
std::int64_t noc(const CodeModel& model, const QualifiedName& cls);

/// Distinct other classes coupled to `cls` in either direction through
/// aggregation, association or use. Inheritance and self-coupling are ignored.
std::int64_t cbo(const CodeModel& model, const QualifiedName& cls);

/// max(|P| - |Q|, 0) over unordered method pairs, where P are pairs with
/// disjoint read-sets and Q pairs that share at least one attribute.
std::int64_t lcom(const ClassDef& cls);

/// Ca: distinct classes outside `package` with an edge into it.
std::int64_t afferent(const CodeModel& model, std::string_view package);

/// Ce: distinct classes outside `package` that its classes have an edge to.
std::int64_t efferent(const CodeModel& model, std::string_view package);

/// ce / (ca + ce); nullopt when both are zero.
MaybeRational instability(std::int64_t ca, std::int64_t ce);

/// abstract classes / classes; nullopt for an empty package.
MaybeRational abstractness(const PackageDef& package);

/// |a + i - 1|.
Rational main_sequence_distance(const Rational& a, const Rational& i);

MetricsReport compute_all(const CodeModel& model);

}  // namespace designlens
