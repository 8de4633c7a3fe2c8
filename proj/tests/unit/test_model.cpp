#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "designlens/model.hpp"
#include "generator.hpp"

using namespace designlens;

namespace {

QualifiedName qn(const std::string& p, const std::string& c) { return {p, c}; }

std::vector<ValidationCode> codes(const std::vector<PackageDef>& packages) {
    std::vector<ValidationCode> out;
    for (const auto& e : validate(packages)) out.push_back(e.code);
    return out;
}

bool has(const std::vector<ValidationCode>& all, ValidationCode code) {
    return std::find(all.begin(), all.end(), code) != all.end();
}

}  // namespace

TEST_CASE("qualified names") {
    CHECK(QualifiedName::parse("core.Shape") == qn("core", "Shape"));
    CHECK_FALSE(QualifiedName::parse("Shape"));
    CHECK_FALSE(QualifiedName::parse("a.b.c"));
    CHECK_FALSE(QualifiedName::parse("1a.B"));
    CHECK_FALSE(QualifiedName::parse("a."));
    CHECK(qn("a", "Z") < qn("b", "A"));
    CHECK(qn("a", "A") < qn("a", "B"));
    CHECK(qn("core", "").str() == "core");
    CHECK(is_identifier("_x9"));
    CHECK_FALSE(is_identifier("9x"));
    CHECK_FALSE(is_identifier(""));
}

TEST_CASE("two independent packages form a valid model") {
    auto m = build_model({PackageDef{"p", {ClassDef{.name = "A"}}}, PackageDef{"q", {ClassDef{.name = "B"}}}});
    CHECK(m.packages().size() == 2);
    CHECK(m.class_count() == 2);
    CHECK(validate(m.packages()).empty());
}

TEST_CASE("mutual inheritance is a cycle naming both classes") {
    std::vector<PackageDef> decl{PackageDef{"p",
                                            {ClassDef{.name = "A", .parents = {qn("p", "B")}},
                                             ClassDef{.name = "B", .parents = {qn("p", "A")}}}}};
    auto errors = validate(decl);
    REQUIRE(errors.size() == 1);
    CHECK(errors[0].code == ValidationCode::InheritanceCycle);
    CHECK(errors[0].message.find("p.A") != std::string::npos);
    CHECK(errors[0].message.find("p.B") != std::string::npos);
    CHECK_THROWS_AS(build_model(decl), ValidationFailure);
}

TEST_CASE("a class listing itself as parent is rejected") {
    auto c = codes({PackageDef{"p", {ClassDef{.name = "A", .parents = {qn("p", "A")}}}}});
    CHECK(c == std::vector{ValidationCode::InheritanceCycle});
}

TEST_CASE("abstract method in a concrete class") {
    auto c = codes({PackageDef{"p", {ClassDef{.name = "A", .methods = {MethodDef{.name = "m", .is_abstract = true}}}}}});
    CHECK(c == std::vector{ValidationCode::AbstractMethodInConcreteClass});
}

TEST_CASE("every error is reported, not just the first") {
    std::vector<PackageDef> decl{
        PackageDef{"p",
                   {ClassDef{.name = "A",
                             .parents = {qn("p", "Missing")},
                             .attributes = {AttributeDef{"x", std::nullopt, AttributeKind::none},
                                            AttributeDef{"x", std::nullopt, AttributeKind::none}},
                             .methods = {MethodDef{.name = "m", .weight = 0, .reads = {"nope"}}}},
                    ClassDef{.name = "A"}}},
        PackageDef{"p", {}}};
    auto c = codes(decl);
    CHECK(has(c, ValidationCode::DuplicatePackage));
    CHECK(has(c, ValidationCode::DuplicateClass));
    CHECK(has(c, ValidationCode::DuplicateMember));
    CHECK(has(c, ValidationCode::UnresolvedReference));
    CHECK(has(c, ValidationCode::InvalidWeight));
    CHECK(has(c, ValidationCode::UnknownReadAttribute));
    try {
        build_model(decl);
        FAIL("expected ValidationFailure");
    } catch (const ValidationFailure& e) {
        CHECK(e.errors().size() == c.size());
    }
}

TEST_CASE("attribute kind must agree with its target") {
    auto c = codes({PackageDef{"p",
                               {ClassDef{.name = "A",
                                         .attributes = {AttributeDef{"x", qn("p", "A"), AttributeKind::none},
                                                        AttributeDef{"y", std::nullopt, AttributeKind::aggregation}}}}}});
    CHECK(std::count(c.begin(), c.end(), ValidationCode::InvalidAttributeKind) == 2);
}

TEST_CASE("invalid identifiers and repeated list entries") {
    auto c = codes({PackageDef{"9p", {ClassDef{.name = "A-B"}}}});
    CHECK(std::count(c.begin(), c.end(), ValidationCode::InvalidName) == 2);
    auto d = codes({PackageDef{"p",
                               {ClassDef{.name = "B"},
                                ClassDef{.name = "A",
                                         .parents = {qn("p", "B"), qn("p", "B")},
                                         .methods = {MethodDef{.name = "m", .uses = {qn("p", "B"), qn("p", "B")}}}}}}});
    CHECK(std::count(d.begin(), d.end(), ValidationCode::DuplicateEntry) == 2);
}

TEST_CASE("validation error formatting") {
    ValidationError e{ValidationCode::UnresolvedReference, "p.A", "parent 'p.Z' does not name a declared class",
                      SourcePosition{3, 7}, "m.minioo"};
    CHECK(e.format() == "m.minioo:3:7: error[UnresolvedReference]: p.A: parent 'p.Z' does not name a declared class");
    e.origin.clear();
    e.position.reset();
    CHECK(e.format() == "error[UnresolvedReference]: p.A: parent 'p.Z' does not name a declared class");
}

TEST_CASE("resolve") {
    auto m = build_model({PackageDef{"p", {ClassDef{.name = "A", .is_abstract = true}}}});
    CHECK(m.resolve(qn("p", "A")).is_abstract);
    CHECK(resolve(m, qn("p", "A")).name == "A");
    CHECK_THROWS_AS(m.resolve(qn("p", "Z")), NotFound);
    CHECK(m.find(qn("q", "A")) == nullptr);
    CHECK(m.find_package("p") != nullptr);
    CHECK(m.find_package("q") == nullptr);
}

TEST_CASE("class graph edges") {
    auto m = build_model({PackageDef{
        "p",
        {ClassDef{.name = "D"},
         ClassDef{.name = "C",
                  .attributes = {AttributeDef{"x", qn("p", "D"), AttributeKind::aggregation}},
                  .methods = {MethodDef{.name = "f", .uses = {qn("p", "D")}}, MethodDef{.name = "g", .uses = {qn("p", "D")}}}}}}});
    auto g = class_graph(m);
    CHECK(g.granularity == Granularity::cls);
    CHECK(g.nodes.size() == 2);
    REQUIRE(g.edges.size() == 2);
    CHECK(g.edges[0] == DependencyEdge{qn("p", "C"), qn("p", "D"), EdgeKind::aggregation});
    CHECK(g.edges[1] == DependencyEdge{qn("p", "C"), qn("p", "D"), EdgeKind::use});

    auto lonely = build_model({PackageDef{"p", {ClassDef{.name = "A"}, ClassDef{.name = "B"}}}});
    CHECK(class_graph(lonely).edges.empty());
    CHECK(class_graph(lonely).nodes.size() == 2);
}

TEST_CASE("self references are recorded as edges") {
    auto m = build_model(
        {PackageDef{"p", {ClassDef{.name = "A", .attributes = {AttributeDef{"me", qn("p", "A"), AttributeKind::association}}}}}});
    auto g = class_graph(m);
    REQUIRE(g.edges.size() == 1);
    CHECK(g.edges[0].is_self());
    CHECK(package_graph(m).edges.empty());
}

TEST_CASE("package graph") {
    auto single = build_model({PackageDef{"p", {ClassDef{.name = "A", .methods = {MethodDef{.name = "m", .uses = {qn("q", "B")}}}}}},
                               PackageDef{"q", {ClassDef{.name = "B"}}}});
    auto g = package_graph(single);
    CHECK(g.granularity == Granularity::package);
    REQUIRE(g.edges.size() == 1);
    CHECK(g.edges[0].from == qn("p", ""));
    CHECK(g.edges[0].to == qn("q", ""));

    auto internal = build_model({PackageDef{"p",
                                            {ClassDef{.name = "A", .methods = {MethodDef{.name = "m", .uses = {qn("p", "B")}}}},
                                             ClassDef{.name = "B"}}}});
    CHECK(package_graph(internal).edges.empty());

    auto both = build_model(
        {PackageDef{"p", {ClassDef{.name = "A", .methods = {MethodDef{.name = "m", .uses = {qn("q", "B")}}}}}},
         PackageDef{"q", {ClassDef{.name = "B"}, ClassDef{.name = "C", .methods = {MethodDef{.name = "m", .uses = {qn("p", "A")}}}}}}});
    auto two = package_graph(both);
    REQUIRE(two.edges.size() == 2);
    CHECK(two.edges[0].from.package == "p");
    CHECK(two.edges[1].from.package == "q");
    CHECK(two.crossing.size() == 2);
}

TEST_CASE("package graph equals the image of cross-package class pairs") {
    std::mt19937_64 rng(11);
    testing::GeneratorOptions options;
    options.max_packages = 4;
    options.max_classes = 5;  // at most 20 classes
    for (int round = 0; round < 300; ++round) {
        auto m = testing::random_model(rng, options);
        auto cg = class_graph(m);
        std::set<std::pair<std::string, std::string>> expected;
        for (const auto& a : m.class_names())
            for (const auto& b : m.class_names()) {
                if (a.package == b.package) continue;
                bool linked = std::any_of(cg.edges.begin(), cg.edges.end(),
                                          [&](const DependencyEdge& e) { return e.from == a && e.to == b; });
                if (linked) expected.insert({a.package, b.package});
            }
        std::set<std::pair<std::string, std::string>> actual;
        for (const auto& e : package_graph(m).edges) actual.insert({e.from.package, e.to.package});
        REQUIRE(actual == expected);
    }
}

TEST_CASE("generated models are valid, acyclic and graph construction is deterministic") {
    std::mt19937_64 rng(5);
    for (int round = 0; round < 200; ++round) {
        auto m = testing::random_model(rng);
        REQUIRE(validate(m.packages()).empty());
        auto g = class_graph(m);
        CHECK(g.nodes.size() == m.class_count());
        CHECK(g == class_graph(m));
        CHECK(std::is_sorted(g.edges.begin(), g.edges.end()));

        // Kahn's algorithm over inherit edges consumes every class
        std::map<QualifiedName, int> pending;
        for (const auto& n : g.nodes) pending[n] = 0;
        for (const auto& e : g.edges)
            if (e.kind == EdgeKind::inherit) ++pending[e.from];
        std::vector<QualifiedName> ready;
        for (const auto& [n, k] : pending)
            if (k == 0) ready.push_back(n);
        std::size_t ordered = 0;
        while (!ready.empty()) {
            auto n = ready.back();
            ready.pop_back();
            ++ordered;
            for (const auto& e : g.edges)
                if (e.kind == EdgeKind::inherit && e.to == n && --pending[e.from] == 0) ready.push_back(e.from);
        }
        CHECK(ordered == m.class_count());
    }
}
