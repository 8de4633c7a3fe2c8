#include <doctest.h>

#include <json.hpp>
#include <random>

#include "common.hpp"
#include "designlens/analysis.hpp"
#include "designlens/frontends.hpp"
#include "designlens/gates.hpp"
#include "generator.hpp"

using namespace designlens;
using nlohmann::json;

namespace {

std::string config_error_path(std::string_view document) {
    try {
        load_config(document);
    } catch (const ConfigError& e) {
        return e.path();
    }
    return "<no error>";
}

bool holds(const Rational& value, Comparator cmp, const Rational& limit) {
    switch (cmp) {
        case Comparator::le: return !(limit < value);
        case Comparator::ge: return !(value < limit);
        case Comparator::eq: return !(value < limit) && !(limit < value);
    }
    return false;
}

Rational number(const json& j) { return *Rational::from_decimal(j.dump()); }

// Evaluates one gate directly on the rendered JSON report.
bool brute_force_fails(const json& report, const Gate& gate) {
    const auto& findings = report["layers"][3]["findings"];
    auto count = [&](auto pred) {
        std::int64_t n = 0;
        for (const auto& f : findings)
            if (pred(f)) ++n;
        return Rational(n);
    };
    const std::string& m = gate.metric;
    if (m == "findings") return !holds(count([](const json&) { return true; }), gate.comparator, gate.limit);
    if (m == "violations" || m == "advisories" || m == "warnings") {
        const std::string severity = m == "violations" ? "violation" : m == "advisories" ? "advisory" : "warning";
        return !holds(count([&](const json& f) { return f["severity"] == severity; }), gate.comparator, gate.limit);
    }
    if (m == "adp_cycles") return !holds(count([](const json& f) { return f["rule"] == "ADP"; }), gate.comparator, gate.limit);
    for (const char* stat : {"max", "min", "mean"}) {
        const std::string prefix = std::string(stat) + "_";
        if (m.rfind(prefix, 0) != 0) continue;
        for (const auto& layer : report["layers"]) {
            const auto& aggregates = layer["aggregates"];
            auto it = aggregates.find(m.substr(prefix.size()));
            if (it != aggregates.end() && !holds(number((*it)[stat]), gate.comparator, gate.limit)) return true;
        }
        return false;
    }
    for (const auto& layer : report["layers"])
        for (const auto& entry : layer["metrics"])
            if (entry["name"] == m && !entry["value"].is_null() &&
                !holds(number(entry["value"]), gate.comparator, gate.limit))
                return true;
    return false;
}

const std::vector<std::string> kGateMetrics = {
    "wmc",      "lcom",          "dit",        "noc",        "cbo",       "ca",         "ce",
    "instability", "abstractness", "distance", "max_dit",   "min_cbo",   "mean_wmc",   "max_instability",
    "min_abstractness", "mean_distance", "adp_cycles", "findings", "violations", "advisories", "warnings"};

}  // namespace

TEST_CASE("defaults") {
    GateConfig defaults;
    CHECK(load_config("{}") == defaults);
    CHECK(defaults.gates.empty());
    CHECK(defaults.fail_on.empty());
    CHECK_FALSE(defaults.strict);
    CHECK(defaults.thresholds.srp_lcom_min == 1);
    CHECK(defaults.thresholds.srp_method_min == 3);
    CHECK(defaults.thresholds.sap_distance_min == Rational(7, 10));
    CHECK(defaults.thresholds.sap_extreme == Rational(1, 5));
}

TEST_CASE("config documents") {
    auto c = load_config(R"({"gates":[["max_dit","<=",3]]})");
    REQUIRE(c.gates.size() == 1);
    CHECK(c.gates[0] == Gate{"max_dit", Comparator::le, Rational(3)});

    c = load_config(R"({"gates":[["MAX_DIT","≤",3],["adp_cycles","=",0],["instability",">=",0.25]]})");
    REQUIRE(c.gates.size() == 3);
    CHECK(c.gates[0].metric == "max_dit");
    CHECK(c.gates[1] == Gate{"adp_cycles", Comparator::eq, Rational(0)});
    CHECK(c.gates[2] == Gate{"instability", Comparator::ge, Rational(1, 4)});

    c = load_config(R"({"thresholds":{"srp_lcom_min":4,"sap_extreme":0.1,"sap_distance_min":0.5},"fail_on":["ADP","warning"]})");
    CHECK(c.thresholds.srp_lcom_min == 4);
    CHECK(c.thresholds.srp_method_min == 3);
    CHECK(c.thresholds.sap_extreme == Rational(1, 10));
    CHECK(c.thresholds.sap_distance_min == Rational(1, 2));
    CHECK(c.fail_on == std::set<std::string>{"adp", "warning"});
}

TEST_CASE("config errors name the key path") {
    CHECK(config_error_path(R"({"bogus":1})") == "bogus");
    CHECK(config_error_path("{") == "$");
    CHECK(config_error_path("[]") == "$");
    CHECK(config_error_path(R"({"thresholds":{"nope":1}})") == "thresholds.nope");
    CHECK(config_error_path(R"({"thresholds":{"srp_lcom_min":1.5}})") == "thresholds.srp_lcom_min");
    CHECK(config_error_path(R"({"thresholds":{"srp_method_min":-1}})") == "thresholds.srp_method_min");
    CHECK(config_error_path(R"({"thresholds":{"sap_extreme":0.5}})") == "thresholds.sap_extreme");
    CHECK(config_error_path(R"({"thresholds":{"sap_distance_min":"x"}})") == "thresholds.sap_distance_min");
    CHECK(config_error_path(R"({"gates":{}})") == "gates");
    CHECK(config_error_path(R"({"gates":[["max_dit","<="]]})") == "gates[0]");
    CHECK(config_error_path(R"({"gates":[["max_dit","<=",1],["depth","<=",1]]})") == "gates[1][0]");
    CHECK(config_error_path(R"({"gates":[["max_dit","<",1]]})") == "gates[0][1]");
    CHECK(config_error_path(R"({"gates":[["max_dit","<=",-1]]})") == "gates[0][2]");
    CHECK(config_error_path(R"({"gates":[["max_dit","<=","3"]]})") == "gates[0][2]");
    CHECK(config_error_path(R"({"fail_on":["adp","loud"]})") == "fail_on[1]");
    CHECK(config_error_path(R"({"fail_on":"adp"})") == "fail_on");
    CHECK(config_error_path(R"({"thresholds":{},"gates":[],"fail_on":[]})") == "<no error>");
}

TEST_CASE("gate metric names") {
    for (const auto& m : kGateMetrics) CHECK(is_gate_metric(m));
    CHECK(is_gate_metric("sdp_findings"));
    CHECK(is_gate_metric("empty_package_findings"));
    CHECK_FALSE(is_gate_metric("max_"));
    CHECK_FALSE(is_gate_metric("median_dit"));
    CHECK_FALSE(is_gate_metric("bogus_findings"));
    CHECK_FALSE(is_gate_metric("_findings"));
    CHECK(normalize_fail_on("SaP_PaIn") == "sap_pain");
    CHECK_THROWS_AS(normalize_fail_on("loud"), ConfigError);
}

TEST_CASE("gates on the reference fixture") {
    auto m = parse_minioo(testing::fixture("reference.minioo"));
    auto config_with = [](std::vector<Gate> gates) {
        GateConfig c;
        c.gates = std::move(gates);
        return c;
    };
    CHECK_FALSE(analyze(m, config_with({{"max_dit", Comparator::le, Rational(1)}})).outcome.failed());
    auto out = analyze(m, config_with({{"max_dit", Comparator::le, Rational(0)}})).outcome;
    REQUIRE(out.failures.size() == 1);
    CHECK(out.failures[0] == "gate max_dit <= 0 failed: max is 1");
    out = analyze(m, config_with({{"wmc", Comparator::le, Rational(1)}})).outcome;
    REQUIRE(out.failures.size() == 2);  // Circle 3 and Shape 2
    CHECK(out.failures[0] == "gate wmc <= 1 failed: core.Circle has wmc 3");
    CHECK(analyze(m, config_with({{"distance", Comparator::le, Rational(1, 2)}})).outcome.failures.empty());
    CHECK(analyze(m, config_with({{"distance", Comparator::le, Rational(2, 5)}})).outcome.failures.size() == 1);
    CHECK(analyze(m, config_with({{"mean_wmc", Comparator::eq, Rational(7, 4)}})).outcome.failures.empty());
    CHECK_FALSE(analyze(m, config_with({{"adp_cycles", Comparator::eq, Rational(0)}})).outcome.failed());

    auto cyclic = parse_minioo(testing::fixture("cyclic.minioo"));
    out = analyze(cyclic, config_with({{"adp_cycles", Comparator::eq, Rational(0)}})).outcome;
    REQUIRE(out.failures.size() == 1);
    CHECK(out.failures[0] == "gate adp_cycles = 0 failed: count is 1");
}

TEST_CASE("undefined values never trip a gate") {
    auto m = parse_minioo("package e { } package iso { class A { } }");
    for (const char* metric : {"instability", "distance", "max_instability", "min_distance", "mean_instability"}) {
        for (Comparator cmp : {Comparator::le, Comparator::ge, Comparator::eq}) {
            GateConfig c;
            c.gates.push_back(Gate{metric, cmp, Rational(7)});
            CHECK_FALSE(analyze(m, c).outcome.failed());
        }
    }
    GateConfig c;
    c.gates.push_back(Gate{"abstractness", Comparator::ge, Rational(1)});
    CHECK(analyze(m, c).outcome.failures.size() == 1);  // only iso is defined
}

TEST_CASE("gates are judged on displayed values") {
    auto m = parse_minioo(
        "package a { class X { method m uses (b.T); } }\n"
        "package b { class T { } }\n"
        "package c { class U { method m uses (a.X); } class V { method m uses (a.X); } }\n");
    GateConfig c;
    c.gates.push_back(Gate{"instability", Comparator::le, Rational(1)});
    c.gates.push_back(Gate{"max_instability", Comparator::le, Rational(1)});
    CHECK_FALSE(analyze(m, c).outcome.failed());
    GateConfig third;
    third.gates.push_back(Gate{"instability", Comparator::ge, Rational(3333, 10000)});
    // a has 1/3, displayed 0.3333, so only b (instability 0) fails
    CHECK(analyze(m, third).outcome.failures ==
          std::vector<std::string>{"gate instability >= 0.3333 failed: b has instability 0.0000"});
}

TEST_CASE("gate semantics match brute-force evaluation of the rendered report") {
    std::mt19937_64 rng(31);
    const std::vector<Rational> limits = {Rational(0),    Rational(1),         Rational(2),       Rational(3),
                                          Rational(5),    Rational(1, 2),      Rational(1, 3),    Rational(3333, 10000),
                                          Rational(7, 4), Rational(6667, 10000)};
    const std::vector<Comparator> comparators = {Comparator::le, Comparator::ge, Comparator::eq};
    int failing = 0;
    int passing = 0;
    for (int round = 0; round < 300; ++round) {
        auto m = testing::random_model(rng);
        auto analysis = analyze(m, GateConfig{});
        const json report = json::parse(render(analysis.report, Format::json));
        for (int k = 0; k < 20; ++k) {
            Gate gate{kGateMetrics[std::uniform_int_distribution<std::size_t>(0, kGateMetrics.size() - 1)(rng)],
                      comparators[std::uniform_int_distribution<std::size_t>(0, 2)(rng)],
                      limits[std::uniform_int_distribution<std::size_t>(0, limits.size() - 1)(rng)]};
            GateConfig c;
            c.gates.push_back(gate);
            const bool failed = evaluate_gates(analysis.report, c).failed();
            CHECK_MESSAGE(failed == brute_force_fails(report, gate), gate.metric, " ", to_string(gate.comparator), " ",
                          gate.limit.to_fixed(4));
            (failed ? failing : passing)++;
        }
    }
    CHECK(failing > 500);
    CHECK(passing > 500);
}

TEST_CASE("fail-on and strict") {
    auto m = parse_minioo("package e { } package p { class A { } }");  // one EMPTY_PACKAGE warning
    GateConfig c;
    CHECK_FALSE(analyze(m, c).outcome.failed());
    c.strict = true;
    auto out = analyze(m, c).outcome;
    REQUIRE(out.failures.size() == 1);
    CHECK(out.failures[0] == "strict: warning EMPTY_PACKAGE e");
    c.strict = false;
    c.fail_on = {"empty_package"};
    CHECK(analyze(m, c).outcome.failures == std::vector<std::string>{"fail-on empty_package: EMPTY_PACKAGE e"});
    c.fail_on = {"warning"};
    CHECK(analyze(m, c).outcome.failures == std::vector<std::string>{"fail-on warning: EMPTY_PACKAGE e"});
    c.fail_on = {"adp", "violation"};
    CHECK_FALSE(analyze(m, c).outcome.failed());

    auto cyclic = parse_minioo(testing::fixture("cyclic.minioo"));
    GateConfig adp;
    adp.fail_on = {"adp"};
    CHECK(analyze(cyclic, adp).outcome.failures == std::vector<std::string>{"fail-on adp: ADP {app, core}"});
    adp.strict = true;  // strict only concerns warnings
    CHECK(analyze(cyclic, adp).outcome.failures.size() == 1);
    CHECK_FALSE(analyze(cyclic, GateConfig{}).outcome.failed());
}

TEST_CASE("thresholds flow into the detectors") {
    auto m = parse_minioo(
        "package p { class A { field a: int; field b: int;\n"
        "  method m reads (a); method n reads (b); } }");
    CHECK(analyze(m, GateConfig{}).findings.empty());  // two methods, below srp_method_min
    auto c = load_config(R"({"thresholds":{"srp_method_min":2}})");
    auto findings = analyze(m, c).findings;
    REQUIRE(findings.size() == 1);
    CHECK(findings[0].rule == Rule::SRP);
    CHECK(findings[0].locus == "p.A");
}
