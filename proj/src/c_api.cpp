#include "designlens/designlens.h"

#include <cstdlib>
#include <cstring>
#include <string>
#include <utility>
#include <vector>

#include "designlens/analysis.hpp"
#include "designlens/frontends.hpp"
#include "designlens/gates.hpp"

struct dl_diagnostics {
    std::vector<std::pair<std::string, std::string>> items;  // (code, message)

    void add(std::string code, std::string message) { items.emplace_back(std::move(code), std::move(message)); }
};

struct dl_model {
    designlens::CodeModel model;
};

struct dl_config {
    designlens::GateConfig config;
};

struct dl_analysis {
    designlens::Analysis analysis;
    std::vector<std::string> rules;
    std::vector<std::string> severities;
};

namespace {

void note(dl_diagnostics* diagnostics, std::string code, std::string message) {
    if (diagnostics) diagnostics->add(std::move(code), std::move(message));
}

char* duplicate(const std::string& text) {
    char* out = static_cast<char*>(std::malloc(text.size() + 1));
    if (!out) return nullptr;
    std::memcpy(out, text.data(), text.size());
    out[text.size()] = '\0';
    return out;
}

std::string prefixed(const std::string& origin, const std::string& rest) {
    return origin.empty() ? rest : origin + ": " + rest;
}

// Converts escaping exceptions into status codes at the boundary.
template <typename Fn>
dl_status guarded(dl_diagnostics* diagnostics, Fn&& fn) {
    try {
        return fn();
    } catch (const designlens::ConfigError& e) {
        note(diagnostics, "ConfigError", std::string("error[ConfigError]: ") + e.what());
        return DL_E_CONFIG;
    } catch (const designlens::NotFound& e) {
        note(diagnostics, "NotFound", e.what());
        return DL_E_NOT_FOUND;
    } catch (const std::bad_alloc&) {
        return DL_E_INTERNAL;
    } catch (const std::exception& e) {
        note(diagnostics, "Internal", e.what());
        return DL_E_INTERNAL;
    } catch (...) {
        return DL_E_INTERNAL;
    }
}

}  // namespace

extern "C" {

const char* dl_version(void) { return "1.0.0"; }

const char* dl_status_name(dl_status status) {
    switch (status) {
        case DL_OK: return "ok";
        case DL_E_INVALID_ARGUMENT: return "invalid argument";
        case DL_E_PARSE: return "parse error";
        case DL_E_VALIDATION: return "validation error";
        case DL_E_MALFORMED_DOCUMENT: return "malformed document";
        case DL_E_SCHEMA: return "schema error";
        case DL_E_CONFIG: return "config error";
        case DL_E_NOT_FOUND: return "not found";
        case DL_E_INTERNAL: return "internal error";
    }
    return "unknown status";
}

void dl_string_free(char* text) { std::free(text); }

dl_diagnostics* dl_diagnostics_create(void) {
    try {
        return new dl_diagnostics{};
    } catch (...) {
        return nullptr;
    }
}

void dl_diagnostics_destroy(dl_diagnostics* diagnostics) { delete diagnostics; }

void dl_diagnostics_clear(dl_diagnostics* diagnostics) {
    if (diagnostics) diagnostics->items.clear();
}

size_t dl_diagnostics_count(const dl_diagnostics* diagnostics) { return diagnostics ? diagnostics->items.size() : 0; }

const char* dl_diagnostics_code(const dl_diagnostics* diagnostics, size_t index) {
    if (!diagnostics || index >= diagnostics->items.size()) return nullptr;
    return diagnostics->items[index].first.c_str();
}

const char* dl_diagnostics_message(const dl_diagnostics* diagnostics, size_t index) {
    if (!diagnostics || index >= diagnostics->items.size()) return nullptr;
    return diagnostics->items[index].second.c_str();
}

dl_status dl_model_load(const dl_source* sources, size_t count, dl_model** out, dl_diagnostics* diagnostics) {
    if (!out || (count > 0 && !sources)) return DL_E_INVALID_ARGUMENT;
    return guarded(diagnostics, [&]() -> dl_status {
        std::vector<designlens::SourceUnit> units;
        dl_status failure = DL_OK;
        auto fail = [&failure](dl_status status) {
            if (failure == DL_OK) failure = status;
        };
        for (size_t i = 0; i < count; ++i) {
            const dl_source& src = sources[i];
            if (!src.text && src.length > 0) return DL_E_INVALID_ARGUMENT;
            std::string origin = src.origin ? src.origin : "";
            std::string_view text(src.text ? src.text : "", src.length);
            try {
                if (src.kind == DL_INPUT_MINIOO) {
                    units.push_back(designlens::parse_minioo_declarations(text, origin));
                } else if (src.kind == DL_INPUT_INTERCHANGE) {
                    units.push_back(designlens::read_interchange_declarations(text, origin));
                } else {
                    return DL_E_INVALID_ARGUMENT;
                }
            } catch (const designlens::ParseFailure& e) {
                for (const auto& error : e.errors()) note(diagnostics, "ParseError", error.format(origin));
                fail(DL_E_PARSE);
            } catch (const designlens::MalformedDocument& e) {
                note(diagnostics, "MalformedDocument", prefixed(origin, std::string("error[MalformedDocument]: ") + e.what()));
                fail(DL_E_MALFORMED_DOCUMENT);
            } catch (const designlens::SchemaError& e) {
                note(diagnostics, "SchemaError", prefixed(origin, std::string("error[SchemaError]: ") + e.what()));
                fail(DL_E_SCHEMA);
            }
        }
        if (failure != DL_OK) return failure;
        try {
            *out = new dl_model{designlens::build_model(units)};
        } catch (const designlens::ValidationFailure& e) {
            for (const auto& error : e.errors())
                note(diagnostics, std::string(designlens::to_string(error.code)), error.format());
            return DL_E_VALIDATION;
        }
        return DL_OK;
    });
}

void dl_model_destroy(dl_model* model) { delete model; }

size_t dl_model_package_count(const dl_model* model) { return model ? model->model.packages().size() : 0; }

size_t dl_model_class_count(const dl_model* model) { return model ? model->model.class_count() : 0; }

dl_status dl_model_write_interchange(const dl_model* model, char** out) {
    if (!model || !out) return DL_E_INVALID_ARGUMENT;
    return guarded(nullptr, [&] {
        *out = duplicate(designlens::write_interchange(model->model));
        return *out ? DL_OK : DL_E_INTERNAL;
    });
}

dl_status dl_config_create(dl_config** out) {
    if (!out) return DL_E_INVALID_ARGUMENT;
    return guarded(nullptr, [&] {
        *out = new dl_config{};
        return DL_OK;
    });
}

dl_status dl_config_parse(const char* text, size_t length, dl_config** out, dl_diagnostics* diagnostics) {
    if (!out || (!text && length > 0)) return DL_E_INVALID_ARGUMENT;
    return guarded(diagnostics, [&] {
        auto config = designlens::load_config(std::string_view(text ? text : "", length));
        *out = new dl_config{std::move(config)};
        return DL_OK;
    });
}

void dl_config_destroy(dl_config* config) { delete config; }

dl_status dl_config_add_fail_on(dl_config* config, const char* token) {
    if (!config || !token) return DL_E_INVALID_ARGUMENT;
    return guarded(nullptr, [&] {
        config->config.fail_on.insert(designlens::normalize_fail_on(token));
        return DL_OK;
    });
}

void dl_config_set_strict(dl_config* config, int strict) {
    if (config) config->config.strict = strict != 0;
}

dl_status dl_analyze(const dl_model* model, const dl_config* config, dl_analysis** out) {
    if (!model || !out) return DL_E_INVALID_ARGUMENT;
    return guarded(nullptr, [&] {
        auto* result = new dl_analysis{};
        try {
            result->analysis = designlens::analyze(model->model, config ? config->config : designlens::GateConfig{});
            for (const auto& f : result->analysis.findings) {
                result->rules.emplace_back(designlens::to_string(f.rule));
                result->severities.emplace_back(designlens::to_string(f.severity));
            }
        } catch (...) {
            delete result;
            throw;
        }
        *out = result;
        return DL_OK;
    });
}

void dl_analysis_destroy(dl_analysis* analysis) { delete analysis; }

dl_status dl_analysis_render(const dl_analysis* analysis, dl_format format, int color, char** out) {
    if (!analysis || !out) return DL_E_INVALID_ARGUMENT;
    designlens::Format f;
    switch (format) {
        case DL_FORMAT_TEXT: f = designlens::Format::text; break;
        case DL_FORMAT_JSON: f = designlens::Format::json; break;
        case DL_FORMAT_CSV: f = designlens::Format::csv; break;
        default: return DL_E_INVALID_ARGUMENT;
    }
    return guarded(nullptr, [&] {
        *out = duplicate(designlens::render(analysis->analysis.report, f, designlens::RenderOptions{color != 0}));
        return *out ? DL_OK : DL_E_INTERNAL;
    });
}

size_t dl_analysis_finding_count(const dl_analysis* analysis) {
    return analysis ? analysis->analysis.findings.size() : 0;
}

dl_status dl_analysis_finding(const dl_analysis* analysis, size_t index, const char** rule, const char** severity,
                              const char** locus) {
    if (!analysis || index >= analysis->analysis.findings.size()) return DL_E_INVALID_ARGUMENT;
    if (rule) *rule = analysis->rules[index].c_str();
    if (severity) *severity = analysis->severities[index].c_str();
    if (locus) *locus = analysis->analysis.findings[index].locus.c_str();
    return DL_OK;
}

dl_status dl_analysis_metric(const dl_analysis* analysis, const char* subject, const char* metric, double* value,
                             int* defined) {
    if (!analysis || !subject || !metric) return DL_E_INVALID_ARGUMENT;
    for (const auto& layer : analysis->analysis.report.layers) {
        for (const auto& entry : layer.metrics) {
            if (entry.subject != subject || entry.name != metric) continue;
            if (defined) *defined = entry.value ? 1 : 0;
            if (value) *value = entry.value ? designlens::as_rational(*entry.value).to_double() : 0.0;
            return DL_OK;
        }
    }
    return DL_E_NOT_FOUND;
}

size_t dl_analysis_gate_failures(const dl_analysis* analysis, dl_diagnostics* reasons) {
    if (!analysis) return 0;
    const auto& failures = analysis->analysis.outcome.failures;
    for (const auto& line : failures) note(reasons, "GateFailure", line);
    return failures.size();
}

}  // extern "C"
