#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>

#include "designlens/designlens.h"

namespace designlens::cli {

namespace {

template <typename T, void (*Destroy)(T*)>
struct Deleter {
    void operator()(T* p) const { Destroy(p); }
};

using Diagnostics = std::unique_ptr<dl_diagnostics, Deleter<dl_diagnostics, dl_diagnostics_destroy>>;
using Model = std::unique_ptr<dl_model, Deleter<dl_model, dl_model_destroy>>;
using Config = std::unique_ptr<dl_config, Deleter<dl_config, dl_config_destroy>>;
using AnalysisHandle = std::unique_ptr<dl_analysis, Deleter<dl_analysis, dl_analysis_destroy>>;

struct OwnedString {
    char* text = nullptr;
    ~OwnedString() { dl_string_free(text); }
};

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) return std::nullopt;
    return std::string(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>());
}

void print_diagnostics(std::ostream& err, const dl_diagnostics* diagnostics) {
    for (size_t i = 0; i < dl_diagnostics_count(diagnostics); ++i) err << dl_diagnostics_message(diagnostics, i) << '\n';
}

struct Options {
    std::vector<std::string> paths;
    std::string format = "text";
    std::string config_path;
    std::string out_path;
    std::vector<std::string> fail_on;
    bool strict = false;
};

int analyze(const Options& options, std::istream& in, std::ostream& out, std::ostream& err,
            const Environment& env) {
    dl_format format = DL_FORMAT_TEXT;
    if (options.format == "json") {
        format = DL_FORMAT_JSON;
    } else if (options.format == "csv") {
        format = DL_FORMAT_CSV;
    }

    // Inputs: kind by extension, "-" reads MiniOO from stdin.
    std::vector<std::string> texts;
    std::vector<dl_source> sources;
    texts.reserve(options.paths.size());
    for (const auto& path : options.paths) {
        dl_input_kind kind = DL_INPUT_MINIOO;
        if (path == "-") {
            texts.emplace_back(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
        } else {
            const auto ext = std::filesystem::path(path).extension().string();
            if (ext == ".minioo") {
                kind = DL_INPUT_MINIOO;
            } else if (ext == ".json") {
                kind = DL_INPUT_INTERCHANGE;
            } else {
                err << "designlens: '" << path << "': unsupported input extension (expected .minioo or .json)\n";
                return kUsage;
            }
            auto text = read_file(path);
            if (!text) {
                err << "designlens: cannot read '" << path << "'\n";
                return kUsage;
            }
            texts.push_back(std::move(*text));
        }
        sources.push_back(dl_source{path.c_str(), texts.back().data(), texts.back().size(), kind});
    }

    Diagnostics diagnostics(dl_diagnostics_create());
    if (!diagnostics) return kInputError;

    dl_config* raw_config = nullptr;
    if (!options.config_path.empty()) {
        auto text = read_file(options.config_path);
        if (!text) {
            err << "designlens: cannot read config '" << options.config_path << "'\n";
            return kUsage;
        }
        if (dl_config_parse(text->data(), text->size(), &raw_config, diagnostics.get()) != DL_OK) {
            err << "designlens: " << options.config_path << ": invalid config\n";
            print_diagnostics(err, diagnostics.get());
            return kUsage;
        }
    } else if (dl_config_create(&raw_config) != DL_OK) {
        return kUsage;
    }
    Config config(raw_config);
    for (const auto& token : options.fail_on) {
        if (token.empty()) continue;
        if (dl_config_add_fail_on(config.get(), token.c_str()) != DL_OK) {
            err << "designlens: --fail-on: unknown rule or severity '" << token << "'\n";
            return kUsage;
        }
    }
    dl_config_set_strict(config.get(), options.strict ? 1 : 0);

    dl_model* raw_model = nullptr;
    if (dl_model_load(sources.data(), sources.size(), &raw_model, diagnostics.get()) != DL_OK) {
        print_diagnostics(err, diagnostics.get());
        return kInputError;
    }
    Model model(raw_model);

    dl_analysis* raw_analysis = nullptr;
    if (dl_analyze(model.get(), config.get(), &raw_analysis) != DL_OK) {
        err << "designlens: analysis failed\n";
        return kInputError;
    }
    AnalysisHandle analysis(raw_analysis);

    const bool color =
        format == DL_FORMAT_TEXT && options.out_path.empty() && env.stdout_is_terminal && !env.no_color;
    OwnedString rendered;
    if (dl_analysis_render(analysis.get(), format, color ? 1 : 0, &rendered.text) != DL_OK) {
        err << "designlens: rendering failed\n";
        return kInputError;
    }
    if (options.out_path.empty()) {
        out << rendered.text;
        out.flush();
    } else {
        std::ofstream file(options.out_path, std::ios::binary | std::ios::trunc);
        file << rendered.text;
        if (!file) {
            err << "designlens: cannot write '" << options.out_path << "'\n";
            return kUsage;
        }
    }

    Diagnostics reasons(dl_diagnostics_create());
    if (dl_analysis_gate_failures(analysis.get(), reasons.get()) > 0) {
        for (size_t i = 0; i < dl_diagnostics_count(reasons.get()); ++i)
            err << "designlens: " << dl_diagnostics_message(reasons.get(), i) << '\n';
        return kGateFailure;
    }
    return kClean;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err,
        const Environment& env) {
    CLI::App app{"Object-oriented design quality analyzer", "designlens"};
    app.set_version_flag("--version", std::string(dl_version()));
    app.require_subcommand(1);

    Options options;
    auto* analyze_cmd = app.add_subcommand("analyze", "Compute metrics and principle findings for a code model");
    analyze_cmd->add_option("paths", options.paths, "Input files (.minioo or .json)")->required();
    analyze_cmd->add_option("--format", options.format, "Report format")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    analyze_cmd->add_option("--config", options.config_path, "Gate config document (JSON)");
    analyze_cmd->add_option("--out", options.out_path, "Write the report to a file instead of stdout");
    analyze_cmd->add_option("--fail-on", options.fail_on, "Rules or severities that fail the run")->delimiter(',');
    analyze_cmd->add_flag("--strict", options.strict, "Treat warnings as failures");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kClean;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kClean;
    } catch (const CLI::CallForVersion&) {
        out << dl_version() << '\n';
        return kClean;
    } catch (const CLI::ParseError& e) {
        err << "designlens: " << e.what() << '\n' << "run 'designlens --help' for usage\n";
        return kUsage;
    }

    try {
        return analyze(options, in, out, err, env);
    } catch (const std::exception& e) {
        err << "designlens: " << e.what() << '\n';
        return kUsage;
    }
}

}  // namespace designlens::cli
