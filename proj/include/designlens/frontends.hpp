#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "designlens/model.hpp"

namespace designlens {

/// A syntax error: what the grammar wanted at `position` and what was there.
struct ParseError {
    SourcePosition position;
    std::string expected;
    std::string found;

    std::string message() const { return "expected " + expected + ", found " + found; }
    std::string format(std::string_view origin = {}) const;

    friend bool operator==(const ParseError&, const ParseError&) = default;
};

class ParseFailure : public std::runtime_error {
public:
    explicit ParseFailure(std::vector<ParseError> errors, std::string origin = {});
    const std::vector<ParseError>& errors() const { return errors_; }
    const std::string& origin() const { return origin_; }

private:
    std::vector<ParseError> errors_;
    std::string origin_;
};

/// The input text is not well-formed JSON.
class MalformedDocument : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Well-formed JSON that does not match the interchange schema. `path()` is
/// the offending location, e.g. `packages[0].classes[0].name`.
class SchemaError : public std::runtime_error {
public:
    SchemaError(std::string path, std::string message);
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

/// Declaration positions keyed by validation locus (`pkg`, `pkg.Class`,
/// `pkg.Class.member`). Used to attach positions to semantic errors.
using SourceMap = std::map<std::string, SourcePosition>;

/// Unvalidated declarations read from one source, ready to be merged with
/// others and handed to build_model.
struct SourceUnit {
    std::string origin;
    std::vector<PackageDef> packages;
    SourceMap positions;
};

/// Fills in position and origin for every error whose locus (or nearest
/// enclosing locus) appears in one of the units.
void attach_positions(std::vector<ValidationError>& errors, const std::vector<SourceUnit>& units);

/// Merges units in order and validates. Throws ValidationFailure with positions.
CodeModel build_model(const std::vector<SourceUnit>& units);

// MiniOO ----------------------------------------------------------------------

/// Syntax-only pass. Throws ParseFailure listing every error found (the parser
/// resynchronizes at the next `;` or `}`).
SourceUnit parse_minioo_declarations(std::string_view source, std::string origin = {});

/// Parse and validate. Throws ParseFailure or ValidationFailure.
CodeModel parse_minioo(std::string_view source, std::string origin = {});

// Interchange JSON ------------------------------------------------------------

/// Throws MalformedDocument or SchemaError.
SourceUnit read_interchange_declarations(std::string_view document, std::string origin = {});

/// Throws MalformedDocument, SchemaError or ValidationFailure.
CodeModel read_interchange(std::string_view document, std::string origin = {});

/// Canonical compact form with schema key order and a trailing newline.
std::string write_interchange(const CodeModel& model);

}  // namespace designlens
