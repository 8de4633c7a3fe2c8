// Recursive-descent parser for the MiniOO declaration language.
//
//   model    ::= package+
//   package  ::= 'package' NAME '{' class* '}'
//   class    ::= ['abstract'] 'class' NAME ['extends' typeref (',' typeref)*] '{' member* '}'
//   member   ::= field | method
//   field    ::= 'field' NAME ':' (PRIM | typeref [',' kind]) ';'
//   kind     ::= 'assoc' | 'aggr'
//   method   ::= ['abstract'] 'method' NAME ['weight' INT]
//                ['reads' '(' NAME (',' NAME)* ')']
//                ['uses' '(' typeref (',' typeref)* ')'] ';'
//   typeref  ::= NAME ['.' NAME]
//   PRIM     ::= 'int' | 'real' | 'text' | 'bool'
//
// Keywords are reserved. `//` starts a comment that runs to end of line.

#include <algorithm>
#include <array>
#include <charconv>
#include <sstream>

#include "designlens/frontends.hpp"

namespace designlens {

std::string ParseError::format(std::string_view origin) const {
    std::ostringstream out;
    if (!origin.empty()) out << origin << ':';
    out << position.line << ':' << position.column << ": error[ParseError]: " << message();
    return out.str();
}

namespace {

std::string describe_failures(const std::vector<ParseError>& errors, std::string_view origin) {
    std::string text = "parse failed";
    for (const auto& e : errors) text += "\n  " + e.format(origin);
    return text;
}

}  // namespace

ParseFailure::ParseFailure(std::vector<ParseError> errors, std::string origin)
    : std::runtime_error(describe_failures(errors, origin)), errors_(std::move(errors)), origin_(std::move(origin)) {}

namespace {

constexpr std::array<std::string_view, 15> kKeywords = {
    "package", "class", "abstract", "extends", "field", "method", "weight", "reads",
    "uses",    "assoc", "aggr",     "int",     "real",  "text",   "bool",
};

bool is_keyword(std::string_view word) {
    return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

enum class TokenKind { name, keyword, integer, punct, invalid, end };

struct Token {
    TokenKind kind = TokenKind::end;
    std::string text;
    SourcePosition begin;
    SourcePosition end;  // position just past the last character

    bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
    bool is_punct(char c) const { return kind == TokenKind::punct && text.size() == 1 && text[0] == c; }
    bool is_keyword(std::string_view t) const { return is(TokenKind::keyword, t); }

    std::string describe() const {
        switch (kind) {
            case TokenKind::end: return "end of input";
            case TokenKind::name: return "name '" + text + "'";
            case TokenKind::integer: return "integer '" + text + "'";
            case TokenKind::invalid: return "character '" + text + "'";
            default: return "'" + text + "'";
        }
    }
};

class Lexer {
public:
    explicit Lexer(std::string_view source) : src_(source) {}

    std::vector<Token> run() {
        std::vector<Token> tokens;
        for (;;) {
            skip_trivia();
            Token token;
            token.begin = here();
            if (at_end()) {
                token.kind = TokenKind::end;
                token.end = here();
                tokens.push_back(std::move(token));
                return tokens;
            }
            char c = src_[offset_];
            if (ident_start(c)) {
                std::size_t start = offset_;
                while (!at_end() && ident_part(src_[offset_])) advance();
                token.text = std::string(src_.substr(start, offset_ - start));
                token.kind = is_keyword(token.text) ? TokenKind::keyword : TokenKind::name;
            } else if (c >= '0' && c <= '9') {
                std::size_t start = offset_;
                while (!at_end() && src_[offset_] >= '0' && src_[offset_] <= '9') advance();
                token.text = std::string(src_.substr(start, offset_ - start));
                token.kind = TokenKind::integer;
            } else if (std::string_view("{}(),;:.").find(c) != std::string_view::npos) {
                token.text = std::string(1, c);
                token.kind = TokenKind::punct;
                advance();
            } else {
                std::size_t start = offset_;
                advance();
                // keep a whole UTF-8 sequence together
                while (!at_end() && (static_cast<unsigned char>(src_[offset_]) & 0xC0) == 0x80) ++offset_;
                token.text = std::string(src_.substr(start, offset_ - start));
                token.kind = TokenKind::invalid;
            }
            token.end = here();
            tokens.push_back(std::move(token));
        }
    }

private:
    static bool ident_start(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; }
    static bool ident_part(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }

    bool at_end() const { return offset_ >= src_.size(); }
    SourcePosition here() const { return {line_, column_}; }

    void advance() {
        char c = src_[offset_++];
        if (c == '\n') {
            ++line_;
            column_ = 1;
            return;
        }
        // continuation bytes do not start a new scalar value
        while (!at_end() && (static_cast<unsigned char>(src_[offset_]) & 0xC0) == 0x80) ++offset_;
        ++column_;
    }

    void skip_trivia() {
        while (!at_end()) {
            char c = src_[offset_];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '/' && offset_ + 1 < src_.size() && src_[offset_ + 1] == '/') {
                while (!at_end() && src_[offset_] != '\n') advance();
            } else {
                return;
            }
        }
    }

    std::string_view src_;
    std::size_t offset_ = 0;
    int line_ = 1;
    int column_ = 1;
};

struct Sync {};

class Parser {
public:
    Parser(std::vector<Token> tokens, std::string origin) : tokens_(std::move(tokens)) {
        unit_.origin = std::move(origin);
    }

    SourceUnit run() {
        if (peek().kind == TokenKind::end) {
            record("'package'");
        }
        while (peek().kind != TokenKind::end) {
            try {
                parse_package();
            } catch (const Sync&) {
                while (peek().kind != TokenKind::end && !peek().is_keyword("package")) next();
            }
        }
        if (!errors_.empty()) throw ParseFailure(std::move(errors_), unit_.origin);
        return std::move(unit_);
    }

private:
    const Token& peek() const { return tokens_[pos_]; }

    const Token& next() {
        const Token& t = tokens_[pos_];
        if (t.kind != TokenKind::end) {
            last_end_ = t.end;
            ++pos_;
        }
        return t;
    }

    // A missing delimiter is reported just past the previous token when the
    // offending token sits on a later line.
    void record(std::string expected, bool delimiter_expected = false) {
        const Token& found = peek();
        SourcePosition where = found.begin;
        if (delimiter_expected && pos_ > 0 && found.begin.line > last_end_.line) where = last_end_;
        if (!errors_.empty() && errors_.back().position == where) return;
        errors_.push_back(ParseError{where, std::move(expected), found.describe()});
    }

    [[noreturn]] void fail(std::string expected, bool delimiter_expected = false) {
        record(std::move(expected), delimiter_expected);
        throw Sync{};
    }

    void expect_punct(char c) {
        if (!peek().is_punct(c)) fail(std::string("'") + c + "'", true);
        next();
    }

    void expect_keyword(std::string_view word) {
        if (!peek().is_keyword(word)) fail("'" + std::string(word) + "'");
        next();
    }

    const Token& expect_name(std::string_view what) {
        if (peek().kind != TokenKind::name) fail(std::string(what));
        return next();
    }

    // Skips to the next ';' (consumed) or '}' (left in place) or end.
    void sync_member() {
        while (peek().kind != TokenKind::end && !peek().is_punct(';') && !peek().is_punct('}')) next();
        if (peek().is_punct(';')) next();
    }

    void parse_package() {
        if (!peek().is_keyword("package")) fail("'package'");
        next();
        PackageDef pkg;
        bool body = false;
        try {
            const Token& name = expect_name("package name");
            pkg.name = name.text;
            unit_.positions.emplace(pkg.name, name.begin);
            expect_punct('{');
            body = true;
        } catch (const Sync&) {
            while (peek().kind != TokenKind::end && !peek().is_punct('{') && !peek().is_punct('}')) next();
            if (peek().is_punct('{')) {
                next();
                body = true;
            } else if (peek().is_punct('}')) {
                next();
            }
        }
        if (body) {
            while (!peek().is_punct('}')) {
                if (peek().kind == TokenKind::end) {
                    // report and finish: nothing left to recover
                    record("'}'", true);
                    break;
                }
                if (peek().is_keyword("package")) {
                    // unterminated package; let the caller start the next one
                    record("'}'", true);
                    break;
                }
                if (!peek().is_keyword("abstract") && !peek().is_keyword("class")) {
                    record("'class', 'abstract' or '}'");
                    sync_member();
                    continue;
                }
                parse_class(pkg);
            }
            if (peek().is_punct('}')) next();
        }
        unit_.packages.push_back(std::move(pkg));
    }

    void parse_class(PackageDef& pkg) {
        ClassDef cls;
        if (peek().is_keyword("abstract")) {
            cls.is_abstract = true;
            next();
        }
        std::string locus;
        try {
            expect_keyword("class");
            const Token& name = expect_name("class name");
            cls.name = name.text;
            locus = pkg.name + "." + cls.name;
            unit_.positions.emplace(locus, name.begin);
            if (peek().is_keyword("extends")) {
                next();
                cls.parents.push_back(parse_typeref(pkg.name));
                while (peek().is_punct(',')) {
                    next();
                    cls.parents.push_back(parse_typeref(pkg.name));
                }
            }
            expect_punct('{');
        } catch (const Sync&) {
            // assume the body was entered
            while (peek().kind != TokenKind::end && !peek().is_punct('{') && !peek().is_punct(';') &&
                   !peek().is_punct('}'))
                next();
            if (peek().is_punct('}')) {
                next();
                pkg.classes.push_back(std::move(cls));
                return;
            }
            if (peek().kind != TokenKind::end) next();
        }

        while (!peek().is_punct('}')) {
            if (peek().kind == TokenKind::end) {
                record("'}'", true);
                break;
            }
            try {
                if (peek().is_keyword("field")) {
                    parse_field(pkg.name, locus, cls);
                } else if (peek().is_keyword("method") || peek().is_keyword("abstract")) {
                    parse_method(pkg.name, locus, cls);
                } else {
                    fail("'field', 'method' or '}'");
                }
            } catch (const Sync&) {
                sync_member();
            }
        }
        if (peek().is_punct('}')) next();
        pkg.classes.push_back(std::move(cls));
    }

    QualifiedName parse_typeref(const std::string& enclosing) {
        const Token& first = expect_name("type name");
        std::string head = first.text;
        if (peek().is_punct('.')) {
            next();
            const Token& second = expect_name("class name");
            return QualifiedName{head, second.text};
        }
        return QualifiedName{enclosing, head};
    }

    void parse_field(const std::string& package, const std::string& owner, ClassDef& cls) {
        expect_keyword("field");
        const Token& name = expect_name("field name");
        AttributeDef attr;
        attr.name = name.text;
        unit_.positions.emplace(owner + "." + attr.name, name.begin);
        expect_punct(':');
        const Token& type = peek();
        if (type.kind == TokenKind::keyword &&
            (type.text == "int" || type.text == "real" || type.text == "text" || type.text == "bool")) {
            next();
            attr.kind = AttributeKind::none;
        } else if (type.kind == TokenKind::name) {
            attr.target = parse_typeref(package);
            attr.kind = AttributeKind::association;
            if (peek().is_punct(',')) {
                next();
                if (peek().is_keyword("assoc")) {
                    next();
                } else if (peek().is_keyword("aggr")) {
                    next();
                    attr.kind = AttributeKind::aggregation;
                } else {
                    fail("'assoc' or 'aggr'");
                }
            }
        } else {
            fail("type name");
        }
        expect_punct(';');
        cls.attributes.push_back(std::move(attr));
    }

    void parse_method(const std::string& package, const std::string& owner, ClassDef& cls) {
        MethodDef method;
        if (peek().is_keyword("abstract")) {
            method.is_abstract = true;
            next();
        }
        expect_keyword("method");
        const Token& name = expect_name("method name");
        method.name = name.text;
        unit_.positions.emplace(owner + "." + method.name, name.begin);
        if (peek().is_keyword("weight")) {
            next();
            const Token& value = peek();
            if (value.kind != TokenKind::integer || value.text.front() == '0') fail("positive integer");
            int weight = 0;
            auto [ptr, ec] = std::from_chars(value.text.data(), value.text.data() + value.text.size(), weight);
            if (ec != std::errc() || ptr != value.text.data() + value.text.size()) fail("integer in range");
            next();
            method.weight = weight;
        }
        if (peek().is_keyword("reads")) {
            next();
            expect_punct('(');
            method.reads.push_back(expect_name("attribute name").text);
            while (peek().is_punct(',')) {
                next();
                method.reads.push_back(expect_name("attribute name").text);
            }
            expect_punct(')');
        }
        if (peek().is_keyword("uses")) {
            next();
            expect_punct('(');
            method.uses.push_back(parse_typeref(package));
            while (peek().is_punct(',')) {
                next();
                method.uses.push_back(parse_typeref(package));
            }
            expect_punct(')');
        }
        expect_punct(';');
        cls.methods.push_back(std::move(method));
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    SourcePosition last_end_{1, 1};
    std::vector<ParseError> errors_;
    SourceUnit unit_;
};

}  // namespace

SourceUnit parse_minioo_declarations(std::string_view source, std::string origin) {
    return Parser(Lexer(source).run(), std::move(origin)).run();
}

CodeModel parse_minioo(std::string_view source, std::string origin) {
    std::vector<SourceUnit> units;
    units.push_back(parse_minioo_declarations(source, std::move(origin)));
    return build_model(units);
}

void attach_positions(std::vector<ValidationError>& errors, const std::vector<SourceUnit>& units) {
    for (auto& error : errors) {
        std::string locus = error.locus;
        for (;;) {
            for (const auto& unit : units) {
                auto it = unit.positions.find(locus);
                if (it != unit.positions.end()) {
                    error.position = it->second;
                    error.origin = unit.origin;
                    break;
                }
            }
            if (error.position) break;
            auto dot = locus.rfind('.');
            if (dot == std::string::npos) break;
            locus.resize(dot);
        }
        if (error.origin.empty()) {
            // no position map entry (interchange input): name the declaring source
            const std::string package = error.locus.substr(0, error.locus.find('.'));
            for (const auto& unit : units) {
                auto declares = [&](const PackageDef& p) { return p.name == package; };
                if (std::any_of(unit.packages.begin(), unit.packages.end(), declares)) {
                    error.origin = unit.origin;
                    break;
                }
            }
        }
    }
}

CodeModel build_model(const std::vector<SourceUnit>& units) {
    std::vector<PackageDef> packages;
    for (const auto& unit : units) packages.insert(packages.end(), unit.packages.begin(), unit.packages.end());
    auto errors = validate(packages);
    if (!errors.empty()) {
        attach_positions(errors, units);
        throw ValidationFailure(std::move(errors));
    }
    return build_model(std::move(packages));
}

}  // namespace designlens
