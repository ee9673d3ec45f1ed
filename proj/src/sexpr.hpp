#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dolce {

struct SourcePos {
    int line = 0;
    int column = 0;
    std::string to_string() const { return std::to_string(line) + ":" + std::to_string(column); }
};

// Raised by the reader and the knowledge-base builder. `pos` is 1-based;
// line 0 means "no position" (programmatic input).
class SyntaxError : public std::runtime_error {
public:
    SyntaxError(SourcePos pos, const std::string& what)
        : std::runtime_error(pos.line ? pos.to_string() + ": " + what : what), pos_(pos) {}
    SourcePos pos() const { return pos_; }

private:
    SourcePos pos_;
};

// Node in the parsed s-expression tree. Atoms are either symbols or
// natural numbers; identifiers may use unicode letters, digits, '-' and '\''.
struct Sexpr {
    enum class Kind { List, Symbol, Number };
    Kind kind = Kind::List;
    std::string text;          // symbol spelling
    long number = 0;           // for Kind::Number
    std::vector<Sexpr> items;  // for Kind::List
    SourcePos pos;

    bool is_list() const { return kind == Kind::List; }
    bool is_symbol() const { return kind == Kind::Symbol; }
    bool is_symbol(const std::string& s) const { return kind == Kind::Symbol && text == s; }
    bool is_number() const { return kind == Kind::Number; }
    const Sexpr& at(std::size_t i) const { return items.at(i); }
    std::size_t size() const { return items.size(); }

    bool operator==(const Sexpr& other) const;
};

struct SourceDocument {
    std::string path;
    std::vector<Sexpr> forms;
};

// Reads a whole document. Comments run from ';' to end of line; CRLF input
// is accepted. Throws SyntaxError on lexical errors, unbalanced parentheses
// or an unknown top-level form head.
SourceDocument parse_document(const std::string& text, const std::string& path = "<string>");

// Reads a single expression (used for query patterns; '?' prefixes variables).
Sexpr parse_expression(const std::string& text);

// Canonical printing; print(parse(x)) reparses to an equal tree.
std::string print_sexpr(const Sexpr& e);
std::string print_document(const SourceDocument& doc);

}  // namespace dolce
