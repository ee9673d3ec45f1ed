#include "sexpr.hpp"

#include <cctype>
#include <set>

namespace dolce {

bool Sexpr::operator==(const Sexpr& other) const {
    if (kind != other.kind) return false;
    switch (kind) {
        case Kind::Symbol: return text == other.text;
        case Kind::Number: return number == other.number;
        case Kind::List: return items == other.items;
    }
    return false;
}

namespace {

bool is_token_char(unsigned char c) {
    if (c >= 0x80) return true;  // UTF-8 continuation/lead bytes pass through
    return std::isalnum(c) || c == '-' || c == '\'' || c == '+' || c == '?' ||
           c == '<' || c == '=' || c == '_';
}

struct Reader {
    const std::string& src;
    std::size_t i = 0;
    int line = 1;
    int col = 1;

    explicit Reader(const std::string& s) : src(s) {}

    SourcePos pos() const { return {line, col}; }

    int peek() const { return i < src.size() ? static_cast<unsigned char>(src[i]) : -1; }

    int get() {
        if (i >= src.size()) return -1;
        unsigned char c = src[i++];
        if (c == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        return c;
    }

    void skip_ws() {
        for (;;) {
            int c = peek();
            if (c == ';') {
                while (peek() != -1 && peek() != '\n') get();
                continue;
            }
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                get();
                continue;
            }
            break;
        }
    }

    Sexpr read_atom() {
        SourcePos p = pos();
        std::string tok;
        while (peek() != -1 && is_token_char(static_cast<unsigned char>(peek())))
            tok.push_back(static_cast<char>(get()));
        if (tok.empty())
            throw SyntaxError(p, "unexpected character '" + std::string(1, static_cast<char>(peek())) + "'");
        bool all_digits = !tok.empty();
        for (char c : tok)
            if (!std::isdigit(static_cast<unsigned char>(c))) all_digits = false;
        Sexpr e;
        e.pos = p;
        if (all_digits) {
            e.kind = Sexpr::Kind::Number;
            e.number = std::stol(tok);
        } else {
            if (tok.find('_') != std::string::npos)
                throw SyntaxError(p, "'_' is not allowed in identifiers (use '-')");
            e.kind = Sexpr::Kind::Symbol;
            e.text = tok;
        }
        return e;
    }

    Sexpr read_expr() {
        skip_ws();
        SourcePos p = pos();
        int c = peek();
        if (c == -1) throw SyntaxError(p, "unexpected end of input");
        if (c == ')') throw SyntaxError(p, "unexpected ')'");
        if (c == '(') {
            get();
            Sexpr list;
            list.kind = Sexpr::Kind::List;
            list.pos = p;
            for (;;) {
                skip_ws();
                int d = peek();
                if (d == -1) throw SyntaxError(p, "unbalanced '(' (no matching ')')");
                if (d == ')') {
                    get();
                    return list;
                }
                list.items.push_back(read_expr());
            }
        }
        return read_atom();
    }
};

const std::set<std::string>& known_form_heads() {
    static const std::set<std::string> heads = {
        "category", "disjoint", "quality-leaf", "entity",  "time",   "space",
        "schema",   "concept-flags", "cover",  "requires", "assert", "relation",
    };
    return heads;
}

}  // namespace

SourceDocument parse_document(const std::string& text, const std::string& path) {
    Reader r(text);
    SourceDocument doc;
    doc.path = path;
    for (;;) {
        r.skip_ws();
        if (r.peek() == -1) break;
        Sexpr form = r.read_expr();
        if (!form.is_list() || form.items.empty() || !form.items[0].is_symbol())
            throw SyntaxError(form.pos, "top-level form must be a non-empty list headed by a symbol");
        const std::string& head = form.items[0].text;
        if (!known_form_heads().count(head))
            throw SyntaxError(form.items[0].pos, "unknown form head '" + head + "'");
        doc.forms.push_back(std::move(form));
    }
    return doc;
}

Sexpr parse_expression(const std::string& text) {
    Reader r(text);
    Sexpr e = r.read_expr();
    r.skip_ws();
    if (r.peek() != -1) throw SyntaxError(r.pos(), "trailing input after expression");
    return e;
}

std::string print_sexpr(const Sexpr& e) {
    switch (e.kind) {
        case Sexpr::Kind::Symbol: return e.text;
        case Sexpr::Kind::Number: return std::to_string(e.number);
        case Sexpr::Kind::List: {
            std::string out = "(";
            for (std::size_t i = 0; i < e.items.size(); ++i) {
                if (i) out += " ";
                out += print_sexpr(e.items[i]);
            }
            out += ")";
            return out;
        }
    }
    return "";
}

std::string print_document(const SourceDocument& doc) {
    std::string out;
    for (const Sexpr& f : doc.forms) {
        out += print_sexpr(f);
        out += "\n";
    }
    return out;
}

}  // namespace dolce
