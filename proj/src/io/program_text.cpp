#include "wcdp/io/program_text.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <vector>

#include "wcdp/core/errors.hpp"

namespace wcdp::io {

namespace {

enum class Tok { kIdent, kNumber, kSymbol, kEnd };

struct Token {
    Tok kind = Tok::kEnd;
    std::string text;
    std::size_t line = 0;
    std::size_t column = 0;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '@' || c == '\''; }

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    std::size_t line = 1;
    std::size_t col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < text.size()) {
        char c = text[i];
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') advance(1);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        Token t;
        t.line = line;
        t.column = col;
        std::size_t start = i;
        if (ident_start(c)) {
            std::size_t j = i;
            while (j < text.size() && ident_char(text[j])) ++j;
            t.kind = Tok::kIdent;
            t.text = std::string(text.substr(start, j - start));
            advance(j - i);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            t.kind = Tok::kNumber;
            t.text = std::string(text.substr(start, j - start));
            advance(j - i);
        } else if (text.substr(i, 2) == "<=" || text.substr(i, 2) == ":-") {
            t.kind = Tok::kSymbol;
            t.text = std::string(text.substr(i, 2));
            advance(2);
        } else if (std::string_view("{}*~+:,.").find(c) != std::string_view::npos) {
            t.kind = Tok::kSymbol;
            t.text = std::string(1, c);
            advance(1);
        } else {
            throw ParseError(line, col, std::string("unexpected character '") + c + "'");
        }
        out.push_back(std::move(t));
    }
    Token end;
    end.line = line;
    end.column = col;
    out.push_back(end);
    return out;
}

struct PendingRule {
    std::string name;
    Token head;
    std::vector<Token> body;
};

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    Program run() {
        while (peek().kind != Tok::kEnd) {
            const Token& t = peek();
            if (t.kind != Tok::kIdent) fail(t, "expected 'atom', 'constraint' or 'rule'");
            if (t.text == "atom") {
                next();
                Token name = expect_ident("atom name");
                wrap(name, [&] { builder_.add_atom(name.text); });
            } else if (t.text == "constraint") {
                next();
                constraint();
            } else if (t.text == "rule") {
                next();
                rule();
            } else {
                fail(t, "expected 'atom', 'constraint' or 'rule', got '" + t.text + "'");
            }
        }
        for (const auto& r : rules_) {
            auto head = resolve(r.head);
            std::vector<ConstraintId> body;
            for (const auto& b : r.body) body.push_back(resolve(b));
            builder_.add_rule(r.name, head, std::move(body));
        }
        return std::move(builder_).build();
    }

private:
    void constraint() {
        Token name = expect_ident("constraint name");
        expect("{");
        std::uint64_t lower = 0;
        UpperBound upper;
        if (peek().kind == Tok::kNumber && peek(1).text == "<=") {
            lower = number(next());
            next();
        }
        std::vector<WeightLiteral> clause;
        bool expect_literal = peek().text != "<=" && peek().text != "}";
        while (expect_literal) {
            clause.push_back(literal());
            expect_literal = peek().text == "+";
            if (expect_literal) next();
        }
        if (peek().text == "<=") {
            next();
            if (peek().kind != Tok::kNumber) fail(peek(), "expected an upper bound");
            upper = number(next());
        }
        expect("}");
        wrap(name, [&] { builder_.add_constraint(name.text, std::move(clause), lower, upper); });
    }

    WeightLiteral literal() {
        WeightLiteral lit;
        if (peek().kind == Tok::kNumber) {
            Token w = next();
            auto value = number(w);
            if (value == 0 || value > 0xffffffffu) fail(w, "literal weight must be between 1 and 2^32-1");
            lit.weight = static_cast<std::uint32_t>(value);
            expect("*");
        }
        if (peek().text == "~") {
            next();
            lit.polarity = Polarity::kNegative;
        }
        Token atom = expect_ident("atom");
        auto id = builder_.find_atom(atom.text);
        if (!id) fail(atom, "undeclared atom '" + atom.text + "'");
        lit.atom = *id;
        return lit;
    }

    void rule() {
        Token name = expect_ident("rule name");
        expect(":");
        PendingRule r;
        r.name = name.text;
        r.head = expect_ident("head constraint");
        if (peek().text == ":-") {
            next();
            if (peek().text != ".") {
                r.body.push_back(expect_ident("body constraint"));
                while (peek().text == ",") {
                    next();
                    r.body.push_back(expect_ident("body constraint"));
                }
            }
        }
        expect(".");
        rules_.push_back(std::move(r));
    }

    ConstraintId resolve(const Token& t) {
        auto id = builder_.find_constraint(t.text);
        if (!id) fail(t, "unknown constraint '" + t.text + "'");
        return *id;
    }

    template <class Fn>
    void wrap(const Token& at, Fn fn) {
        try {
            fn();
        } catch (const ProgramError& e) {
            fail(at, e.what());
        }
    }

    std::uint64_t number(const Token& t) {
        try {
            return std::stoull(t.text);
        } catch (const std::exception&) {
            fail(t, "number out of range");
        }
    }

    const Token& peek(std::size_t ahead = 0) const { return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)]; }
    Token next() {
        Token t = peek();
        if (pos_ < tokens_.size() - 1) ++pos_;
        return t;
    }
    void expect(const std::string& symbol) {
        if (peek().text != symbol || peek().kind != Tok::kSymbol) {
            fail(peek(), "expected '" + symbol + "'" + (peek().kind == Tok::kEnd ? " before end of input" : ", got '" + peek().text + "'"));
        }
        next();
    }
    Token expect_ident(const std::string& what) {
        if (peek().kind != Tok::kIdent) fail(peek(), "expected " + what);
        return next();
    }
    [[noreturn]] void fail(const Token& t, const std::string& what) const { throw ParseError(t.line, t.column, what); }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    ProgramBuilder builder_;
    std::vector<PendingRule> rules_;
};

}  // namespace

Program parse_program(std::string_view text) { return Parser(tokenize(text)).run(); }

Program parse_program_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open program file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_program(buf.str());
}

std::string print_program(const Program& p) {
    std::ostringstream out;
    for (const auto& a : p.atom_names()) out << "atom " << a << '\n';
    for (const auto& c : p.constraints()) {
        out << "constraint " << c.name << " {";
        if (c.lower > 0) out << ' ' << c.lower << " <=";
        for (std::size_t i = 0; i < c.clause.size(); ++i) {
            const auto& lit = c.clause[i];
            out << (i ? " + " : " ") << lit.weight << '*' << (lit.positive() ? "" : "~") << p.atom_name(lit.atom);
        }
        if (c.upper) out << " <= " << *c.upper;
        out << " }\n";
    }
    for (const auto& r : p.rules()) {
        out << "rule " << r.name << ": " << p.constraint(r.head).name;
        if (!r.body.empty()) {
            out << " :-";
            for (std::size_t i = 0; i < r.body.size(); ++i) out << (i ? ", " : " ") << p.constraint(r.body[i]).name;
        }
        out << ".\n";
    }
    return out.str();
}

}  // namespace wcdp::io
