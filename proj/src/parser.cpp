#include "tel/parser.hpp"

#include <cctype>
#include <map>

#include "tel/error.hpp"

namespace tel::syntax {

namespace {

enum class Tok { name, var, integer, lparen, rparen, comma, dot, if_, neq, eq, slash, end };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            const std::size_t line = line_;
            const std::size_t col = col_;
            if (pos_ >= text_.size()) {
                out.push_back({Tok::end, "", line, col});
                return out;
            }
            const char c = text_[pos_];
            if (std::islower(static_cast<unsigned char>(c))) {
                out.push_back({Tok::name, ident(), line, col});
            } else if (std::isupper(static_cast<unsigned char>(c))) {
                out.push_back({Tok::var, ident(), line, col});
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                std::string s;
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) s += advance();
                out.push_back({Tok::integer, s, line, col});
            } else if (c == ':' && peek(1) == '-') {
                advance();
                advance();
                out.push_back({Tok::if_, ":-", line, col});
            } else if (c == '!' && peek(1) == '=') {
                advance();
                advance();
                out.push_back({Tok::neq, "!=", line, col});
            } else {
                Tok kind;
                switch (c) {
                case '(': kind = Tok::lparen; break;
                case ')': kind = Tok::rparen; break;
                case ',': kind = Tok::comma; break;
                case '.': kind = Tok::dot; break;
                case '/': kind = Tok::slash; break;
                case '=': kind = Tok::eq; break;
                default: throw ParseError(std::string("unexpected character '") + c + "'", line, col);
                }
                advance();
                out.push_back({kind, std::string(1, c), line, col});
            }
        }
    }

private:
    char peek(std::size_t ahead) const {
        return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
    }

    char advance() {
        const char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_space() {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == '%') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                return;
            }
        }
    }

    std::string ident() {
        std::string s;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            s += advance();
        return s;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    Program run() {
        Program program;
        std::size_t statement = 0;
        while (cur().kind != Tok::end) {
            if (is_keyword("static") && at(1).kind == Tok::name) {
                directive(program);
                continue;
            }
            const Token start = cur();
            RawRule raw = rule();
            raw.statement = statement++;
            raw.line = start.line;
            try {
                if (!raw.init && !raw.has_next()) {
                    auto [now, later] = expand_abbreviation(raw);
                    program.rules.push_back(std::move(now));
                    program.rules.push_back(std::move(later));
                } else {
                    program.rules.push_back(classify(raw));
                }
            } catch (const DomainError& e) {
                throw ParseError(e.what(), start.line, start.column);
            }
        }
        program.constants = collect_constants(program.rules);
        return program;
    }

private:
    const Token& cur() const { return toks_[pos_]; }
    const Token& at(std::size_t ahead) const {
        return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
    }
    bool is_keyword(std::string_view kw) const { return cur().kind == Tok::name && cur().text == kw; }

    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError(message, cur().line, cur().column);
    }

    Token expect(Tok kind, const char* what) {
        if (cur().kind != kind) fail(std::string("expected ") + what + ", found '" + cur().text + "'");
        return toks_[pos_++];
    }

    void directive(Program& program) {
        ++pos_; // static
        for (;;) {
            const Token name = expect(Tok::name, "predicate name");
            expect(Tok::slash, "'/'");
            const Token arity = expect(Tok::integer, "arity");
            program.static_decls.push_back({name.text, std::stoul(arity.text)});
            note_arity(name.text, std::stoul(arity.text), name);
            if (cur().kind == Tok::comma) {
                ++pos_;
                continue;
            }
            expect(Tok::dot, "'.'");
            return;
        }
    }

    RawRule rule() {
        RawRule raw;
        if (is_keyword("init") && (at(1).kind == Tok::name || at(1).kind == Tok::if_)) {
            raw.init = true;
            ++pos_;
        }
        if (cur().kind == Tok::name) {
            raw.head.push_back(head_literal());
            while (is_keyword("v") && at(1).kind == Tok::name) {
                ++pos_;
                raw.head.push_back(head_literal());
            }
        }
        if (cur().kind == Tok::if_) {
            ++pos_;
            body_literal(raw);
            while (cur().kind == Tok::comma) {
                ++pos_;
                body_literal(raw);
            }
        }
        expect(Tok::dot, "'.'");
        return raw;
    }

    Literal head_literal() {
        Literal lit;
        if (is_keyword("not") && at(1).kind == Tok::name) fail("negative literal in head");
        lit.next = next_marker();
        lit.atom = atom();
        return lit;
    }

    bool next_marker() {
        if (!(is_keyword("o") && at(1).kind == Tok::name)) return false;
        ++pos_;
        if (is_keyword("o") && at(1).kind == Tok::name) fail("nested o is not allowed");
        return true;
    }

    void body_literal(RawRule& raw) {
        const bool term_start = cur().kind == Tok::var || cur().kind == Tok::integer ||
                                (cur().kind == Tok::name && (at(1).kind == Tok::neq || at(1).kind == Tok::eq));
        if (term_start) {
            Term lhs = term();
            if (cur().kind == Tok::eq) fail("equality is not supported; only != is built in");
            expect(Tok::neq, "'!='");
            Term rhs = term();
            raw.ineqs.push_back({std::move(lhs), std::move(rhs)});
            return;
        }
        Literal lit;
        if (is_keyword("not") && at(1).kind == Tok::name) {
            ++pos_;
            lit.negative = true;
        }
        lit.next = next_marker();
        lit.atom = atom();
        raw.body.push_back(std::move(lit));
    }

    Term term() {
        switch (cur().kind) {
        case Tok::var: return Term::variable(toks_[pos_++].text);
        case Tok::name:
        case Tok::integer: return Term::constant(toks_[pos_++].text);
        default: fail("expected term, found '" + cur().text + "'");
        }
    }

    Atom atom() {
        const Token name = expect(Tok::name, "predicate name");
        Atom a{name.text, {}};
        if (cur().kind == Tok::lparen) {
            ++pos_;
            a.args.push_back(term());
            while (cur().kind == Tok::comma) {
                ++pos_;
                a.args.push_back(term());
            }
            expect(Tok::rparen, "')'");
        }
        note_arity(a.predicate, a.args.size(), name);
        return a;
    }

    void note_arity(const std::string& name, std::size_t arity, const Token& where) {
        auto [it, inserted] = arities_.emplace(name, arity);
        if (!inserted && it->second != arity)
            throw ParseError("arity clash for " + name + ": " + std::to_string(it->second) + " vs " +
                                 std::to_string(arity),
                             where.line, where.column);
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::map<std::string, std::size_t> arities_;
};

} // namespace

Program parse_program(std::string_view text) {
    return Parser(Lexer(text).run()).run();
}

} // namespace tel::syntax
