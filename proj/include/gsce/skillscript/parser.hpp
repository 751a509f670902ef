#pragma once

#include <cctype>
#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gsce/errors.hpp"
#include "gsce/skillscript/ast.hpp"

namespace gsce::skillscript {

// Line-oriented grammar: one statement per line, `#` comments to end of
// line, blank lines ignored. LF and CRLF both accepted.
//
//   statement := 'let' IDENT '=' expr | IDENT '=' expr | IDENT '(' args ')'
//   expr      := additive with the usual precedence
//                (unary minus > '*','/' > '+','-'; left-associative)
//   primary   := NUMBER | 'pi' | IDENT '(' args ')' | IDENT '.' axis
//              | IDENT | '(' expr ')'

struct ParseResult {
    SkillProgram program;
    std::optional<ExecError> error;
    bool ok() const { return !error.has_value(); }
};

namespace detail {

enum class TokKind { Ident, Number, Plus, Minus, Star, Slash, LParen, RParen, Comma, Equals, Dot, Newline, End };

struct Token {
    TokKind kind = TokKind::End;
    std::string text;
    double number = 0.0;
    int line = 1;
    int column = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    // Throws ExecError (ParseError) on malformed input.
    std::vector<Token> run() {
        std::vector<Token> out;
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == ' ' || c == '\t') {
                advance();
            } else if (c == '\r') {
                advance();  // only meaningful before '\n'; stray CRs are ignored
            } else if (c == '\n') {
                out.push_back(make(TokKind::Newline, "\n"));
                advance_line();
            } else if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && peek_digit())) {
                out.push_back(lex_number());
            } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                out.push_back(lex_ident());
            } else {
                Token t = make(punct_kind(c), std::string(1, c));
                if (t.kind == TokKind::End) fail("unexpected character '" + std::string(1, c) + "'");
                out.push_back(t);
                advance();
            }
        }
        out.push_back(make(TokKind::End, ""));
        return out;
    }

private:
    bool peek_digit() const {
        return pos_ + 1 < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]));
    }

    static TokKind punct_kind(char c) {
        switch (c) {
            case '+': return TokKind::Plus;
            case '-': return TokKind::Minus;
            case '*': return TokKind::Star;
            case '/': return TokKind::Slash;
            case '(': return TokKind::LParen;
            case ')': return TokKind::RParen;
            case ',': return TokKind::Comma;
            case '=': return TokKind::Equals;
            case '.': return TokKind::Dot;
            default: return TokKind::End;
        }
    }

    Token lex_number() {
        Token t = make(TokKind::Number, "");
        size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
        if (pos_ < src_.size() && src_[pos_] == '.') {
            // A digit must follow; "1." alone is malformed, and "pos.x"
            // never reaches here because the base is lexed as an identifier.
            advance();
            if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
                fail("malformed number");
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            advance();
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) advance();
            if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
                fail("malformed exponent");
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
        }
        t.text = std::string(src_.substr(start, pos_ - start));
        auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.number);
        if (ec == std::errc::result_out_of_range) fail("number literal out of range");
        if (ec != std::errc() || p != t.text.data() + t.text.size()) fail("malformed number");
        return t;
    }

    Token lex_ident() {
        Token t = make(TokKind::Ident, "");
        size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
            advance();
        t.text = std::string(src_.substr(start, pos_ - start));
        return t;
    }

    Token make(TokKind k, std::string text) const {
        Token t;
        t.kind = k;
        t.text = std::move(text);
        t.line = line_;
        t.column = col_;
        return t;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ExecError{ErrorCategory::ParseError, msg, line_, col_};
    }

    void advance() {
        ++pos_;
        ++col_;
    }
    void advance_line() {
        ++pos_;
        ++line_;
        col_ = 1;
    }

    std::string_view src_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    SkillProgram run() {
        SkillProgram prog;
        while (!at(TokKind::End)) {
            if (at(TokKind::Newline)) {
                next();
                continue;
            }
            prog.statements.push_back(statement());
            if (!at(TokKind::Newline) && !at(TokKind::End))
                fail("expected end of line after statement");
        }
        return prog;
    }

private:
    Statement statement() {
        Statement stmt;
        stmt.line = peek().line;
        if (at(TokKind::Ident) && peek().text == "let") {
            next();
            if (!at(TokKind::Ident)) fail("expected variable name after 'let'");
            return assignment(std::move(stmt));
        }
        if (!at(TokKind::Ident)) fail("expected statement");
        if (toks_[idx_ + 1].kind == TokKind::Equals) return assignment(std::move(stmt));
        if (toks_[idx_ + 1].kind == TokKind::LParen) {
            SkillCallStmt call;
            call.name = next().text;
            next();  // '('
            call.args = arg_list();
            stmt.node = std::move(call);
            return stmt;
        }
        fail("expected '=' or '(' after identifier");
    }

    Statement assignment(Statement stmt) {
        Assignment asg;
        asg.name = peek().text;
        if (asg.name == "pi") fail("cannot assign to constant 'pi'");
        next();
        expect(TokKind::Equals, "expected '='");
        asg.value = expression();
        stmt.node = std::move(asg);
        return stmt;
    }

    std::vector<Expr> arg_list() {
        std::vector<Expr> args;
        if (at(TokKind::RParen)) {
            next();
            return args;
        }
        while (true) {
            args.push_back(expression());
            if (at(TokKind::Comma)) {
                next();
                continue;
            }
            expect(TokKind::RParen, "expected ')' or ','");
            return args;
        }
    }

    Expr expression() { return additive(); }

    Expr additive() {
        Expr lhs = multiplicative();
        while (at(TokKind::Plus) || at(TokKind::Minus)) {
            BinaryOp op = at(TokKind::Plus) ? BinaryOp::Add : BinaryOp::Sub;
            Token t = next();
            Expr rhs = multiplicative();
            lhs = make_binary(op, std::move(lhs), std::move(rhs), t);
        }
        return lhs;
    }

    Expr multiplicative() {
        Expr lhs = unary();
        while (at(TokKind::Star) || at(TokKind::Slash)) {
            BinaryOp op = at(TokKind::Star) ? BinaryOp::Mul : BinaryOp::Div;
            Token t = next();
            Expr rhs = unary();
            lhs = make_binary(op, std::move(lhs), std::move(rhs), t);
        }
        return lhs;
    }

    Expr unary() {
        if (at(TokKind::Minus)) {
            Token t = next();
            Expr e;
            e.line = t.line;
            e.column = t.column;
            UnaryNeg neg;
            neg.operand = std::make_unique<Expr>(unary());
            e.node = std::move(neg);
            return e;
        }
        return primary();
    }

    Expr primary() {
        Expr e;
        e.line = peek().line;
        e.column = peek().column;
        if (at(TokKind::Number)) {
            e.node = NumberLiteral{next().number};
            return e;
        }
        if (at(TokKind::LParen)) {
            next();
            Expr inner = expression();
            expect(TokKind::RParen, "expected ')'");
            inner.line = e.line;
            inner.column = e.column;
            return inner;
        }
        if (at(TokKind::Ident)) {
            Token name = next();
            if (at(TokKind::LParen)) {
                next();
                FuncCall call;
                call.name = name.text;
                call.args = arg_list();
                e.node = std::move(call);
                return e;
            }
            if (at(TokKind::Dot)) {
                next();
                if (!at(TokKind::Ident) || peek().text.size() != 1 ||
                    (peek().text != "x" && peek().text != "y" && peek().text != "z"))
                    fail("expected field 'x', 'y' or 'z'");
                char f = next().text[0];
                Axis axis = f == 'x' ? Axis::X : (f == 'y' ? Axis::Y : Axis::Z);
                e.node = FieldAccess{name.text, axis};
                return e;
            }
            if (name.text == "pi") {
                e.node = PiConstant{};
                return e;
            }
            e.node = VariableRef{name.text};
            return e;
        }
        fail("expected expression");
    }

    static Expr make_binary(BinaryOp op, Expr lhs, Expr rhs, const Token& t) {
        Expr e;
        e.line = t.line;
        e.column = t.column;
        BinaryExpr bin;
        bin.op = op;
        bin.lhs = std::make_unique<Expr>(std::move(lhs));
        bin.rhs = std::make_unique<Expr>(std::move(rhs));
        e.node = std::move(bin);
        return e;
    }

    const Token& peek() const { return toks_[idx_]; }
    bool at(TokKind k) const { return peek().kind == k; }
    Token next() { return toks_[idx_++]; }

    void expect(TokKind k, const std::string& msg) {
        if (!at(k)) fail(msg);
        next();
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ExecError{ErrorCategory::ParseError, msg, peek().line, peek().column};
    }

    std::vector<Token> toks_;
    size_t idx_ = 0;
};

}  // namespace detail

inline ParseResult parse(std::string_view source) {
    ParseResult result;
    try {
        detail::Lexer lexer(source);
        detail::Parser parser(lexer.run());
        result.program = parser.run();
    } catch (const ExecError& e) {
        result.error = e;
    }
    return result;
}

}  // namespace gsce::skillscript
