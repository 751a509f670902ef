#pragma once

#include <charconv>
#include <string>
#include <variant>

#include "gsce/skillscript/ast.hpp"

namespace gsce::skillscript {

// Shortest decimal form that round-trips to the same double.
inline std::string format_number(double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, p);
}

namespace detail {

// Precedence levels: additive 1, multiplicative 2, unary 3, primary 4.
inline int precedence(const Expr& e) {
    if (std::holds_alternative<BinaryExpr>(e.node)) {
        BinaryOp op = std::get<BinaryExpr>(e.node).op;
        return (op == BinaryOp::Add || op == BinaryOp::Sub) ? 1 : 2;
    }
    if (std::holds_alternative<UnaryNeg>(e.node)) return 3;
    return 4;
}

inline void print_expr(const Expr& e, std::string& out);

inline void print_child(const Expr& child, int parent_prec, bool is_right, std::string& out) {
    int prec = precedence(child);
    // Left-associative operators: parenthesize the right child at equal
    // precedence, and either child at lower precedence.
    bool need_parens = prec < parent_prec || (prec == parent_prec && is_right);
    if (need_parens) out += '(';
    print_expr(child, out);
    if (need_parens) out += ')';
}

inline void print_expr(const Expr& e, std::string& out) {
    if (const auto* n = std::get_if<NumberLiteral>(&e.node)) {
        out += format_number(n->value);
    } else if (const auto* v = std::get_if<VariableRef>(&e.node)) {
        out += v->name;
    } else if (const auto* f = std::get_if<FieldAccess>(&e.node)) {
        out += f->base;
        out += '.';
        out += axis_name(f->axis);
    } else if (const auto* u = std::get_if<UnaryNeg>(&e.node)) {
        out += '-';
        int prec = precedence(*u->operand);
        bool need_parens = prec < 3;
        if (need_parens) out += '(';
        print_expr(*u->operand, out);
        if (need_parens) out += ')';
    } else if (const auto* b = std::get_if<BinaryExpr>(&e.node)) {
        int prec = precedence(e);
        print_child(*b->lhs, prec, false, out);
        switch (b->op) {
            case BinaryOp::Add: out += " + "; break;
            case BinaryOp::Sub: out += " - "; break;
            case BinaryOp::Mul: out += " * "; break;
            case BinaryOp::Div: out += " / "; break;
        }
        print_child(*b->rhs, prec, true, out);
    } else if (const auto* c = std::get_if<FuncCall>(&e.node)) {
        out += c->name;
        out += '(';
        for (size_t i = 0; i < c->args.size(); ++i) {
            if (i) out += ", ";
            print_expr(c->args[i], out);
        }
        out += ')';
    } else {
        out += "pi";
    }
}

}  // namespace detail

// Canonical text form; re-parsing it yields a structurally identical
// program. Assignments always print in `let` form.
inline std::string pretty_print(const SkillProgram& program) {
    std::string out;
    for (const Statement& stmt : program.statements) {
        if (const auto* asg = std::get_if<Assignment>(&stmt.node)) {
            out += "let ";
            out += asg->name;
            out += " = ";
            detail::print_expr(asg->value, out);
        } else {
            const auto& call = std::get<SkillCallStmt>(stmt.node);
            out += call.name;
            out += '(';
            for (size_t i = 0; i < call.args.size(); ++i) {
                if (i) out += ", ";
                detail::print_expr(call.args[i], out);
            }
            out += ')';
        }
        out += '\n';
    }
    return out;
}

}  // namespace gsce::skillscript
