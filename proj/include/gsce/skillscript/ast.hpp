#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace gsce::skillscript {

enum class BinaryOp { Add, Sub, Mul, Div };
enum class Axis { X, Y, Z };

inline char axis_name(Axis a) {
    switch (a) {
        case Axis::X: return 'x';
        case Axis::Y: return 'y';
        case Axis::Z: return 'z';
    }
    return '?';
}

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct NumberLiteral {
    double value = 0.0;
};

struct VariableRef {
    std::string name;
};

// pos.x style access on a Vec3-valued variable.
struct FieldAccess {
    std::string base;
    Axis axis = Axis::X;
};

struct UnaryNeg {
    ExprPtr operand;
};

struct BinaryExpr {
    BinaryOp op = BinaryOp::Add;
    ExprPtr lhs;
    ExprPtr rhs;
};

struct FuncCall {
    std::string name;
    std::vector<Expr> args;
};

struct PiConstant {};

struct Expr {
    std::variant<NumberLiteral, VariableRef, FieldAccess, UnaryNeg, BinaryExpr, FuncCall, PiConstant> node;
    int line = 0;
    int column = 0;
};

struct Assignment {
    std::string name;
    Expr value;
};

struct SkillCallStmt {
    std::string name;
    std::vector<Expr> args;
};

struct Statement {
    std::variant<Assignment, SkillCallStmt> node;
    int line = 0;
};

struct SkillProgram {
    std::vector<Statement> statements;
};

// Structural equality, ignoring source locations.
inline bool equal(const Expr& a, const Expr& b);

inline bool equal(const std::vector<Expr>& a, const std::vector<Expr>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (!equal(a[i], b[i])) return false;
    return true;
}

inline bool equal(const Expr& a, const Expr& b) {
    if (a.node.index() != b.node.index()) return false;
    if (const auto* n = std::get_if<NumberLiteral>(&a.node))
        return n->value == std::get<NumberLiteral>(b.node).value;
    if (const auto* v = std::get_if<VariableRef>(&a.node))
        return v->name == std::get<VariableRef>(b.node).name;
    if (const auto* f = std::get_if<FieldAccess>(&a.node)) {
        const auto& g = std::get<FieldAccess>(b.node);
        return f->base == g.base && f->axis == g.axis;
    }
    if (const auto* u = std::get_if<UnaryNeg>(&a.node))
        return equal(*u->operand, *std::get<UnaryNeg>(b.node).operand);
    if (const auto* x = std::get_if<BinaryExpr>(&a.node)) {
        const auto& y = std::get<BinaryExpr>(b.node);
        return x->op == y.op && equal(*x->lhs, *y.lhs) && equal(*x->rhs, *y.rhs);
    }
    if (const auto* c = std::get_if<FuncCall>(&a.node)) {
        const auto& d = std::get<FuncCall>(b.node);
        return c->name == d.name && equal(c->args, d.args);
    }
    return true;  // PiConstant
}

inline bool equal(const Statement& a, const Statement& b) {
    if (a.node.index() != b.node.index()) return false;
    if (const auto* asg = std::get_if<Assignment>(&a.node)) {
        const auto& other = std::get<Assignment>(b.node);
        return asg->name == other.name && equal(asg->value, other.value);
    }
    const auto& ca = std::get<SkillCallStmt>(a.node);
    const auto& cb = std::get<SkillCallStmt>(b.node);
    return ca.name == cb.name && equal(ca.args, cb.args);
}

inline bool equal(const SkillProgram& a, const SkillProgram& b) {
    if (a.statements.size() != b.statements.size()) return false;
    for (size_t i = 0; i < a.statements.size(); ++i)
        if (!equal(a.statements[i], b.statements[i])) return false;
    return true;
}

}  // namespace gsce::skillscript
