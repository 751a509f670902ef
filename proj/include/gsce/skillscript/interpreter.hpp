#pragma once

#include <cmath>
#include <numbers>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gsce/errors.hpp"
#include "gsce/skillscript/ast.hpp"
#include "gsce/skillscript/host.hpp"

namespace gsce::skillscript {

struct Unit {};

using Value = std::variant<double, Vec3, Unit>;

// Flat single scope.
using Environment = std::map<std::string, Value>;

struct InterpretLimits {
    int step_limit = 1000;  // executed statements
};

struct ExecutionOutcome {
    std::optional<ExecError> error;
    bool ok() const { return !error.has_value(); }
};

namespace detail {

struct EvalError {
    ErrorCategory category;
    std::string message;
};

[[noreturn]] inline void eval_fail(ErrorCategory cat, const std::string& msg) {
    throw EvalError{cat, msg};
}

inline double as_number(const Value& v, const std::string& context) {
    if (const double* d = std::get_if<double>(&v)) return *d;
    if (std::holds_alternative<Vec3>(v))
        eval_fail(ErrorCategory::RuntimeError, context + ": expected a number, got a vector");
    eval_fail(ErrorCategory::RuntimeError, context + ": expected a number, got a unit value");
}

inline double check_finite(double v, const std::string& context) {
    if (!std::isfinite(v))
        eval_fail(ErrorCategory::RuntimeError, context + " produced a non-finite value");
    return v;
}

inline bool is_skill_name(const std::string& name) {
    return name == "takeoff" || name == "land" || name == "get_yaw" || name == "set_yaw" ||
           name == "fly_to" || name == "get_drone_position";
}

inline void check_arity(const std::string& name, size_t got, size_t want) {
    if (got != want)
        eval_fail(ErrorCategory::RuntimeError,
                  name + "() takes " + std::to_string(want) + " argument(s), got " + std::to_string(got));
}

// Dispatch one of the six skills. Numeric arguments are type-checked
// here; precondition violations surface as HostError from the host.
inline Value call_skill(const std::string& name, const std::vector<Value>& args, SkillHost& host) {
    if (name == "takeoff") {
        check_arity(name, args.size(), 0);
        host.takeoff();
        return Unit{};
    }
    if (name == "land") {
        check_arity(name, args.size(), 0);
        host.land();
        return Unit{};
    }
    if (name == "get_yaw") {
        check_arity(name, args.size(), 0);
        return host.get_yaw();
    }
    if (name == "get_drone_position") {
        check_arity(name, args.size(), 0);
        return host.get_drone_position();
    }
    if (name == "set_yaw") {
        check_arity(name, args.size(), 1);
        host.set_yaw(as_number(args[0], "set_yaw argument 1"));
        return Unit{};
    }
    // fly_to(x, y, z) with an optional, ignored speed argument.
    if (args.size() != 3 && args.size() != 4)
        eval_fail(ErrorCategory::RuntimeError,
                  "fly_to() takes 3 or 4 arguments, got " + std::to_string(args.size()));
    double x = as_number(args[0], "fly_to argument 1");
    double y = as_number(args[1], "fly_to argument 2");
    double z = as_number(args[2], "fly_to argument 3");
    if (args.size() == 4) as_number(args[3], "fly_to argument 4");
    host.fly_to(x, y, z);
    return Unit{};
}

inline Value call_math(const std::string& name, const std::vector<Value>& args, bool& handled) {
    handled = true;
    auto unary = [&](double (*fn)(double)) {
        check_arity(name, args.size(), 1);
        return check_finite(fn(as_number(args[0], name + " argument 1")), name + "()");
    };
    auto binary = [&](double (*fn)(double, double)) {
        check_arity(name, args.size(), 2);
        double a = as_number(args[0], name + " argument 1");
        double b = as_number(args[1], name + " argument 2");
        return check_finite(fn(a, b), name + "()");
    };
    if (name == "sin") return unary([](double v) { return std::sin(v); });
    if (name == "cos") return unary([](double v) { return std::cos(v); });
    if (name == "tan") return unary([](double v) { return std::tan(v); });
    if (name == "sqrt") return unary([](double v) { return std::sqrt(v); });
    if (name == "abs") return unary([](double v) { return std::fabs(v); });
    if (name == "radians") return unary([](double v) { return v * (std::numbers::pi / 180.0); });
    if (name == "degrees") return unary([](double v) { return v * (180.0 / std::numbers::pi); });
    if (name == "atan2") return binary([](double a, double b) { return std::atan2(a, b); });
    if (name == "min") return binary([](double a, double b) { return std::fmin(a, b); });
    if (name == "max") return binary([](double a, double b) { return std::fmax(a, b); });
    handled = false;
    return Unit{};
}

}  // namespace detail

// Evaluate a single expression. `host` may be null for pure arithmetic;
// skill calls then report UnknownFunction. Errors are reported by
// throwing detail::EvalError (callers inside interpret() convert them).
inline Value evaluate(const Expr& expr, const Environment& env, SkillHost* host) {
    using namespace detail;
    if (const auto* n = std::get_if<NumberLiteral>(&expr.node))
        return check_finite(n->value, "number literal");
    if (std::holds_alternative<PiConstant>(expr.node)) return std::numbers::pi;
    if (const auto* v = std::get_if<VariableRef>(&expr.node)) {
        auto it = env.find(v->name);
        if (it == env.end())
            eval_fail(ErrorCategory::RuntimeError, "undefined variable '" + v->name + "'");
        return it->second;
    }
    if (const auto* f = std::get_if<FieldAccess>(&expr.node)) {
        auto it = env.find(f->base);
        if (it == env.end())
            eval_fail(ErrorCategory::RuntimeError, "undefined variable '" + f->base + "'");
        const Vec3* vec = std::get_if<Vec3>(&it->second);
        if (!vec)
            eval_fail(ErrorCategory::RuntimeError,
                      "'" + f->base + "' is not a vector; field access needs a vector");
        switch (f->axis) {
            case Axis::X: return vec->x;
            case Axis::Y: return vec->y;
            default: return vec->z;
        }
    }
    if (const auto* u = std::get_if<UnaryNeg>(&expr.node)) {
        double v = as_number(evaluate(*u->operand, env, host), "unary '-'");
        return -v;
    }
    if (const auto* b = std::get_if<BinaryExpr>(&expr.node)) {
        double lhs = as_number(evaluate(*b->lhs, env, host), "arithmetic");
        double rhs = as_number(evaluate(*b->rhs, env, host), "arithmetic");
        double out = 0.0;
        switch (b->op) {
            case BinaryOp::Add: out = lhs + rhs; break;
            case BinaryOp::Sub: out = lhs - rhs; break;
            case BinaryOp::Mul: out = lhs * rhs; break;
            case BinaryOp::Div: out = lhs / rhs; break;
        }
        return check_finite(out, "arithmetic");
    }
    const auto& call = std::get<FuncCall>(expr.node);
    std::vector<Value> args;
    args.reserve(call.args.size());
    for (const Expr& arg : call.args) args.push_back(evaluate(arg, env, host));
    bool handled = false;
    Value result = call_math(call.name, args, handled);
    if (handled) return result;
    if (is_skill_name(call.name)) {
        if (!host)
            eval_fail(ErrorCategory::UnknownFunction, "no skill host for '" + call.name + "'");
        return call_skill(call.name, args, *host);
    }
    eval_fail(ErrorCategory::UnknownFunction, "unknown function '" + call.name + "'");
}

// Execute a program against a freshly reset host. Statements run in
// order; execution halts at the first error.
inline ExecutionOutcome interpret(const SkillProgram& program, SkillHost& host,
                                  InterpretLimits limits = {}) {
    Environment env;
    int steps = 0;
    for (const Statement& stmt : program.statements) {
        ++steps;
        if (steps > limits.step_limit) {
            return {ExecError{ErrorCategory::StepLimitExceeded,
                              "statement limit of " + std::to_string(limits.step_limit) + " exceeded",
                              stmt.line, 0}};
        }
        try {
            if (const auto* asg = std::get_if<Assignment>(&stmt.node)) {
                env[asg->name] = evaluate(asg->value, env, &host);
            } else {
                const auto& call = std::get<SkillCallStmt>(stmt.node);
                // Bare call statements dispatch skills only; math
                // functions are expression-level.
                if (!detail::is_skill_name(call.name)) {
                    return {ExecError{ErrorCategory::UnknownFunction,
                                      "unknown skill '" + call.name + "'", stmt.line, 0}};
                }
                std::vector<Value> args;
                args.reserve(call.args.size());
                for (const Expr& arg : call.args) args.push_back(evaluate(arg, env, &host));
                detail::call_skill(call.name, args, host);
            }
        } catch (const detail::EvalError& e) {
            return {ExecError{e.category, e.message, stmt.line, 0}};
        } catch (const HostError& e) {
            return {ExecError{ErrorCategory::RuntimeError, e.what(), stmt.line, 0}};
        }
    }
    return {};
}

}  // namespace gsce::skillscript
