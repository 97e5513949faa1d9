#include "contourforge/real_expr.hpp"

#include <cmath>
#include <stdexcept>

#include "contourforge/errors.hpp"

namespace contourforge {

namespace {

bool is_const(const RealExprPtr& e, double v) {
    return e->op() == RealOp::Const && e->value() == v;
}

bool is_const(const RealExprPtr& e) { return e->op() == RealOp::Const; }

}  // namespace

RealExprPtr RealExpr::constant(double value) {
    auto n = std::shared_ptr<RealExpr>(new RealExpr());
    n->op_ = RealOp::Const;
    n->value_ = value;
    return n;
}

RealExprPtr RealExpr::variable(std::string name) {
    auto n = std::shared_ptr<RealExpr>(new RealExpr());
    n->op_ = RealOp::Var;
    n->name_ = std::move(name);
    return n;
}

// Raw node constructors behind the folding factories.
struct RealExprAccess {
    static RealExprPtr unary(RealOp op, RealExprPtr a) {
        auto n = std::shared_ptr<RealExpr>(new RealExpr());
        n->op_ = op;
        n->a_ = std::move(a);
        return n;
    }
    static RealExprPtr binary(RealOp op, RealExprPtr a, RealExprPtr b) {
        auto n = std::shared_ptr<RealExpr>(new RealExpr());
        n->op_ = op;
        n->a_ = std::move(a);
        n->b_ = std::move(b);
        return n;
    }
    static RealExprPtr ipow(RealExprPtr a, int exponent) {
        auto n = std::shared_ptr<RealExpr>(new RealExpr());
        n->op_ = RealOp::IntPow;
        n->a_ = std::move(a);
        n->exponent_ = exponent;
        return n;
    }
};

RealExprPtr RealExpr::add(RealExprPtr a, RealExprPtr b) {
    if (!a || !b) throw std::invalid_argument("null real-expression child");
    if (is_const(a) && is_const(b)) return constant(a->value() + b->value());
    if (is_const(a, 0.0)) return b;
    if (is_const(b, 0.0)) return a;
    return RealExprAccess::binary(RealOp::Add, std::move(a), std::move(b));
}

RealExprPtr RealExpr::sub(RealExprPtr a, RealExprPtr b) {
    return add(std::move(a), neg(std::move(b)));
}

RealExprPtr RealExpr::mul(RealExprPtr a, RealExprPtr b) {
    if (!a || !b) throw std::invalid_argument("null real-expression child");
    if (is_const(a) && is_const(b)) return constant(a->value() * b->value());
    // x*0 assumes x finite on the domain of interest (catalog integrands are).
    if (is_const(a, 0.0) || is_const(b, 0.0)) return constant(0.0);
    if (is_const(a, 1.0)) return b;
    if (is_const(b, 1.0)) return a;
    return RealExprAccess::binary(RealOp::Mul, std::move(a), std::move(b));
}

RealExprPtr RealExpr::neg(RealExprPtr a) {
    if (!a) throw std::invalid_argument("null real-expression child");
    if (is_const(a)) return constant(-a->value());
    if (a->op() == RealOp::Neg) return a->child(0);
    return RealExprAccess::unary(RealOp::Neg, std::move(a));
}

RealExprPtr RealExpr::div(RealExprPtr num, RealExprPtr den) {
    if (!num || !den) throw std::invalid_argument("null real-expression child");
    if (is_const(num) && is_const(den) && den->value() != 0.0)
        return constant(num->value() / den->value());
    if (is_const(den, 1.0)) return num;
    return RealExprAccess::binary(RealOp::Div, std::move(num), std::move(den));
}

RealExprPtr RealExpr::ipow(RealExprPtr base, int exponent) {
    if (!base) throw std::invalid_argument("null real-expression child");
    if (exponent < 0)
        throw std::invalid_argument("IntPow exponent must be >= 0; use div for negative powers");
    if (exponent == 0) return constant(1.0);
    if (exponent == 1) return base;
    if (is_const(base)) {
        double acc = 1.0;
        for (int k = 0; k < exponent; ++k) acc *= base->value();
        return constant(acc);
    }
    return RealExprAccess::ipow(std::move(base), exponent);
}

namespace {

RealExprPtr fold_unary(RealOp op, RealExprPtr a, double (*fn)(double)) {
    if (!a) throw std::invalid_argument("null real-expression child");
    if (a->op() == RealOp::Const) return RealExpr::constant(fn(a->value()));
    return RealExprAccess::unary(op, std::move(a));
}

}  // namespace

RealExprPtr RealExpr::exp(RealExprPtr a) { return fold_unary(RealOp::Exp, std::move(a), std::exp); }
RealExprPtr RealExpr::sin(RealExprPtr a) { return fold_unary(RealOp::Sin, std::move(a), std::sin); }
RealExprPtr RealExpr::cos(RealExprPtr a) { return fold_unary(RealOp::Cos, std::move(a), std::cos); }
RealExprPtr RealExpr::sinh(RealExprPtr a) { return fold_unary(RealOp::Sinh, std::move(a), std::sinh); }
RealExprPtr RealExpr::cosh(RealExprPtr a) { return fold_unary(RealOp::Cosh, std::move(a), std::cosh); }

bool equal(const RealExprPtr& a, const RealExprPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->op() != b->op()) return false;
    switch (a->op()) {
        case RealOp::Const: return a->value() == b->value();
        case RealOp::Var: return a->name() == b->name();
        case RealOp::IntPow:
            return a->exponent() == b->exponent() && equal(a->child(0), b->child(0));
        case RealOp::Add:
        case RealOp::Mul:
        case RealOp::Div:
            return equal(a->child(0), b->child(0)) && equal(a->child(1), b->child(1));
        default:
            return equal(a->child(0), b->child(0));
    }
}

namespace {

void collect_vars(const RealExprPtr& e, std::set<std::string>& out) {
    if (!e) return;
    if (e->op() == RealOp::Var) {
        out.insert(e->name());
        return;
    }
    collect_vars(e->child(0), out);
    collect_vars(e->child(1), out);
}

}  // namespace

std::set<std::string> free_variables(const RealExprPtr& e) {
    std::set<std::string> out;
    collect_vars(e, out);
    return out;
}

double eval_real(const RealExprPtr& e, double x) {
    switch (e->op()) {
        case RealOp::Const: return e->value();
        case RealOp::Var: return x;
        case RealOp::Add: return eval_real(e->child(0), x) + eval_real(e->child(1), x);
        case RealOp::Mul: return eval_real(e->child(0), x) * eval_real(e->child(1), x);
        case RealOp::Neg: return -eval_real(e->child(0), x);
        case RealOp::Div: {
            const double den = eval_real(e->child(1), x);
            if (std::fabs(den) < kDivisionGuard)
                throw DivisionNearZero("division by near-zero denominator (|w| < 1e-300)");
            return eval_real(e->child(0), x) / den;
        }
        case RealOp::IntPow: {
            const double base = eval_real(e->child(0), x);
            double acc = 1.0;
            for (int k = 0; k < e->exponent(); ++k) acc *= base;
            return acc;
        }
        case RealOp::Exp: return std::exp(eval_real(e->child(0), x));
        case RealOp::Sin: return std::sin(eval_real(e->child(0), x));
        case RealOp::Cos: return std::cos(eval_real(e->child(0), x));
        case RealOp::Sinh: return std::sinh(eval_real(e->child(0), x));
        case RealOp::Cosh: return std::cosh(eval_real(e->child(0), x));
    }
    throw Error("corrupt real-expression node");
}

ExprPtr to_expr(const RealExprPtr& e) {
    switch (e->op()) {
        case RealOp::Const: return Expr::constant(Complex{e->value(), 0.0});
        case RealOp::Var: return Expr::variable(e->name());
        case RealOp::Add: return Expr::add(to_expr(e->child(0)), to_expr(e->child(1)));
        case RealOp::Mul: return Expr::mul(to_expr(e->child(0)), to_expr(e->child(1)));
        case RealOp::Neg: return Expr::neg(to_expr(e->child(0)));
        case RealOp::Div: return Expr::div(to_expr(e->child(0)), to_expr(e->child(1)));
        case RealOp::IntPow: return Expr::ipow(to_expr(e->child(0)), e->exponent());
        case RealOp::Exp: return Expr::exp(to_expr(e->child(0)));
        case RealOp::Sin: return Expr::sin(to_expr(e->child(0)));
        case RealOp::Cos: return Expr::cos(to_expr(e->child(0)));
        case RealOp::Sinh: return Expr::sinh(to_expr(e->child(0)));
        case RealOp::Cosh: return Expr::cosh(to_expr(e->child(0)));
    }
    throw Error("corrupt real-expression node");
}

std::string format_real(const RealExprPtr& e, ExprStyle style) {
    return format_expr(to_expr(e), style);
}

}  // namespace contourforge
