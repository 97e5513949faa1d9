#include "contourforge/expr.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "contourforge/errors.hpp"

namespace contourforge {

std::string to_string(Entirety tag) {
    switch (tag) {
        case Entirety::Entire: return "Entire";
        case Entirety::EntireByRemovableSingularity: return "EntireByRemovableSingularity";
        case Entirety::NotEntire: return "NotEntire";
        case Entirety::Unknown: return "Unknown";
    }
    return "Unknown";
}

namespace {

void require_child(const ExprPtr& a) {
    if (!a) throw std::invalid_argument("null expression child");
}

}  // namespace

ExprPtr Expr::constant(Complex value) {
    auto n = std::shared_ptr<Expr>(new Expr());
    n->op_ = ExprOp::Const;
    n->value_ = value;
    return n;
}

ExprPtr Expr::variable(std::string name) {
    auto n = std::shared_ptr<Expr>(new Expr());
    n->op_ = ExprOp::Var;
    n->name_ = std::move(name);
    return n;
}

ExprPtr Expr::make_unary(ExprOp op, ExprPtr a) {
    require_child(a);
    auto n = std::shared_ptr<Expr>(new Expr());
    n->op_ = op;
    n->a_ = std::move(a);
    return n;
}

ExprPtr Expr::make_binary(ExprOp op, ExprPtr a, ExprPtr b) {
    require_child(a);
    require_child(b);
    auto n = std::shared_ptr<Expr>(new Expr());
    n->op_ = op;
    n->a_ = std::move(a);
    n->b_ = std::move(b);
    return n;
}

ExprPtr Expr::add(ExprPtr a, ExprPtr b) { return make_binary(ExprOp::Add, std::move(a), std::move(b)); }
ExprPtr Expr::sub(ExprPtr a, ExprPtr b) { return add(std::move(a), neg(std::move(b))); }
ExprPtr Expr::mul(ExprPtr a, ExprPtr b) { return make_binary(ExprOp::Mul, std::move(a), std::move(b)); }
ExprPtr Expr::neg(ExprPtr a) { return make_unary(ExprOp::Neg, std::move(a)); }
ExprPtr Expr::div(ExprPtr num, ExprPtr den) { return make_binary(ExprOp::Div, std::move(num), std::move(den)); }

ExprPtr Expr::ipow(ExprPtr base, int exponent) {
    require_child(base);
    if (exponent < 0)
        throw std::invalid_argument("IntPow exponent must be >= 0; use div for negative powers");
    auto n = std::shared_ptr<Expr>(new Expr());
    n->op_ = ExprOp::IntPow;
    n->a_ = std::move(base);
    n->exponent_ = exponent;
    return n;
}

ExprPtr Expr::exp(ExprPtr a) { return make_unary(ExprOp::Exp, std::move(a)); }
ExprPtr Expr::sin(ExprPtr a) { return make_unary(ExprOp::Sin, std::move(a)); }
ExprPtr Expr::cos(ExprPtr a) { return make_unary(ExprOp::Cos, std::move(a)); }
ExprPtr Expr::sinh(ExprPtr a) { return make_unary(ExprOp::Sinh, std::move(a)); }
ExprPtr Expr::cosh(ExprPtr a) { return make_unary(ExprOp::Cosh, std::move(a)); }
ExprPtr Expr::sinc(ExprPtr a) { return make_unary(ExprOp::Sinc, std::move(a)); }

bool equal(const ExprPtr& a, const ExprPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->op() != b->op()) return false;
    switch (a->op()) {
        case ExprOp::Const:
            return a->value().real() == b->value().real() &&
                   a->value().imag() == b->value().imag();
        case ExprOp::Var:
            return a->name() == b->name();
        case ExprOp::IntPow:
            return a->exponent() == b->exponent() && equal(a->child(0), b->child(0));
        case ExprOp::Add:
        case ExprOp::Mul:
        case ExprOp::Div:
            return equal(a->child(0), b->child(0)) && equal(a->child(1), b->child(1));
        default:
            return equal(a->child(0), b->child(0));
    }
}

namespace {

void collect_vars(const ExprPtr& e, std::set<std::string>& out) {
    if (!e) return;
    if (e->op() == ExprOp::Var) {
        out.insert(e->name());
        return;
    }
    collect_vars(e->child(0), out);
    collect_vars(e->child(1), out);
}

}  // namespace

std::set<std::string> free_variables(const ExprPtr& e) {
    std::set<std::string> out;
    collect_vars(e, out);
    return out;
}

namespace {

Complex eval_sinc(Complex w) {
    if (std::abs(w) < kSincSeriesThreshold) {
        const Complex w2 = w * w;
        return 1.0 + w2 * (-1.0 / 6.0) + w2 * w2 * (1.0 / 120.0);
    }
    return std::sin(w) / w;
}

}  // namespace

Complex eval_expr(const ExprPtr& e, const Bindings& bindings) {
    switch (e->op()) {
        case ExprOp::Const:
            return e->value();
        case ExprOp::Var: {
            auto it = bindings.find(e->name());
            if (it == bindings.end()) throw UnboundVariable(e->name());
            return it->second;
        }
        case ExprOp::Add:
            return eval_expr(e->child(0), bindings) + eval_expr(e->child(1), bindings);
        case ExprOp::Mul:
            return eval_expr(e->child(0), bindings) * eval_expr(e->child(1), bindings);
        case ExprOp::Neg:
            return -eval_expr(e->child(0), bindings);
        case ExprOp::Div: {
            const Complex num = eval_expr(e->child(0), bindings);
            const Complex den = eval_expr(e->child(1), bindings);
            if (std::abs(den) < kDivisionGuard)
                throw DivisionNearZero("division by near-zero denominator (|w| < 1e-300)");
            return num / den;
        }
        case ExprOp::IntPow: {
            const Complex base = eval_expr(e->child(0), bindings);
            Complex acc{1.0, 0.0};
            for (int k = 0; k < e->exponent(); ++k) acc *= base;
            return acc;
        }
        case ExprOp::Exp:
            return std::exp(eval_expr(e->child(0), bindings));
        case ExprOp::Sin:
            return std::sin(eval_expr(e->child(0), bindings));
        case ExprOp::Cos:
            return std::cos(eval_expr(e->child(0), bindings));
        case ExprOp::Sinh:
            return std::sinh(eval_expr(e->child(0), bindings));
        case ExprOp::Cosh:
            return std::cosh(eval_expr(e->child(0), bindings));
        case ExprOp::Sinc:
            return eval_sinc(eval_expr(e->child(0), bindings));
    }
    throw Error("corrupt expression node");
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

// Binding strength: Add < Mul/Div < Neg < IntPow < atom.
enum Prec { kPrecAdd = 1, kPrecMul = 2, kPrecNeg = 3, kPrecPow = 4, kPrecAtom = 5 };

bool is_atom_text(const ExprPtr& e) {
    switch (e->op()) {
        case ExprOp::Const:
            return e->value().imag() == 0.0 ? e->value().real() >= 0.0
                                            : (e->value() == Complex{0.0, 1.0});
        case ExprOp::Var:
        case ExprOp::Exp:
        case ExprOp::Sin:
        case ExprOp::Cos:
        case ExprOp::Sinh:
        case ExprOp::Cosh:
        case ExprOp::Sinc:
            return true;  // function calls carry their own parentheses
        default:
            return false;
    }
}

std::string text_const(Complex v) {
    if (v.imag() == 0.0) return format_double(v.real());
    if (v.real() == 0.0 && v.imag() == 1.0) return "i";
    // Not in the parser image; renders as an equivalent sum.
    std::string im = format_double(std::fabs(v.imag()));
    return "(" + format_double(v.real()) + (v.imag() < 0 ? " - " : " + ") + im + "*i)";
}

std::string fn_name(ExprOp op) {
    switch (op) {
        case ExprOp::Exp: return "exp";
        case ExprOp::Sin: return "sin";
        case ExprOp::Cos: return "cos";
        case ExprOp::Sinh: return "sinh";
        case ExprOp::Cosh: return "cosh";
        case ExprOp::Sinc: return "sinc";
        default: return "?";
    }
}

std::string text_render(const ExprPtr& e, int min_prec) {
    switch (e->op()) {
        case ExprOp::Const: {
            std::string s = text_const(e->value());
            // Negative reals print as "-2": precedence of a leading minus.
            if (!s.empty() && s[0] == '-' && min_prec > kPrecNeg) return "(" + s + ")";
            return s;
        }
        case ExprOp::Var:
            return e->name();
        case ExprOp::Add: {
            const ExprPtr& l = e->child(0);
            const ExprPtr& r = e->child(1);
            std::string out = text_render(l, kPrecAdd);
            if (r->op() == ExprOp::Neg)
                out += " - " + text_render(r->child(0), kPrecMul);
            else if (r->op() == ExprOp::Const && r->value().imag() == 0.0 &&
                     r->value().real() < 0.0)
                out += " - " + format_double(-r->value().real());
            else
                out += " + " + text_render(r, kPrecAdd + 1);
            if (min_prec > kPrecAdd) return "(" + out + ")";
            return out;
        }
        case ExprOp::Mul: {
            std::string out =
                text_render(e->child(0), kPrecMul) + "*" + text_render(e->child(1), kPrecNeg + 1);
            if (min_prec > kPrecMul) return "(" + out + ")";
            return out;
        }
        case ExprOp::Div: {
            std::string out =
                text_render(e->child(0), kPrecMul) + "/" + text_render(e->child(1), kPrecNeg + 1);
            if (min_prec > kPrecMul) return "(" + out + ")";
            return out;
        }
        case ExprOp::Neg: {
            // The operand is parenthesized unless atomic: -(z^2), -z, -sin(z).
            const ExprPtr& a = e->child(0);
            std::string inner =
                is_atom_text(a) || a->op() == ExprOp::Neg ? text_render(a, kPrecNeg) : "(" + text_render(a, 0) + ")";
            std::string out = "-" + inner;
            if (min_prec > kPrecNeg) return "(" + out + ")";
            return out;
        }
        case ExprOp::IntPow: {
            const ExprPtr& base = e->child(0);
            std::string b = is_atom_text(base) ? text_render(base, kPrecAtom)
                                               : "(" + text_render(base, 0) + ")";
            return b + "^" + std::to_string(e->exponent());
        }
        default:
            return fn_name(e->op()) + "(" + text_render(e->child(0), 0) + ")";
    }
}

std::string latex_const(Complex v) {
    if (v.imag() == 0.0) return format_double(v.real());
    if (v.real() == 0.0 && v.imag() == 1.0) return "i";
    std::string im = format_double(std::fabs(v.imag()));
    return "\\left(" + format_double(v.real()) + (v.imag() < 0 ? " - " : " + ") + im +
           " i\\right)";
}

std::string latex_fn(ExprOp op) {
    switch (op) {
        case ExprOp::Exp: return "\\exp";
        case ExprOp::Sin: return "\\sin";
        case ExprOp::Cos: return "\\cos";
        case ExprOp::Sinh: return "\\sinh";
        case ExprOp::Cosh: return "\\cosh";
        case ExprOp::Sinc: return "\\mathrm{sinc}";
        default: return "?";
    }
}

std::string latex_var(const std::string& name) {
    if (name == "theta") return "\\theta";
    return name;
}

std::string latex_render(const ExprPtr& e, int min_prec) {
    switch (e->op()) {
        case ExprOp::Const: {
            std::string s = latex_const(e->value());
            if (!s.empty() && s[0] == '-' && min_prec > kPrecNeg) return "\\left(" + s + "\\right)";
            return s;
        }
        case ExprOp::Var:
            return latex_var(e->name());
        case ExprOp::Add: {
            const ExprPtr& r = e->child(1);
            std::string out = latex_render(e->child(0), kPrecAdd);
            if (r->op() == ExprOp::Neg)
                out += " - " + latex_render(r->child(0), kPrecMul);
            else if (r->op() == ExprOp::Const && r->value().imag() == 0.0 &&
                     r->value().real() < 0.0)
                out += " - " + format_double(-r->value().real());
            else
                out += " + " + latex_render(r, kPrecAdd + 1);
            if (min_prec > kPrecAdd) return "\\left(" + out + "\\right)";
            return out;
        }
        case ExprOp::Mul: {
            std::string out = latex_render(e->child(0), kPrecMul) + " \\cdot " +
                              latex_render(e->child(1), kPrecNeg + 1);
            if (min_prec > kPrecMul) return "\\left(" + out + "\\right)";
            return out;
        }
        case ExprOp::Div:
            return "\\frac{" + latex_render(e->child(0), 0) + "}{" + latex_render(e->child(1), 0) +
                   "}";
        case ExprOp::Neg: {
            std::string out = "-" + latex_render(e->child(0), kPrecNeg + 1);
            if (min_prec > kPrecNeg) return "\\left(" + out + "\\right)";
            return out;
        }
        case ExprOp::IntPow: {
            const ExprPtr& base = e->child(0);
            std::string b = base->is_leaf() && !(base->op() == ExprOp::Const &&
                                                 (base->value().imag() != 0.0 ||
                                                  base->value().real() < 0.0))
                                ? latex_render(base, kPrecAtom)
                                : "\\left(" + latex_render(base, 0) + "\\right)";
            return b + "^{" + std::to_string(e->exponent()) + "}";
        }
        default:
            return latex_fn(e->op()) + "(" + latex_render(e->child(0), 0) + ")";
    }
}

}  // namespace

std::string format_expr(const ExprPtr& e, ExprStyle style) {
    if (!e) return "";
    return style == ExprStyle::Text ? text_render(e, 0) : latex_render(e, 0);
}

}  // namespace contourforge
