#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>

#include "contourforge/complex.hpp"

namespace contourforge {

/// Entirety claim attached to an integrand. Only the built-in catalog assigns
/// claims; expressions parsed from user input default to Unknown.
enum class Entirety {
    Entire,
    EntireByRemovableSingularity,
    NotEntire,
    Unknown,
};

std::string to_string(Entirety tag);

enum class ExprOp {
    Const,
    Var,
    Add,
    Mul,
    Neg,
    Div,
    IntPow,
    Exp,
    Sin,
    Cos,
    Sinh,
    Cosh,
    Sinc,
};

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Immutable complex-expression tree. Nodes are built through the static
/// factories and shared freely; there is no mutation after construction.
class Expr {
public:
    static ExprPtr constant(Complex value);
    static ExprPtr variable(std::string name);
    static ExprPtr add(ExprPtr a, ExprPtr b);
    static ExprPtr sub(ExprPtr a, ExprPtr b);  // sugar: add(a, neg(b))
    static ExprPtr mul(ExprPtr a, ExprPtr b);
    static ExprPtr neg(ExprPtr a);
    static ExprPtr div(ExprPtr num, ExprPtr den);
    /// Integer power, exponent >= 0. Negative powers must go through div().
    static ExprPtr ipow(ExprPtr base, int exponent);
    static ExprPtr exp(ExprPtr a);
    static ExprPtr sin(ExprPtr a);
    static ExprPtr cos(ExprPtr a);
    static ExprPtr sinh(ExprPtr a);
    static ExprPtr cosh(ExprPtr a);
    static ExprPtr sinc(ExprPtr a);

    ExprOp op() const { return op_; }
    const Complex& value() const { return value_; }
    const std::string& name() const { return name_; }
    int exponent() const { return exponent_; }
    const ExprPtr& child(int i) const { return i == 0 ? a_ : b_; }
    bool is_leaf() const { return op_ == ExprOp::Const || op_ == ExprOp::Var; }

private:
    Expr() = default;
    static ExprPtr make_unary(ExprOp op, ExprPtr a);
    static ExprPtr make_binary(ExprOp op, ExprPtr a, ExprPtr b);

    ExprOp op_ = ExprOp::Const;
    Complex value_{0.0, 0.0};
    std::string name_;
    int exponent_ = 0;
    ExprPtr a_, b_;
};

/// Deep structural equality (operator, payload and children).
bool equal(const ExprPtr& a, const ExprPtr& b);

/// Names of the free variables of e.
std::set<std::string> free_variables(const ExprPtr& e);

using Bindings = std::map<std::string, Complex>;

/// Below this modulus sinc switches from sin(w)/w to its truncated series;
/// the series error tau^6/5040 is far below double-precision noise.
inline constexpr double kSincSeriesThreshold = 1e-3;

/// Division guard: denominators with modulus below this raise DivisionNearZero.
inline constexpr double kDivisionGuard = 1e-300;

/// Evaluate e with every free variable bound. Pure: identical inputs give
/// bit-identical results. Throws UnboundVariable or DivisionNearZero.
Complex eval_expr(const ExprPtr& e, const Bindings& bindings);

enum class ExprStyle { Text, Latex };

/// Deterministic rendering. Text output re-parses to a structurally identical
/// tree for any tree in the image of parse_expr (general complex constants
/// render as "(a + b*i)", which re-parses to the equivalent sum form).
std::string format_expr(const ExprPtr& e, ExprStyle style = ExprStyle::Text);

}  // namespace contourforge
