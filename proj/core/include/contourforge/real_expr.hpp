#pragma once

#include <memory>
#include <set>
#include <string>

#include "contourforge/expr.hpp"

namespace contourforge {

enum class RealOp {
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
};

class RealExpr;
using RealExprPtr = std::shared_ptr<const RealExpr>;

/// Immutable real-variable expression tree, the output of lowering.
///
/// The factories fold constants and apply the exact floating-point identities
/// x+0, x*1, x*0, -(-x), x^0 -> 1 and x^1 -> x on construction, so building
/// the same tree twice yields structurally identical results. The x*0 fold
/// assumes subexpressions evaluate finite on the domain of interest.
class RealExpr {
public:
    static RealExprPtr constant(double value);
    static RealExprPtr variable(std::string name);
    static RealExprPtr add(RealExprPtr a, RealExprPtr b);
    static RealExprPtr sub(RealExprPtr a, RealExprPtr b);
    static RealExprPtr mul(RealExprPtr a, RealExprPtr b);
    static RealExprPtr neg(RealExprPtr a);
    static RealExprPtr div(RealExprPtr num, RealExprPtr den);
    static RealExprPtr ipow(RealExprPtr base, int exponent);
    static RealExprPtr exp(RealExprPtr a);
    static RealExprPtr sin(RealExprPtr a);
    static RealExprPtr cos(RealExprPtr a);
    static RealExprPtr sinh(RealExprPtr a);
    static RealExprPtr cosh(RealExprPtr a);

    RealOp op() const { return op_; }
    double value() const { return value_; }
    const std::string& name() const { return name_; }
    int exponent() const { return exponent_; }
    const RealExprPtr& child(int i) const { return i == 0 ? a_ : b_; }

private:
    RealExpr() = default;
    friend struct RealExprAccess;

    RealOp op_ = RealOp::Const;
    double value_ = 0.0;
    std::string name_;
    int exponent_ = 0;
    RealExprPtr a_, b_;
};

bool equal(const RealExprPtr& a, const RealExprPtr& b);

std::set<std::string> free_variables(const RealExprPtr& e);

/// Evaluate at a real point, binding the (single) free variable to x.
double eval_real(const RealExprPtr& e, double x);

/// Embed into the complex node set (real nodes map one-to-one); lets the
/// real trees reuse format_expr for text and LaTeX emission.
ExprPtr to_expr(const RealExprPtr& e);

std::string format_real(const RealExprPtr& e, ExprStyle style = ExprStyle::Text);

}  // namespace contourforge
