#include "contourforge/lowering.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "contourforge/errors.hpp"

namespace contourforge {

namespace {

struct ReIm {
    RealExprPtr re;
    RealExprPtr im;
};

ReIm complex_mul(const ReIm& a, const ReIm& b) {
    return {RealExpr::sub(RealExpr::mul(a.re, b.re), RealExpr::mul(a.im, b.im)),
            RealExpr::add(RealExpr::mul(a.re, b.im), RealExpr::mul(a.im, b.re))};
}

ReIm complex_div(const ReIm& a, const ReIm& b) {
    RealExprPtr den = RealExpr::add(RealExpr::mul(b.re, b.re), RealExpr::mul(b.im, b.im));
    RealExprPtr num_re = RealExpr::add(RealExpr::mul(a.re, b.re), RealExpr::mul(a.im, b.im));
    RealExprPtr num_im = RealExpr::sub(RealExpr::mul(a.im, b.re), RealExpr::mul(a.re, b.im));
    return {RealExpr::div(num_re, den), RealExpr::div(num_im, den)};
}

ReIm lower_node(const ExprPtr& e, const ReIm& z) {
    switch (e->op()) {
        case ExprOp::Const:
            return {RealExpr::constant(e->value().real()),
                    RealExpr::constant(e->value().imag())};
        case ExprOp::Var:
            if (e->name() != "z")
                throw std::invalid_argument("integrand must have the single free variable z");
            return z;
        case ExprOp::Add: {
            ReIm a = lower_node(e->child(0), z);
            ReIm b = lower_node(e->child(1), z);
            return {RealExpr::add(a.re, b.re), RealExpr::add(a.im, b.im)};
        }
        case ExprOp::Mul:
            return complex_mul(lower_node(e->child(0), z), lower_node(e->child(1), z));
        case ExprOp::Neg: {
            ReIm a = lower_node(e->child(0), z);
            return {RealExpr::neg(a.re), RealExpr::neg(a.im)};
        }
        case ExprOp::Div:
            return complex_div(lower_node(e->child(0), z), lower_node(e->child(1), z));
        case ExprOp::IntPow: {
            ReIm base = lower_node(e->child(0), z);
            ReIm acc{RealExpr::constant(1.0), RealExpr::constant(0.0)};
            for (int k = 0; k < e->exponent(); ++k) acc = complex_mul(acc, base);
            return acc;
        }
        case ExprOp::Exp: {
            ReIm a = lower_node(e->child(0), z);
            RealExprPtr mag = RealExpr::exp(a.re);
            return {RealExpr::mul(mag, RealExpr::cos(a.im)),
                    RealExpr::mul(mag, RealExpr::sin(a.im))};
        }
        case ExprOp::Sin: {
            ReIm a = lower_node(e->child(0), z);
            return {RealExpr::mul(RealExpr::sin(a.re), RealExpr::cosh(a.im)),
                    RealExpr::mul(RealExpr::cos(a.re), RealExpr::sinh(a.im))};
        }
        case ExprOp::Cos: {
            ReIm a = lower_node(e->child(0), z);
            return {RealExpr::mul(RealExpr::cos(a.re), RealExpr::cosh(a.im)),
                    RealExpr::neg(RealExpr::mul(RealExpr::sin(a.re), RealExpr::sinh(a.im)))};
        }
        case ExprOp::Sinh: {
            ReIm a = lower_node(e->child(0), z);
            return {RealExpr::mul(RealExpr::sinh(a.re), RealExpr::cos(a.im)),
                    RealExpr::mul(RealExpr::cosh(a.re), RealExpr::sin(a.im))};
        }
        case ExprOp::Cosh: {
            ReIm a = lower_node(e->child(0), z);
            return {RealExpr::mul(RealExpr::cosh(a.re), RealExpr::cos(a.im)),
                    RealExpr::mul(RealExpr::sinh(a.re), RealExpr::sin(a.im))};
        }
        case ExprOp::Sinc: {
            // sin(w)/w through the Div rule; the removable point is screened
            // before lowering starts.
            ReIm w = lower_node(e->child(0), z);
            ReIm sw{RealExpr::mul(RealExpr::sin(w.re), RealExpr::cosh(w.im)),
                    RealExpr::mul(RealExpr::cos(w.re), RealExpr::sinh(w.im))};
            return complex_div(sw, w);
        }
    }
    throw Error("corrupt expression node");
}

// Parametrization of one segment in its natural parameter: position (x, y)
// and velocity (vx, vy) as real expressions of `param`.
struct SymbolicPath {
    RealExprPtr x, y, vx, vy;
    std::string param;
    double lo = 0.0, hi = 0.0;
    double sign = 1.0;  // -1 when the natural parameter runs downhill
};

RealExprPtr horner(const std::vector<double>& coeffs, const RealExprPtr& var) {
    RealExprPtr acc = RealExpr::constant(coeffs.front());
    for (std::size_t k = 1; k < coeffs.size(); ++k)
        acc = RealExpr::add(RealExpr::mul(acc, var), RealExpr::constant(coeffs[k]));
    return acc;
}

SymbolicPath symbolic_path(const PathSegment& seg) {
    SymbolicPath p;
    p.param = seg.natural_name();
    const double n0 = seg.natural_lo();
    const double n1 = seg.natural_hi();
    p.lo = std::min(n0, n1);
    p.hi = std::max(n0, n1);
    p.sign = n0 <= n1 ? 1.0 : -1.0;
    RealExprPtr u = RealExpr::variable(p.param);

    switch (seg.kind()) {
        case SegmentKind::Line: {
            const Complex a = seg.line_a();
            const Complex d = seg.line_b() - seg.line_a();
            p.x = RealExpr::add(RealExpr::constant(a.real()),
                                RealExpr::mul(u, RealExpr::constant(d.real())));
            p.y = RealExpr::add(RealExpr::constant(a.imag()),
                                RealExpr::mul(u, RealExpr::constant(d.imag())));
            p.vx = RealExpr::constant(d.real());
            p.vy = RealExpr::constant(d.imag());
            break;
        }
        case SegmentKind::CircularArc: {
            const Complex c = seg.center();
            const double r = seg.radius();
            p.x = RealExpr::add(RealExpr::constant(c.real()),
                                RealExpr::mul(RealExpr::constant(r), RealExpr::cos(u)));
            p.y = RealExpr::add(RealExpr::constant(c.imag()),
                                RealExpr::mul(RealExpr::constant(r), RealExpr::sin(u)));
            // dz/dtheta = i r e^{i theta}
            p.vx = RealExpr::neg(RealExpr::mul(RealExpr::constant(r), RealExpr::sin(u)));
            p.vy = RealExpr::mul(RealExpr::constant(r), RealExpr::cos(u));
            break;
        }
        case SegmentKind::PolynomialGraph: {
            p.x = u;
            p.y = horner(seg.coeffs(), u);
            p.vx = RealExpr::constant(1.0);
            p.vy = horner(poly_derivative(seg.coeffs()), u);
            break;
        }
        case SegmentKind::HalfEllipse: {
            const Complex c = seg.center();
            p.x = RealExpr::add(RealExpr::constant(c.real()),
                                RealExpr::mul(RealExpr::constant(seg.rx()), RealExpr::cos(u)));
            p.y = RealExpr::add(RealExpr::constant(c.imag()),
                                RealExpr::mul(RealExpr::constant(seg.ry()), RealExpr::sin(u)));
            p.vx = RealExpr::neg(RealExpr::mul(RealExpr::constant(seg.rx()), RealExpr::sin(u)));
            p.vy = RealExpr::mul(RealExpr::constant(seg.ry()), RealExpr::cos(u));
            break;
        }
    }
    return p;
}

bool collect_singular_parts(const ExprPtr& e, std::vector<ExprPtr>& out) {
    if (!e) return false;
    bool found = false;
    if (e->op() == ExprOp::Div) {
        out.push_back(e->child(1));
        found = true;
    } else if (e->op() == ExprOp::Sinc) {
        out.push_back(e->child(0));
        found = true;
    }
    if (e->child(0)) found |= collect_singular_parts(e->child(0), out);
    if (e->child(1)) found |= collect_singular_parts(e->child(1), out);
    return found;
}

// Screens paths through the removable point: any Div denominator or Sinc
// argument of f that vanishes somewhere along the sampled segment.
void check_removable_point(const ExprPtr& f, const PathSegment& seg) {
    std::vector<ExprPtr> parts;
    collect_singular_parts(f, parts);
    if (parts.empty()) return;

    const int n = 2048;
    Bindings bindings{{"z", Complex{0.0, 0.0}}};
    auto& slot = bindings.at("z");
    for (const ExprPtr& part : parts) {
        double min_mod = std::numeric_limits<double>::infinity();
        double max_mod = 0.0;
        for (int k = 0; k <= n; ++k) {
            slot = seg.point(static_cast<double>(k) / n).z;
            double mod;
            try {
                mod = std::abs(eval_expr(part, bindings));
            } catch (const Error&) {
                mod = 0.0;
            }
            min_mod = std::min(min_mod, mod);
            max_mod = std::max(max_mod, mod);
        }
        if (min_mod <= 1e-9 * (1.0 + max_mod))
            throw RemovablePointOnPath(
                "path passes through a zero of '" + format_expr(part) +
                "'; use an indented contour to avoid the removable point");
    }
}

}  // namespace

LoweredIntegrand lower(const ExprPtr& f, const PathSegment& seg) {
    const auto vars = free_variables(f);
    if (!vars.empty() && !(vars.size() == 1 && *vars.begin() == "z"))
        throw std::invalid_argument("integrand must have the single free variable z");

    check_removable_point(f, seg);

    const SymbolicPath path = symbolic_path(seg);
    const ReIm z{path.x, path.y};
    ReIm value = complex_mul(lower_node(f, z), ReIm{path.vx, path.vy});
    if (path.sign < 0.0) value = {RealExpr::neg(value.re), RealExpr::neg(value.im)};

    LoweredIntegrand out;
    out.re_part = value.re;
    out.im_part = value.im;
    out.parameter = path.param;
    out.lo = path.lo;
    out.hi = path.hi;
    out.traversal_sign = path.sign;
    const auto brief = [](double v) {
        std::ostringstream os;
        os.precision(6);
        os << v;
        return os.str();
    };
    if (path.sign < 0.0) {
        out.orientation_note = "natural parameter " + path.param + " runs " + brief(path.hi) +
                               " -> " + brief(path.lo) +
                               "; emitted over the increasing interval with the integrand negated";
    } else {
        out.orientation_note = "traversed with increasing " + path.param;
    }
    return out;
}

EquivReport pointwise_equiv(const RealExprPtr& a, const RealExprPtr& b, double lo, double hi,
                            std::size_t n) {
    const auto va = free_variables(a);
    const auto vb = free_variables(b);
    if (va.size() > 1 || vb.size() > 1 ||
        (!va.empty() && !vb.empty() && *va.begin() != *vb.begin()))
        throw DomainMismatch("expressions do not share a single free variable");
    if (n == 0) throw std::invalid_argument("need at least one sample point");

    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    EquivReport report;
    report.samples = n;
    for (std::size_t j = 0; j < n; ++j) {
        const double x = center + half * std::cos(kPi * (2.0 * j + 1.0) / (2.0 * n));
        const double fa = eval_real(a, x);
        const double fb = eval_real(b, x);
        const double abs_dev = std::fabs(fa - fb);
        const double rel_dev = abs_dev / (1.0 + std::fabs(fb));
        if (abs_dev > report.max_abs_dev) {
            report.max_abs_dev = abs_dev;
            report.worst_at = x;
        }
        report.max_rel_dev = std::max(report.max_rel_dev, rel_dev);
    }
    return report;
}

}  // namespace contourforge
