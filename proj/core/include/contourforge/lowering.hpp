#pragma once

#include <string>

#include "contourforge/contour.hpp"
#include "contourforge/expr.hpp"
#include "contourforge/real_expr.hpp"

namespace contourforge {

/// Closed-form real-variable form of f(z(t)) z'(t) along one path segment:
///
///   integral of f dz over the segment = int_{lo}^{hi} re_part(t) dt
///                                     + i int_{lo}^{hi} im_part(t) dt
///
/// in the segment's natural parameter. Segments whose natural parameter runs
/// downhill (t0 > t1) are emitted over [t1, t0] with the integrand negated;
/// traversal_sign records that fold (lowered(t) = traversal_sign * f(z(t)) z'(t)).
struct LoweredIntegrand {
    RealExprPtr re_part;
    RealExprPtr im_part;
    std::string parameter;
    double lo = 0.0;
    double hi = 0.0;
    double traversal_sign = 1.0;
    std::string orientation_note;
};

/// Mechanically rewrite f(z(t)) z'(t) into explicit real and imaginary parts
/// by structural recursion: components split at Const/Var, Add componentwise,
/// Mul via (ac-bd, ad+bc), Div by the conjugate over c^2+d^2, IntPow by
/// repeated Mul, and the exponential/trig/hyperbolic splitting rules; sinc
/// lowers as sin(w)/w through the Div rule. Only constant folding and the
/// exact 0/1 identities are applied; no trigonometric simplification.
///
/// Preconditions: f has the single free variable z. Throws
/// RemovablePointOnPath if f contains Sinc or Div and the segment passes
/// through z = 0 (detected on a dense sample grid).
LoweredIntegrand lower(const ExprPtr& f, const PathSegment& seg);

struct EquivReport {
    double max_abs_dev = 0.0;
    double max_rel_dev = 0.0;  // |a-b| / (1 + |b|), maximized over samples
    double worst_at = 0.0;     // parameter value of the worst deviation
    std::size_t samples = 0;
};

/// Compare two real expressions on n Chebyshev-distributed points of
/// [lo, hi]. Throws DomainMismatch when the free variables differ.
EquivReport pointwise_equiv(const RealExprPtr& a, const RealExprPtr& b, double lo, double hi,
                            std::size_t n);

}  // namespace contourforge
