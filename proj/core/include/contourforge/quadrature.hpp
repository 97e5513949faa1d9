#pragma once

#include <cstddef>

#include "contourforge/complex.hpp"
#include "contourforge/contour.hpp"
#include "contourforge/expr.hpp"
#include "contourforge/real_expr.hpp"

namespace contourforge {

/// Requested accuracy for adaptive integration. Convergence means the global
/// error estimate is at or below max(abs_tol, rel_tol * |value|).
struct Tolerance {
    double abs_tol = 1e-10;
    double rel_tol = 1e-12;
    std::size_t max_subdivisions = 2000;

    /// Throws std::invalid_argument when abs_tol < 1e-14 (the double-precision
    /// floor) or rel_tol < 0.
    static Tolerance make(double abs_tol, double rel_tol = 1e-12,
                          std::size_t max_subdivisions = 2000);
};

struct QuadratureResult {
    Complex value{0.0, 0.0};
    double abs_error_estimate = 0.0;
    std::size_t evaluations = 0;
    bool converged = false;
    std::size_t subdivisions = 0;
};

/// Integrate f along the contour:
///
///   value = sum over segments of int_0^1 f(z(s)) z'(s) ds,
///
/// each panel evaluated with the 15-node Gauss-Kronrod rule and its embedded
/// 7-node Gauss error estimate. The globally worst panel is bisected until
/// the summed estimate meets the tolerance or max_subdivisions is reached
/// (the result is still returned then, with converged = false). Final
/// summation is compensated (Neumaier) over panels in ascending position
/// within each segment, segments in contour order, so reruns are bit-identical.
///
/// Throws EvaluationError, with the segment index and parameter, when the
/// integrand fails to evaluate or produces a non-finite value on a node.
QuadratureResult integrate_contour(const ExprPtr& f, const Contour& contour,
                                   const Tolerance& tol);

/// Same adaptive scheme for a real integrand on [lo, hi]; the imaginary part
/// of the result is zero. Requires lo <= hi.
QuadratureResult integrate_real(const RealExprPtr& g, double lo, double hi,
                                const Tolerance& tol);

}  // namespace contourforge
