#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "contourforge/complex.hpp"

namespace contourforge {

enum class SegmentKind { Line, CircularArc, PolynomialGraph, HalfEllipse };

struct PointAndVelocity {
    Complex z;
    Complex dz_ds;  // derivative with respect to the uniform parameter s in [0,1]
};

/// One parametrized path piece. All kinds expose position and velocity for
/// s in [0,1]; velocities are the exact analytic derivatives, never finite
/// differences.
///
///   Line:            z = a + s(b-a),                      z' = b-a
///   CircularArc:     z = c + r e^{i theta(s)},            z' = i r (t1-t0) e^{i theta(s)}
///   PolynomialGraph: z = t + i p(t), t = t0 + s(t1-t0),   z' = (1 + i p'(t)) (t1-t0)
///   HalfEllipse:     z = c + rx cos th + i ry sin th,     z' = (-rx sin th + i ry cos th)(t1-t0)
class PathSegment {
public:
    static PathSegment line(Complex a, Complex b);
    static PathSegment circular_arc(Complex center, double radius, double theta0, double theta1);
    /// coeffs are highest-degree first, as in the CLI mini-language.
    static PathSegment polynomial_graph(std::vector<double> coeffs, double t0, double t1);
    static PathSegment half_ellipse(Complex center, double rx, double ry, double theta0,
                                    double theta1);

    SegmentKind kind() const { return kind_; }

    /// Position and exact velocity at s in [0,1]. Throws ParameterOutOfRange.
    PointAndVelocity point(double s) const;

    Complex start() const { return point_unchecked(0.0).z; }
    Complex end() const { return point_unchecked(1.0).z; }

    /// Same trace, re-parametrized s -> 1-s.
    PathSegment reversed() const;

    /// Reflection across the real axis (trace conjugated pointwise).
    PathSegment mirrored() const;

    // Natural parameter of the segment: t in [t0, t1] for lines (unit interval)
    // and polynomial graphs, theta in [theta0, theta1] for arcs and ellipses.
    // Lowering works in this parameter; t0 > t1 encodes reversed traversal.
    std::string natural_name() const;
    double natural_lo() const;
    double natural_hi() const;

    // Accessors for the per-kind payloads.
    Complex line_a() const { return a_; }
    Complex line_b() const { return b_; }
    Complex center() const { return a_; }
    double radius() const { return rx_; }
    double rx() const { return rx_; }
    double ry() const { return ry_; }
    double theta0() const { return u0_; }
    double theta1() const { return u1_; }
    const std::vector<double>& coeffs() const { return coeffs_; }
    double t0() const { return u0_; }
    double t1() const { return u1_; }

    bool operator==(const PathSegment& other) const;

    /// Arc-length estimate from a fixed 256-panel midpoint rule on |z'|.
    double approx_length() const;

private:
    PathSegment() = default;
    PointAndVelocity point_unchecked(double s) const;

    SegmentKind kind_ = SegmentKind::Line;
    Complex a_{}, b_{};            // Line endpoints; a_ doubles as arc/ellipse center
    double rx_ = 0.0, ry_ = 0.0;   // radius (rx == ry for arcs)
    double u0_ = 0.0, u1_ = 0.0;   // natural parameter range (theta or t)
    std::vector<double> coeffs_;   // polynomial, highest degree first
    std::vector<double> dcoeffs_;  // cached derivative of coeffs_
};

/// Evaluate a real polynomial (coefficients highest-degree first).
double poly_eval(const std::vector<double>& coeffs, double t);
/// Coefficients of the derivative polynomial.
std::vector<double> poly_derivative(const std::vector<double>& coeffs);

/// Ordered chain of path segments.
class Contour {
public:
    Contour() = default;
    explicit Contour(std::vector<PathSegment> segments) : segments_(std::move(segments)) {}

    const std::vector<PathSegment>& segments() const { return segments_; }
    bool empty() const { return segments_.empty(); }
    std::size_t size() const { return segments_.size(); }

    Complex start() const;
    Complex end() const;

    /// Consecutive endpoints agree within eps.
    bool chains(double eps) const;
    /// chains() and the last endpoint returns to the first start within eps.
    bool closed(double eps) const;

    Contour reversed() const;

    double approx_length() const;

private:
    std::vector<PathSegment> segments_;
};

/// Endpoint matching tolerance, scaled so large-R contours built from
/// floating-point trig still chain: 1e-12 * max(1, R).
inline double chain_tolerance(double scale) {
    return 1e-12 * (scale > 1.0 ? scale : 1.0);
}

/// R-indexed generator of contours that close the segment [-R, R].
///
/// closure_only families produce just the off-axis path from +R to -R (the
/// stated orientation convention: closure + [-R, R] is a positively oriented
/// loop for paths above the axis). Families with closure_only == false, such
/// as the indented loop, generate the full closed contour.
struct ContourFamily {
    std::string name;
    bool closure_only = true;
    /// Keys the generator understands besides R (e.g. "eps", "ry", "p0", "p1", ...).
    std::vector<std::string> aux_schema;
    std::function<Contour(double R, const std::map<std::string, double>& aux)> generator;

    Contour generate(double R, const std::map<std::string, double>& aux = {}) const {
        return generator(R, aux);
    }
};

/// Built-in families: "semicircle_closure", "parabola_closure",
/// "half_ellipse_closure", "polygraph_closure", "indented_semicircle_loop".
/// Throws InvalidFamilyParams for unknown names and invalid parameters
/// (R <= 0, eps >= R, polynomial-graph closures whose polynomial has interior
/// real roots or does not vanish at +-R, degree > 16).
ContourFamily make_family(const std::string& name);

/// Append the real-axis return segment(s) so that closure + segment forms a
/// closed loop; for a closure running +R -> -R this is the line -R -> +R.
Contour full_loop(const Contour& closure);

/// Wrap an existing closure family into the corresponding loop family.
ContourFamily make_loop_family(const ContourFamily& closure_family);

}  // namespace contourforge
