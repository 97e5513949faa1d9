#include "contourforge/contour.hpp"

#include <cmath>
#include <stdexcept>

#include "contourforge/errors.hpp"

namespace contourforge {

double poly_eval(const std::vector<double>& coeffs, double t) {
    double acc = 0.0;
    for (double c : coeffs) acc = acc * t + c;
    return acc;
}

std::vector<double> poly_derivative(const std::vector<double>& coeffs) {
    const std::size_t n = coeffs.size();
    if (n <= 1) return {0.0};
    std::vector<double> d(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k)
        d[k] = coeffs[k] * static_cast<double>(n - 1 - k);
    return d;
}

PathSegment PathSegment::line(Complex a, Complex b) {
    PathSegment s;
    s.kind_ = SegmentKind::Line;
    s.a_ = a;
    s.b_ = b;
    s.u0_ = 0.0;
    s.u1_ = 1.0;
    return s;
}

PathSegment PathSegment::circular_arc(Complex center, double radius, double theta0,
                                      double theta1) {
    if (!(radius > 0.0)) throw InvalidFamilyParams("arc radius must be positive");
    PathSegment s;
    s.kind_ = SegmentKind::CircularArc;
    s.a_ = center;
    s.rx_ = radius;
    s.ry_ = radius;
    s.u0_ = theta0;
    s.u1_ = theta1;
    return s;
}

PathSegment PathSegment::polynomial_graph(std::vector<double> coeffs, double t0, double t1) {
    if (coeffs.empty()) throw InvalidFamilyParams("polynomial graph needs coefficients");
    PathSegment s;
    s.kind_ = SegmentKind::PolynomialGraph;
    s.coeffs_ = std::move(coeffs);
    s.dcoeffs_ = poly_derivative(s.coeffs_);
    s.u0_ = t0;
    s.u1_ = t1;
    return s;
}

PathSegment PathSegment::half_ellipse(Complex center, double rx, double ry, double theta0,
                                      double theta1) {
    if (!(rx > 0.0) || !(ry > 0.0))
        throw InvalidFamilyParams("ellipse semi-axes must be positive");
    PathSegment s;
    s.kind_ = SegmentKind::HalfEllipse;
    s.a_ = center;
    s.rx_ = rx;
    s.ry_ = ry;
    s.u0_ = theta0;
    s.u1_ = theta1;
    return s;
}

PointAndVelocity PathSegment::point_unchecked(double s) const {
    switch (kind_) {
        case SegmentKind::Line: {
            const Complex d = b_ - a_;
            return {a_ + s * d, d};
        }
        case SegmentKind::CircularArc: {
            const double span = u1_ - u0_;
            const double th = u0_ + s * span;
            const Complex e{std::cos(th), std::sin(th)};
            return {a_ + rx_ * e, Complex{0.0, 1.0} * rx_ * span * e};
        }
        case SegmentKind::PolynomialGraph: {
            const double span = u1_ - u0_;
            const double t = u0_ + s * span;
            const double p = poly_eval(coeffs_, t);
            const double dp = poly_eval(dcoeffs_, t);
            return {Complex{t, p}, Complex{1.0, dp} * span};
        }
        case SegmentKind::HalfEllipse: {
            const double span = u1_ - u0_;
            const double th = u0_ + s * span;
            return {a_ + Complex{rx_ * std::cos(th), ry_ * std::sin(th)},
                    Complex{-rx_ * std::sin(th), ry_ * std::cos(th)} * span};
        }
    }
    throw Error("corrupt path segment");
}

PointAndVelocity PathSegment::point(double s) const {
    if (!(s >= 0.0 && s <= 1.0))
        throw ParameterOutOfRange("segment parameter " + std::to_string(s) +
                                  " outside [0, 1]");
    return point_unchecked(s);
}

PathSegment PathSegment::reversed() const {
    PathSegment r = *this;
    if (kind_ == SegmentKind::Line) {
        r.a_ = b_;
        r.b_ = a_;
    } else {
        r.u0_ = u1_;
        r.u1_ = u0_;
    }
    return r;
}

PathSegment PathSegment::mirrored() const {
    PathSegment m = *this;
    switch (kind_) {
        case SegmentKind::Line:
            m.a_ = std::conj(a_);
            m.b_ = std::conj(b_);
            break;
        case SegmentKind::CircularArc:
        case SegmentKind::HalfEllipse:
            m.a_ = std::conj(a_);
            m.u0_ = -u0_;
            m.u1_ = -u1_;
            break;
        case SegmentKind::PolynomialGraph:
            for (double& c : m.coeffs_) c = -c;
            m.dcoeffs_ = poly_derivative(m.coeffs_);
            break;
    }
    return m;
}

std::string PathSegment::natural_name() const {
    switch (kind_) {
        case SegmentKind::CircularArc:
        case SegmentKind::HalfEllipse:
            return "theta";
        default:
            return "t";
    }
}

double PathSegment::natural_lo() const { return u0_; }
double PathSegment::natural_hi() const { return u1_; }

bool PathSegment::operator==(const PathSegment& other) const {
    if (kind_ != other.kind_) return false;
    return a_ == other.a_ && b_ == other.b_ && rx_ == other.rx_ && ry_ == other.ry_ &&
           u0_ == other.u0_ && u1_ == other.u1_ && coeffs_ == other.coeffs_;
}

double PathSegment::approx_length() const {
    const int n = 256;
    double len = 0.0;
    for (int k = 0; k < n; ++k) {
        const double s = (k + 0.5) / n;
        len += std::abs(point_unchecked(s).dz_ds);
    }
    return len / n;
}

Complex Contour::start() const {
    if (segments_.empty()) throw Error("empty contour has no start");
    return segments_.front().start();
}

Complex Contour::end() const {
    if (segments_.empty()) throw Error("empty contour has no end");
    return segments_.back().end();
}

bool Contour::chains(double eps) const {
    for (std::size_t k = 0; k + 1 < segments_.size(); ++k)
        if (std::abs(segments_[k].end() - segments_[k + 1].start()) > eps) return false;
    return true;
}

bool Contour::closed(double eps) const {
    if (segments_.empty()) return false;
    return chains(eps) && std::abs(end() - start()) <= eps;
}

Contour Contour::reversed() const {
    std::vector<PathSegment> rev;
    rev.reserve(segments_.size());
    for (auto it = segments_.rbegin(); it != segments_.rend(); ++it)
        rev.push_back(it->reversed());
    return Contour(std::move(rev));
}

double Contour::approx_length() const {
    double len = 0.0;
    for (const auto& s : segments_) len += s.approx_length();
    return len;
}

// ---------------------------------------------------------------------------
// Families
// ---------------------------------------------------------------------------

namespace {

void require_positive_r(double R) {
    if (!(R > 0.0)) throw InvalidFamilyParams("family parameter R must be positive");
}

double aux_or(const std::map<std::string, double>& aux, const std::string& key, double fallback) {
    auto it = aux.find(key);
    return it == aux.end() ? fallback : it->second;
}

std::vector<double> aux_poly(const std::map<std::string, double>& aux) {
    // Coefficients arrive as p0, p1, ... (highest degree first).
    std::vector<double> coeffs;
    for (std::size_t k = 0;; ++k) {
        auto it = aux.find("p" + std::to_string(k));
        if (it == aux.end()) break;
        coeffs.push_back(it->second);
    }
    return coeffs;
}

// Closure orientation convention: traverse from +R to -R, so that the closure
// followed by the real-axis segment [-R, R] is a positively oriented loop for
// paths above the axis.
Contour semicircle_closure(double R, const std::map<std::string, double>&) {
    require_positive_r(R);
    return Contour({PathSegment::circular_arc({0.0, 0.0}, R, 0.0, kPi)});
}

Contour parabola_closure(double R, const std::map<std::string, double>&) {
    require_positive_r(R);
    return Contour({PathSegment::polynomial_graph({1.0, 0.0, -R * R}, R, -R)});
}

Contour half_ellipse_closure(double R, const std::map<std::string, double>& aux) {
    require_positive_r(R);
    const double ry = aux_or(aux, "ry", R);  // defaults to a circle
    if (!(ry > 0.0)) throw InvalidFamilyParams("ellipse semi-axis ry must be positive");
    return Contour({PathSegment::half_ellipse({0.0, 0.0}, R, ry, 0.0, kPi)});
}

Contour polygraph_closure(double R, const std::map<std::string, double>& aux) {
    require_positive_r(R);
    std::vector<double> coeffs = aux_poly(aux);
    if (coeffs.empty())
        throw InvalidFamilyParams("polygraph closure needs polynomial coefficients (p=...)");
    if (coeffs.size() > 17)
        throw InvalidFamilyParams("polynomial degree above 16 is not supported");

    // Scale for the root checks at the endpoints.
    double scale = 0.0;
    for (double c : coeffs) scale = std::max(scale, std::fabs(c));
    const double end_tol = 1e-9 * std::max(1.0, scale) * std::max(1.0, std::pow(R, coeffs.size() - 1));
    if (std::fabs(poly_eval(coeffs, R)) > end_tol || std::fabs(poly_eval(coeffs, -R)) > end_tol)
        throw InvalidFamilyParams("polynomial must vanish at +R and -R");

    // Sign check on a 10^4-point interior grid: p must not cross or touch zero.
    const int n = 10000;
    int sign = 0;
    for (int k = 1; k < n; ++k) {
        const double t = -R + 2.0 * R * k / n;
        const double p = poly_eval(coeffs, t);
        // Near the endpoints a vanishing tail is expected; use a strict check
        // away from them.
        if (std::fabs(t) > R * (1.0 - 2.0 / n) ) continue;
        if (p == 0.0)
            throw InvalidFamilyParams("polynomial has an interior real root in (-R, R)");
        const int s = p > 0.0 ? 1 : -1;
        if (sign == 0) sign = s;
        if (s != sign)
            throw InvalidFamilyParams("polynomial has an interior real root in (-R, R)");
    }
    return Contour({PathSegment::polynomial_graph(std::move(coeffs), R, -R)});
}

Contour indented_semicircle_loop(double R, const std::map<std::string, double>& aux) {
    require_positive_r(R);
    const double eps = aux_or(aux, "eps", 1e-3);
    if (!(eps > 0.0) || eps >= R)
        throw InvalidFamilyParams("indentation requires 0 < eps < R");
    return Contour({
        PathSegment::line({eps, 0.0}, {R, 0.0}),
        PathSegment::circular_arc({0.0, 0.0}, R, 0.0, kPi),
        PathSegment::line({-R, 0.0}, {-eps, 0.0}),
        PathSegment::circular_arc({0.0, 0.0}, eps, kPi, 0.0),
    });
}

}  // namespace

namespace {

// The return leg is the real-axis segment; closure endpoints constructed from
// floating-point trig sit within chain tolerance of the axis, so snap them.
Complex snap_to_axis(Complex z) {
    if (std::fabs(z.imag()) <= chain_tolerance(std::abs(z))) return Complex{z.real(), 0.0};
    return z;
}

}  // namespace

Contour full_loop(const Contour& closure) {
    if (closure.empty()) throw InvalidFamilyParams("cannot close an empty contour");
    std::vector<PathSegment> segs = closure.segments();
    segs.push_back(PathSegment::line(snap_to_axis(closure.end()), snap_to_axis(closure.start())));
    return Contour(std::move(segs));
}

ContourFamily make_family(const std::string& name) {
    ContourFamily fam;
    fam.name = name;
    if (name == "semicircle_closure") {
        fam.generator = semicircle_closure;
    } else if (name == "parabola_closure") {
        fam.generator = parabola_closure;
    } else if (name == "half_ellipse_closure") {
        fam.aux_schema = {"ry"};
        fam.generator = half_ellipse_closure;
    } else if (name == "polygraph_closure") {
        fam.aux_schema = {"p0", "p1", "..."};
        fam.generator = polygraph_closure;
    } else if (name == "indented_semicircle_loop") {
        fam.closure_only = false;
        fam.aux_schema = {"eps"};
        fam.generator = indented_semicircle_loop;
    } else {
        throw InvalidFamilyParams("unknown contour family '" + name + "'");
    }
    return fam;
}

ContourFamily make_loop_family(const ContourFamily& closure_family) {
    if (!closure_family.closure_only)
        throw InvalidFamilyParams("family '" + closure_family.name + "' is already a closed loop");
    ContourFamily fam;
    fam.name = "loop(" + closure_family.name + ")";
    fam.closure_only = false;
    fam.aux_schema = closure_family.aux_schema;
    auto gen = closure_family.generator;
    fam.generator = [gen](double R, const std::map<std::string, double>& aux) {
        return full_loop(gen(R, aux));
    };
    return fam;
}

}  // namespace contourforge
