#include "contourforge/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

#include "contourforge/errors.hpp"

namespace contourforge {

Tolerance Tolerance::make(double abs_tol, double rel_tol, std::size_t max_subdivisions) {
    if (!(abs_tol >= 1e-14))
        throw std::invalid_argument("abs_tol below the 1e-14 double-precision floor");
    if (!(rel_tol >= 0.0)) throw std::invalid_argument("rel_tol must be >= 0");
    return Tolerance{abs_tol, rel_tol, max_subdivisions};
}

namespace {

// 15-point Kronrod nodes on [-1, 1] (positive half) with the embedded 7-point
// Gauss rule on the even-indexed nodes; weights from QUADPACK's dqk15.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

using Integrand = std::function<Complex(std::size_t segment, double s)>;

struct Panel {
    std::size_t segment = 0;
    double a = 0.0;
    double b = 0.0;
    Complex value{0.0, 0.0};
    double error = 0.0;
};

// Strict weak order putting the largest error on top of the heap; ties broken
// by position so the refinement sequence is input-defined.
struct PanelWorse {
    bool operator()(const Panel& x, const Panel& y) const {
        if (x.error != y.error) return x.error < y.error;
        if (x.segment != y.segment) return x.segment > y.segment;
        return x.a > y.a;
    }
};

Complex checked_eval(const Integrand& f, std::size_t segment, double s) {
    Complex v;
    try {
        v = f(segment, s);
    } catch (const EvaluationError&) {
        throw;
    } catch (const Error& e) {
        throw EvaluationError(e.what(), segment, s);
    }
    if (!is_finite(v))
        throw EvaluationError("integrand value is not finite", segment, s);
    return v;
}

Panel gk15_panel(const Integrand& f, std::size_t segment, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    Complex fv[15];
    // Node order is fixed: center, then pairs outward.
    fv[7] = checked_eval(f, segment, center);
    for (int j = 0; j < 7; ++j) {
        const double off = half * kXgk[j];
        fv[j] = checked_eval(f, segment, center - off);
        fv[14 - j] = checked_eval(f, segment, center + off);
    }

    Complex resk = kWgk[7] * fv[7];
    Complex resg = kWg[3] * fv[7];
    double resabs = kWgk[7] * std::abs(fv[7]);
    for (int j = 0; j < 7; ++j) {
        const Complex fsum = fv[j] + fv[14 - j];
        resk += kWgk[j] * fsum;
        resabs += kWgk[j] * (std::abs(fv[j]) + std::abs(fv[14 - j]));
        if (j % 2 == 1) resg += kWg[j / 2] * fsum;
    }

    const Complex reskh = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(fv[7] - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::abs(fv[j] - reskh) + std::abs(fv[14 - j] - reskh));

    const double ahalf = std::fabs(half);
    resabs *= ahalf;
    resasc *= ahalf;

    double err = std::abs(resk - resg) * ahalf;
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    const double uflow = std::numeric_limits<double>::min();
    if (resabs > uflow / (50.0 * eps)) err = std::max(eps * 50.0 * resabs, err);

    return Panel{segment, a, b, resk * half, err};
}

// Compensated (Neumaier) accumulator.
struct Kahan {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x) {
        const double t = sum + x;
        if (std::fabs(sum) >= std::fabs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double total() const { return sum + comp; }
};

QuadratureResult adaptive(const Integrand& f, std::size_t num_segments,
                          const std::vector<std::pair<double, double>>& ranges,
                          const Tolerance& tol) {
    std::priority_queue<Panel, std::vector<Panel>, PanelWorse> heap;
    std::size_t evaluations = 0;
    Complex running_value{0.0, 0.0};
    double running_error = 0.0;

    for (std::size_t seg = 0; seg < num_segments; ++seg) {
        Panel p = gk15_panel(f, seg, ranges[seg].first, ranges[seg].second);
        evaluations += 15;
        running_value += p.value;
        running_error += p.error;
        heap.push(std::move(p));
    }

    std::size_t subdivisions = 0;
    for (;;) {
        const double goal = std::max(tol.abs_tol, tol.rel_tol * std::abs(running_value));
        if (running_error <= goal) break;
        if (subdivisions >= tol.max_subdivisions) break;

        Panel worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > std::min(worst.a, worst.b) && mid < std::max(worst.a, worst.b)))
            break;  // interval too narrow to split further
        heap.pop();

        Panel left = gk15_panel(f, worst.segment, worst.a, mid);
        Panel right = gk15_panel(f, worst.segment, mid, worst.b);
        evaluations += 30;
        ++subdivisions;

        running_value += left.value + right.value - worst.value;
        running_error += left.error + right.error - worst.error;
        heap.push(std::move(left));
        heap.push(std::move(right));
    }

    // Final pass: exact compensated sums in a fixed panel order (by segment,
    // then position), independent of the heap's internal layout.
    std::vector<Panel> panels;
    panels.reserve(heap.size());
    while (!heap.empty()) {
        panels.push_back(heap.top());
        heap.pop();
    }
    std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) {
        if (x.segment != y.segment) return x.segment < y.segment;
        return x.a < y.a;
    });

    Kahan re, im, err;
    for (const Panel& p : panels) {
        re.add(p.value.real());
        im.add(p.value.imag());
        err.add(p.error);
    }

    QuadratureResult result;
    result.value = Complex{re.total(), im.total()};
    result.abs_error_estimate = err.total();
    result.evaluations = evaluations;
    result.subdivisions = subdivisions;
    result.converged =
        result.abs_error_estimate <=
        std::max(tol.abs_tol, tol.rel_tol * std::abs(result.value));
    if (!is_finite(result.value)) result.converged = false;
    return result;
}

}  // namespace

QuadratureResult integrate_contour(const ExprPtr& f, const Contour& contour,
                                   const Tolerance& tol) {
    if (contour.empty()) throw std::invalid_argument("cannot integrate over an empty contour");
    const auto& segs = contour.segments();

    // One bindings map reused across evaluations; only the value changes.
    Bindings bindings{{"z", Complex{0.0, 0.0}}};
    auto& slot = bindings.at("z");

    Integrand fn = [&](std::size_t seg, double s) -> Complex {
        const PointAndVelocity pv = segs[seg].point(s);
        slot = pv.z;
        return eval_expr(f, bindings) * pv.dz_ds;
    };

    std::vector<std::pair<double, double>> ranges(segs.size(), {0.0, 1.0});
    return adaptive(fn, segs.size(), ranges, tol);
}

QuadratureResult integrate_real(const RealExprPtr& g, double lo, double hi,
                                const Tolerance& tol) {
    if (!(lo <= hi)) throw std::invalid_argument("integrate_real requires lo <= hi");
    Integrand fn = [&](std::size_t, double x) -> Complex {
        return Complex{eval_real(g, x), 0.0};
    };
    std::vector<std::pair<double, double>> ranges{{lo, hi}};
    return adaptive(fn, 1, ranges, tol);
}

}  // namespace contourforge
