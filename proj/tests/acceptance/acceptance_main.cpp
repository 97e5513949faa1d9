// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Runs the full verification stack end to end.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "contourforge/contour_spec.hpp"
#include "contourforge/errors.hpp"
#include "contourforge/identity.hpp"
#include "contourforge/lowering.hpp"
#include "contourforge/parser.hpp"
#include "contourforge/quadrature.hpp"
#include "contourforge/runtime.hpp"

using namespace contourforge;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& what, bool ok, const std::string& detail = "") {
    std::printf("%s  criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", number, what.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++g_failures;
}

Tolerance tol(double abs_tol, std::size_t cap = 2000) {
    return Tolerance::make(abs_tol, 1e-12, cap);
}

Contour segment(double a, double b) {
    return Contour({PathSegment::line({a, 0.0}, {b, 0.0})});
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

// ---- criterion 1: Eq. (3) finite-R identity ------------------------------

void criterion_1() {
    bool ok = true;
    std::string detail;
    const auto& rec = catalog_record("eq3_sinc_semicircle");
    {
        auto rep = strange_vs_segment(rec, 5.0, tol(1e-8));
        ok = ok && rep.pass && rep.residuals[0] < 1e-8 && rep.residuals[1] < 1e-8;
        detail += "R=5 residuals " + fmt(rep.residuals[0]) + "/" + fmt(rep.residuals[1]);
    }
    {
        auto rep = strange_vs_segment(rec, 2.0, tol(1e-10));
        ok = ok && rep.pass && rep.residuals[0] < 1e-10 && rep.residuals[1] < 1e-10;
        detail += ", R=2 residuals " + fmt(rep.residuals[0]) + "/" + fmt(rep.residuals[1]);
    }
    criterion(1, "sinc strange form equals the segment integral (R=5 @1e-8, R=2 @1e-10)", ok,
              detail);
}

// ---- criterion 2: Eq. (1) finite-R identity ------------------------------

void criterion_2() {
    const auto& rec = catalog_record("eq1_gaussian_semicircle");
    auto rep = strange_vs_segment(rec, 3.0, tol(1e-8));
    const bool ok = rep.pass && rep.residuals[0] < 1e-8 && rep.residuals[1] < 1e-8;
    criterion(2, "gaussian strange form equals the segment integral at R=3 @1e-8", ok,
              "residuals " + fmt(rep.residuals[0]) + "/" + fmt(rep.residuals[1]) +
                  " (closure integral = -(segment integral))");
}

// ---- criterion 3: gaussian limit -----------------------------------------

void criterion_3() {
    const auto& rec = catalog_record("eq1_gaussian_semicircle");
    auto ladder = RLadder::explicit_values({1, 2, 3, 4, 5, 6}, rec.conv_tol);
    auto rep = limit_study(rec, ladder, tol(1e-12));
    const double residual = std::abs(*rep.limit_estimate - Complex{1.7724538509055159, 0.0});
    const bool ok = rep.pass && residual < 1e-10;
    criterion(3, "segment ladder {1..6} converges to sqrt(pi) within 1e-10", ok,
              "|limit - sqrt(pi)| = " + fmt(residual));
}

// ---- criterion 4: sinc limit ----------------------------------------------

void criterion_4() {
    const auto& rec = catalog_record("eq3_sinc_semicircle");
    auto ladder = RLadder::explicit_values({25, 50, 100, 200}, rec.conv_tol);
    auto rep = limit_study(rec, ladder, tol(1e-10));
    const double residual = std::abs(*rep.limit_estimate - Complex{kPi, 0.0});
    const bool ok = rep.pass && residual < 1e-2;
    criterion(4, "segment ladder I(200) reaches pi within 1e-2", ok,
              "|I(200) - pi| = " + fmt(residual));
}

// ---- criterion 5: small circle --------------------------------------------

void criterion_5() {
    auto rep = small_circle_check({1e-2, 1e-3, 1e-4}, tol(1e-10));
    bool ok = rep.pass;
    std::string detail = "residuals";
    for (std::size_t k = 0; k < rep.residuals.size(); ++k) {
        ok = ok && rep.residuals[k] < 5.0 * rep.r_values[k];
        detail += " " + fmt(rep.residuals[k]);
    }
    for (std::size_t k = 0; k + 1 < rep.residuals.size(); ++k) {
        const double ratio = rep.residuals[k] / rep.residuals[k + 1];
        ok = ok && ratio >= 8.0 && ratio <= 12.0;
        detail += (k == 0 ? "; ratios " : " ") + fmt(ratio);
    }
    criterion(5, "epsilon arc of e^{iz}/z tends to -i pi linearly (5 eps bound, ratios 8..12)",
              ok, detail);
}

// ---- criterion 6: arc vanishing -------------------------------------------

void criterion_6() {
    auto rep = arc_vanishing_check({10, 50, 100}, tol(1e-10));
    bool ok = rep.pass;
    std::string detail;
    for (std::size_t k = 0; k < rep.residuals.size(); ++k) {
        const double bound = 1.5 * kPi / rep.r_values[k];
        ok = ok && rep.residuals[k] <= bound;
        detail += (k ? ", " : "") + std::string("|I(") + fmt(rep.r_values[k]) +
                  ")| = " + fmt(rep.residuals[k]) + " <= " + fmt(bound);
    }
    criterion(6, "semicircle integral of e^{iz}/z obeys the 1.5 pi / R bound", ok, detail);
}

// ---- criterion 7: parabola path equivalence and pointwise lowering --------

void criterion_7() {
    ExprPtr f = parse_expr("exp(-z^2)");
    auto a = integrate_contour(f, segment(-2.0, 2.0), tol(1e-12));
    auto b = integrate_contour(f, make_family("parabola_closure").generate(2.0).reversed(),
                               tol(1e-12));
    const double residual = std::abs(a.value - b.value);
    bool ok = residual < 1e-8;

    // pointwise: lowered parabola integrand vs direct complex evaluation
    auto seg = PathSegment::polynomial_graph({1.0, 0.0, -4.0}, -2.0, 2.0);
    LoweredIntegrand g = lower(f, seg);
    double worst_rel = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const double t = -2.0 + 4.0 * (k + 0.5) / 1000.0;
        const auto pv = seg.point((t + 2.0) / 4.0);
        const Complex direct = eval_expr(f, {{"z", pv.z}}) * (pv.dz_ds / 4.0);
        const Complex low{eval_real(g.re_part, t), eval_real(g.im_part, t)};
        worst_rel = std::max(worst_rel, std::abs(low - direct) / (1.0 + std::abs(direct)));
    }
    ok = ok && worst_rel <= 1e-12;
    criterion(7, "parabola(R=2) equals segment(-2,2) @1e-8; lowered form matches pointwise @1e-12",
              ok, "residual " + fmt(residual) + ", worst pointwise " + fmt(worst_rel));
}

// ---- criterion 8: property suites -----------------------------------------

ExprPtr random_poly(std::mt19937& rng, int max_degree) {
    std::uniform_int_distribution<int> deg(0, max_degree);
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    const int n = deg(rng);
    ExprPtr acc = Expr::constant({coeff(rng), coeff(rng)});
    for (int k = 1; k <= n; ++k)
        acc = Expr::add(Expr::mul(acc, Expr::variable("z")),
                        Expr::constant({coeff(rng), coeff(rng)}));
    return acc;
}

PathSegment random_segment(std::mt19937& rng) {
    std::uniform_int_distribution<int> kind(0, 3);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::uniform_real_distribution<double> pos(0.3, 2.5);
    switch (kind(rng)) {
        case 0: return PathSegment::line({u(rng), u(rng)}, {u(rng), u(rng)});
        case 1:
            return PathSegment::circular_arc({u(rng), u(rng)}, pos(rng), u(rng), u(rng) + 1.0);
        case 2:
            return PathSegment::polynomial_graph({u(rng), u(rng), u(rng)}, u(rng), u(rng) + 0.5);
        default:
            return PathSegment::half_ellipse({u(rng), u(rng)}, pos(rng), pos(rng), u(rng),
                                             u(rng) + 2.0);
    }
}

bool cauchy_sweep(std::string& detail) {
    std::mt19937 rng(271828);
    std::vector<ContourFamily> families = {
        make_loop_family(make_family("semicircle_closure")),
        make_loop_family(make_family("parabola_closure")),
        make_loop_family(make_family("half_ellipse_closure")),
        make_loop_family(make_family("polygraph_closure")),
        make_family("indented_semicircle_loop"),
    };
    double worst = 0.0;
    int checked = 0;
    for (int k = 0; k < 50; ++k) {
        ExprPtr f = random_poly(rng, 8);
        for (const auto& fam : families) {
            for (double R : {1.0, 2.0, 3.0}) {
                std::map<std::string, double> aux;
                if (fam.name == "loop(polygraph_closure)")
                    aux = {{"p0", -1.0}, {"p1", 0.0}, {"p2", R * R}};  // R^2 - t^2
                Contour loop = fam.generate(R, aux);
                double amp = 0.0;
                for (const auto& seg : loop.segments())
                    for (int j = 0; j <= 64; ++j)
                        amp = std::max(amp,
                                       std::abs(eval_expr(f, {{"z", seg.point(j / 64.0).z}})));
                const double len = loop.approx_length();
                const Tolerance qt =
                    Tolerance::make(std::max(1e-11, 2e-14 * amp * len), 1e-12, 400);
                auto r = integrate_contour(f, loop, qt);
                const double bound = std::max(1e-10, 1e-13 * len * amp);
                ++checked;
                worst = std::max(worst, std::abs(r.value) / bound);
                if (std::abs(r.value) > bound) {
                    detail = "loop residual " + fmt(std::abs(r.value)) + " above bound " +
                             fmt(bound) + " on " + fam.name;
                    return false;
                }
            }
        }
    }
    detail = std::to_string(checked) + " loops, worst residual at " + fmt(worst) + " of bound";
    return true;
}

bool reversal_and_additivity(std::string& detail) {
    std::mt19937 rng(161803);
    const Tolerance qt = Tolerance::make(1e-8, 1e-10, 200);
    for (int k = 0; k < 50; ++k) {
        ExprPtr f = random_poly(rng, 8);
        PathSegment seg = random_segment(rng);
        auto fwd = integrate_contour(f, Contour({seg}), qt);
        auto bwd = integrate_contour(f, Contour({seg.reversed()}), qt);
        if (std::abs(fwd.value + bwd.value) >
            2.0 * (fwd.abs_error_estimate + bwd.abs_error_estimate) + 1e-13) {
            detail = "reversal antisymmetry violated at pair " + std::to_string(k);
            return false;
        }
        PathSegment second = PathSegment::line(seg.end(), Complex{0.5, 0.5});
        auto whole = integrate_contour(f, Contour({seg, second}), qt);
        auto tail = integrate_contour(f, Contour({second}), qt);
        if (std::abs(whole.value - (fwd.value + tail.value)) >
            whole.abs_error_estimate + fwd.abs_error_estimate + tail.abs_error_estimate +
                1e-13) {
            detail = "additivity violated at pair " + std::to_string(k);
            return false;
        }
    }
    detail = "50 reversal pairs and 50 chained contours within error estimates";
    return true;
}

bool lowering_soundness(std::string& detail) {
    struct Pair {
        ExprPtr f;
        PathSegment seg;
    };
    std::vector<Pair> pairs;
    pairs.push_back({catalog_record("eq1_gaussian_semicircle").f,
                     catalog_record("eq1_gaussian_semicircle").family.generate(3.0)
                         .segments().front()});
    pairs.push_back({catalog_record("eq3_sinc_semicircle").f,
                     catalog_record("eq3_sinc_semicircle").family.generate(5.0)
                         .segments().front()});
    pairs.push_back({catalog_record("parabola_gaussian").f,
                     catalog_record("parabola_gaussian").family.generate(2.0)
                         .segments().front()});
    pairs.push_back({catalog_record("small_circle_sinc_exp").f,
                     catalog_record("small_circle_sinc_exp").family.generate(1e-3)
                         .segments().front()});
    pairs.push_back({catalog_record("jordan_arc_exp").f,
                     catalog_record("jordan_arc_exp").family.generate(10.0)
                         .segments().front()});

    std::mt19937 rng(314159);
    std::uniform_real_distribution<double> uu(0.0, 1.0);
    for (const auto& [f, seg] : pairs) {
        const LoweredIntegrand g = lower(f, seg);
        const double n0 = seg.natural_lo();
        const double n1 = seg.natural_hi();
        for (int k = 0; k < 1000; ++k) {
            const double x = g.lo + (g.hi - g.lo) * uu(rng);
            const auto pv = seg.point((x - n0) / (n1 - n0));
            const Complex direct = g.traversal_sign *
                                   eval_expr(f, {{"z", pv.z}}) * (pv.dz_ds / (n1 - n0));
            const Complex low{eval_real(g.re_part, x), eval_real(g.im_part, x)};
            if (std::abs(low - direct) > 1e-12 * (1.0 + std::abs(direct))) {
                detail = "lowering mismatch on " + format_expr(f);
                return false;
            }
        }
    }
    detail = "5 catalog pairs x 1000 samples within 1e-12 relative";
    return true;
}

bool roundtrip_1000(std::string& detail);

bool determinism(std::string& detail) {
    // same pipeline twice, bit-identical results required
    const auto& rec = catalog_record("eq3_sinc_semicircle");
    auto r1 = strange_vs_segment(rec, 5.0, tol(1e-8));
    auto r2 = strange_vs_segment(rec, 5.0, tol(1e-8));
    if (std::memcmp(r1.residuals.data(), r2.residuals.data(),
                    r1.residuals.size() * sizeof(double)) != 0) {
        detail = "strange_vs_segment rerun differed";
        return false;
    }
    // thread cap must not change values (ladder entries are independent)
    runtime::set_thread_cap(1);
    auto serial = small_circle_check({1e-2, 1e-3, 1e-4}, tol(1e-10));
    runtime::set_thread_cap(4);
    auto parallel = small_circle_check({1e-2, 1e-3, 1e-4}, tol(1e-10));
    runtime::set_thread_cap(0);
    if (std::memcmp(serial.residuals.data(), parallel.residuals.data(),
                    serial.residuals.size() * sizeof(double)) != 0) {
        detail = "thread cap changed residuals";
        return false;
    }
    detail = "reruns bit-identical, independent of the thread cap";
    return true;
}

void criterion_8() {
    bool ok = true;
    std::string all;
    for (auto [fn, label] :
         std::initializer_list<std::pair<bool (*)(std::string&), const char*>>{
             {cauchy_sweep, "cauchy"},
             {reversal_and_additivity, "reversal/additivity"},
             {lowering_soundness, "lowering"},
             {roundtrip_1000, "roundtrip"},
             {determinism, "determinism"}}) {
        std::string detail;
        const bool sub = fn(detail);
        ok = ok && sub;
        all += std::string(all.empty() ? "" : "; ") + label + ": " +
               (sub ? "ok (" + detail + ")" : "FAILED (" + detail + ")");
    }
    criterion(8, "property suites", ok, all);
}

// random trees drawn from the parser image (mirrors the unit-test generator)
ExprPtr random_tree(std::mt19937& rng, int depth) {
    std::uniform_int_distribution<int> leaf_pick(0, 3);
    std::uniform_int_distribution<int> node_pick(0, 11);
    std::uniform_real_distribution<double> value(0.0, 8.0);
    if (depth <= 0 || node_pick(rng) < 2) {
        switch (leaf_pick(rng)) {
            case 0: return Expr::constant({value(rng), 0.0});
            case 1: return Expr::constant({0.0, 1.0});
            case 2: return Expr::variable("z");
            default: return Expr::variable("t");
        }
    }
    switch (node_pick(rng)) {
        case 0: return Expr::add(random_tree(rng, depth - 1), random_tree(rng, depth - 1));
        case 1: return Expr::mul(random_tree(rng, depth - 1), random_tree(rng, depth - 1));
        case 2: return Expr::neg(random_tree(rng, depth - 1));
        case 3: return Expr::div(random_tree(rng, depth - 1), random_tree(rng, depth - 1));
        case 4: {
            std::uniform_int_distribution<int> ex(0, 9);
            return Expr::ipow(random_tree(rng, depth - 1), ex(rng));
        }
        case 5: return Expr::exp(random_tree(rng, depth - 1));
        case 6: return Expr::sin(random_tree(rng, depth - 1));
        case 7: return Expr::cos(random_tree(rng, depth - 1));
        case 8: return Expr::sinh(random_tree(rng, depth - 1));
        case 9: return Expr::cosh(random_tree(rng, depth - 1));
        default: return Expr::sinc(random_tree(rng, depth - 1));
    }
}

bool roundtrip_1000(std::string& detail) {
    std::mt19937 rng(573289);
    for (int k = 0; k < 1000; ++k) {
        ExprPtr e = random_tree(rng, 8);
        if (!equal(e, parse_expr(format_expr(e)))) {
            detail = "round trip changed tree " + std::to_string(k) + ": " + format_expr(e);
            return false;
        }
    }
    detail = "1000 random trees of depth <= 8";
    return true;
}

// ---- criterion 9: conditioning guard --------------------------------------

void criterion_9() {
    bool parabola_guarded = false;
    double parabola_floor = 0.0;
    try {
        strange_vs_segment(catalog_record("parabola_gaussian"), 4.0, tol(1e-10));
    } catch (const ConditioningLimit& e) {
        parabola_guarded = true;
        parabola_floor = e.floor();
    }
    bool eq1_guarded = false;
    double eq1_floor = 0.0;
    try {
        strange_vs_segment(catalog_record("eq1_gaussian_semicircle"), 9.0, tol(1e-10));
    } catch (const ConditioningLimit& e) {
        eq1_guarded = true;
        eq1_floor = e.floor();
    }
    criterion(9, "parabola @R=4 and eq1 @R=9 are refused with ConditioningLimit",
              parabola_guarded && eq1_guarded,
              "floors " + fmt(parabola_floor) + " and " + fmt(eq1_floor));
}

}  // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%d of 9 criteria passed in %.1f s\n", 9 - g_failures, secs);
    return g_failures;
}
