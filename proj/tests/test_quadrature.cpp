#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "contourforge/contour.hpp"
#include "contourforge/errors.hpp"
#include "contourforge/parser.hpp"
#include "contourforge/quadrature.hpp"
#include "oracles.hpp"

using namespace contourforge;

namespace {

Contour segment(double a, double b) {
    return Contour({PathSegment::line({a, 0.0}, {b, 0.0})});
}

Tolerance default_tol() { return Tolerance::make(1e-10, 1e-12, 2000); }

ExprPtr random_poly(std::mt19937& rng, int max_degree) {
    std::uniform_int_distribution<int> deg(0, max_degree);
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    const int n = deg(rng);
    ExprPtr acc = Expr::constant({coeff(rng), coeff(rng)});
    for (int k = 1; k <= n; ++k) {
        acc = Expr::add(Expr::mul(acc, Expr::variable("z")),
                        Expr::constant({coeff(rng), coeff(rng)}));
    }
    return acc;
}

PathSegment random_segment(std::mt19937& rng) {
    std::uniform_int_distribution<int> kind(0, 3);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::uniform_real_distribution<double> pos(0.3, 2.5);
    switch (kind(rng)) {
        case 0:
            return PathSegment::line({u(rng), u(rng)}, {u(rng), u(rng)});
        case 1:
            return PathSegment::circular_arc({u(rng), u(rng)}, pos(rng), u(rng), u(rng) + 1.0);
        case 2:
            return PathSegment::polynomial_graph({u(rng), u(rng), u(rng)}, u(rng),
                                                 u(rng) + 0.5);
        default:
            return PathSegment::half_ellipse({u(rng), u(rng)}, pos(rng), pos(rng), u(rng),
                                             u(rng) + 2.0);
    }
}

}  // namespace

TEST_CASE("integral of dz along a line is the endpoint difference") {
    auto r = integrate_contour(parse_expr("1"),
                               Contour({PathSegment::line({0.0, 0.0}, {3.0, 4.0})}),
                               default_tol());
    CHECK(r.converged);
    CHECK(std::abs(r.value - Complex{3.0, 4.0}) < 1e-15);
    // an honest estimator cannot report below the roundoff floor of the
    // |dz| = 5 path, but this is still double-precision exact
    CHECK(r.abs_error_estimate < 1e-13);
    CHECK(r.evaluations >= 15);
}

TEST_CASE("residue: closed unit circle of 1/z gives 2 pi i") {
    Contour circle({PathSegment::circular_arc({0.0, 0.0}, 1.0, 0.0, 2.0 * kPi)});
    auto r = integrate_contour(parse_expr("1/z"), circle, default_tol());
    CHECK(r.converged);
    CHECK(std::abs(r.value - Complex{0.0, 2.0 * kPi}) < 1e-12);
}

TEST_CASE("gaussian on the segment matches the series erf oracle") {
    auto r = integrate_contour(parse_expr("exp(-z^2)"), segment(-3.0, 3.0), default_tol());
    CHECK(r.converged);
    CHECK(r.value.real() == doctest::Approx(1.7724146965190424).epsilon(1e-12));
    CHECK(std::fabs(r.value.imag()) < 1e-14);
    CHECK(r.value.real() == doctest::Approx(oracles::gauss_segment_integral(3.0)).epsilon(1e-12));
}

TEST_CASE("gaussian around the closed semicircle loop vanishes") {
    Contour loop = full_loop(make_family("semicircle_closure").generate(3.0));
    // the e^{R^2}-amplitude arc puts the honest error floor right at 1e-10, so
    // the value bound is the assertion; convergence is checked a notch looser
    auto r = integrate_contour(parse_expr("exp(-z^2)"), loop, default_tol());
    CHECK(std::abs(r.value) < 1e-10);
    auto r9 = integrate_contour(parse_expr("exp(-z^2)"), loop, Tolerance::make(1e-9));
    CHECK(r9.converged);
}

TEST_CASE("integrate_real basics") {
    RealExprPtr t = RealExpr::variable("t");
    SUBCASE("sin on [0, pi]") {
        auto r = integrate_real(RealExpr::sin(t), 0.0, kPi, default_tol());
        CHECK(r.converged);
        CHECK(r.value.real() == doctest::Approx(2.0).epsilon(1e-13));
        CHECK(r.value.imag() == 0.0);
    }
    SUBCASE("constants integrate exactly") {
        auto r = integrate_real(RealExpr::constant(2.5), -1.0, 3.0, default_tol());
        CHECK(r.value.real() == doctest::Approx(10.0).epsilon(1e-15));
    }
    SUBCASE("finite-R sinc identity: strange form equals the segment value") {
        // cos(5 cos theta) sinh(5 sin theta) on [0, pi] equals
        // int_{-5}^{5} sinc = 2 Si(5) = 3.0998624898893481 (series oracle)
        RealExprPtr th = RealExpr::variable("theta");
        RealExprPtr g = RealExpr::mul(
            RealExpr::cos(RealExpr::mul(RealExpr::constant(5.0), RealExpr::cos(th))),
            RealExpr::sinh(RealExpr::mul(RealExpr::constant(5.0), RealExpr::sin(th))));
        auto strange = integrate_real(g, 0.0, kPi, default_tol());
        CHECK(strange.converged);
        CHECK(strange.value.real() ==
              doctest::Approx(oracles::sinc_segment_integral(5.0)).epsilon(1e-9));
        auto seg = integrate_contour(parse_expr("sinc(z)"), segment(-5.0, 5.0), default_tol());
        CHECK(std::fabs(strange.value.real() - seg.value.real()) < 1e-8);
    }
    SUBCASE("reversed bounds are rejected") {
        CHECK_THROWS_AS(integrate_real(t, 1.0, 0.0, default_tol()), std::invalid_argument);
    }
}

TEST_CASE("tolerance validation") {
    CHECK_THROWS_AS(Tolerance::make(1e-15), std::invalid_argument);
    CHECK_THROWS_AS(Tolerance::make(1e-10, -1.0), std::invalid_argument);
    CHECK_NOTHROW(Tolerance::make(1e-14));
}

TEST_CASE("property: reversal antisymmetry on 50 random polynomial/segment pairs") {
    std::mt19937 rng(99173);
    const Tolerance tol = Tolerance::make(1e-8, 1e-10, 200);
    for (int k = 0; k < 50; ++k) {
        ExprPtr f = random_poly(rng, 6);
        PathSegment seg = random_segment(rng);
        auto fwd = integrate_contour(f, Contour({seg}), tol);
        auto bwd = integrate_contour(f, Contour({seg.reversed()}), tol);
        const double slack =
            2.0 * (fwd.abs_error_estimate + bwd.abs_error_estimate) + 1e-13;
        CHECK(std::abs(fwd.value + bwd.value) <= slack);
    }
}

TEST_CASE("property: additivity over a chained two-segment contour") {
    std::mt19937 rng(5150);
    const Tolerance tol = Tolerance::make(1e-8, 1e-10, 200);
    for (int k = 0; k < 20; ++k) {
        ExprPtr f = random_poly(rng, 5);
        PathSegment first = random_segment(rng);
        PathSegment second = PathSegment::line(first.end(), Complex{0.3, -0.7});
        Contour both({first, second});
        auto whole = integrate_contour(f, both, tol);
        auto a = integrate_contour(f, Contour({first}), tol);
        auto b = integrate_contour(f, Contour({second}), tol);
        const double slack = whole.abs_error_estimate + a.abs_error_estimate +
                             b.abs_error_estimate + 1e-13;
        CHECK(std::abs(whole.value - (a.value + b.value)) <= slack);
    }
}

TEST_CASE("property: closed loops of polynomials integrate to zero (Cauchy)") {
    std::mt19937 rng(31415);
    std::vector<ContourFamily> families = {
        make_loop_family(make_family("semicircle_closure")),
        make_loop_family(make_family("parabola_closure")),
        make_loop_family(make_family("half_ellipse_closure")),
        make_family("indented_semicircle_loop"),
    };
    for (int k = 0; k < 10; ++k) {
        ExprPtr f = random_poly(rng, 8);
        for (const auto& fam : families) {
            for (double R : {1.0, 2.0, 3.0}) {
                Contour loop = fam.generate(R);
                double amp = 0.0;
                for (const auto& seg : loop.segments())
                    for (int j = 0; j <= 64; ++j)
                        amp = std::max(amp,
                                       std::abs(eval_expr(f, {{"z", seg.point(j / 64.0).z}})));
                const double len = loop.approx_length();
                // request accuracy a notch below the roundoff of amplitude-scale
                // panel sums, so large-amplitude loops still converge
                const Tolerance tol =
                    Tolerance::make(std::max(1e-10, 2e-14 * amp * len), 1e-12, 400);
                auto r = integrate_contour(f, loop, tol);
                const double bound = std::max(1e-10, 1e-13 * len * amp);
                CHECK(std::abs(r.value) <= bound);
            }
        }
    }
}

TEST_CASE("indented loop of e^{iz}/z integrates to zero (no pole enclosed)") {
    Contour loop = make_family("indented_semicircle_loop").generate(3.0, {{"eps", 1e-3}});
    auto r = integrate_contour(parse_expr("exp(i*z)/z"), loop, default_tol());
    CHECK(r.converged);
    CHECK(std::abs(r.value) < 1e-9);
}

TEST_CASE("error estimates are honest on known values") {
    struct Known {
        ExprPtr f;
        Contour path;
        Complex truth;
    };
    std::vector<Known> cases;
    cases.push_back({parse_expr("1"), Contour({PathSegment::line({0.0, 0.0}, {3.0, 4.0})}),
                     {3.0, 4.0}});
    cases.push_back({parse_expr("z^2"), segment(0.0, 3.0), {9.0, 0.0}});
    cases.push_back({parse_expr("exp(-z^2)"), segment(-3.0, 3.0),
                     {oracles::gauss_segment_integral(3.0), 0.0}});
    cases.push_back({parse_expr("sinc(z)"), segment(-5.0, 5.0),
                     {oracles::sinc_segment_integral(5.0), 0.0}});
    for (const auto& c : cases) {
        auto r = integrate_contour(c.f, c.path, default_tol());
        CHECK(std::abs(r.value - c.truth) <= 10.0 * r.abs_error_estimate);
    }
}

TEST_CASE("determinism: identical inputs give bit-identical results") {
    ExprPtr f = parse_expr("exp(i*z)/z");
    Contour arc = make_family("semicircle_closure").generate(50.0);
    auto r1 = integrate_contour(f, arc, default_tol());
    auto r2 = integrate_contour(f, arc, default_tol());
    CHECK(std::memcmp(&r1.value, &r2.value, sizeof(r1.value)) == 0);
    CHECK(r1.abs_error_estimate == r2.abs_error_estimate);
    CHECK(r1.evaluations == r2.evaluations);
    CHECK(r1.subdivisions == r2.subdivisions);
}

TEST_CASE("subdivision budget exhaustion reports NotConverged") {
    Tolerance tight = Tolerance::make(1e-14, 0.0, 3);
    auto r = integrate_contour(parse_expr("exp(i*z)/z"),
                               make_family("semicircle_closure").generate(60.0), tight);
    CHECK_FALSE(r.converged);
    CHECK(r.subdivisions == 3);
    CHECK(is_finite(r.value));
}

TEST_CASE("singularity on the path raises EvaluationError with a location") {
    Contour loop = full_loop(make_family("semicircle_closure").generate(1.0));
    try {
        integrate_contour(parse_expr("1/z"), loop, default_tol());
        FAIL("expected EvaluationError");
    } catch (const EvaluationError& e) {
        CHECK(e.segment_index() == 1);  // the closing real-axis segment
        CHECK(e.param() == doctest::Approx(0.5).epsilon(1e-12));
    }
}

TEST_CASE("minimum evaluations per segment") {
    auto r = integrate_contour(parse_expr("z"), segment(0.0, 1e-9), default_tol());
    CHECK(r.evaluations >= 15);
}
