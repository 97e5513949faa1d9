#include <cmath>

#include "contourforge/errors.hpp"
#include "contourforge/identity.hpp"

namespace contourforge {

namespace {

ExprPtr gaussian() {
    return Expr::exp(Expr::neg(Expr::ipow(Expr::variable("z"), 2)));
}

// R e^{-R^2 cos 2 theta} sin(R^2 sin 2 theta - theta)
RealExprPtr eq1_reference(double R) {
    RealExprPtr th = RealExpr::variable("theta");
    RealExprPtr two_th = RealExpr::mul(RealExpr::constant(2.0), th);
    RealExprPtr r2 = RealExpr::constant(R * R);
    RealExprPtr amp = RealExpr::mul(
        RealExpr::constant(R),
        RealExpr::exp(RealExpr::mul(RealExpr::neg(r2), RealExpr::cos(two_th))));
    RealExprPtr phase = RealExpr::sub(RealExpr::mul(r2, RealExpr::sin(two_th)), th);
    return RealExpr::mul(amp, RealExpr::sin(phase));
}

// cos(R cos theta) sinh(R sin theta)
RealExprPtr eq3_reference(double R) {
    RealExprPtr th = RealExpr::variable("theta");
    RealExprPtr r = RealExpr::constant(R);
    return RealExpr::mul(RealExpr::cos(RealExpr::mul(r, RealExpr::cos(th))),
                         RealExpr::sinh(RealExpr::mul(r, RealExpr::sin(th))));
}

// e^{(t^2-R^2)^2 - t^2} (cos(2t^3 - t R^2) + 2t sin(2t^3 - t R^2)), reading
// the printed symbol p as R. The mechanical derivation gives the phase
// 2t(t^2-R^2) = 2t^3 - 2tR^2 instead; the two forms do not agree pointwise.
RealExprPtr parabola_printed_reference(double R) {
    RealExprPtr t = RealExpr::variable("t");
    RealExprPtr t2 = RealExpr::mul(t, t);
    RealExprPtr r2 = RealExpr::constant(R * R);
    RealExprPtr exponent = RealExpr::sub(RealExpr::ipow(RealExpr::sub(t2, r2), 2), t2);
    RealExprPtr phase = RealExpr::sub(
        RealExpr::mul(RealExpr::constant(2.0), RealExpr::ipow(t, 3)), RealExpr::mul(t, r2));
    return RealExpr::mul(
        RealExpr::exp(exponent),
        RealExpr::add(RealExpr::cos(phase),
                      RealExpr::mul(RealExpr::mul(RealExpr::constant(2.0), t),
                                    RealExpr::sin(phase))));
}

std::vector<IdentityRecord> build_catalog() {
    std::vector<IdentityRecord> catalog;
    const double sqrt_pi = std::sqrt(kPi);

    {
        IdentityRecord rec;
        rec.name = "eq1_gaussian_semicircle";
        rec.f = gaussian();
        rec.entirety = Entirety::Entire;
        rec.family = make_family("semicircle_closure");
        rec.target = Complex{sqrt_pi, 0.0};
        rec.target_provenance = "int_{-inf}^{inf} e^{-x^2} dx = sqrt(pi)";
        rec.closure_sign = -1.0;
        rec.reference_form = eq1_reference;
        rec.reference_sign = 1.0;
        rec.reference_matches = true;
        rec.conv_tol = 1e-7;
        rec.limit_tol = 1e-10;
        rec.default_ladder = {1, 2, 3, 4, 5, 6};
        rec.notes =
            "strange form R e^{-R^2 cos 2theta} sin(R^2 sin 2theta - theta) equals the lowered "
            "re_part for theta: 0 -> pi; its integral is minus the segment integral, Gaussian "
            "tail e^{-R^2} makes the ladder converge fast";
        catalog.push_back(std::move(rec));
    }
    {
        IdentityRecord rec;
        rec.name = "eq3_sinc_semicircle";
        rec.f = Expr::sinc(Expr::variable("z"));
        rec.entirety = Entirety::EntireByRemovableSingularity;
        rec.family = make_family("semicircle_closure");
        rec.target = Complex{kPi, 0.0};
        rec.target_provenance = "int_{-inf}^{inf} sin(x)/x dx = pi (catalog pins a = 1)";
        rec.closure_sign = -1.0;
        rec.reference_form = eq3_reference;
        rec.reference_sign = -1.0;
        rec.reference_matches = true;
        rec.conv_tol = 5e-2;
        rec.limit_tol = 1e-2;
        rec.default_ladder = {25, 50, 100, 200};
        rec.notes =
            "printed form cos(R cos theta) sinh(R sin theta) is minus the lowered re_part under "
            "theta: 0 -> pi; O(1/R) sinc tail sets the loose limit tolerance";
        catalog.push_back(std::move(rec));
    }
    {
        IdentityRecord rec;
        rec.name = "parabola_gaussian";
        rec.f = gaussian();
        rec.entirety = Entirety::Entire;
        rec.family = make_family("parabola_closure");
        rec.target = Complex{sqrt_pi, 0.0};
        rec.target_provenance = "int_{-inf}^{inf} e^{-x^2} dx = sqrt(pi)";
        rec.closure_sign = -1.0;
        rec.reference_form = parabola_printed_reference;
        rec.reference_sign = -1.0;
        rec.reference_matches = false;
        rec.conv_tol = 1e-7;
        rec.limit_tol = 1e-10;
        rec.default_ladder = {1, 2, 3, 4, 5, 6};
        rec.notes =
            "the printed source form carries an e^{z^2} integrand and the phase 2t^3 - t p^2 "
            "with an undefined p; the mechanical derivation from e^{-z^2} yields the phase "
            "2t(t^2 - R^2) = 2t^3 - 2tR^2, validated pointwise against direct complex "
            "evaluation, and the printed form (p read as R) fails pointwise_equiv; the "
            "amplitude e^{R^4} limits double-precision verification to small R";
        catalog.push_back(std::move(rec));
    }
    {
        IdentityRecord rec;
        rec.name = "small_circle_sinc_exp";
        rec.f = Expr::div(Expr::exp(Expr::mul(Expr::constant({0.0, 1.0}), Expr::variable("z"))),
                          Expr::variable("z"));
        rec.entirety = Entirety::NotEntire;
        ContourFamily fam;
        fam.name = "epsilon_arc";
        fam.closure_only = true;
        fam.generator = [](double eps, const std::map<std::string, double>&) {
            if (!(eps > 0.0 && eps < 1.0))
                throw InvalidFamilyParams("epsilon arc requires 0 < eps < 1");
            return Contour({PathSegment::circular_arc({0.0, 0.0}, eps, kPi, 0.0)});
        };
        rec.family = std::move(fam);
        rec.target = Complex{0.0, -kPi};
        rec.target_provenance = "lim_{eps->0} int_{Gamma_eps} e^{iz}/z dz = -i pi";
        rec.closure_sign = 1.0;
        rec.has_segment_limit = false;
        rec.default_ladder = {1e-2, 1e-3, 1e-4};
        rec.notes =
            "clockwise epsilon arc (theta: pi -> 0) of the indented contour; residual vs -i pi "
            "shrinks linearly in eps (observed |v + i pi| ~ 2 eps)";
        catalog.push_back(std::move(rec));
    }
    {
        IdentityRecord rec;
        rec.name = "jordan_arc_exp";
        rec.f = Expr::div(Expr::exp(Expr::mul(Expr::constant({0.0, 1.0}), Expr::variable("z"))),
                          Expr::variable("z"));
        rec.entirety = Entirety::NotEntire;
        rec.family = make_family("semicircle_closure");
        rec.target = Complex{0.0, 0.0};
        rec.target_provenance = "lim_{R->inf} int_{Gamma_R} e^{iz}/z dz = 0";
        rec.closure_sign = 1.0;
        rec.has_segment_limit = false;
        rec.default_ladder = {10, 50, 100};
        rec.notes = "Jordan-bound check: |int| <= 1.5 pi / R on the upper semicircle";
        catalog.push_back(std::move(rec));
    }
    return catalog;
}

}  // namespace

const std::vector<IdentityRecord>& builtin_catalog() {
    static const std::vector<IdentityRecord> catalog = build_catalog();
    return catalog;
}

const IdentityRecord& catalog_record(const std::string& name) {
    for (const IdentityRecord& rec : builtin_catalog())
        if (rec.name == name) return rec;
    throw InvalidFamilyParams("unknown identity '" + name +
                              "'; run the catalog command for the available names");
}

}  // namespace contourforge
