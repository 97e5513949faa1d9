#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "contourforge/contour.hpp"
#include "contourforge/expr.hpp"
#include "contourforge/lowering.hpp"
#include "contourforge/quadrature.hpp"

namespace contourforge {

/// Safety factor applied on top of amplitude * machine-epsilon when computing
/// the smallest verifiable tolerance of a cancellation-prone integral.
inline constexpr double kConditioningSafety = 10.0;

/// One verifiable identity: an integrand, a closure family, and the constant
/// the segment integral approaches as R grows.
struct IdentityRecord {
    std::string name;
    ExprPtr f;
    Entirety entirety = Entirety::Unknown;
    ContourFamily family;
    Complex target{0.0, 0.0};
    std::string target_provenance;

    /// Sign relating the closure-path integral to the segment integral at
    /// finite R under the stated orientation: closure = closure_sign * segment.
    double closure_sign = -1.0;

    /// Printed reference form of the strange integrand at a given R, when the
    /// source states one, plus the sign relating it to the mechanically
    /// lowered re_part (re_part = reference_sign * reference). For the
    /// parabola the printed form is a documented near-match that fails
    /// pointwise_equiv; reference_matches records that.
    std::function<RealExprPtr(double R)> reference_form;
    double reference_sign = 1.0;
    bool reference_matches = true;

    /// Whether the record's limit is the segment form I(R) = int_{-R}^{R} f;
    /// the small-circle and arc-vanishing records use their own ladders.
    bool has_segment_limit = true;

    /// Convergence tolerance for successive ladder differences and the
    /// acceptance tolerance on |limit - target|.
    double conv_tol = 1e-7;
    double limit_tol = 1e-10;

    std::map<std::string, double> aux_params;
    std::vector<double> default_ladder;
    std::string notes;
};

/// Evidence from one verification run. Serialized by report_to_json with the
/// fixed field names {identity, orientation, R_values, residuals,
/// conditioning_floors, limit_estimate, target, limit_residual, pass, notes,
/// wall_time_ms}.
struct VerificationReport {
    std::string identity;
    std::string orientation;
    std::vector<double> r_values;
    std::vector<double> residuals;
    std::vector<double> conditioning_floors;
    std::optional<Complex> limit_estimate;
    std::optional<Complex> target;
    std::optional<double> limit_residual;
    bool pass = false;
    std::string notes;
    double wall_time_ms = 0.0;
};

std::string report_to_json(const VerificationReport& report);

/// Increasing R values driving a limit study.
struct RLadder {
    std::vector<double> values;
    double convergence_tol = 1e-7;

    static RLadder explicit_values(std::vector<double> values, double convergence_tol);
    static RLadder arithmetic(double first, double last, double step, double convergence_tol);
    static RLadder geometric(double first, double factor, std::size_t count,
                             double convergence_tol);
};

/// Smallest absolute tolerance verifiable for f integrated along c:
/// (max |f(z(s)) z'(s)| over a dense sample) * machine epsilon * safety.
/// Throws ConditioningLimit when the amplitude overflows double range.
double conditioning_floor(const ExprPtr& f, const Contour& c);

/// Same, for a lowered real integrand on its domain.
double conditioning_floor(const LoweredIntegrand& g);

/// |int_a f - int_b f| for two paths sharing endpoints; passes when the
/// residual is within max(tol.abs_tol, conditioning floor). Unknown entirety
/// is a warning in the notes, not an error. Throws EndpointMismatch.
VerificationReport path_equivalence(const ExprPtr& f, const Contour& a, const Contour& b,
                                    const Tolerance& tol,
                                    Entirety entirety = Entirety::Unknown);

/// Finite-R check of a catalog record: lower f on the closure, integrate the
/// real and imaginary parts, and compare against the segment integral under
/// the record's orientation sign. The imaginary part must vanish to the same
/// tolerance. Refuses (ConditioningLimit) when the conditioning floor at this
/// R exceeds tol.abs_tol.
VerificationReport strange_vs_segment(const IdentityRecord& rec, double R,
                                      const Tolerance& tol);

/// Evaluate the well-conditioned segment form I(R) = int_{-R}^{R} f across
/// the ladder; converged when the last two successive differences are below
/// the ladder's convergence tolerance. pass requires convergence and
/// |I(final) - target| <= rec.limit_tol. A non-converged ladder is reported
/// with pass = false, not thrown.
VerificationReport limit_study(const IdentityRecord& rec, const RLadder& ladder,
                               const Tolerance& tol);

/// Integrate e^{iz}/z over the clockwise epsilon-arc (theta: pi -> 0) for a
/// decreasing epsilon ladder; the residual against -i pi must shrink linearly
/// (|v + i pi| <= 5 eps, consecutive ratios within 20% of the eps ratio).
VerificationReport small_circle_check(const std::vector<double>& eps_ladder,
                                      const Tolerance& tol);

/// |int over the upper semicircle of e^{iz}/z| per R; passes when the moduli
/// decrease monotonically (10% slack) and the final value is at most
/// 1.5 pi / R_final.
VerificationReport arc_vanishing_check(const std::vector<double>& r_ladder,
                                       const Tolerance& tol);

/// The five built-in identities: eq1_gaussian_semicircle, eq3_sinc_semicircle,
/// parabola_gaussian, small_circle_sinc_exp, jordan_arc_exp.
const std::vector<IdentityRecord>& builtin_catalog();

/// Catalog lookup by name; throws InvalidFamilyParams for unknown names.
const IdentityRecord& catalog_record(const std::string& name);

}  // namespace contourforge
