#include "contourforge/identity.hpp"

#include <json.hpp>

namespace contourforge {

namespace {

nlohmann::json complex_json(const Complex& z) {
    return nlohmann::json{{"re", z.real()}, {"im", z.imag()}};
}

}  // namespace

std::string report_to_json(const VerificationReport& report) {
    nlohmann::json j;
    j["identity"] = report.identity;
    j["orientation"] = report.orientation;
    j["R_values"] = report.r_values;
    j["residuals"] = report.residuals;
    j["conditioning_floors"] = report.conditioning_floors;
    j["limit_estimate"] =
        report.limit_estimate ? complex_json(*report.limit_estimate) : nlohmann::json();
    j["target"] = report.target ? complex_json(*report.target) : nlohmann::json();
    j["limit_residual"] =
        report.limit_residual ? nlohmann::json(*report.limit_residual) : nlohmann::json();
    j["pass"] = report.pass;
    j["notes"] = report.notes;
    j["wall_time_ms"] = report.wall_time_ms;
    return j.dump(2);
}

}  // namespace contourforge
