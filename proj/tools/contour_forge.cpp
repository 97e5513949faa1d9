// contour-forge: derive strange real integrands from contour closures,
// integrate complex expressions along paths, and verify the built-in
// closure identities numerically.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
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

namespace cf = contourforge;

namespace {

// Exit codes: 0 pass/converged, 1 clean verification failure, 2 parse or
// spec errors, 3 evaluation/lowering errors, 4 not converged, 5 conditioning.
enum ExitCode {
    kOk = 0,
    kFailed = 1,
    kParseError = 2,
    kEvaluationError = 3,
    kNotConverged = 4,
    kConditioning = 5,
};

struct CommonOpts {
    double abs_tol = 1e-10;
    double rel_tol = 1e-12;
    std::size_t max_subdiv = 2000;
    std::string emit = "text";
    std::string out_path;
    std::string config_path;  // consumed in merge_config_args; registered for --help

    cf::Tolerance tolerance() const { return cf::Tolerance::make(abs_tol, rel_tol, max_subdiv); }
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_latex) {
    cmd->add_option("--abs-tol", opts.abs_tol, "absolute tolerance (default 1e-10)");
    cmd->add_option("--rel-tol", opts.rel_tol, "relative tolerance (default 1e-12)");
    cmd->add_option("--max-subdiv", opts.max_subdiv, "subdivision budget (default 2000)");
    cmd->add_option("--emit", opts.emit, "output format")
        ->check(CLI::IsMember(with_latex ? std::vector<std::string>{"text", "json", "latex"}
                                         : std::vector<std::string>{"text", "json"}));
    cmd->add_option("--out", opts.out_path, "write output to a file instead of stdout");
    cmd->add_option("--config", opts.config_path,
                    "config file: key = flag name, one per line, '#' comments");
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

// Flat config files: "key = flag name", one per line, '#' comments. Values
// from the file are injected as arguments unless the flag is already present
// on the command line (command-line precedence).
std::vector<std::string> merge_config_args(const std::vector<std::string>& args) {
    std::string config_path;
    for (std::size_t k = 0; k < args.size(); ++k) {
        if (args[k] == "--config" && k + 1 < args.size())
            config_path = args[k + 1];
        else if (args[k].rfind("--config=", 0) == 0)
            config_path = args[k].substr(9);
    }
    if (config_path.empty()) return args;

    std::ifstream in(config_path);
    if (!in) throw cf::Error("cannot read config file '" + config_path + "'");

    std::vector<std::string> merged = args;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw cf::SyntaxError("config file line " + std::to_string(lineno) +
                                      " is not 'key=value'",
                                  lineno);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw cf::SyntaxError("config file line " + std::to_string(lineno) +
                                      " has an empty key",
                                  lineno);
        const std::string flag = "--" + key;
        bool already_given = false;
        for (const auto& arg : args)
            if (arg == flag || arg.rfind(flag + "=", 0) == 0) already_given = true;
        if (!already_given) merged.push_back(flag + "=" + value);
    }
    return merged;
}

void emit(const CommonOpts& opts, const std::string& payload) {
    if (opts.out_path.empty()) {
        std::cout << payload;
        if (!payload.empty() && payload.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(opts.out_path);
    if (!out) throw cf::Error("cannot open output file '" + opts.out_path + "'");
    out << payload;
    if (!payload.empty() && payload.back() != '\n') out << '\n';
}

std::string fmt10(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

std::string complex_text(const cf::Complex& z) {
    std::ostringstream os;
    os.precision(10);
    os << z.real() << (z.imag() < 0 ? " - " : " + ") << std::fabs(z.imag()) << "i";
    return os.str();
}

nlohmann::json complex_json(const cf::Complex& z) {
    return {{"re", z.real()}, {"im", z.imag()}};
}

// Ladder syntax: "a:b:step" arithmetic, or a comma-separated explicit list.
std::vector<double> parse_ladder(const std::string& text) {
    std::vector<double> values;
    if (text.find(':') != std::string::npos) {
        double a = 0, b = 0, step = 0;
        char c1 = 0, c2 = 0;
        std::istringstream is(text);
        if (!(is >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' || !(step > 0))
            throw cf::SyntaxError("ladder must be 'first:last:step' or a comma list", 1);
        for (double v = a; v <= b + 0.5 * step; v += step) values.push_back(v);
    } else {
        std::istringstream is(text);
        std::string item;
        while (std::getline(is, item, ',')) {
            try {
                values.push_back(std::stod(item));
            } catch (const std::exception&) {
                throw cf::SyntaxError("bad ladder value '" + item + "'", 1);
            }
        }
    }
    if (values.empty()) throw cf::SyntaxError("empty ladder", 1);
    return values;
}

int run_derive(const CommonOpts& opts, const std::string& function, const std::string& contour) {
    if (!cf::spec_is_single_piece(contour))
        throw cf::InvalidFamilyParams(
            "derive expects a single segment or bare closure, not a loop");
    cf::ExprPtr f = cf::parse_expr(function);
    cf::Contour path = cf::parse_contour_spec(contour);
    if (path.size() != 1)
        throw cf::InvalidFamilyParams("derive expects a single segment or bare closure");
    cf::LoweredIntegrand g = cf::lower(f, path.segments().front());

    if (opts.emit == "json") {
        nlohmann::json j;
        j["re_part"] = cf::format_real(g.re_part);
        j["im_part"] = cf::format_real(g.im_part);
        j["re_part_latex"] = cf::format_real(g.re_part, cf::ExprStyle::Latex);
        j["im_part_latex"] = cf::format_real(g.im_part, cf::ExprStyle::Latex);
        j["parameter"] = g.parameter;
        j["domain"] = {g.lo, g.hi};
        j["orientation_note"] = g.orientation_note;
        emit(opts, j.dump(2));
    } else if (opts.emit == "latex") {
        std::ostringstream os;
        os << "\\int_{" << fmt10(g.lo) << "}^{" << fmt10(g.hi) << "} \\left["
           << cf::format_real(g.re_part, cf::ExprStyle::Latex) << "\\right] \\, d"
           << (g.parameter == "theta" ? "\\theta" : g.parameter) << "\n% imaginary part: "
           << cf::format_real(g.im_part, cf::ExprStyle::Latex) << "\n% orientation: "
           << g.orientation_note;
        emit(opts, os.str());
    } else {
        std::ostringstream os;
        os << "re(" << g.parameter << ") = " << cf::format_real(g.re_part) << "\n"
           << "im(" << g.parameter << ") = " << cf::format_real(g.im_part) << "\n"
           << "parameter: " << g.parameter << " in [" << fmt10(g.lo) << ", " << fmt10(g.hi)
           << "]\n"
           << "orientation: " << g.orientation_note;
        emit(opts, os.str());
    }
    return kOk;
}

int run_integrate(const CommonOpts& opts, const std::string& function,
                  const std::string& contour) {
    cf::ExprPtr f = cf::parse_expr(function);
    cf::Contour path = cf::parse_contour_spec(contour);
    cf::QuadratureResult r = cf::integrate_contour(f, path, opts.tolerance());

    if (opts.emit == "json") {
        nlohmann::json j;
        j["value"] = complex_json(r.value);
        j["abs_error_estimate"] = r.abs_error_estimate;
        j["evaluations"] = r.evaluations;
        j["converged"] = r.converged;
        j["subdivisions"] = r.subdivisions;
        emit(opts, j.dump(2));
    } else {
        std::ostringstream os;
        os << "value = " << complex_text(r.value) << "\n"
           << "abs_error_estimate = " << fmt10(r.abs_error_estimate) << "\n"
           << "evaluations = " << r.evaluations << "\n"
           << "subdivisions = " << r.subdivisions << "\n"
           << "converged = " << (r.converged ? "true" : "false");
        emit(opts, os.str());
    }
    return r.converged ? kOk : kNotConverged;
}

void emit_report(const CommonOpts& opts, const cf::VerificationReport& report) {
    if (opts.emit == "text") {
        std::ostringstream os;
        os << "identity: " << report.identity << "\n"
           << "orientation: " << report.orientation << "\n"
           << "ladder:";
        for (double r : report.r_values) os << " " << fmt10(r);
        os << "\nresiduals:";
        for (double r : report.residuals) os << " " << fmt10(r);
        os << "\nconditioning_floors:";
        for (double r : report.conditioning_floors) os << " " << fmt10(r);
        if (report.limit_estimate)
            os << "\nlimit_estimate = " << complex_text(*report.limit_estimate);
        if (report.target) os << "\ntarget = " << complex_text(*report.target);
        if (report.limit_residual) os << "\nlimit_residual = " << fmt10(*report.limit_residual);
        os << "\nnotes: " << report.notes << "\n"
           << "pass = " << (report.pass ? "true" : "false");
        emit(opts, os.str());
    } else {
        emit(opts, cf::report_to_json(report));
    }
}

int run_verify(const CommonOpts& opts, const std::string& identity, std::optional<double> R,
               const std::string& ladder_text, const std::string& path_a,
               const std::string& path_b, const std::string& function) {
    cf::VerificationReport report;
    if (!identity.empty()) {
        const cf::IdentityRecord& rec = cf::catalog_record(identity);
        if (rec.name == "small_circle_sinc_exp") {
            std::vector<double> ladder =
                ladder_text.empty() ? rec.default_ladder : parse_ladder(ladder_text);
            report = cf::small_circle_check(ladder, opts.tolerance());
        } else if (rec.name == "jordan_arc_exp") {
            std::vector<double> ladder =
                ladder_text.empty() ? rec.default_ladder : parse_ladder(ladder_text);
            report = cf::arc_vanishing_check(ladder, opts.tolerance());
        } else {
            if (!R)
                throw cf::InvalidFamilyParams("--R is required for identity '" + rec.name + "'");
            report = cf::strange_vs_segment(rec, *R, opts.tolerance());
        }
    } else {
        if (path_a.empty() || path_b.empty() || function.empty())
            throw cf::InvalidFamilyParams(
                "verify needs either --identity or all of --pathA, --pathB, --function");
        cf::ExprPtr f = cf::parse_expr(function);
        cf::Contour a = cf::parse_contour_spec(path_a);
        cf::Contour b = cf::parse_contour_spec(path_b);
        // Closure specs run +R -> -R; flip pathB when that makes the endpoints line up.
        bool flipped = false;
        const double eps = cf::chain_tolerance(
            std::max({std::abs(a.start()), std::abs(a.end()), 1.0}));
        if ((std::abs(a.start() - b.start()) > eps || std::abs(a.end() - b.end()) > eps) &&
            std::abs(a.start() - b.end()) <= eps && std::abs(a.end() - b.start()) <= eps) {
            b = b.reversed();
            flipped = true;
        }
        report = cf::path_equivalence(f, a, b, opts.tolerance());
        if (flipped) report.notes += "; pathB reversed to align endpoints with pathA";
    }
    emit_report(opts, report);
    return report.pass ? kOk : kFailed;
}

int run_limit(const CommonOpts& opts, const std::string& identity, const std::string& ladder_text,
              std::optional<double> conv_tol) {
    const cf::IdentityRecord& rec = cf::catalog_record(identity);
    std::vector<double> values =
        ladder_text.empty() ? rec.default_ladder : parse_ladder(ladder_text);
    cf::RLadder ladder =
        cf::RLadder::explicit_values(values, conv_tol ? *conv_tol : rec.conv_tol);
    cf::VerificationReport report = cf::limit_study(rec, ladder, opts.tolerance());
    emit_report(opts, report);
    if (report.notes.find("LadderNotConverged") != std::string::npos) return kNotConverged;
    return report.pass ? kOk : kFailed;
}

int run_catalog(const CommonOpts& opts) {
    if (opts.emit == "json") {
        nlohmann::json list = nlohmann::json::array();
        for (const auto& rec : cf::builtin_catalog()) {
            nlohmann::json j;
            j["name"] = rec.name;
            j["function"] = cf::format_expr(rec.f);
            j["family"] = rec.family.name;
            j["entirety"] = cf::to_string(rec.entirety);
            j["target"] = complex_json(rec.target);
            j["target_provenance"] = rec.target_provenance;
            j["orientation"] = std::string("closure traversed +R -> -R; closure integral = ") +
                               (rec.closure_sign < 0 ? "-" : "+") + "(segment integral)";
            j["default_ladder"] = rec.default_ladder;
            j["notes"] = rec.notes;
            list.push_back(std::move(j));
        }
        emit(opts, list.dump(2));
        return kOk;
    }
    std::ostringstream os;
    for (const auto& rec : cf::builtin_catalog()) {
        os << rec.name << "\n"
           << "  f(z) = " << cf::format_expr(rec.f) << "   [" << cf::to_string(rec.entirety)
           << "]\n"
           << "  family: " << rec.family.name << "\n"
           << "  target: " << complex_text(rec.target) << "   (" << rec.target_provenance
           << ")\n"
           << "  orientation: closure traversed +R -> -R; closure integral = "
           << (rec.closure_sign < 0 ? "-" : "+") << "(segment integral)\n"
           << "  notes: " << rec.notes << "\n";
    }
    emit(opts, os.str());
    return kOk;
}

void apply_thread_env() {
    const char* env = std::getenv("CONTOUR_FORGE_THREADS");
    if (!env || !*env) return;
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || cap < 0) {
        std::cerr << "warning: ignoring invalid CONTOUR_FORGE_THREADS='" << env << "'\n";
        return;
    }
    cf::runtime::set_thread_cap(static_cast<std::size_t>(cap));
}

}  // namespace

int main(int argc, char** argv) {
    apply_thread_env();

    CLI::App app{"contour-forge: contour closures, lowered real integrands, and "
                 "numerical verification of the resulting identities"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "1.0.0");

    CommonOpts derive_opts, integrate_opts, verify_opts, limit_opts, catalog_opts;
    std::string function, contour;
    std::string v_identity, v_ladder, v_path_a, v_path_b, v_function;
    double v_r = 0.0;
    std::string l_identity, l_ladder;
    double l_conv_tol = 0.0;

    CLI::App* derive = app.add_subcommand("derive", "lower f(z(t)) z'(t) to real form");
    derive->add_option("--function", function, "integrand f(z)")->required();
    derive->add_option("--contour", contour, "segment or closure spec")->required();
    add_common(derive, derive_opts, /*with_latex=*/true);

    CLI::App* integrate = app.add_subcommand("integrate", "integrate f along a contour");
    integrate->add_option("--function", function, "integrand f(z)")->required();
    integrate->add_option("--contour", contour, "contour spec")->required();
    add_common(integrate, integrate_opts, false);

    CLI::App* verify = app.add_subcommand("verify", "verify a built-in identity or path pair");
    verify->add_option("--identity", v_identity, "catalog identity name");
    CLI::Option* r_opt = verify->add_option("--R", v_r, "closure radius for finite-R records");
    verify->add_option("--ladder", v_ladder, "override ladder (eps or R, per record)");
    verify->add_option("--pathA", v_path_a, "first contour spec");
    verify->add_option("--pathB", v_path_b, "second contour spec");
    verify->add_option("--function", v_function, "integrand for --pathA/--pathB mode");
    verify_opts.emit = "json";
    add_common(verify, verify_opts, false);

    CLI::App* limit = app.add_subcommand("limit", "segment-form R-ladder limit study");
    limit->add_option("--identity", l_identity, "catalog identity name")->required();
    limit->add_option("--ladder", l_ladder, "R ladder: 'a:b:step' or comma list")->required();
    CLI::Option* conv_opt =
        limit->add_option("--conv-tol", l_conv_tol, "successive-difference tolerance");
    limit_opts.emit = "json";
    add_common(limit, limit_opts, false);

    CLI::App* catalog = app.add_subcommand("catalog", "list the built-in identities");
    add_common(catalog, catalog_opts, false);

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        args = merge_config_args(args);
        std::reverse(args.begin(), args.end());  // CLI11 vector parse wants reversed args
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kParseError;
    } catch (const cf::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParseError;
    }

    try {
        if (derive->parsed()) return run_derive(derive_opts, function, contour);
        if (integrate->parsed()) return run_integrate(integrate_opts, function, contour);
        if (verify->parsed())
            return run_verify(verify_opts, v_identity,
                              r_opt->count() ? std::optional<double>(v_r) : std::nullopt,
                              v_ladder, v_path_a, v_path_b, v_function);
        if (limit->parsed())
            return run_limit(limit_opts, l_identity, l_ladder,
                             conv_opt->count() ? std::optional<double>(l_conv_tol)
                                               : std::nullopt);
        if (catalog->parsed()) return run_catalog(catalog_opts);
    } catch (const cf::ConditioningLimit& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConditioning;
    } catch (const cf::SyntaxError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParseError;
    } catch (const cf::UnknownIdentifier& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParseError;
    } catch (const cf::ArityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParseError;
    } catch (const cf::InvalidFamilyParams& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParseError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParseError;
    } catch (const cf::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kEvaluationError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailed;
    }
    return kOk;
}
