#include "twinbeam/cli_commands.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <ostream>
#include <regex>
#include <stdexcept>

#include <json.hpp>

#include "twinbeam/fock_oracle.hpp"
#include "twinbeam/separability.hpp"

namespace twinbeam::cli {

namespace {

using nlohmann::json;

// JSON has no infinity literal; serialize it the same way CSV does.
json json_number(double value)
{
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    return value;
}

json json_vector(const Eigen::Vector4d& v)
{
    return json::array({v(0), v(1), v(2), v(3)});
}

json json_matrix(const Eigen::Matrix4d& m)
{
    json rows = json::array();
    for (int i = 0; i < 4; ++i)
        rows.push_back(json::array({m(i, 0), m(i, 1), m(i, 2), m(i, 3)}));
    return rows;
}

json json_ppt(const PptReport& report)
{
    json eigs = json::array();
    for (int i = 0; i < 4; ++i)
        eigs.push_back(report.eigenvalues(i));
    return {{"eigenvalues", eigs},
            {"min_eigenvalue", report.min_eigenvalue},
            {"char_poly", report.char_poly},
            {"separable", report.separable}};
}

const char* method_name(SurvivalMethod method)
{
    return method == SurvivalMethod::closed_form ? "closed_form" : "bisection";
}

void require_positive_gamma(double gamma)
{
    if (!(gamma > 0.0))
        throw std::domain_error("gamma must be > 0");
}

double parse_plain_number(const std::string& text)
{
    size_t pos = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse angle '" + text + "'");
    }
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
        ++pos;
    if (pos != text.size())
        throw std::invalid_argument("cannot parse angle '" + text + "'");
    return value;
}

} // namespace

double parse_angle(const std::string& text)
{
    if (text.find("pi") == std::string::npos)
        return parse_plain_number(text);

    // forms: pi, -pi, 2*pi, 0.5pi, pi/5, 3*pi/4, ...
    static const std::regex pattern(
        R"(^\s*([+-])?\s*((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*\*?\s*pi\s*(?:/\s*((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?))?\s*$)");
    std::smatch match;
    if (!std::regex_match(text, match, pattern))
        throw std::invalid_argument("cannot parse angle '" + text + "'");
    double value = std::numbers::pi;
    if (match[1].matched && match[1].str() == "-")
        value = -value;
    if (match[2].matched)
        value *= std::stod(match[2].str());
    if (match[3].matched) {
        const double denom = std::stod(match[3].str());
        if (denom == 0.0)
            throw std::invalid_argument("cannot parse angle '" + text + "': zero denominator");
        value /= denom;
    }
    return value;
}

std::string format_number(double value)
{
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.12g", value);
    return buffer;
}

void cmd_survival(const SurvivalArgs& args, OutputFormat format, std::ostream& out)
{
    require_positive_gamma(args.gamma);
    // the sigma-product closed form assumes a phase-matched bath; any other
    // phase goes through PPT bisection on the full covariance flow
    const SurvivalResult r =
        (args.theta == 0.0 || args.n_s == 0.0)
            ? survival_time_closed(args.lambda, args.n_th, args.n_s)
            : survival_time_numeric(args.lambda,
                                    BathSpec{args.n_th, args.n_s, args.theta, 1.0});
    const double t_s = r.t_s / args.gamma;
    const double t_0 = r.t_0 / args.gamma;

    if (format == OutputFormat::csv) {
        out << "lambda,n_th,n_s,theta,gamma,t_s,t_0,G,method\n"
            << format_number(args.lambda) << ',' << format_number(args.n_th) << ','
            << format_number(args.n_s) << ',' << format_number(args.theta) << ','
            << format_number(args.gamma) << ',' << format_number(t_s) << ','
            << format_number(t_0) << ',' << format_number(r.relative_change) << ','
            << method_name(r.method) << '\n';
        return;
    }
    const json doc = {{"params",
                       {{"lambda", args.lambda},
                        {"n_th", args.n_th},
                        {"n_s", args.n_s},
                        {"theta", args.theta},
                        {"gamma", args.gamma}}},
                      {"results",
                       {{"t_s", json_number(t_s)},
                        {"t_0", json_number(t_0)},
                        {"G", json_number(r.relative_change)},
                        {"method", method_name(r.method)}}}};
    out << doc.dump(2) << '\n';
}

void cmd_fig1(const Fig1Args& args, OutputFormat format, std::ostream& out)
{
    require_positive_gamma(args.gamma);
    if (args.ns_count < 0)
        throw std::domain_error("n_s sample count must be >= 0");
    if (args.ns_count > 1 && !(args.ns_stop > args.ns_start))
        throw std::domain_error("n_s sweep bounds must satisfy stop > start");
    if (!(args.ns_start >= 0.0))
        throw std::domain_error("n_s must be >= 0");

    std::vector<double> ns_grid(args.ns_count);
    for (int i = 0; i < args.ns_count; ++i)
        ns_grid[i] = args.ns_count == 1
                         ? args.ns_start
                         : args.ns_start + (args.ns_stop - args.ns_start) * i /
                                               (args.ns_count - 1);

    json rows = json::array();
    if (format == OutputFormat::csv)
        out << "lambda,n_th,n_s,t_s,t_0,G\n";
    for (const double lambda : args.lambdas) {
        for (const double n_s : ns_grid) {
            const SurvivalResult r = survival_time_closed(lambda, args.n_th, n_s);
            const double t_s = r.t_s / args.gamma;
            const double t_0 = r.t_0 / args.gamma;
            if (format == OutputFormat::csv) {
                out << format_number(lambda) << ',' << format_number(args.n_th)
                    << ',' << format_number(n_s) << ',' << format_number(t_s)
                    << ',' << format_number(t_0) << ','
                    << format_number(r.relative_change) << '\n';
            } else {
                rows.push_back({{"lambda", lambda},
                                {"n_s", n_s},
                                {"t_s", json_number(t_s)},
                                {"t_0", json_number(t_0)},
                                {"G", json_number(r.relative_change)}});
            }
        }
    }
    if (format == OutputFormat::json) {
        const json doc = {{"params",
                           {{"n_th", args.n_th},
                            {"lambda", args.lambdas},
                            {"ns_start", args.ns_start},
                            {"ns_stop", args.ns_stop},
                            {"ns_count", args.ns_count},
                            {"gamma", args.gamma}}},
                          {"results", rows}};
        out << doc.dump(2) << '\n';
    }
}

std::string cmd_charpoly(const CharPolyArgs& args, OutputFormat format, std::ostream& out)
{
    if (args.x_count < 2)
        throw std::domain_error("x sample count must be >= 2");
    const PptReport report = char_poly_profile(
        args.lambda, BathSpec{args.n_th, args.n_s, args.theta, 1.0}, args.exp_gamma_t);
    const auto roots = char_poly_roots(report.char_poly);

    double x_min = args.x_min;
    double x_max = args.x_max;
    if (args.auto_range) {
        x_min = report.eigenvalues(0) - 0.15;
        x_max = report.eigenvalues(3) + 0.15;
    } else if (!(x_max > x_min)) {
        throw std::domain_error("x range must satisfy max > min");
    }

    const auto q = [&](double x) {
        double acc = 0.0;   // Horner, highest degree first
        for (const double c : report.char_poly)
            acc = acc * x + c;
        return acc;
    };

    const json params = {{"lambda", args.lambda},     {"n_th", args.n_th},
                         {"n_s", args.n_s},           {"theta", args.theta},
                         {"exp_gamma_t", args.exp_gamma_t}};
    json roots_json = json::array();
    for (const auto& root : roots)
        roots_json.push_back({{"re", root.real()}, {"im", root.imag()}});
    json eigs = json::array();
    for (int i = 0; i < 4; ++i)
        eigs.push_back(report.eigenvalues(i));

    if (format == OutputFormat::csv) {
        out << "x,q\n";
        for (int i = 0; i < args.x_count; ++i) {
            const double x =
                x_min + (x_max - x_min) * i / (args.x_count - 1);
            out << format_number(x) << ',' << format_number(q(x)) << '\n';
        }
        const json sidecar = {{"params", params},
                              {"results",
                               {{"roots", roots_json},
                                {"eigenvalues", eigs},
                                {"char_poly", report.char_poly},
                                {"min_eigenvalue", report.min_eigenvalue},
                                {"separable", report.separable}}}};
        return sidecar.dump();
    }

    json samples = json::array();
    for (int i = 0; i < args.x_count; ++i) {
        const double x = x_min + (x_max - x_min) * i / (args.x_count - 1);
        samples.push_back(json::array({x, q(x)}));
    }
    const json doc = {{"params", params},
                      {"results",
                       {{"samples", samples},
                        {"roots", roots_json},
                        {"eigenvalues", eigs},
                        {"char_poly", report.char_poly},
                        {"min_eigenvalue", report.min_eigenvalue},
                        {"separable", report.separable}}}};
    out << doc.dump(2) << '\n';
    return {};
}

void cmd_evolve(const EvolveArgs& args, OutputFormat format, std::ostream& out)
{
    require_positive_gamma(args.gamma);
    if (!(args.gamma_t >= 0.0))
        throw std::domain_error("evolution time must be >= 0");
    const DerivedBath bath =
        derive_bath(BathSpec{args.n_th, args.n_s, args.theta, 1.0});
    const TwoModeGaussianState state =
        evolve(twb_state(TwinBeamParams(args.lambda)), bath, args.gamma_t);
    const PptReport report = ppt_test(state);
    const double t = args.gamma_t / args.gamma;

    if (format == OutputFormat::csv) {
        out << "t,exp_gamma_t,mean_x1,mean_y1,mean_x2,mean_y2";
        const char* q = "xy";
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                out << ",cov_" << q[i % 2] << (i / 2 + 1) << q[j % 2] << (j / 2 + 1);
        out << ",min_eigenvalue,separable\n";
        out << format_number(t) << ',' << format_number(std::exp(-args.gamma_t));
        for (int i = 0; i < 4; ++i)
            out << ',' << format_number(state.mean(i));
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                out << ',' << format_number(state.cov(i, j));
        out << ',' << format_number(report.min_eigenvalue) << ','
            << (report.separable ? 1 : 0) << '\n';
        return;
    }
    const json doc = {{"params",
                       {{"lambda", args.lambda},
                        {"n_th", args.n_th},
                        {"n_s", args.n_s},
                        {"theta", args.theta},
                        {"gamma", args.gamma},
                        {"gamma_t", args.gamma_t}}},
                      {"results",
                       {{"t", json_number(t)},
                        {"exp_gamma_t", std::exp(-args.gamma_t)},
                        {"mean", json_vector(state.mean)},
                        {"cov", json_matrix(state.cov)},
                        {"ppt", json_ppt(report)}}}};
    out << doc.dump(2) << '\n';
}

void cmd_oracle_compare(const OracleCompareArgs& args, OutputFormat format,
                        std::ostream& out)
{
    if (!(args.gamma_t >= 0.0))
        throw std::domain_error("evolution time must be >= 0");
    if (!(args.tolerance > 0.0))
        throw std::domain_error("tolerance must be > 0");
    if (args.cutoff > 35)
        std::cerr << "warning: Fock cutoff " << args.cutoff
                  << " exceeds 35; expect heavy memory use\n";

    const DerivedBath bath =
        derive_bath(BathSpec{args.n_th, args.n_s, args.theta, 1.0});
    const TwoModeGaussianState reference =
        evolve(twb_state(TwinBeamParams(args.lambda)), bath, args.gamma_t);

    OracleConfig config;
    config.dim = args.cutoff;
    config.dt = args.dt;
    config.t_final = args.gamma_t;
    const TruncatedTwb prepared = twb_density(args.lambda, args.cutoff, config.trunc_tol);
    const IntegrationReport integrated = integrate(prepared.state, bath, config);
    const TwoModeGaussianState fock = moments_to_gaussian(integrated.state);
    const double fock_ppt = ppt_min_eigenvalue(integrated.state);

    const double cov_error = (fock.cov - reference.cov).cwiseAbs().maxCoeff();
    const double mean_error = (fock.mean - reference.mean).cwiseAbs().maxCoeff();
    const PptReport gauss_ppt = ppt_test(reference);
    const bool fock_separable = fock_ppt >= -1e-8;
    const bool pass = cov_error <= args.tolerance;

    if (format == OutputFormat::csv) {
        out << "lambda,n_th,n_s,theta,gamma_t,cutoff,dt,max_covariance_error,"
               "max_mean_error,gaussian_min_eigenvalue,gaussian_separable,"
               "fock_ppt_min_eigenvalue,fock_separable,verdicts_agree,"
               "max_edge_population,max_trace_drift,steps,tolerance,pass\n";
        out << format_number(args.lambda) << ',' << format_number(args.n_th) << ','
            << format_number(args.n_s) << ',' << format_number(args.theta) << ','
            << format_number(args.gamma_t) << ',' << args.cutoff << ','
            << format_number(args.dt) << ',' << format_number(cov_error) << ','
            << format_number(mean_error) << ','
            << format_number(gauss_ppt.min_eigenvalue) << ','
            << (gauss_ppt.separable ? 1 : 0) << ',' << format_number(fock_ppt)
            << ',' << (fock_separable ? 1 : 0) << ','
            << (gauss_ppt.separable == fock_separable ? 1 : 0) << ','
            << format_number(integrated.max_edge_population) << ','
            << format_number(integrated.max_trace_drift) << ','
            << integrated.steps << ',' << format_number(args.tolerance) << ','
            << (pass ? 1 : 0) << '\n';
        return;
    }
    const json doc = {
        {"params",
         {{"lambda", args.lambda},
          {"n_th", args.n_th},
          {"n_s", args.n_s},
          {"theta", args.theta},
          {"gamma_t", args.gamma_t},
          {"cutoff", args.cutoff},
          {"dt", args.dt},
          {"tolerance", args.tolerance}}},
        {"results",
         {{"max_covariance_error", cov_error},
          {"max_mean_error", mean_error},
          {"gaussian_ppt",
           {{"min_eigenvalue", gauss_ppt.min_eigenvalue},
            {"separable", gauss_ppt.separable}}},
          {"fock_ppt_min_eigenvalue", fock_ppt},
          {"fock_separable", fock_separable},
          {"verdicts_agree", gauss_ppt.separable == fock_separable},
          {"max_edge_population", integrated.max_edge_population},
          {"max_trace_drift", integrated.max_trace_drift},
          {"max_hermiticity_correction", integrated.max_hermiticity_correction},
          {"truncation_deficit", prepared.norm_deficit},
          {"steps", integrated.steps},
          {"pass", pass}}}};
    out << doc.dump(2) << '\n';
}

} // namespace twinbeam::cli
