// Command-line front end: survival-time queries, sweeps behind the G(n_s)
// curves, characteristic-polynomial profiles, covariance dumps, and the
// Fock-oracle comparison harness. Times are in 1/Gamma units unless --gamma
// is given. Exit codes: 0 success, 2 domain error, 3 numerical failure.
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "twinbeam/cli_commands.hpp"
#include "twinbeam/fock_oracle.hpp"

namespace {

using namespace twinbeam;

cli::OutputFormat parse_format(const std::string& text)
{
    return text == "json" ? cli::OutputFormat::json : cli::OutputFormat::csv;
}

void with_output(const std::string& path, const std::function<void(std::ostream&)>& write)
{
    if (path.empty()) {
        write(std::cout);
        return;
    }
    std::ofstream file(path);
    if (!file)
        throw std::runtime_error("cannot open output file '" + path + "'");
    write(file);
}

// time point given either directly (--gt) or as the decay factor (--exp-gt)
double resolve_time(const CLI::Option* gt, double gt_value,
                    const CLI::Option* exp_gt, double exp_gt_value, double fallback)
{
    if (gt->count() > 0 && exp_gt->count() > 0)
        throw std::domain_error("give either --gt or --exp-gt, not both");
    if (gt->count() > 0)
        return gt_value;
    if (exp_gt->count() > 0) {
        if (!(exp_gt_value > 0.0) || !(exp_gt_value <= 1.0))
            throw std::domain_error("e^{-Gamma t} must lie in (0, 1]");
        return -std::log(exp_gt_value);
    }
    return fallback;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{
        "Entanglement survival of twin-beam states in squeezed-thermal "
        "Gaussian channels.\nTimes are reported in 1/Gamma units; pass "
        "--gamma to rescale to physical time.\nAngles accept radians or pi "
        "fractions such as 'pi/5'."};
    app.require_subcommand(1);

    std::string out_path;
    std::string format_text = "csv";
    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_path, "write output to this file instead of stdout");
        cmd->add_option("--format", format_text, "output format")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
    };

    // ---- survival ------------------------------------------------------
    cli::SurvivalArgs sargs;
    std::string stheta = "0";
    auto* survival = app.add_subcommand(
        "survival", "survival time t_s, thermal reference t_0, and relative "
                    "change G for one parameter point");
    survival->add_option("--lambda", sargs.lambda, "twin-beam squeeze parameter")
        ->required();
    survival->add_option("--nth", sargs.n_th, "bath thermal photon number")
        ->capture_default_str();
    survival->add_option("--ns", sargs.n_s, "bath squeezing photon number")
        ->capture_default_str();
    survival->add_option("--theta", stheta, "bath squeezing phase (radians or pi fraction)")
        ->capture_default_str();
    survival->add_option("--gamma", sargs.gamma, "damping rate used to rescale times")
        ->capture_default_str();
    add_common(survival);
    survival->callback([&] {
        sargs.theta = cli::parse_angle(stheta);
        with_output(out_path, [&](std::ostream& out) {
            cli::cmd_survival(sargs, parse_format(format_text), out);
        });
    });

    // ---- fig1 ----------------------------------------------------------
    cli::Fig1Args fargs;
    auto* fig1 = app.add_subcommand(
        "fig1", "sweep G(n_s) for a list of squeeze parameters at fixed n_th "
                "(phase-matched bath)");
    fig1->add_option("--nth", fargs.n_th, "bath thermal photon number")
        ->capture_default_str();
    fig1->add_option("--lambda", fargs.lambdas,
                     "squeeze parameters (default 0.1 ... 1.0 step 0.15)")
        ->expected(-1);
    fig1->add_option("--ns-start", fargs.ns_start, "first n_s value")
        ->capture_default_str();
    fig1->add_option("--ns-stop", fargs.ns_stop, "last n_s value")
        ->capture_default_str();
    fig1->add_option("--ns-count", fargs.ns_count, "number of n_s samples (0 = header only)")
        ->capture_default_str();
    fig1->add_option("--gamma", fargs.gamma, "damping rate used to rescale times")
        ->capture_default_str();
    add_common(fig1);
    fig1->callback([&] {
        with_output(out_path, [&](std::ostream& out) {
            cli::cmd_fig1(fargs, parse_format(format_text), out);
        });
    });

    // ---- charpoly ------------------------------------------------------
    cli::CharPolyArgs cargs;
    std::string ctheta = "0";
    auto* charpoly = app.add_subcommand(
        "charpoly", "characteristic polynomial q_S(x) of the partial-transpose "
                    "test matrix at e^{-Gamma t} = exp-gt, with its four roots");
    charpoly->add_option("--lambda", cargs.lambda, "twin-beam squeeze parameter")
        ->capture_default_str();
    charpoly->add_option("--nth", cargs.n_th, "bath thermal photon number")
        ->capture_default_str();
    charpoly->add_option("--ns", cargs.n_s, "bath squeezing photon number")
        ->capture_default_str();
    charpoly->add_option("--theta", ctheta, "bath squeezing phase (radians or pi fraction)")
        ->capture_default_str();
    charpoly->add_option("--exp-gt", cargs.exp_gamma_t, "decay factor e^{-Gamma t} in (0, 1]")
        ->capture_default_str();
    auto* xmin_opt = charpoly->add_option("--x-min", cargs.x_min,
                                          "sample range start (default: auto from roots)");
    auto* xmax_opt = charpoly->add_option("--x-max", cargs.x_max,
                                          "sample range end (default: auto from roots)");
    charpoly->add_option("--x-count", cargs.x_count, "number of samples")
        ->capture_default_str();
    add_common(charpoly);
    charpoly->callback([&] {
        cargs.theta = cli::parse_angle(ctheta);
        cargs.auto_range = xmin_opt->count() == 0 && xmax_opt->count() == 0;
        const cli::OutputFormat format = parse_format(format_text);
        if (out_path.empty()) {
            const std::string sidecar = cli::cmd_charpoly(cargs, format, std::cout);
            if (!sidecar.empty())
                std::cout << '\n' << sidecar << '\n';   // roots after a blank line
            return;
        }
        std::ofstream file(out_path);
        if (!file)
            throw std::runtime_error("cannot open output file '" + out_path + "'");
        const std::string sidecar = cli::cmd_charpoly(cargs, format, file);
        if (!sidecar.empty()) {
            std::ofstream roots(out_path + ".roots.json");
            if (!roots)
                throw std::runtime_error("cannot open output file '" + out_path +
                                         ".roots.json'");
            roots << sidecar << '\n';
        }
    });

    // ---- evolve --------------------------------------------------------
    cli::EvolveArgs eargs;
    std::string etheta = "0";
    double e_gt = 0.0, e_exp_gt = 1.0;
    auto* evolve_cmd = app.add_subcommand(
        "evolve", "dump mean, covariance matrix, and PPT report of the evolved "
                  "twin-beam state at one time");
    evolve_cmd->add_option("--lambda", eargs.lambda, "twin-beam squeeze parameter")
        ->required();
    evolve_cmd->add_option("--nth", eargs.n_th, "bath thermal photon number")
        ->capture_default_str();
    evolve_cmd->add_option("--ns", eargs.n_s, "bath squeezing photon number")
        ->capture_default_str();
    evolve_cmd->add_option("--theta", etheta, "bath squeezing phase (radians or pi fraction)")
        ->capture_default_str();
    auto* e_gt_opt = evolve_cmd->add_option("--gt", e_gt, "evolution time as Gamma*t");
    auto* e_exp_opt = evolve_cmd->add_option("--exp-gt", e_exp_gt,
                                             "evolution time as e^{-Gamma t} in (0, 1]");
    evolve_cmd->add_option("--gamma", eargs.gamma, "damping rate used to rescale times")
        ->capture_default_str();
    add_common(evolve_cmd);
    evolve_cmd->callback([&] {
        eargs.theta = cli::parse_angle(etheta);
        eargs.gamma_t = resolve_time(e_gt_opt, e_gt, e_exp_opt, e_exp_gt, 0.0);
        with_output(out_path, [&](std::ostream& out) {
            cli::cmd_evolve(eargs, parse_format(format_text), out);
        });
    });

    // ---- oracle-compare -------------------------------------------------
    cli::OracleCompareArgs oargs;
    std::string otheta = "0";
    double o_gt = 0.5, o_exp_gt = 1.0;
    auto* oracle = app.add_subcommand(
        "oracle-compare", "integrate the truncated-Fock-space master equation "
                          "and compare against the exact covariance evolution");
    oracle->add_option("--lambda", oargs.lambda, "twin-beam squeeze parameter")
        ->capture_default_str();
    oracle->add_option("--nth", oargs.n_th, "bath thermal photon number")
        ->capture_default_str();
    oracle->add_option("--ns", oargs.n_s, "bath squeezing photon number")
        ->capture_default_str();
    oracle->add_option("--theta", otheta, "bath squeezing phase (radians or pi fraction)")
        ->capture_default_str();
    auto* o_gt_opt = oracle->add_option("--gt", o_gt, "integration horizon as Gamma*t")
                         ->capture_default_str();
    auto* o_exp_opt = oracle->add_option("--exp-gt", o_exp_gt,
                                         "integration horizon as e^{-Gamma t} in (0, 1]");
    oracle->add_option("--cutoff", oargs.cutoff, "per-mode Fock cutoff (warns above 35)")
        ->capture_default_str();
    oracle->add_option("--dt", oargs.dt, "RK4 step in Gamma*t units")
        ->capture_default_str();
    oracle->add_option("--tolerance", oargs.tolerance,
                       "pass threshold on the covariance discrepancy")
        ->capture_default_str();
    add_common(oracle);
    oracle->callback([&] {
        oargs.theta = cli::parse_angle(otheta);
        oargs.gamma_t = resolve_time(o_gt_opt, o_gt, o_exp_opt, o_exp_gt, 0.5);
        with_output(out_path, [&](std::ostream& out) {
            cli::cmd_oracle_compare(oargs, parse_format(format_text), out);
        });
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const truncation_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
