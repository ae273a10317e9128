#pragma once
/** \file  cli_commands.hpp
    \brief Command bodies behind the `twinbeam` command-line tool, separated
           from argument parsing so they can be unit-tested against in-memory
           streams. All times are in Gamma*t units unless a gamma factor is
           supplied, in which case reported times are divided by gamma.
*/
#include <iosfwd>
#include <string>
#include <vector>

namespace twinbeam::cli {

enum class OutputFormat { csv, json };

/// Parse an angle given either as plain radians ("0.628") or as a pi
/// fraction ("pi", "-pi", "pi/5", "2*pi/3", "0.5*pi").
/// Throws std::invalid_argument on anything else.
double parse_angle(const std::string& text);

/// Fixed 12-significant-digit formatting ("%.12g"); infinities print as
/// "inf" / "-inf" so CSV and JSON stay parseable.
std::string format_number(double value);

/// Single survival-time query. Closed form when theta = 0, PPT bisection
/// otherwise. Emits one record {t_s, t_0, G, method}.
struct SurvivalArgs {
    double lambda = 0.0;
    double n_th = 0.0;
    double n_s = 0.0;
    double theta = 0.0;
    double gamma = 1.0;   ///< damping rate; reported times are Gamma*t / gamma
};
void cmd_survival(const SurvivalArgs& args, OutputFormat format, std::ostream& out);

/// Sweep of the relative survival-time change G(n_s) for a list of squeeze
/// parameters at fixed thermal occupancy (phase-matched bath, theta = 0).
/// Emits columns lambda,n_th,n_s,t_s,t_0,G, one row per grid point.
struct Fig1Args {
    double n_th = 1e-3;
    std::vector<double> lambdas = {0.1, 0.25, 0.4, 0.55, 0.7, 0.85, 1.0};
    double ns_start = 0.02;
    double ns_stop = 1.0;
    int ns_count = 50;    ///< 0 yields a header-only table
    double gamma = 1.0;
};
void cmd_fig1(const Fig1Args& args, OutputFormat format, std::ostream& out);

/// Characteristic-polynomial profile q_S(x) of the PPT test matrix for a
/// twin-beam state evolved to e^{-Gamma t} = exp_gamma_t: (x, q_S(x))
/// samples plus the four roots. In CSV mode the samples go to `out` and the
/// roots object is returned as a one-line JSON string (the sidecar); in JSON
/// mode everything is emitted to `out` and the return value is empty.
struct CharPolyArgs {
    double lambda = 1.0;
    double n_th = 0.0;
    double n_s = 0.0;
    double theta = 0.0;
    double exp_gamma_t = 0.55;
    double x_min = 0.0;     ///< used when auto_range is false
    double x_max = 0.0;
    int x_count = 201;
    bool auto_range = true; ///< sample [min root - 0.15, max root + 0.15]
};
std::string cmd_charpoly(const CharPolyArgs& args, OutputFormat format, std::ostream& out);

/// Evolve a twin-beam state and dump mean, covariance matrix, and the PPT
/// report at a single time, given as Gamma*t.
struct EvolveArgs {
    double lambda = 0.0;
    double n_th = 0.0;
    double n_s = 0.0;
    double theta = 0.0;
    double gamma_t = 0.0;
    double gamma = 1.0;
};
void cmd_evolve(const EvolveArgs& args, OutputFormat format, std::ostream& out);

/// Compare the truncated-Fock-space Lindblad integration against the exact
/// Gaussian evolution at one parameter point: max absolute covariance
/// discrepancy, both PPT verdicts, pass/fail against `tolerance`.
struct OracleCompareArgs {
    double lambda = 0.5;
    double n_th = 0.0;
    double n_s = 0.0;
    double theta = 0.0;
    double gamma_t = 0.5;
    int cutoff = 25;
    double dt = 0.005;
    double tolerance = 1e-4;
};
void cmd_oracle_compare(const OracleCompareArgs& args, OutputFormat format, std::ostream& out);

} // namespace twinbeam::cli
