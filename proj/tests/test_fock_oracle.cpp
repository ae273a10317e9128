#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "twinbeam/channel.hpp"
#include "twinbeam/fock_oracle.hpp"
#include "twinbeam/gaussian_state.hpp"

using namespace twinbeam;
using Catch::Approx;

namespace {

double matrix_inf_norm(const Eigen::MatrixXcd& m)
{
    return m.cwiseAbs().maxCoeff();
}

} // namespace

TEST_CASE("truncated twin-beam density matrix", "[fock]")
{
    SECTION("lambda = 0 is the two-mode vacuum")
    {
        const TruncatedTwb twb = twb_density(0.0, 6);
        CHECK(twb.norm_deficit == 0.0);
        CHECK(twb.renorm_factor == 1.0);
        CHECK(std::abs(twb.state.rho(0, 0) - 1.0) < 1e-15);
        CHECK(matrix_inf_norm(twb.state.rho.bottomRightCorner(35, 35)) < 1e-15);
    }
    SECTION("unit trace after renormalization")
    {
        const TruncatedTwb twb = twb_density(0.8, 20);
        CHECK(std::abs(twb.state.rho.trace() - 1.0) < 1e-14);
        const double xi = std::tanh(0.8);
        CHECK(twb.norm_deficit == Approx(std::pow(xi, 40)).epsilon(1e-12));
    }
    SECTION("entries follow the double-geometric profile")
    {
        const int d = 10;
        const TruncatedTwb twb = twb_density(0.5, d);
        const double xi = std::tanh(0.5);
        const double weight = (1.0 - xi * xi) * twb.renorm_factor;
        // <n n| rho |p p> = weight * xi^{n+p}; everything else vanishes
        CHECK(std::abs(twb.state.rho(0, 0) - weight) < 1e-15);
        CHECK(std::abs(twb.state.rho(2 * d + 2, 3 * d + 3) -
                       weight * std::pow(xi, 5)) < 1e-15);
        CHECK(std::abs(twb.state.rho(1 * d + 0, 0 * d + 1)) < 1e-15);
        CHECK(std::abs(twb.state.rho(1 * d + 1, 2 * d + 1)) < 1e-15);
    }
    SECTION("refuses a cutoff too small for the requested squeezing")
    {
        CHECK_THROWS_AS(twb_density(2.0, 5), truncation_error);
        CHECK_THROWS_AS(twb_density(0.5, 1), std::domain_error);
        CHECK_THROWS_AS(twb_density(-0.1, 10), std::domain_error);
    }
}

TEST_CASE("generator of the dissipative evolution", "[fock]")
{
    const TruncatedTwb twb = twb_density(0.4, 8);

    SECTION("trace-free and Hermiticity-preserving")
    {
        const DerivedBath bath = derive_bath({0.3, 0.05, 0.7, 1.0});
        const Eigen::MatrixXcd rhs = lindblad_rhs(twb.state, bath);
        CHECK(std::abs(rhs.trace()) < 1e-13);
        CHECK(matrix_inf_norm(rhs - rhs.adjoint()) < 1e-13);
    }
    SECTION("scales linearly with the damping rate")
    {
        const Eigen::MatrixXcd slow =
            lindblad_rhs(twb.state, derive_bath({0.3, 0.05, 0.7, 1.0}));
        const Eigen::MatrixXcd fast =
            lindblad_rhs(twb.state, derive_bath({0.3, 0.05, 0.7, 2.0}));
        CHECK(matrix_inf_norm(fast - 2.0 * slow) < 1e-14);
    }
    SECTION("vacuum is stationary under pure loss")
    {
        const TruncatedTwb vac = twb_density(0.0, 8);
        const Eigen::MatrixXcd rhs =
            lindblad_rhs(vac.state, derive_bath({0.0, 0.0, 0.0, 1.0}));
        CHECK(matrix_inf_norm(rhs) < 1e-15);
    }
}

TEST_CASE("moments of exact Fock-space states", "[fock]")
{
    SECTION("fresh truncated twin-beam reproduces the analytic covariance")
    {
        const double lambda = 0.8;
        const TruncatedTwb twb = twb_density(lambda, 22);
        const TwoModeGaussianState g = moments_to_gaussian(twb.state);
        const TwoModeGaussianState exact = twb_state(TwinBeamParams(lambda));
        CHECK(g.mean.cwiseAbs().maxCoeff() < 1e-12);
        CHECK((g.cov - exact.cov).cwiseAbs().maxCoeff() < 1e-5);
    }
    SECTION("hand-built superposition state")
    {
        // psi = (|00> + |10>)/sqrt(2): displaced along x1 with extra y1 spread
        const int d = 4;
        Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(d * d);
        psi(0) = 1.0 / std::sqrt(2.0);
        psi(1 * d + 0) = 1.0 / std::sqrt(2.0);
        const TruncatedState state{d, psi * psi.adjoint()};
        const TwoModeGaussianState g = moments_to_gaussian(state);
        CHECK(g.mean(0) == Approx(0.5).margin(1e-14));
        CHECK(g.mean.tail(3).cwiseAbs().maxCoeff() < 1e-14);
        CHECK(g.cov(0, 0) == Approx(0.25).margin(1e-14));
        CHECK(g.cov(1, 1) == Approx(0.5).margin(1e-14));
        CHECK(g.cov(0, 1) == Approx(0.0).margin(1e-14));
        CHECK(g.cov(2, 2) == Approx(0.25).margin(1e-14));
        CHECK(g.cov(3, 3) == Approx(0.25).margin(1e-14));
        CHECK(g.cov.topRightCorner(2, 2).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("partial transpose in the truncated space", "[fock]")
{
    SECTION("pure twin-beam has the known most-negative eigenvalue")
    {
        const int d = 14;
        const double lambda = 0.5;
        const TruncatedTwb twb = twb_density(lambda, d);
        const double xi = std::tanh(lambda);
        // Schmidt form: min eigenvalue of the partial transpose is -c0*c1
        const double expected =
            -(1.0 - xi * xi) * xi / (1.0 - std::pow(xi, 2 * d));
        CHECK(ppt_min_eigenvalue(twb.state) == Approx(expected).margin(1e-10));
    }
    SECTION("product of thermal states stays positive")
    {
        const int d = 8;
        const double q = 0.3 / 1.3; // mean occupation 0.3
        Eigen::VectorXd pops(d);
        for (int n = 0; n < d; ++n)
            pops(n) = std::pow(q, n);
        pops /= pops.sum();
        Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d * d, d * d);
        for (int n1 = 0; n1 < d; ++n1)
            for (int n2 = 0; n2 < d; ++n2)
                rho(n1 * d + n2, n1 * d + n2) = pops(n1) * pops(n2);
        CHECK(ppt_min_eigenvalue(TruncatedState{d, rho}) >= -1e-12);
    }
}

TEST_CASE("fixed-step integration diagnostics", "[fock]")
{
    SECTION("zero final time returns the initial state")
    {
        const TruncatedTwb twb = twb_density(0.3, 8);
        OracleConfig config;
        config.dim = 8;
        config.dt = 0.01;
        config.t_final = 0.0;
        const IntegrationReport report =
            integrate(twb.state, derive_bath({0.5, 0.0, 0.0, 1.0}), config);
        CHECK(report.steps == 0);
        CHECK(matrix_inf_norm(report.state.rho - twb.state.rho) == 0.0);
    }
    SECTION("step count covers the interval with a rounded-up count")
    {
        const TruncatedTwb twb = twb_density(0.3, 8);
        OracleConfig config;
        config.dim = 8;
        config.dt = 0.03;
        config.t_final = 0.1;
        const IntegrationReport report =
            integrate(twb.state, derive_bath({0.2, 0.0, 0.0, 1.0}), config);
        CHECK(report.steps == 4);
    }
    SECTION("invalid configuration")
    {
        const TruncatedTwb twb = twb_density(0.3, 8);
        OracleConfig config;
        config.dim = 8;
        config.dt = 0.0;
        CHECK_THROWS_AS(integrate(twb.state, derive_bath({0.2, 0.0, 0.0, 1.0}), config),
                        std::domain_error);
        config.dt = 0.01;
        config.dim = 9;
        CHECK_THROWS_AS(integrate(twb.state, derive_bath({0.2, 0.0, 0.0, 1.0}), config),
                        std::invalid_argument);
    }
    SECTION("population leaking into the edge layer aborts the run")
    {
        // a cutoff of 10 holds the initial state but not a heated one
        const TruncatedTwb twb = twb_density(0.5, 10);
        OracleConfig config;
        config.dim = 10;
        config.dt = 0.01;
        config.t_final = 1.0;
        CHECK_THROWS_AS(integrate(twb.state, derive_bath({1.0, 0.0, 0.0, 1.0}), config),
                        truncation_error);
    }
}

TEST_CASE("integration agrees with the closed-form channel", "[fock][slow]")
{
    // complex bath squeezing, where no shortcut formula is involved
    const double pi = 3.14159265358979323846;
    const double lambda = 0.6;
    const BathSpec spec{0.5, 0.07, 2.0 * pi / 5.0, 1.0};
    const double t = 0.4;

    const TruncatedTwb twb = twb_density(lambda, 16);
    OracleConfig config;
    config.dim = 16;
    config.dt = 0.005;
    config.t_final = t;
    const IntegrationReport report = integrate(twb.state, derive_bath(spec), config);

    CHECK(report.max_trace_drift < 1e-12);
    CHECK(report.max_hermiticity_correction < 1e-12);
    CHECK(report.max_edge_population < 1e-6);

    const TwoModeGaussianState numeric = moments_to_gaussian(report.state);
    const TwoModeGaussianState exact =
        evolve(twb_state(TwinBeamParams(lambda)), derive_bath(spec), t);
    CHECK(numeric.mean.cwiseAbs().maxCoeff() < 1e-8);
    CHECK((numeric.cov - exact.cov).cwiseAbs().maxCoeff() < 1e-5);
}
