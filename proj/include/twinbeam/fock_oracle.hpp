#pragma once
/** \file  fock_oracle.hpp
    \brief Brute-force cross-check of the Gaussian covariance evolution:
           the same master equation integrated as a Lindblad equation on a
           truncated two-mode Fock space (cutoff d per mode), RK4 fixed step.

    Basis ordering is mode-major: |n1, n2> -> index n1*d + n2, so the density
    matrix is d^2 x d^2. All integration times are in Gamma*t units.
*/
#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

#include "twinbeam/channel.hpp"
#include "twinbeam/gaussian_state.hpp"

namespace twinbeam {

/// Raised when the Fock cutoff is too small for the requested state or when
/// population leaks into the truncation boundary during integration.
struct truncation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Two-mode state truncated to n1, n2 < dim.
struct TruncatedState {
    int dim = 0;             ///< per-mode cutoff d
    Eigen::MatrixXcd rho;    ///< d^2 x d^2 density matrix, index n1*dim + n2
};

/// Fixed-step RK4 integration parameters (times in Gamma*t units).
struct OracleConfig {
    int dim = 25;              ///< per-mode Fock cutoff
    double dt = 0.005;         ///< RK4 step
    double t_final = 1.0;      ///< integration horizon
    double trunc_tol = 1e-6;   ///< admissible truncation-boundary population
};

/// Truncated twin-beam preparation.
struct TruncatedTwb {
    TruncatedState state;
    double norm_deficit = 0.0;    ///< discarded weight: xi^{2 dim}, xi = tanh(lambda)
    double renorm_factor = 1.0;   ///< 1 / (1 - norm_deficit), applied to keep tr rho = 1
};

/// Renormalized twin-beam density matrix sum_{n,m < d} c_n c_m |n,n><m,m|.
/// Throws truncation_error (naming the minimal admissible cutoff) if the
/// discarded weight xi^{2 dim} exceeds trunc_tol; std::domain_error if
/// lambda < 0 or dim < 2.
TruncatedTwb twb_density(double lambda, int dim, double trunc_tol = 1e-6);

/// Right-hand side of the two-mode squeezed-thermal master equation in
/// physical time (multiply of Gamma included):
///   d(rho)/dt = Gamma (1+N) (L[a1] + L[a2]) rho + Gamma N (L[a1^dag] + L[a2^dag]) rho
///             - Gamma M (S[a1^dag] + S[a2^dag]) rho - Gamma M* (S[a1] + S[a2]) rho
/// with L[O] r = O r O^dag - {O^dag O, r}/2 and S[O] r = O r O - {O O, r}/2.
/// The truncated generator preserves tr rho exactly.
Eigen::MatrixXcd lindblad_rhs(const TruncatedState& state, const DerivedBath& bath);

/// Integration diagnostics alongside the final state.
struct IntegrationReport {
    TruncatedState state;
    int steps = 0;
    double max_edge_population = 0.0;        ///< max over steps of the population with n1 = d-1 or n2 = d-1
    double max_trace_drift = 0.0;            ///< max |tr rho - 1| observed
    double max_hermiticity_correction = 0.0; ///< max ||rho - rho^dag||_inf removed by re-hermitization
};

/// Classic RK4 with fixed step config.dt up to config.t_final (Gamma*t units;
/// the step count is n = ceil(t_final/dt) with dt adjusted to land exactly).
/// Re-hermitizes rho <- (rho + rho^dag)/2 after every step. Throws
/// truncation_error if the edge-layer population ever exceeds config.trunc_tol.
IntegrationReport integrate(const TruncatedState& initial, const DerivedBath& bath,
                            const OracleConfig& config);

/// First and second quadrature moments of a truncated two-mode state,
/// assembled into mean vector and covariance matrix (same conventions as the
/// Gaussian side: x = (a + a^dag)/2, ordering (x1, y1, x2, y2)).
TwoModeGaussianState moments_to_gaussian(const TruncatedState& state);

/// Minimum eigenvalue of the partial transpose of rho with respect to mode 2
/// (negative iff the truncated state is NPT-entangled).
double ppt_min_eigenvalue(const TruncatedState& state);

} // namespace twinbeam
