#pragma once
/** \file  channel.hpp
    \brief Local squeezed-thermal Gaussian channels acting symmetrically on
           both modes: bath parameter derivation, diffusion matrix, exact
           covariance-matrix evolution, and the rotated-quadrature variances
           that drive the separability conditions.
*/
#include <array>
#include <complex>

#include "twinbeam/gaussian_state.hpp"

namespace twinbeam {

/// User-facing bath specification (identical for both modes).
struct BathSpec {
    double n_th = 0.0;          ///< thermal photon number of the underlying reservoir, >= 0
    double n_s = 0.0;           ///< squeezing photon number of the reservoir, >= 0
    double theta = 0.0;         ///< squeezing phase (radians)
    double damping_rate = 1.0;  ///< Gamma > 0
};

/// Bath constants entering the master/Fokker-Planck equations.
struct DerivedBath {
    double photon_number = 0.0;            ///< N = n_th + n_s (1 + 2 n_th)
    std::complex<double> squeezing{0, 0};  ///< M = |M| e^{i theta}, |M| = (1+2n_th) sqrt(n_s (1+n_s))
    double gamma = 1.0;                    ///< drift-normalization constant 1/(2N+1)
    double damping_rate = 1.0;             ///< Gamma, carried through for time evolution
};

/// Derive (N, M, gamma) from (n_th, n_s, theta). The resulting bath always
/// satisfies |M|^2 <= N(N+1), i.e. it is a physical squeezed-thermal
/// reservoir. Throws std::domain_error on negative photon numbers or
/// non-positive damping rate.
DerivedBath derive_bath(const BathSpec& spec);

/// Fokker-Planck diffusion matrix in Gamma*t units: block-diagonal with
/// per-mode block (1/2) [[1/2 + g Re M, g Im M], [g Im M, 1/2 - g Re M]],
/// g = gamma. Positive semidefinite for every bath from derive_bath().
Eigen::Matrix4d diffusion_matrix(const DerivedBath& bath);

/// Stationary state of the channel: zero mean, covariance D/gamma, i.e.
/// per-mode block [[(2N+1)/4 + Re M/2, Im M/2], [Im M/2, (2N+1)/4 - Re M/2]].
TwoModeGaussianState stationary_state(const DerivedBath& bath);

/// Exact evolution for time t >= 0 (Ornstein-Uhlenbeck moments):
///   cov(t)  = e^{-Gamma t} cov(0) + (1 - e^{-Gamma t}) cov_inf,
///   mean(t) = e^{-Gamma t / 2} mean(0).
/// Forms a semigroup: evolve(evolve(s, t1), t2) == evolve(s, t1 + t2).
/// Throws std::domain_error if t < 0, std::invalid_argument on asymmetric cov.
TwoModeGaussianState evolve(const TwoModeGaussianState& state,
                            const DerivedBath& bath, double t);

/// Variances {Sigma1^2, Sigma2^2, Sigma3^2, Sigma4^2} of the rotated
/// quadratures (x1+x2)/sqrt2, (y1+y2)/sqrt2, (x1-x2)/sqrt2, (y1-y2)/sqrt2
/// for a twin-beam state evolved for Gamma*t = -ln(w):
///   Sigma1^2 = e^{+2L}/4 w + (1+2N+2M)/4 (1-w),
///   Sigma2^2 = e^{-2L}/4 w + (1+2N-2M)/4 (1-w),
///   Sigma3^2 = e^{-2L}/4 w + (1+2N+2M)/4 (1-w),
///   Sigma4^2 = e^{+2L}/4 w + (1+2N-2M)/4 (1-w),     L = lambda.
/// Valid for real M only; throws std::invalid_argument for complex M
/// (use evolve() + ppt_test() on the full covariance matrix instead).
std::array<double, 4> sigma_squared(double lambda, const DerivedBath& bath, double t);

} // namespace twinbeam
