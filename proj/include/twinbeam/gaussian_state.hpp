#pragma once
/** \file  gaussian_state.hpp
    \brief Two-mode Gaussian states of the radiation field: twin-beam
           preparation, covariance conventions, physicality checks.

    Conventions used throughout the library:
    quadratures x = (a + a^dag)/2, y = (a - a^dag)/(2i), so the vacuum has
    Var(x) = Var(y) = 1/4; phase-space vector ordering is (x1, y1, x2, y2).
*/
#include <Eigen/Dense>

namespace twinbeam {

/// vacuum quadrature variance in our x=(a+a^dag)/2 convention
inline constexpr double kVacuumVariance = 0.25;

/// symplectic form Omega = diag(J, J), J = [[0,1],[-1,0]], in (x1,y1,x2,y2) order
Eigen::Matrix4d symplectic_form();

/// partial-transpose (mode-2 momentum flip) form Omega~ = diag(J, -J)
Eigen::Matrix4d partial_transpose_form();

/// Twin-beam (two-mode squeezed vacuum) preparation parameters.
struct TwinBeamParams {
    double lambda = 0.0;    ///< squeeze parameter, >= 0

    TwinBeamParams() = default;
    explicit TwinBeamParams(double lambda_);   ///< throws std::domain_error if lambda < 0

    /// Schmidt-basis amplitude ratio xi = tanh(lambda) in {sum xi^n |n,n>}
    double xi() const;
};

/// Two-mode Gaussian state: first moments and 4x4 covariance matrix.
/// Default-constructed state is the two-mode vacuum.
struct TwoModeGaussianState {
    Eigen::Vector4d mean = Eigen::Vector4d::Zero();
    Eigen::Matrix4d cov  = kVacuumVariance * Eigen::Matrix4d::Identity();
};

/// Twin-beam state: zero mean, diagonal blocks cosh(2 lambda)/4 * I,
/// off-diagonal block sinh(2 lambda)/4 * diag(1, -1). det(cov) = 1/256 always.
TwoModeGaussianState twb_state(const TwinBeamParams& params);

/// Throws std::invalid_argument unless cov is symmetric (to 1e-9, relative).
void require_symmetric(const Eigen::Matrix4d& cov);

/// Minimum eigenvalue of cov + (i/4) Omega; >= 0 (up to tolerance) iff the
/// covariance matrix describes a physical state (Heisenberg uncertainty).
/// Throws std::invalid_argument if cov is not symmetric.
double physicality_margin(const TwoModeGaussianState& state);

/// True iff physicality_margin(state) >= -tolerance.
bool physicality_check(const TwoModeGaussianState& state, double tolerance = 1e-10);

} // namespace twinbeam
