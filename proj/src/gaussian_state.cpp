#include "twinbeam/gaussian_state.hpp"

#include <cmath>
#include <stdexcept>

namespace twinbeam {

namespace {

// single-mode symplectic unit J = [[0,1],[-1,0]]
Eigen::Matrix2d mode_j()
{
    Eigen::Matrix2d j;
    j << 0.0, 1.0,
        -1.0, 0.0;
    return j;
}

Eigen::Matrix4d block_diag(const Eigen::Matrix2d& top, const Eigen::Matrix2d& bottom)
{
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m.topLeftCorner<2, 2>() = top;
    m.bottomRightCorner<2, 2>() = bottom;
    return m;
}

} // namespace

Eigen::Matrix4d symplectic_form()
{
    return block_diag(mode_j(), mode_j());
}

Eigen::Matrix4d partial_transpose_form()
{
    return block_diag(mode_j(), -mode_j());
}

TwinBeamParams::TwinBeamParams(double lambda_) : lambda(lambda_)
{
    if (!(lambda >= 0.0))
        throw std::domain_error("twin-beam squeeze parameter must be >= 0");
}

double TwinBeamParams::xi() const
{
    return std::tanh(lambda);
}

TwoModeGaussianState twb_state(const TwinBeamParams& params)
{
    const double c = std::cosh(2.0 * params.lambda) / 4.0;
    const double s = std::sinh(2.0 * params.lambda) / 4.0;
    TwoModeGaussianState state;
    state.cov << c, 0.0, s, 0.0,
                 0.0, c, 0.0, -s,
                 s, 0.0, c, 0.0,
                 0.0, -s, 0.0, c;
    return state;
}

void require_symmetric(const Eigen::Matrix4d& cov)
{
    const double scale = std::max(1.0, cov.cwiseAbs().maxCoeff());
    if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale)
        throw std::invalid_argument("covariance matrix is not symmetric");
}

double physicality_margin(const TwoModeGaussianState& state)
{
    require_symmetric(state.cov);
    // Heisenberg/uncertainty condition: V + (i/4) Omega >= 0
    Eigen::Matrix4cd s = state.cov.cast<std::complex<double>>();
    s += std::complex<double>(0.0, 0.25) * symplectic_form().cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(s, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

bool physicality_check(const TwoModeGaussianState& state, double tolerance)
{
    return physicality_margin(state) >= -tolerance;
}

} // namespace twinbeam
