#include "twinbeam/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace twinbeam {

DerivedBath derive_bath(const BathSpec& spec)
{
    if (!(spec.n_th >= 0.0))
        throw std::domain_error("thermal photon number n_th must be >= 0");
    if (!(spec.n_s >= 0.0))
        throw std::domain_error("squeezing photon number n_s must be >= 0");
    if (!(spec.damping_rate > 0.0))
        throw std::domain_error("damping rate must be > 0");

    DerivedBath bath;
    bath.photon_number = spec.n_th + spec.n_s * (1.0 + 2.0 * spec.n_th);
    const double mod_m =
        (1.0 + 2.0 * spec.n_th) * std::sqrt(spec.n_s * (1.0 + spec.n_s));
    bath.squeezing = std::polar(mod_m, spec.theta);
    // |M|^2 <= N(N+1) holds identically for this parametrization:
    // (2N+1)^2 - 4|M|^2 = (1+2n_th)^2 >= 1, i.e. the bath is always physical.
    bath.gamma = 1.0 / (2.0 * bath.photon_number + 1.0);
    bath.damping_rate = spec.damping_rate;
    return bath;
}

Eigen::Matrix4d diffusion_matrix(const DerivedBath& bath)
{
    const double re = bath.gamma * bath.squeezing.real();
    const double im = bath.gamma * bath.squeezing.imag();
    Eigen::Matrix2d block;
    block << 0.5 + re, im,
             im, 0.5 - re;
    block *= 0.5;
    Eigen::Matrix4d d = Eigen::Matrix4d::Zero();
    d.topLeftCorner<2, 2>() = block;
    d.bottomRightCorner<2, 2>() = block;
    return d;
}

TwoModeGaussianState stationary_state(const DerivedBath& bath)
{
    // V_inf = D / gamma, diffusion balancing the uniform drift
    TwoModeGaussianState state;
    state.cov = diffusion_matrix(bath) / bath.gamma;
    return state;
}

TwoModeGaussianState evolve(const TwoModeGaussianState& state,
                            const DerivedBath& bath, double t)
{
    if (!(t >= 0.0))
        throw std::domain_error("evolution time must be >= 0");
    require_symmetric(state.cov);

    // Ornstein-Uhlenbeck moments: uniform drift -Gamma/2, diffusion D
    const double w = std::exp(-bath.damping_rate * t);
    TwoModeGaussianState out;
    out.cov = w * state.cov + (1.0 - w) * (diffusion_matrix(bath) / bath.gamma);
    out.mean = std::exp(-0.5 * bath.damping_rate * t) * state.mean;
    return out;
}

std::array<double, 4> sigma_squared(double lambda, const DerivedBath& bath, double t)
{
    if (!(lambda >= 0.0))
        throw std::domain_error("twin-beam squeeze parameter must be >= 0");
    if (!(t >= 0.0))
        throw std::domain_error("evolution time must be >= 0");
    const double scale = 1.0 + std::abs(bath.squeezing);
    if (std::abs(bath.squeezing.imag()) > 1e-14 * scale)
        throw std::invalid_argument(
            "sigma_squared requires a phase-matched bath (real M); "
            "use evolve() and ppt_test() for theta != 0");

    const double m = bath.squeezing.real();
    const double w = std::exp(-bath.damping_rate * t);
    const double splus = std::exp(2.0 * lambda) / 4.0;   // anti-squeezed TWB variance
    const double sminus = std::exp(-2.0 * lambda) / 4.0; // squeezed TWB variance
    const double n2p1 = 2.0 * bath.photon_number + 1.0;
    const double dplus = (n2p1 + 2.0 * m) / 4.0 * (1.0 - w);
    const double dminus = (n2p1 - 2.0 * m) / 4.0 * (1.0 - w);
    return {splus * w + dplus,    // Var (x1+x2)/sqrt2
            sminus * w + dminus,  // Var (y1+y2)/sqrt2
            sminus * w + dplus,   // Var (x1-x2)/sqrt2
            splus * w + dminus};  // Var (y1-y2)/sqrt2
}

} // namespace twinbeam
