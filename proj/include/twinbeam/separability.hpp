#pragma once
/** \file  separability.hpp
    \brief Positive-partial-transpose separability test for two-mode Gaussian
           states, entanglement survival times (closed form and numeric), and
           characteristic-polynomial diagnostics of the PPT test matrix.
*/
#include <array>
#include <complex>

#include "twinbeam/channel.hpp"
#include "twinbeam/gaussian_state.hpp"

namespace twinbeam {

/// Result of the PPT test on a two-mode Gaussian state.
struct PptReport {
    Eigen::Matrix4cd test_matrix;        ///< S = cov + (i/4) Omega~, Omega~ = diag(J, -J)
    Eigen::Vector4d eigenvalues;         ///< eigenvalues of S (real, ascending)
    double min_eigenvalue = 0.0;
    std::array<double, 5> char_poly{};   ///< monic q_S(x) = det(S - xI), highest degree first
    bool separable = false;              ///< min_eigenvalue >= -tolerance
};

/// PPT criterion: the state is separable iff S = cov + (i/4) Omega~ >= 0,
/// where Omega~ is the mode-2 partially transposed symplectic form.
/// char_poly is computed by Faddeev-LeVerrier; its coefficients are real.
/// Throws std::invalid_argument on asymmetric cov.
PptReport ppt_test(const TwoModeGaussianState& state, double tolerance = 1e-10);

/// Roots of a monic quartic (leading coefficient coeffs[0] must be nonzero),
/// via the companion-matrix eigenproblem; sorted by real part, ascending.
std::array<std::complex<double>, 4> char_poly_roots(const std::array<double, 5>& coeffs);

/// Verdict of the rotated-quadrature separability conditions
///   Sigma1^2 Sigma4^2 >= 1/16   and   Sigma2^2 Sigma3^2 >= 1/16.
/// Equivalent to the PPT criterion for twin-beam states under real-M
/// channels (the first product never binds for lambda >= 0).
struct SigmaVerdict {
    bool separable = false;
    double margin14 = 0.0;   ///< Sigma1^2 Sigma4^2 - 1/16
    double margin23 = 0.0;   ///< Sigma2^2 Sigma3^2 - 1/16
};

/// Evaluate the two product conditions on variances {S1^2, S2^2, S3^2, S4^2}
/// as produced by sigma_squared().
SigmaVerdict sigma_conditions(const std::array<double, 4>& sigma2);

/// How a survival time was obtained.
enum class SurvivalMethod { closed_form, bisection };

/// Entanglement survival time of a twin-beam state in a squeezed-thermal
/// channel, in Gamma*t units. t_s may be +inf (entanglement never lost).
struct SurvivalResult {
    double t_s = 0.0;               ///< survival time of the squeezed-bath channel
    double t_0 = 0.0;               ///< thermal-bath reference (n_s = 0, same n_th)
    double relative_change = 0.0;   ///< G = (t_s - t_0)/t_0; 0 if t_s == t_0, -1 if t_0 = inf > t_s
    SurvivalMethod method = SurvivalMethod::closed_form;
};

/// Closed-form survival time for a phase-matched bath (theta = 0).
/// With h = 1+2 n_th, g = 1+2 n_s, s = e^{-2 lambda}:
///   n_th > 0:  t_s = ln z,  z = [h(h-gs) + sqrt((1-hgs)^2 + (h^2-1)(1-s^2))]/(h^2-1)
///   n_th = 0:  t_s finite iff gs > 1, then t_s = -ln[2(1-gs)/(s^2-2gs+1)];
///              otherwise +inf (never separates).
/// The thermal reference is t_0 = ln[(h-s)/(h-1)] (+inf when n_th = 0).
/// lambda = 0 yields t_s = t_0 = 0; lambda < 0 throws std::domain_error.
SurvivalResult survival_time_closed(double lambda, double n_th, double n_s);

/// Survival time by bisection on the PPT minimum eigenvalue along the exact
/// covariance flow; handles arbitrary squeezing phase theta. The bracket
/// upper bound starts at Gamma*t = 1 and doubles up to t_max (default 100);
/// if no sign change is found, t_s = +inf. t_0 is the closed-form thermal
/// reference. Same lambda conventions as the closed form (0 -> all zero,
/// negative -> std::domain_error). Result is in Gamma*t units regardless of
/// spec.damping_rate.
SurvivalResult survival_time_numeric(double lambda, const BathSpec& spec,
                                     double t_max = 100.0);

/// PPT report for a twin-beam state evolved to e^{-Gamma t} = exp_gamma_t,
/// convenience wrapper used by the characteristic-polynomial diagnostics.
/// Requires 0 < exp_gamma_t <= 1.
PptReport char_poly_profile(double lambda, const BathSpec& spec, double exp_gamma_t);

} // namespace twinbeam
