#include "twinbeam/fock_oracle.hpp"

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Sparse>

namespace twinbeam {

namespace {

using SparseCd = Eigen::SparseMatrix<std::complex<double>>;
using Cd = std::complex<double>;

// Per-cutoff operator set for the two-mode Lindblad right-hand side.
// Mode-major basis: |n1, n2> -> n1*d + n2.
struct FockOps {
    int d = 0;
    SparseCd a1, a2;         // annihilation on mode 1 / mode 2
    SparseCd a1d, a2d;       // creation
    SparseCd a1sq, a2sq;     // a^2
    SparseCd a1dsq, a2dsq;   // (a^dag)^2
    SparseCd up2, dn2;       // a1dsq + a2dsq, a1sq + a2sq
    Eigen::VectorXd drag_plus;   // diag(A1^dag A1 + A2^dag A2) = n1 + n2
    Eigen::VectorXd drag_minus;  // diag(A1 A1^dag + A2 A2^dag), truncated products
};

SparseCd mode_lowering(int d, int mode)
{
    std::vector<Eigen::Triplet<Cd>> triplets;
    triplets.reserve(static_cast<size_t>(d) * (d - 1));
    for (int n1 = 0; n1 < d; ++n1)
        for (int n2 = 0; n2 < d; ++n2) {
            if (mode == 1 && n1 > 0)
                triplets.emplace_back((n1 - 1) * d + n2, n1 * d + n2, std::sqrt(double(n1)));
            if (mode == 2 && n2 > 0)
                triplets.emplace_back(n1 * d + (n2 - 1), n1 * d + n2, std::sqrt(double(n2)));
        }
    SparseCd a(d * d, d * d);
    a.setFromTriplets(triplets.begin(), triplets.end());
    return a;
}

FockOps make_ops(int d)
{
    FockOps ops;
    ops.d = d;
    ops.a1 = mode_lowering(d, 1);
    ops.a2 = mode_lowering(d, 2);
    ops.a1d = SparseCd(ops.a1.adjoint());
    ops.a2d = SparseCd(ops.a2.adjoint());
    ops.a1sq = ops.a1 * ops.a1;
    ops.a2sq = ops.a2 * ops.a2;
    ops.a1dsq = ops.a1d * ops.a1d;
    ops.a2dsq = ops.a2d * ops.a2d;
    ops.up2 = SparseCd(ops.a1dsq + ops.a2dsq);
    ops.dn2 = SparseCd(ops.a1sq + ops.a2sq);

    // Anticommutator diagonals from the *truncated* operator products, not
    // the analytic n+1 forms: this keeps tr(d rho/dt) = 0 exactly, because
    // each dissipator is then a genuine Lindblad term on the truncated space.
    ops.drag_plus = Eigen::VectorXd(d * d);
    ops.drag_minus = Eigen::VectorXd(d * d);
    for (int n1 = 0; n1 < d; ++n1)
        for (int n2 = 0; n2 < d; ++n2) {
            const int i = n1 * d + n2;
            ops.drag_plus(i) = n1 + n2;
            const double m1 = (n1 == d - 1) ? 0.0 : n1 + 1.0;
            const double m2 = (n2 == d - 1) ? 0.0 : n2 + 1.0;
            ops.drag_minus(i) = m1 + m2;
        }
    return ops;
}

// d(rho)/d(Gamma t) for the squeezed-thermal master equation. The sign of
// the M terms is chosen so that the stationary state has <a^2> = +M, the
// convention the covariance-evolution side (diffusion_matrix) realizes.
// rho must be Hermitian (it always is here): every generator term whose
// adjoint also appears is computed once and closed with "+ x^dag", saving a
// third of the sparse-dense products.
Eigen::MatrixXcd rhs_gamma_units(const FockOps& ops, const Eigen::MatrixXcd& rho,
                                 double n, Cd m)
{
    Eigen::MatrixXcd out =
        (1.0 + n) * (ops.a1 * rho * ops.a1d + ops.a2 * rho * ops.a2d) +
        n * (ops.a1d * rho * ops.a1 + ops.a2d * rho * ops.a2);

    // x + x^dag supplies: both M/M* sandwich groups, both sides of the
    // number-drag anticommutator, and all four M anticommutator halves.
    const Eigen::VectorXcd drag =
        (0.5 * ((1.0 + n) * ops.drag_plus + n * ops.drag_minus)).cast<Cd>();
    Eigen::MatrixXcd x =
        (-m) * (ops.a1d * rho * ops.a1d + ops.a2d * rho * ops.a2d);
    x -= drag.asDiagonal() * rho;
    x += (0.5 * m) * (ops.up2 * rho + rho * ops.up2);

    out += x;
    out += x.adjoint();
    return out;
}

// population of the truncation boundary: any basis state with n1 or n2 = d-1
double edge_population(const Eigen::MatrixXcd& rho, int d)
{
    double pop = 0.0;
    for (int n2 = 0; n2 < d; ++n2)
        pop += rho((d - 1) * d + n2, (d - 1) * d + n2).real();
    for (int n1 = 0; n1 < d - 1; ++n1)
        pop += rho(n1 * d + (d - 1), n1 * d + (d - 1)).real();
    return pop;
}

// tr(op * rho) evaluated over the sparse pattern only
Cd trace_prod(const SparseCd& op, const Eigen::MatrixXcd& rho)
{
    Cd sum = 0.0;
    for (int k = 0; k < op.outerSize(); ++k)
        for (SparseCd::InnerIterator it(op, k); it; ++it)
            sum += it.value() * rho(it.col(), it.row());
    return sum;
}

void require_square(const TruncatedState& state)
{
    if (state.dim < 2)
        throw std::domain_error("Fock cutoff must be at least 2");
    const int d2 = state.dim * state.dim;
    if (state.rho.rows() != d2 || state.rho.cols() != d2)
        throw std::invalid_argument("density matrix size does not match cutoff");
}

} // namespace

TruncatedTwb twb_density(double lambda, int dim, double trunc_tol)
{
    if (!(lambda >= 0.0))
        throw std::domain_error("twin-beam squeeze parameter must be >= 0");
    if (dim < 2)
        throw std::domain_error("Fock cutoff must be at least 2");

    const double xi = std::tanh(lambda);
    const double deficit = std::pow(xi, 2.0 * dim);   // exact geometric tail
    if (deficit > trunc_tol) {
        const int d_min = static_cast<int>(
            std::ceil(std::log(trunc_tol) / (2.0 * std::log(xi))));
        throw truncation_error(
            "twin-beam truncation deficit " + std::to_string(deficit) +
            " exceeds tolerance; use a cutoff of at least " + std::to_string(d_min));
    }

    TruncatedTwb result;
    result.norm_deficit = deficit;
    result.renorm_factor = 1.0 / (1.0 - deficit);
    result.state.dim = dim;
    result.state.rho = Eigen::MatrixXcd::Zero(dim * dim, dim * dim);
    // |TWB> = sqrt(1 - xi^2) sum xi^n |n,n>, renormalized over the kept block
    const double weight = (1.0 - xi * xi) * result.renorm_factor;
    for (int n = 0; n < dim; ++n)
        for (int p = 0; p < dim; ++p)   // pow(0,0) = 1: lambda = 0 is the vacuum
            result.state.rho(n * dim + n, p * dim + p) =
                weight * std::pow(xi, n + p);
    return result;
}

Eigen::MatrixXcd lindblad_rhs(const TruncatedState& state, const DerivedBath& bath)
{
    require_square(state);
    const FockOps ops = make_ops(state.dim);
    return bath.damping_rate *
           rhs_gamma_units(ops, state.rho, bath.photon_number, bath.squeezing);
}

IntegrationReport integrate(const TruncatedState& initial, const DerivedBath& bath,
                            const OracleConfig& config)
{
    require_square(initial);
    if (config.dim != initial.dim)
        throw std::invalid_argument("config cutoff does not match the state");
    if (!(config.dt > 0.0))
        throw std::domain_error("integration step must be > 0");
    if (!(config.t_final >= 0.0))
        throw std::domain_error("integration horizon must be >= 0");

    const FockOps ops = make_ops(initial.dim);
    const double n = bath.photon_number;
    const Cd m = bath.squeezing;

    IntegrationReport report;
    report.state = initial;
    Eigen::MatrixXcd& rho = report.state.rho;

    const auto check_edge = [&](const Eigen::MatrixXcd& r) {
        const double pop = edge_population(r, initial.dim);
        report.max_edge_population = std::max(report.max_edge_population, pop);
        if (pop > config.trunc_tol)
            throw truncation_error(
                "population " + std::to_string(pop) +
                " reached the truncation boundary; increase the Fock cutoff");
    };
    check_edge(rho);
    if (config.t_final == 0.0)
        return report;

    const int steps =
        std::max(1, static_cast<int>(std::ceil(config.t_final / config.dt - 1e-12)));
    const double h = config.t_final / steps;   // land exactly on t_final

    Eigen::MatrixXcd k1, k2, k3, k4;
    for (int step = 0; step < steps; ++step) {
        k1 = rhs_gamma_units(ops, rho, n, m);
        k2 = rhs_gamma_units(ops, rho + (0.5 * h) * k1, n, m);
        k3 = rhs_gamma_units(ops, rho + (0.5 * h) * k2, n, m);
        k4 = rhs_gamma_units(ops, rho + h * k3, n, m);
        rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        const double herm_err =
            0.5 * (rho - rho.adjoint()).cwiseAbs().maxCoeff();
        report.max_hermiticity_correction =
            std::max(report.max_hermiticity_correction, herm_err);
        rho = 0.5 * (rho + rho.adjoint()).eval();

        report.max_trace_drift = std::max(report.max_trace_drift,
                                          std::abs(rho.trace().real() - 1.0) +
                                              std::abs(rho.trace().imag()));
        check_edge(rho);
    }
    report.steps = steps;
    return report;
}

TwoModeGaussianState moments_to_gaussian(const TruncatedState& state)
{
    require_square(state);
    const int d = state.dim;
    const Eigen::MatrixXcd& rho = state.rho;

    const FockOps ops = make_ops(d);
    const Cd ea = trace_prod(ops.a1, rho);
    const Cd eb = trace_prod(ops.a2, rho);
    const Cd ea2 = trace_prod(ops.a1sq, rho);
    const Cd eb2 = trace_prod(ops.a2sq, rho);
    const Cd eab = trace_prod(SparseCd(ops.a1 * ops.a2), rho);
    const Cd eabd = trace_prod(SparseCd(ops.a1 * ops.a2d), rho);
    double na = 0.0, nb = 0.0;
    for (int n1 = 0; n1 < d; ++n1)
        for (int n2 = 0; n2 < d; ++n2) {
            const double p = rho(n1 * d + n2, n1 * d + n2).real();
            na += n1 * p;
            nb += n2 * p;
        }

    TwoModeGaussianState out;
    // x = (a + a^dag)/2, y = (a - a^dag)/(2i)
    const double x1 = ea.real(), y1 = ea.imag();
    const double x2 = eb.real(), y2 = eb.imag();
    out.mean << x1, y1, x2, y2;

    Eigen::Matrix4d v;
    v(0, 0) = (1.0 + 2.0 * na + 2.0 * ea2.real()) / 4.0 - x1 * x1;
    v(1, 1) = (1.0 + 2.0 * na - 2.0 * ea2.real()) / 4.0 - y1 * y1;
    v(0, 1) = ea2.imag() / 2.0 - x1 * y1;
    v(2, 2) = (1.0 + 2.0 * nb + 2.0 * eb2.real()) / 4.0 - x2 * x2;
    v(3, 3) = (1.0 + 2.0 * nb - 2.0 * eb2.real()) / 4.0 - y2 * y2;
    v(2, 3) = eb2.imag() / 2.0 - x2 * y2;
    // symmetrized cross-mode moments from <ab> and <ab^dag>
    v(0, 2) = (eab.real() + eabd.real()) / 2.0 - x1 * x2;
    v(0, 3) = (eab.imag() - eabd.imag()) / 2.0 - x1 * y2;
    v(1, 2) = (eab.imag() + eabd.imag()) / 2.0 - y1 * x2;
    v(1, 3) = (eabd.real() - eab.real()) / 2.0 - y1 * y2;
    v(1, 0) = v(0, 1);
    v(3, 2) = v(2, 3);
    v(2, 0) = v(0, 2);
    v(3, 0) = v(0, 3);
    v(2, 1) = v(1, 2);
    v(3, 1) = v(1, 3);
    out.cov = v;
    return out;
}

double ppt_min_eigenvalue(const TruncatedState& state)
{
    require_square(state);
    const int d = state.dim;
    Eigen::MatrixXcd pt(d * d, d * d);
    // transpose mode 2 only: <n1 n2| rho |m1 m2> -> <n1 m2| pt |m1 n2>
    for (int n1 = 0; n1 < d; ++n1)
        for (int n2 = 0; n2 < d; ++n2)
            for (int m1 = 0; m1 < d; ++m1)
                for (int m2 = 0; m2 < d; ++m2)
                    pt(n1 * d + m2, m1 * d + n2) =
                        state.rho(n1 * d + n2, m1 * d + m2);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(pt, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

} // namespace twinbeam
