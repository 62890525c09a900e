#include "selforg/phonons.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <ostream>

#include <Eigen/Eigenvalues>

#include "selforg/coherence.hpp"
#include "selforg/dynamics.hpp"
#include "selforg/errors.hpp"

namespace selforg {

namespace {

/// Pair quantities that enter the force and its derivatives.
struct PairTerms
{
    ComplexMatrix g;   ///< sign(z_j - z_k) exp(-i k0 |z_j - z_k|), zero diagonal
    ComplexMatrix h;   ///< d g_jk / d z_j = -i k0 exp(-i k0 |z_j - z_k|)
    ComplexMatrix a;   ///< d M_jk / d z_j
};

PairTerms pair_terms(const SystemParams& params, const RealVector& z)
{
    const Eigen::Index n = z.size();
    PairTerms t{ComplexMatrix::Zero(n, n), ComplexMatrix::Zero(n, n), ComplexMatrix::Zero(n, n)};
    const cplx ik(0.0, two_pi);
    const double half_g = 0.5 * params.gamma_1d;
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index k = j + 1; k < n; ++k) {
            const cplx e = std::polar(1.0, -two_pi * (z[k] - z[j]));   // exp(-i k0 |dz|)
            t.g(j, k) = -e;
            t.g(k, j) = e;
            t.h(j, k) = -ik * e;
            t.h(k, j) = -ik * e;
            // d/dz_j exp(i k0 |z_j - z_k|) = i k0 sign(z_j - z_k) exp(i k0 |dz|)
            const cplx dm = -half_g * ik * std::conj(e);
            t.a(j, k) = -dm;   // z_j < z_k
            t.a(k, j) = dm;
        }
    }
    return t;
}

/// d sigma_inst / d z, column m = -M^-1 (dM/dz_m) sigma.
ComplexMatrix coherence_jacobian(const InstantaneousSolution& sol, const PairTerms& t)
{
    const ComplexVector& sigma = sol.sigma;
    ComplexMatrix b = t.a.transpose() * sigma.asDiagonal();
    b.diagonal() += t.a * sigma;
    return -sol.lu.solve(b);
}

/// -dF/dz for fixed coherences.
RealMatrix frozen_part(const SystemParams& params, const ComplexVector& sigma,
                       const PairTerms& t)
{
    const ComplexVector sc = sigma.conjugate();
    ComplexMatrix m = -(sigma.asDiagonal() * t.h * sc.asDiagonal());
    m.diagonal() += sigma.cwiseProduct(t.h * sc);
    return params.gamma_1d * m.real();
}

/// Linear response of -F to a perturbation of the coherences (columns).
RealMatrix coherence_response(const SystemParams& params, const ComplexVector& sigma,
                              const PairTerms& t, const ComplexMatrix& dsigma)
{
    const ComplexVector s = t.g * sigma.conjugate();
    const ComplexMatrix m =
        s.asDiagonal() * dsigma + sigma.asDiagonal() * (t.g * dsigma.conjugate());
    return params.gamma_1d * m.real();
}

} // namespace

RealMatrix frozen_stiffness_matrix(const SystemParams& params, const RealVector& z,
                                   const ComplexVector& sigma)
{
    require_strictly_increasing(z);
    return frozen_part(params, sigma, pair_terms(params, z));
}

Linearization linearize(const SystemParams& params, const RealVector& z_eq)
{
    const InstantaneousSolution sol = solve_instantaneous_full(params, z_eq);
    const PairTerms t = pair_terms(params, z_eq);
    const ComplexMatrix dsigma = coherence_jacobian(sol, t);

    Linearization out;
    out.stiffness =
        frozen_part(params, sol.sigma, t) + coherence_response(params, sol.sigma, t, dsigma);

    // unit momentum p = e_k moves atom k at speed omega_r/pi
    const ComplexMatrix delayed =
        nondimensional_velocity_factor(params) * sol.lu.solve(dsigma);
    out.damping = coherence_response(params, sol.sigma, t, delayed);
    return out;
}

RealMatrix stiffness_matrix(const SystemParams& params, const RealVector& z_eq)
{
    const InstantaneousSolution sol = solve_instantaneous_full(params, z_eq);
    const PairTerms t = pair_terms(params, z_eq);
    return frozen_part(params, sol.sigma, t) +
           coherence_response(params, sol.sigma, t, coherence_jacobian(sol, t));
}

RealMatrix damping_matrix(const SystemParams& params, const RealVector& z_eq)
{
    return linearize(params, z_eq).damping;
}

RealMatrix stiffness_matrix_fd(const SystemParams& params, const RealVector& z_eq, double step)
{
    const Eigen::Index n = z_eq.size();
    RealMatrix k(n, n);
    RealVector z = z_eq;
    for (Eigen::Index m = 0; m < n; ++m) {
        z[m] = z_eq[m] + step;
        const RealVector fp = force(params, z, solve_instantaneous(params, z));
        z[m] = z_eq[m] - step;
        const RealVector fm = force(params, z, solve_instantaneous(params, z));
        z[m] = z_eq[m];
        k.col(m) = -(fp - fm) / (2.0 * step);
    }
    return k;
}

GradientCheck check_stiffness_gradient(const SystemParams& params, const RealVector& z_eq,
                                       double step)
{
    const RealMatrix analytic = stiffness_matrix(params, z_eq);
    const RealMatrix fd1 = stiffness_matrix_fd(params, z_eq, step);
    const RealMatrix fd2 = stiffness_matrix_fd(params, z_eq, 2.0 * step);
    const double scale = analytic.cwiseAbs().maxCoeff();
    GradientCheck out;
    if (scale > 0.0) {
        out.relative_error = (analytic - fd1).cwiseAbs().maxCoeff() / scale;
        out.richardson_spread = (fd1 - fd2).cwiseAbs().maxCoeff() / scale;
    }
    return out;
}

RealMatrix weak_limit_stiffness(const SystemParams& params, const RealVector& z)
{
    const Eigen::Index n = z.size();
    const double kappa = two_pi * params.gamma_1d * single_atom_population(params);
    RealMatrix k = RealMatrix::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index m = j + 1; m < n; ++m) {
            const double v = kappa * std::sin(two_pi * std::abs(z[m] - z[j]));
            k(j, m) = v;
            k(m, j) = v;
        }
    }
    for (Eigen::Index j = 0; j < n; ++j)
        k(j, j) = -k.row(j).sum();
    return k;
}

double PhononModes::max_growth_rate() const
{
    if (frequencies.size() == 0)
        return 0.0;
    return frequencies.imag().maxCoeff();
}

void PhononModes::write_csv(std::ostream& os, double scale) const
{
    os << "j,re_omega,im_omega,re_omega_norm,im_omega_norm\n";
    char buf[160];
    for (int j = 0; j < size(); ++j) {
        const cplx w = frequencies[j];
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g\n", j, w.real(), w.imag(),
                      w.real() / scale, w.imag() / scale);
        os << buf;
    }
}

PhononModes normal_modes(const RealMatrix& stiffness, const RealMatrix& damping,
                         const SystemParams& params)
{
    const Eigen::Index n = stiffness.rows();
    if (stiffness.cols() != n || damping.rows() != n || damping.cols() != n)
        throw ConfigError("normal_modes: K and L must be square and of equal size");

    PhononModes out;
    if (n == 0)
        return out;

    // Rescale the velocity so that both off-diagonal blocks are O(omega).
    const double c = nondimensional_velocity_factor(params);
    double scale = std::sqrt(c * stiffness.cwiseAbs().maxCoeff());
    if (!(scale > 0.0))
        scale = damping.cwiseAbs().maxCoeff();
    if (!(scale > 0.0))
        scale = 1.0;

    RealMatrix companion = RealMatrix::Zero(2 * n, 2 * n);
    companion.topRightCorner(n, n).diagonal().setConstant(scale);
    companion.bottomLeftCorner(n, n) = -(c / scale) * stiffness;
    companion.bottomRightCorner(n, n) = -damping;

    Eigen::EigenSolver<RealMatrix> solver(companion);
    if (solver.info() != Eigen::Success) {
        namespace fs = std::filesystem;
        const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
        const fs::path dump =
            fs::temp_directory_path() / ("selforg_companion_" + std::to_string(stamp) + ".txt");
        std::ofstream(dump) << companion << '\n';
        throw NumericalError("normal_modes: eigen-solver failed; companion matrix written to " +
                             dump.string());
    }

    const Eigen::VectorXcd lambda = solver.eigenvalues();
    const double magnitude = lambda.cwiseAbs().maxCoeff();
    const double tiny = 1e-9 * std::max(magnitude, 1e-300);

    // omega_c = i lambda, so Re omega_c = -Im lambda
    std::vector<Eigen::Index> chosen, real_ones;
    for (Eigen::Index i = 0; i < 2 * n; ++i) {
        if (-lambda[i].imag() > tiny)
            chosen.push_back(i);
        else if (std::abs(lambda[i].imag()) <= tiny)
            real_ones.push_back(i);
    }
    std::sort(real_ones.begin(), real_ones.end(), [&](Eigen::Index a, Eigen::Index b) {
        return std::abs(lambda[a]) > std::abs(lambda[b]);
    });
    if (static_cast<Eigen::Index>(chosen.size()) > n ||
        static_cast<Eigen::Index>(chosen.size() + real_ones.size()) < n)
        throw NumericalError("normal_modes: could not pair companion eigenvalues");
    for (std::size_t i = 0; static_cast<Eigen::Index>(chosen.size()) < n; ++i)
        chosen.push_back(real_ones[i]);

    std::sort(chosen.begin(), chosen.end(), [&](Eigen::Index a, Eigen::Index b) {
        const double wa = std::abs(lambda[a].imag()), wb = std::abs(lambda[b].imag());
        if (wa != wb)
            return wa < wb;
        return std::abs(lambda[a]) < std::abs(lambda[b]);
    });

    const Eigen::MatrixXcd vecs = solver.eigenvectors();
    out.frequencies.resize(n);
    out.vectors.resize(n, n);
    out.zero_mode.resize(n);
    out.damped.resize(n);
    out.antidamped.resize(n);
    const double growth_tol = 1e-12 * std::max(magnitude, 1e-300);
    for (Eigen::Index m = 0; m < n; ++m) {
        const Eigen::Index i = chosen[m];
        const cplx w = cplx(0.0, 1.0) * lambda[i];
        out.frequencies[m] = w;
        out.vectors.col(m) = vecs.col(i).head(n);
        out.zero_mode[m] = std::abs(w) <= 1e-6 * std::max(magnitude, 1e-300);
        out.damped[m] = w.imag() < -growth_tol;
        out.antidamped[m] = w.imag() > growth_tol;
    }
    return out;
}

} // namespace selforg
