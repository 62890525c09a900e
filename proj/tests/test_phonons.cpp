#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>

#include "oracle.hpp"
#include "selforg/analytics.hpp"
#include "selforg/dynamics.hpp"
#include "selforg/phonons.hpp"

using namespace selforg;

namespace {

SystemParams weak_params(int n, double delta = -200.0)
{
    SystemParams p;
    p.n_atoms = n;
    p.pump_detuning = delta;
    p.ext_damping = phonon_frequency_scale(p);
    return p;
}

RealVector relaxed(const SystemParams& p)
{
    return relax_to_steady_state(p, state_at_rest(p, weak_lattice(p.n_atoms).z)).state.z;
}

std::vector<double> sorted_real(const ComplexVector& w)
{
    std::vector<double> out;
    for (Eigen::Index i = 0; i < w.size(); ++i)
        out.push_back(w[i].real());
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_SUITE("phonons")
{
    TEST_CASE("analytic stiffness agrees with finite differences of the naive force")
    {
        std::mt19937_64 rng(31);
        std::uniform_real_distribution<double> u(-0.01, 0.01);
        for (double delta : {-15.0, -2.0, 0.5, 3.0}) {
            SystemParams p = weak_params(12, delta);
            RealVector z = relaxed(p);
            for (auto& x : z)
                x += u(rng);
            const RealMatrix k = stiffness_matrix(p, z);
            const RealMatrix fd = oracle::stiffness_fd(p, z);
            CHECK((k - fd).cwiseAbs().maxCoeff() <= 1e-6 * k.cwiseAbs().maxCoeff());
            const GradientCheck g = check_stiffness_gradient(p, z);
            CHECK(g.relative_error < 1e-5);
        }
    }

    TEST_CASE("rows sum to zero")
    {
        std::mt19937_64 rng(32);
        SystemParams p = weak_params(15, -1.0);
        for (int trial = 0; trial < 5; ++trial) {
            const RealVector z = oracle::random_chain(15, rng);
            const RealMatrix k = stiffness_matrix(p, z);
            CHECK(k.rowwise().sum().cwiseAbs().maxCoeff() < 1e-8 * k.cwiseAbs().maxCoeff());
            // uniform vector spans the zero mode
            const RealVector ones = RealVector::Ones(15);
            CHECK((k * ones).norm() < 1e-8 * k.norm());
        }
    }

    TEST_CASE("weak-scattering stiffness is nearly circulant and symmetric")
    {
        SystemParams p = weak_params(20, -400.0);
        const RealVector z = relaxed(p);
        const RealMatrix k = stiffness_matrix(p, z);
        const RealMatrix w = weak_limit_stiffness(p, z);
        CHECK((k - w).cwiseAbs().maxCoeff() < 0.01 * w.cwiseAbs().maxCoeff());
        CHECK((w - w.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * w.cwiseAbs().maxCoeff());
        const double asym = (k - k.transpose()).cwiseAbs().maxCoeff() / k.cwiseAbs().maxCoeff();
        MESSAGE("full-model stiffness asymmetry at delta = -400: " << asym);
        CHECK(asym < 1e-2);
    }

    TEST_CASE("pair stiffness from the second derivative of the pair potential")
    {
        SystemParams p = weak_params(2, -30.0);
        RealVector z(2);
        z << 0.0, 0.75;
        const double kappa = oracle::k0 * p.gamma_1d * single_atom_population(p);
        const RealMatrix w = weak_limit_stiffness(p, z);
        CHECK(w(0, 0) == doctest::Approx(kappa));
        CHECK(w(0, 1) == doctest::Approx(-kappa));
        CHECK(w(1, 1) == doctest::Approx(kappa));
        const RealMatrix k = stiffness_matrix(p, z);
        CHECK(k(0, 0) == doctest::Approx(kappa).epsilon(0.02));
    }

    TEST_CASE("undamped modes of the weak lattice follow the closed form")
    {
        for (int n : {2, 3, 10, 50}) {
            SystemParams p = weak_params(n, -20.0);
            const RealMatrix k = weak_limit_stiffness(p, weak_lattice(n).z);
            const PhononModes modes = normal_modes(k, RealMatrix::Zero(n, n), p);
            std::vector<double> expect;
            const RealVector w = weak_phonon_spectrum(p, n);
            for (int j = 0; j < n; ++j)
                expect.push_back(w[j]);
            std::sort(expect.begin(), expect.end());
            const std::vector<double> got = sorted_real(modes.frequencies);
            const double top = expect.back();
            CHECK(std::abs(got[0]) < 1e-8 * top);
            for (int j = 1; j < n; ++j)
                CHECK(got[j] == doctest::Approx(expect[j]).epsilon(1e-6));
            int zero = 0;
            for (int j = 0; j < n; ++j)
                zero += modes.zero_mode[j];
            CHECK(zero == 1);
            CHECK(std::abs(modes.frequencies.imag().maxCoeff()) < 1e-8 * top);
        }
    }

    TEST_CASE("pure damping gives decaying modes")
    {
        SystemParams p = weak_params(4);
        const double gamma = 0.3;
        const PhononModes modes =
            normal_modes(RealMatrix::Zero(4, 4), gamma * RealMatrix::Identity(4, 4), p);
        for (int j = 0; j < 4; ++j) {
            CHECK(modes.frequencies[j].imag() == doctest::Approx(-gamma));
            CHECK(std::abs(modes.frequencies[j].real()) < 1e-12);
            CHECK(modes.damped[j]);
        }
    }

    TEST_CASE("damping matrix vanishes linearly with the recoil frequency")
    {
        SystemParams p = weak_params(8, -3.0);
        const RealVector z = relaxed(p);
        const RealMatrix l1 = damping_matrix(p, z);
        p.recoil *= 0.1;
        const RealMatrix l2 = damping_matrix(p, z);
        CHECK(l1.norm() > 0.0);
        CHECK(l2.norm() == doctest::Approx(0.1 * l1.norm()).epsilon(1e-10));
        MESSAGE("damping row-sum ratio: " << l1.rowwise().sum().cwiseAbs().maxCoeff() /
                                                 l1.cwiseAbs().maxCoeff());
    }

    TEST_CASE("damping matrix matches a finite-difference delay correction")
    {
        // force to first order in p: sigma = sigma_inst + M^-1 (dz/dt . grad) sigma_inst
        SystemParams p = weak_params(6, -2.0);
        const RealVector z = relaxed(p);
        const RealMatrix l = damping_matrix(p, z);
        const double c = nondimensional_velocity_factor(p);
        const double h = 1e-6;
        const ComplexMatrix m = oracle::coupling(p, z, p.pump_detuning);
        const ComplexVector s0 = oracle::coherences(p, z);
        for (int col = 0; col < 6; ++col) {
            RealVector v = RealVector::Zero(6);
            v[col] = 1.0;
            // directional derivative of sigma_inst along dz/dt = c v
            const ComplexVector ds =
                c * (oracle::coherences(p, z + h * v) - oracle::coherences(p, z - h * v)) / (2 * h);
            const ComplexVector sd = m.partialPivLu().solve(ds);
            const double eps = 1e-3;
            const RealVector dfdp =
                (oracle::force(p, z, s0 + eps * sd) - oracle::force(p, z, s0 - eps * sd)) / (2 * eps);
            CHECK((-dfdp - l.col(col)).cwiseAbs().maxCoeff() <= 1e-6 * l.cwiseAbs().maxCoeff());
        }
    }

    TEST_CASE("weak-scattering anti-damping is small and grows like N squared")
    {
        std::vector<double> rates;
        for (int n : {10, 20, 40}) {
            SystemParams p = weak_params(n, -20.0);
            const RealVector z = relaxed(p);
            const Linearization lin = linearize(p, z);
            const PhononModes modes = normal_modes(lin.stiffness, lin.damping, p);
            rates.push_back(modes.max_growth_rate());
            CHECK(modes.max_growth_rate() < 0.05 * single_atom_population(p) * p.recoil);
        }
        MESSAGE("max growth rates: " << rates[0] << " " << rates[1] << " " << rates[2]);
        for (int i = 1; i < 3; ++i) {
            const double ratio = rates[i] / rates[i - 1] / 4.0;
            CHECK(ratio > 0.5);
            CHECK(ratio < 2.0);
        }
    }
}
