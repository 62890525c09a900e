#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "oracle.hpp"
#include "selforg/coherence.hpp"
#include "selforg/dynamics.hpp"
#include "selforg/errors.hpp"
#include "selforg/optics.hpp"

using namespace selforg;

TEST_SUITE("model")
{
    TEST_CASE("fractional positions use the half-open interval (0, 1]")
    {
        RealVector z(3);
        z << 0.0, 2.25, -0.5;
        const RealVector f = fractional_positions(z).f;
        CHECK(f[0] == doctest::Approx(1.0));
        CHECK(f[1] == doctest::Approx(0.25));
        CHECK(f[2] == doctest::Approx(0.5));
    }

    TEST_CASE("fractions are idempotent and blind to integer shifts")
    {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> u(-20.0, 20.0);
        std::uniform_int_distribution<int> shift(-7, 7);
        for (int trial = 0; trial < 50; ++trial) {
            RealVector z(8);
            for (auto& x : z)
                x = u(rng);
            const RealVector f = fractional_positions(z).f;
            CHECK(f.minCoeff() > 0.0);
            CHECK(f.maxCoeff() <= 1.0);
            RealVector again = fractional_positions(f).f;
            CHECK((again - f).cwiseAbs().maxCoeff() == 0.0);
            RealVector moved = z;
            for (auto& x : moved)
                x += shift(rng);
            CHECK((fractional_positions(moved).f - f).cwiseAbs().maxCoeff() < 1e-12);
        }
    }

    TEST_CASE("non-finite positions are rejected")
    {
        RealVector z(2);
        z << 0.0, std::numeric_limits<double>::quiet_NaN();
        CHECK_THROWS_AS(fractional_positions(z), InvalidStateError);
    }

    TEST_CASE("velocity factor is omega_r / pi")
    {
        SystemParams p;
        p.recoil = 1e-3;
        CHECK(nondimensional_velocity_factor(p) == doctest::Approx(3.183098861837907e-4));
        p.recoil = 0.0;
        CHECK(nondimensional_velocity_factor(p) == 0.0);
        p.recoil = pi;
        set_warning_handler({});
        CHECK(nondimensional_velocity_factor(p) == doctest::Approx(1.0));
        // independent route: hbar k0 / (m lambda0 Gamma) = 2 omega_r / (k0 lambda0)
        p.recoil = 2.5e-4;
        CHECK(nondimensional_velocity_factor(p) == doctest::Approx(2.0 * 2.5e-4 / oracle::k0));
    }

    TEST_CASE("parameter validation")
    {
        SystemParams p;
        CHECK_NOTHROW(p.validate());
        CHECK(p.gamma_prime() == doctest::Approx(0.75));
        p.gamma_1d = 1.5;
        CHECK_THROWS_AS(p.validate(), ConfigError);
        p.gamma_1d = 0.0;
        CHECK_THROWS_AS(p.validate(), ConfigError);
        p = {};
        p.n_atoms = 0;
        CHECK_THROWS_AS(p.validate(), ConfigError);
        p = {};
        p.ext_damping = -1.0;
        CHECK_THROWS_AS(p.validate(), ConfigError);

        std::string seen;
        set_warning_handler([&](const std::string& w) { seen = w; });
        p = {};
        p.recoil = 0.2;
        CHECK_NOTHROW(p.validate());
        CHECK(seen.find("recoil") != std::string::npos);
        set_warning_handler({});
    }

    TEST_CASE("chain state validation")
    {
        ChainState s;
        s.z = RealVector::LinSpaced(3, 0.0, 2.0);
        s.p = RealVector::Zero(3);
        s.sigma = ComplexVector::Zero(3);
        CHECK_NOTHROW(s.validate());
        s.p[1] = std::numeric_limits<double>::infinity();
        CHECK_THROWS_AS(s.validate(), InvalidStateError);
        s.p[1] = 0.0;
        s.z[2] = s.z[1];
        CHECK_THROWS_AS(s.validate(), DegenerateConfigurationError);
        s.z[2] = 0.5;
        CHECK_THROWS_AS(s.validate(), OrderingViolationError);
        s.z = RealVector::LinSpaced(2, 0.0, 1.0);
        CHECK_THROWS_AS(s.validate(), InvalidStateError);
    }

    TEST_CASE("global translation leaves all physics unchanged")
    {
        std::mt19937_64 rng(5);
        SystemParams p;
        p.n_atoms = 12;
        p.pump_detuning = -1.3;
        const std::vector<double> grid = uniform_grid(-5.0, 5.0, 41);
        for (int trial = 0; trial < 10; ++trial) {
            const RealVector z = oracle::random_chain(12, rng);
            const double c = std::uniform_real_distribution<double>(-30.0, 30.0)(rng);
            const RealVector zc = (z.array() + c).matrix();

            const ComplexVector s1 = solve_instantaneous(p, z), s2 = solve_instantaneous(p, zc);
            CHECK((s1 - s2).norm() <= 1e-12 * s1.norm());

            const RealVector f1 = force(p, z, s1), f2 = force(p, zc, s2);
            CHECK((f1 - f2).norm() <= 1e-12 * f1.norm());

            // r is referenced to z = 0, so only |r| and t are translation invariant
            const OpticalSpectrum a = chain_spectrum_transfer(p, z, grid);
            const OpticalSpectrum b = chain_spectrum_transfer(p, zc, grid);
            for (std::size_t k = 0; k < grid.size(); ++k) {
                CHECK(std::abs(a.reflectance(k) - b.reflectance(k)) <= 1e-12);
                CHECK(std::abs(a.t[k] - b.t[k]) <= 1e-12);
            }
        }
    }
}
