#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "oracle.hpp"
#include "selforg/analytics.hpp"
#include "selforg/continuation.hpp"
#include "selforg/errors.hpp"

using namespace selforg;

namespace {

FractionalConfig two_segment(int n, double jump)
{
    RealVector z(n);
    for (int j = 0; j < n; ++j)
        z[j] = j < n / 2 ? j : j + jump;
    return fractional_positions(z);
}

} // namespace

TEST_SUITE("continuation")
{
    TEST_CASE("wrapped differences use (-1/2, 1/2]")
    {
        CHECK(wrap_half(0.75) == doctest::Approx(-0.25));
        CHECK(wrap_half(0.5) == doctest::Approx(0.5));
        CHECK(wrap_half(-0.5) == doctest::Approx(0.5));
        CHECK(wrap_half(-0.3) == doctest::Approx(-0.3));
        CHECK(wrap_half(3.1) == doctest::Approx(0.1));
    }

    TEST_CASE("lattice constant estimates")
    {
        const auto [c10, m10] = lattice_constant(weak_lattice(10).z);
        CHECK(c10 == doctest::Approx(0.95));
        CHECK(m10 == doctest::Approx(0.95));
        const auto [c150, m150] = lattice_constant(weak_lattice(150).z);
        CHECK(c150 == doctest::Approx(1.0 - 1.0 / 300.0));
        CHECK(m150 == doctest::Approx(1.0 - 1.0 / 300.0));

        RealVector z(10);
        for (int j = 0; j < 10; ++j)
            z[j] = j < 5 ? j : j - 0.25;
        const auto [c, m] = lattice_constant(z);
        CHECK(c == doctest::Approx(0.75));
        CHECK(m < 1.0);
    }

    TEST_CASE("phase slip detection")
    {
        const PhaseSlip weak = detect_phase_slip(weak_lattice(150).fractions);
        CHECK(weak.n_segments() == 1);
        CHECK(weak.delta_f.empty());

        const PhaseSlip slip = detect_phase_slip(two_segment(40, -0.25));
        REQUIRE(slip.n_segments() == 2);
        CHECK(slip.segments[1].begin == 20);
        CHECK(slip.delta_f[0] == doctest::Approx(-0.25));
        CHECK(slip.boundary_jump[0] == doctest::Approx(-0.25));

        // segments whose mean straddles f = 1 are averaged on the circle
        RealVector z(6);
        z << 0.0, 0.98, 2.02, 3.6, 4.58, 5.62;
        const PhaseSlip circ = detect_phase_slip(fractional_positions(z));
        REQUIRE(circ.n_segments() == 2);
        CHECK(std::abs(wrap_half(circ.segments[0].mean_f - 1.0)) < 1e-12);
        CHECK(circ.delta_f[0] == doctest::Approx(-0.4).epsilon(1e-9));

        CHECK(detect_phase_slip(two_segment(40, -0.05)).n_segments() == 1);
        CHECK(detect_phase_slip(two_segment(40, -0.05), 0.04).n_segments() == 2);
    }

    TEST_CASE("crossover detuning")
    {
        SystemParams p;
        p.n_atoms = 150;
        CHECK(crossover_detuning(p) == doctest::Approx(150 * 0.25 / (2 * pi)));
        CHECK(crossover_detuning(p) == doctest::Approx(5.97).epsilon(1e-3));
        p.n_atoms = 2;
        CHECK(crossover_detuning(p) == doctest::Approx(0.0796).epsilon(1e-3));
        p.gamma_1d = 1e-12;
        CHECK(crossover_detuning(p) < 1e-11);
    }

    TEST_CASE("default sweep grid")
    {
        const std::vector<double> g = default_sweep_grid(-15.0, -0.2);
        CHECK(g.front() == doctest::Approx(-15.0));
        CHECK(g.back() == doctest::Approx(-0.2));
        for (std::size_t k = 1; k < g.size(); ++k) {
            const double step = g[k] - g[k - 1];
            CHECK(step > 0.0);
            if (std::abs(g[k - 1]) > 2.0 + 1e-9)
                CHECK(step == doctest::Approx(0.5));
            else
                CHECK(step == doctest::Approx(0.05));
        }
        const std::vector<double> up = default_sweep_grid(6.0, 0.5);
        CHECK(up.back() == doctest::Approx(0.5));
        CHECK(linear_sweep_grid(1.0, 2.0, 1).size() == 1);
        CHECK_THROWS_AS(linear_sweep_grid(1.0, 2.0, 0), ConfigError);
    }

    TEST_CASE("sweep far from resonance stays on the weak lattice")
    {
        SystemParams p;
        p.n_atoms = 10;
        const SweepResult res = adiabatic_sweep(p, -80.0, -60.0, 5);
        REQUIRE(res.records.size() == 5);
        for (const SweepRecord& r : res.records) {
            CHECK(std::abs(r.d_central - 0.95) < 0.002);
            CHECK(std::abs(r.d_mean - 0.95) < 0.002);
            CHECK(r.phase_slip.n_segments() == 1);
            CHECK(r.metrics.max_force < 1e-8);
            CHECK(r.population == doctest::Approx(1.0).epsilon(0.05));
        }
        CHECK(res.direction.find("negative") != std::string::npos);
    }

    TEST_CASE("sweep rejects non-monotone grids")
    {
        SystemParams p;
        p.n_atoms = 4;
        CHECK_THROWS_AS(adiabatic_sweep(p, {-10.0, -9.0, -9.5}), ConfigError);
    }

    TEST_CASE("sweep there and back is adiabatic")
    {
        SystemParams p;
        p.n_atoms = 20;
        const std::vector<double> down = default_sweep_grid(-15.0, -2.0);
        const SweepResult fwd = adiabatic_sweep(p, down);
        for (const SweepRecord& r : fwd.records)
            REQUIRE(r.phase_slip.n_segments() == 1);
        const std::vector<double> back(down.rbegin(), down.rend());
        const SweepResult rev = adiabatic_sweep(p, back, {}, fwd.records.back().state.z);
        for (std::size_t k = 0; k < down.size(); ++k) {
            const SweepRecord& a = fwd.records[k];
            const SweepRecord& b = rev.records[down.size() - 1 - k];
            REQUIRE(a.pump_detuning == b.pump_detuning);
            const RealVector da = (a.state.z.array() - a.state.z.mean()).matrix();
            const RealVector db = (b.state.z.array() - b.state.z.mean()).matrix();
            CHECK((da - db).cwiseAbs().maxCoeff() < 1e-3);
        }
    }

    TEST_CASE("equilibria do not depend on the external damping rate")
    {
        SystemParams p;
        p.n_atoms = 16;
        const SweepResult res = adiabatic_sweep(p, {-12.0, -4.0, -1.0, 2.0});
        for (const SweepRecord& r : res.records) {
            SystemParams q = p.with_detuning(r.pump_detuning);
            q.ext_damping = 0.5 * r.ext_damping;
            RelaxOptions opt;
            opt.newton_polish = false;
            const RelaxResult again = relax_to_steady_state(q, r.state, opt);
            const RealVector d = again.state.z - r.state.z;
            CHECK((d.array() - d.mean()).abs().maxCoeff() < 1e-4);
        }
    }

    TEST_CASE("central and mean lattice constants stay within a percent")
    {
        SystemParams p;
        p.n_atoms = 20;
        const SweepResult res = adiabatic_sweep(p, default_sweep_grid(-30.0, -5.0));
        // the ends of the chain compress a little more than the centre, and
        // more so closer to resonance
        double previous = 0.0;
        for (const SweepRecord& r : res.records) {
            const double gap = r.d_central / r.d_mean - 1.0;
            CHECK(gap > previous);
            CHECK(gap < 0.01);
            previous = gap;
        }
    }

    TEST_CASE("sweep export layout")
    {
        SystemParams p;
        p.n_atoms = 3;
        const SweepResult res = adiabatic_sweep(p, -40.0, -30.0, 2);
        std::ostringstream pos, sum;
        res.write_positions_csv(pos);
        res.write_summary_csv(sum);
        std::istringstream a(pos.str()), b(sum.str());
        std::string line;
        std::getline(a, line);
        CHECK(line == "delta,j,f_j");
        int rows = 0;
        while (std::getline(a, line))
            ++rows;
        CHECK(rows == 6);
        std::getline(b, line);
        CHECK(line == "delta,d_central,d_mean,pop_norm,n_segments,delta_f");
    }
}
