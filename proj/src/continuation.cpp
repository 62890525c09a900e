#include "selforg/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <sstream>

#include "selforg/analytics.hpp"
#include "selforg/coherence.hpp"
#include "selforg/errors.hpp"

namespace selforg {

double wrap_half(double x)
{
    double w = x - std::floor(x);   // [0, 1)
    if (w > 0.5)
        w -= 1.0;
    return w;
}

namespace {

double circular_mean(const RealVector& f, int begin, int end)
{
    cplx acc(0.0);
    for (int j = begin; j < end; ++j)
        acc += std::polar(1.0, two_pi * f[j]);
    double m = std::arg(acc) / two_pi;   // (-0.5, 0.5]
    if (m <= 0.0)
        m += 1.0;
    return m;
}

} // namespace

PhaseSlip detect_phase_slip(const FractionalConfig& config, double jump_threshold)
{
    if (!(jump_threshold > 0.0 && jump_threshold < 0.5))
        throw ConfigError("detect_phase_slip: jump_threshold must lie in (0, 0.5)");

    const RealVector& f = config.f;
    const int n = static_cast<int>(f.size());
    PhaseSlip out;
    if (n == 0)
        return out;

    int begin = 0;
    for (int j = 1; j <= n; ++j) {
        const bool boundary = j < n && std::abs(wrap_half(f[j] - f[j - 1])) > jump_threshold;
        if (j == n || boundary) {
            out.segments.push_back({begin, j, circular_mean(f, begin, j)});
            if (boundary)
                out.boundary_jump.push_back(wrap_half(f[j] - f[j - 1]));
            begin = j;
        }
    }
    for (std::size_t s = 1; s < out.segments.size(); ++s)
        out.delta_f.push_back(wrap_half(out.segments[s].mean_f - out.segments[s - 1].mean_f));
    return out;
}

std::pair<double, double> lattice_constant(const RealVector& z)
{
    const Eigen::Index n = z.size();
    if (n < 2)
        throw ConfigError("lattice_constant requires at least two atoms");
    const double central = z[n / 2] - z[n / 2 - 1];
    const double mean = (z[n - 1] - z[0]) / static_cast<double>(n - 1);
    return {central, mean};
}

double crossover_detuning(const SystemParams& params)
{
    return params.n_atoms * params.gamma_1d / two_pi;
}

FractionalConfig anchored_fractions(const RealVector& z)
{
    if (z.size() == 0)
        return {};
    return fractional_positions((z.array() - z[0]).matrix());
}

SweepRecord make_record(const SystemParams& params, const ChainState& state,
                        double jump_threshold)
{
    SweepRecord rec;
    rec.pump_detuning = params.pump_detuning;
    rec.state = state;
    rec.fractions = anchored_fractions(state.z);
    rec.population = excited_population(state.sigma, params);
    if (state.size() >= 2)
        std::tie(rec.d_central, rec.d_mean) = lattice_constant(state.z);
    rec.phase_slip = detect_phase_slip(rec.fractions, jump_threshold);
    return rec;
}

std::vector<double> linear_sweep_grid(double start, double end, int n_steps)
{
    if (n_steps < 1)
        throw ConfigError("sweep requires n_steps >= 1");
    std::vector<double> grid(n_steps);
    for (int k = 0; k < n_steps; ++k)
        grid[k] = n_steps == 1 ? start : start + (end - start) * k / (n_steps - 1);
    return grid;
}

std::vector<double> default_sweep_grid(double start, double end)
{
    // integer arithmetic in units of the fine step 0.05
    constexpr double unit = 0.05;
    constexpr long coarse = 10, fine = 1, threshold = 40;
    const long a = std::lround(start / unit), b = std::lround(end / unit);
    std::vector<double> grid{a * unit};
    if (a == b)
        return grid;
    const long dir = b > a ? 1 : -1;
    long u = a;
    while (u != b) {
        long step = std::abs(u) > threshold ? coarse : fine;
        long next = u + dir * step;
        // do not jump over the edge of the fine window
        if (std::abs(u) > threshold && std::abs(next) < threshold &&
            (next > 0) == (u > 0))
            next = u > 0 ? threshold : -threshold;
        if ((dir > 0 && next > b) || (dir < 0 && next < b))
            next = b;
        u = next;
        grid.push_back(u * unit);
    }
    return grid;
}

void SweepResult::write_positions_csv(std::ostream& os) const
{
    os << "delta,j,f_j\n";
    char buf[96];
    for (const SweepRecord& rec : records) {
        for (Eigen::Index j = 0; j < rec.fractions.f.size(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g,%ld,%.17g\n", rec.pump_detuning,
                          static_cast<long>(j + 1), rec.fractions.f[j]);
            os << buf;
        }
    }
}

void SweepResult::write_summary_csv(std::ostream& os) const
{
    os << "delta,d_central,d_mean,pop_norm,n_segments,delta_f\n";
    char buf[192];
    for (const SweepRecord& rec : records) {
        const double df = rec.phase_slip.delta_f.empty() ? 0.0 : rec.phase_slip.delta_f.front();
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%d,%.17g\n", rec.pump_detuning,
                      rec.d_central, rec.d_mean, rec.population, rec.phase_slip.n_segments(), df);
        os << buf;
    }
}

SweepResult adiabatic_sweep(const SystemParams& params, const std::vector<double>& grid,
                            const SweepOptions& options, const RealVector& seed)
{
    params.validate();
    if (grid.empty())
        throw ConfigError("adiabatic_sweep: empty detuning grid");
    for (std::size_t k = 1; k < grid.size(); ++k) {
        const bool increasing = grid[1] > grid[0];
        if ((increasing && !(grid[k] > grid[k - 1])) || (!increasing && !(grid[k] < grid[k - 1])))
            throw ConfigError("adiabatic_sweep: detuning grid must be strictly monotone");
    }
    const double depth = params.n_atoms * params.gamma_1d;
    if (std::abs(grid.front()) < depth) {
        std::ostringstream os;
        os << "sweep starts at |delta| = " << std::abs(grid.front())
           << " below N Gamma_1D = " << depth << "; a weak-lattice seed is not accurate there";
        warn(os.str());
    }

    SweepResult result;
    result.params = params;
    result.grid = grid;
    const double first = grid.front(), last = grid.back();
    const char* side = first < 0.0 && last <= 0.0 ? "negative-side"
                       : first > 0.0 && last >= 0.0 ? "positive-side"
                                                    : "crossing-resonance";
    const char* sense = std::abs(last) < std::abs(first) ? "toward resonance" : "away from resonance";
    result.direction = std::string(side) + ", " + sense;

    RealVector z;
    if (seed.size() > 0) {
        z = seed;
        result.seed_description = "user-supplied positions";
    } else {
        z = weak_lattice(params.n_atoms).z;
        result.seed_description = "weak-scattering lattice";
    }

    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> jitter(-1.0, 1.0);

    for (double delta : grid) {
        SystemParams step = params.with_detuning(delta);
        if (!(step.ext_damping > 0.0))
            step.ext_damping = options.damping_factor * phonon_frequency_scale(step);

        RealVector start = z;
        if (options.perturbation > 0.0)
            for (Eigen::Index j = 0; j < start.size(); ++j)
                start[j] += options.perturbation * jitter(rng);

        RelaxResult relaxed;
        RelaxOptions relax = options.relax;
        for (int attempt = 0;; ++attempt) {
            try {
                relaxed = relax_to_steady_state(step, state_at_rest(step, start), relax);
                break;
            } catch (const TimeoutError& e) {
                if (attempt < options.timeout_retries) {
                    relax.t_max = 4.0 * e.time();
                    std::ostringstream os;
                    os << "sweep step delta = " << delta << " timed out, retrying with t_max = "
                       << relax.t_max;
                    warn(os.str());
                    continue;
                }
                std::ostringstream os;
                os << "sweep step delta = " << delta << ": " << e.what();
                throw TimeoutError(os.str(), e.max_momentum(), e.max_force(), e.time());
            }
        }
        // the previous equilibrium can already pass the tolerances here
        if (relaxed.noop && options.relax.newton_polish)
            if (auto polished = polish_equilibrium(step, relaxed.state, options.relax))
                relaxed.state = std::move(*polished);

        SweepRecord rec = make_record(step, relaxed.state, options.jump_threshold);
        rec.metrics = relaxed.metrics;
        rec.ext_damping = step.ext_damping;
        rec.relax_time = relaxed.time;
        rec.relax_steps = relaxed.steps;
        z = relaxed.state.z;
        if (options.on_record)
            options.on_record(rec);
        result.records.push_back(std::move(rec));
    }
    return result;
}

SweepResult adiabatic_sweep(const SystemParams& params, double start, double end, int n_steps,
                            const SweepOptions& options)
{
    return adiabatic_sweep(params, linear_sweep_grid(start, end, n_steps), options);
}

} // namespace selforg
