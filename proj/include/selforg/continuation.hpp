#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "selforg/dynamics.hpp"
#include "selforg/model.hpp"

namespace selforg {

/// Chain split into internally regular pieces by jumps in f.
struct PhaseSlip
{
    struct Segment
    {
        int begin = 0;   ///< first atom (0-based)
        int end = 0;     ///< one past the last atom
        double mean_f = 0.0;   ///< circular mean of f over the segment, in (0, 1]
    };

    std::vector<Segment> segments;
    /// Wrapped difference of consecutive segment means, in (-0.5, 0.5].
    std::vector<double> delta_f;
    /// Wrapped jump f_b - f_{b-1} at each boundary b = segments[i+1].begin.
    std::vector<double> boundary_jump;

    int n_segments() const noexcept { return static_cast<int>(segments.size()); }
};

/// Representative of x modulo 1 in (-0.5, 0.5].
double wrap_half(double x);

/// Splits where the wrapped |f_{j+1} - f_j| exceeds jump_threshold.
PhaseSlip detect_phase_slip(const FractionalConfig& config, double jump_threshold = 0.1);

/// (central pair spacing, mean spacing), in lambda0.
std::pair<double, double> lattice_constant(const RealVector& z);

/// Scaling estimate N Gamma_1D / 2 pi of the superradiant crossover.
double crossover_detuning(const SystemParams& params);

/// Fractions with the paper convention z_1 = 0 (so f_1 = 1).
FractionalConfig anchored_fractions(const RealVector& z);

struct SweepRecord
{
    double pump_detuning = 0.0;
    FractionalConfig fractions;
    ChainState state;
    double population = 0.0;   ///< mean |sigma|^2 / s0
    double d_central = 0.0;
    double d_mean = 0.0;
    PhaseSlip phase_slip;
    ConvergenceMetrics metrics;
    double ext_damping = 0.0;
    double relax_time = 0.0;
    std::int64_t relax_steps = 0;
};

struct SweepOptions
{
    RelaxOptions relax;
    /// Used when params.ext_damping is zero: gamma_e = factor * sqrt(omega_r s0 N Gamma_1D)
    /// re-evaluated at every detuning.
    double damping_factor = 1.0;
    /// A step that times out is retried from the same seed with four times
    /// the time budget, at most this many times.  Near a slip the softest
    /// mode can relax far slower than the default budget allows.
    int timeout_retries = 2;
    /// Uniform random displacement (lambda0) added to the seed of every step.
    double perturbation = 0.0;
    std::uint64_t seed = 0;
    double jump_threshold = 0.1;
    /// Called after every converged step.
    std::function<void(const SweepRecord&)> on_record;
};

struct SweepResult
{
    std::vector<SweepRecord> records;
    SystemParams params;
    std::vector<double> grid;
    std::string direction;   ///< "toward-resonance-from-below", "...-from-above", "outward"
    std::string seed_description;

    /// One row per (delta, atom): delta, j, f_j.
    void write_positions_csv(std::ostream& os) const;
    /// delta, d_central, d_mean, pop_norm, n_segments, delta_f.
    void write_summary_csv(std::ostream& os) const;
};

/// Coarse 0.5 steps while |delta| > 2, 0.05 steps inside, from start to end
/// inclusive.
std::vector<double> default_sweep_grid(double start, double end);

std::vector<double> linear_sweep_grid(double start, double end, int n_steps);

/// Relaxes at every grid detuning, seeding each step from the previous
/// converged state and the first from `seed` (weak lattice when empty).
/// Timeouts are rethrown with the failing detuning in the message.
SweepResult adiabatic_sweep(const SystemParams& params, const std::vector<double>& grid,
                            const SweepOptions& options = {}, const RealVector& seed = {});

SweepResult adiabatic_sweep(const SystemParams& params, double start, double end, int n_steps,
                            const SweepOptions& options = {});

/// Builds a record (diagnostics included) from a converged state.
SweepRecord make_record(const SystemParams& params, const ChainState& state,
                        double jump_threshold = 0.1);

} // namespace selforg
