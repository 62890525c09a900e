#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "selforg/coherence.hpp"
#include "selforg/model.hpp"

namespace selforg {

/// Optical force on every atom (units hbar k0 Gamma):
///     F_j = -Gamma_1D Re[ sum_j' sigma_j conj(sigma_j') exp(-i k0 |z_j - z_j'|) sign(z_j - z_j') ]
/// with sign(0) = 0, so the self term drops out.
RealVector force(const SystemParams& params, const RealVector& z, const ComplexVector& sigma);

enum class IntegrationMode
{
    full,                 ///< coherences integrated alongside the motion
    adiabatic,            ///< coherences slaved to solve_instantaneous at every stage
    frozen_coherence,     ///< coherences held at their initial value
};

struct Trajectory
{
    std::vector<double> times;
    std::vector<ChainState> snapshots;
    std::vector<double> max_momentum;
    std::vector<double> max_force;
    double final_dt = 0.0;   ///< step size after any crossing-induced halvings
    std::int64_t steps = 0;

    void write_csv(std::ostream& os) const;
};

struct IntegrateOptions
{
    IntegrationMode mode = IntegrationMode::adiabatic;
    /// Store a snapshot every this many steps (the initial and final states
    /// are always stored).
    std::int64_t sample_every = 1;
    /// Steps are rejected when two neighbours come closer than this.
    double min_separation = 1e-6;
    int max_halvings = 10;
    /// Record max |p| and max |F| alongside each snapshot.
    bool record_metrics = true;
};

/// Fixed-step classical RK4 on
///     dz/dt = (omega_r/pi) p,   dp/dt = F - gamma_e p,   dsigma/dt = M sigma + i Omega.
/// A step that brings neighbours within min_separation (or produces NaN)
/// is retried with half the step size, and the smaller step is kept.  Once
/// it has been halved max_halvings times in total the corresponding error
/// is thrown.
Trajectory integrate(const SystemParams& params, const ChainState& initial, double dt,
                     double t_max, const IntegrateOptions& options = {});

/// Largest stable-and-accurate RK4 step for the given mode at the given state.
double suggested_time_step(const SystemParams& params, const ChainState& state,
                           IntegrationMode mode);

struct RelaxOptions
{
    double tol_momentum = 1e-6;
    double tol_force = 1e-8;
    /// Time budget in units of 1/Gamma.  Zero selects 2000 / gamma_e.
    double t_max = 0.0;
    /// Zero selects suggested_time_step.
    double dt = 0.0;
    IntegrationMode mode = IntegrationMode::adiabatic;
    /// Convergence is tested every this many steps.
    std::int64_t check_every = 10;
    /// Once max |F| drops below polish_trigger * Gamma_1D s0, try Newton
    /// iterations on F(z) = 0 and keep the result if it is converged, close
    /// by and linearly stable under the damped dynamics.
    bool newton_polish = true;
    double polish_trigger = 1e-2;
};

struct ConvergenceMetrics
{
    double max_momentum = 0.0;     ///< max_j |p_j - <p>|
    double max_force = 0.0;        ///< max_j |F_j - <F>|
    double com_momentum = 0.0;     ///< <p>
    double com_force = 0.0;        ///< <F>, the net radiation-pressure force per atom
};

struct RelaxResult
{
    ChainState state;
    ConvergenceMetrics metrics;
    double time = 0.0;
    std::int64_t steps = 0;
    bool noop = false;   ///< input already met the tolerances
    bool polished = false;   ///< finished by Newton iterations
};

/// Evaluates the convergence metrics at a state.  In adiabatic mode the
/// force uses sigma_inst; otherwise the stored coherences.
ConvergenceMetrics convergence_metrics(const SystemParams& params, const ChainState& state,
                                       IntegrationMode mode);

/// Integrates with external damping until relative momenta and forces fall
/// below the tolerances.  Requires params.ext_damping > 0.  Throws
/// TimeoutError after t_max.
RelaxResult relax_to_steady_state(const SystemParams& params, const ChainState& initial,
                                  const RelaxOptions& options = {});

/// Newton iterations on F(z) = 0 starting from a nearby state.  Returns
/// nothing unless the result meets tol_force, changes no neighbour spacing
/// by more than 5e-2, keeps the ordering and is linearly stable under the damped
/// dynamics.  Momenta are set to the centre-of-mass value of the input.
std::optional<ChainState> polish_equilibrium(const SystemParams& params, const ChainState& from,
                                             const RelaxOptions& options = {});

/// State with the given positions, zero momenta and sigma = sigma_inst.
ChainState state_at_rest(const SystemParams& params, const RealVector& z);

} // namespace selforg
