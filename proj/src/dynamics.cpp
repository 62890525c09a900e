#include "selforg/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "selforg/errors.hpp"
#include "selforg/phonons.hpp"

namespace selforg {

RealVector force(const SystemParams& params, const RealVector& z, const ComplexVector& sigma)
{
    require_strictly_increasing(z);
    const Eigen::Index n = z.size();
    // s_j = sum_j' conj(sigma_j') exp(-i k0 |z_j - z_j'|) sign(z_j - z_j')
    ComplexVector s = ComplexVector::Zero(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index k = j + 1; k < n; ++k) {
            const cplx phase = std::polar(1.0, -two_pi * (z[k] - z[j]));
            s[j] -= std::conj(sigma[k]) * phase;   // z_j < z_k
            s[k] += std::conj(sigma[j]) * phase;
        }
    }
    RealVector out(n);
    for (Eigen::Index j = 0; j < n; ++j)
        out[j] = -params.gamma_1d * std::real(sigma[j] * s[j]);
    return out;
}

ChainState state_at_rest(const SystemParams& params, const RealVector& z)
{
    ChainState s;
    s.z = z;
    s.p = RealVector::Zero(z.size());
    s.sigma = solve_instantaneous(params, z);
    return s;
}

namespace {

struct Rates
{
    RealVector dz;
    RealVector dp;
    ComplexVector ds;
};

class RightHandSide
{
public:
    RightHandSide(const SystemParams& params, IntegrationMode mode)
        : params_(params), mode_(mode), velocity_(nondimensional_velocity_factor(params))
    {}

    /// Fills sigma in adiabatic mode, then evaluates the rates.
    Rates operator()(ChainState& s) const
    {
        if (mode_ == IntegrationMode::adiabatic)
            s.sigma = solve_instantaneous(params_, s.z);

        Rates r;
        r.dz = velocity_ * s.p;
        r.dp = force(params_, s.z, s.sigma) - params_.ext_damping * s.p;
        if (mode_ == IntegrationMode::full) {
            const ComplexMatrix m = build_coupling_matrix(params_, s.z).m;
            r.ds = m * s.sigma;
            r.ds.array() += cplx(0.0, params_.rabi);
        } else {
            r.ds = ComplexVector::Zero(s.size());
        }
        return r;
    }

private:
    const SystemParams& params_;
    IntegrationMode mode_;
    double velocity_;
};

ChainState advance(const ChainState& s, const Rates& r, double h)
{
    ChainState out;
    out.z = s.z + h * r.dz;
    out.p = s.p + h * r.dp;
    out.sigma = s.sigma + h * r.ds;
    return out;
}

enum class StepFailure { none, crossing, divergence };

StepFailure rk4_step(const RightHandSide& rhs, const ChainState& s, double h,
                     double min_separation, ChainState& out)
{
    try {
        ChainState s1 = s;
        const Rates k1 = rhs(s1);
        ChainState s2 = advance(s1, k1, 0.5 * h);
        const Rates k2 = rhs(s2);
        ChainState s3 = advance(s1, k2, 0.5 * h);
        const Rates k3 = rhs(s3);
        ChainState s4 = advance(s1, k3, h);
        const Rates k4 = rhs(s4);

        out.z = s1.z + (h / 6.0) * (k1.dz + 2.0 * k2.dz + 2.0 * k3.dz + k4.dz);
        out.p = s1.p + (h / 6.0) * (k1.dp + 2.0 * k2.dp + 2.0 * k3.dp + k4.dp);
        out.sigma = s1.sigma + (h / 6.0) * (k1.ds + 2.0 * k2.ds + 2.0 * k3.ds + k4.ds);
    } catch (const OrderingViolationError&) {
        return StepFailure::crossing;
    } catch (const DegenerateConfigurationError&) {
        return StepFailure::crossing;
    }

    if (!out.z.allFinite() || !out.p.allFinite() || !out.sigma.allFinite())
        return StepFailure::divergence;
    for (Eigen::Index j = 0; j + 1 < out.z.size(); ++j)
        if (out.z[j + 1] - out.z[j] < min_separation)
            return StepFailure::crossing;
    return StepFailure::none;
}

double max_abs_deviation(const RealVector& v, double mean)
{
    return v.size() == 0 ? 0.0 : (v.array() - mean).abs().maxCoeff();
}

} // namespace

void Trajectory::write_csv(std::ostream& os) const
{
    if (snapshots.empty())
        return;
    const int n = snapshots.front().size();
    os << "t";
    for (int j = 1; j <= n; ++j)
        os << ",z_" << j;
    for (int j = 1; j <= n; ++j)
        os << ",p_" << j;
    for (int j = 1; j <= n; ++j)
        os << ",re_sigma_" << j;
    for (int j = 1; j <= n; ++j)
        os << ",im_sigma_" << j;
    os << '\n';

    char buf[32];
    auto put = [&](double x) {
        std::snprintf(buf, sizeof buf, "%.17g", x);
        os << buf;
    };
    for (std::size_t i = 0; i < snapshots.size(); ++i) {
        const ChainState& s = snapshots[i];
        put(times[i]);
        for (int j = 0; j < n; ++j) { os << ','; put(s.z[j]); }
        for (int j = 0; j < n; ++j) { os << ','; put(s.p[j]); }
        for (int j = 0; j < n; ++j) { os << ','; put(s.sigma[j].real()); }
        for (int j = 0; j < n; ++j) { os << ','; put(s.sigma[j].imag()); }
        os << '\n';
    }
}

ConvergenceMetrics convergence_metrics(const SystemParams& params, const ChainState& state,
                                       IntegrationMode mode)
{
    const ComplexVector sigma = mode == IntegrationMode::adiabatic
                                    ? solve_instantaneous(params, state.z)
                                    : state.sigma;
    const RealVector f = force(params, state.z, sigma);
    ConvergenceMetrics m;
    m.com_momentum = state.p.size() ? state.p.mean() : 0.0;
    m.com_force = f.size() ? f.mean() : 0.0;
    m.max_momentum = max_abs_deviation(state.p, m.com_momentum);
    m.max_force = max_abs_deviation(f, m.com_force);
    return m;
}

double suggested_time_step(const SystemParams& params, const ChainState& state,
                           IntegrationMode mode)
{
    double dt = std::numeric_limits<double>::infinity();
    if (state.size() >= 2 && params.recoil > 0.0) {
        // Gershgorin bound on the stiffness spectrum gives the fastest phonon.
        const RealMatrix k = mode == IntegrationMode::frozen_coherence
                                 ? frozen_stiffness_matrix(params, state.z, state.sigma)
                                 : stiffness_matrix(params, state.z);
        const double bound = k.cwiseAbs().rowwise().sum().maxCoeff();
        const double omega_max = std::sqrt(nondimensional_velocity_factor(params) * bound);
        if (omega_max > 0.0)
            dt = std::min(dt, 1.0 / omega_max);
    }
    if (params.ext_damping > 0.0)
        dt = std::min(dt, 1.0 / params.ext_damping);
    if (mode == IntegrationMode::full) {
        const double spectral = std::hypot(params.pump_detuning, 0.5) +
                                0.5 * params.gamma_1d * (state.size() - 1);
        dt = std::min({dt, 0.1, 1.0 / spectral});
    }
    return std::isfinite(dt) ? dt : 1.0;
}

Trajectory integrate(const SystemParams& params, const ChainState& initial, double dt,
                     double t_max, const IntegrateOptions& options)
{
    initial.validate();
    if (!(dt > 0.0) || !(t_max >= 0.0))
        throw ConfigError("integrate: dt must be positive and t_max non-negative");

    const RightHandSide rhs(params, options.mode);
    Trajectory traj;
    ChainState current = initial;
    if (options.mode == IntegrationMode::adiabatic)
        current.sigma = solve_instantaneous(params, current.z);

    auto record = [&](double t) {
        traj.times.push_back(t);
        traj.snapshots.push_back(current);
        if (!options.record_metrics)
            return;
        // in adiabatic mode current.sigma already holds sigma_inst
        const RealVector f = force(params, current.z, current.sigma);
        traj.max_momentum.push_back(current.p.size() ? current.p.cwiseAbs().maxCoeff() : 0.0);
        traj.max_force.push_back(f.size() ? f.cwiseAbs().maxCoeff() : 0.0);
    };

    double t = 0.0;
    record(t);
    ChainState next;
    // halvings accumulate across steps, otherwise an approach to a crossing
    // could shrink the step forever
    const double dt_floor = std::ldexp(dt, -options.max_halvings);
    while (t < t_max * (1.0 - 1e-12)) {
        double h = std::min(dt, t_max - t);
        for (;;) {
            const StepFailure failure = rk4_step(rhs, current, h, options.min_separation, next);
            if (failure == StepFailure::none)
                break;
            if (h <= dt_floor * (1.0 + 1e-12)) {
                std::ostringstream os;
                os << "integrate: step rejected down to dt = " << h << " at t = " << t;
                if (failure == StepFailure::divergence)
                    throw DivergenceError(os.str() + " (non-finite state)");
                throw OrderingViolationError(os.str() + " (atoms about to cross)");
            }
            h *= 0.5;
            dt = std::min(dt, h);
        }
        current = std::move(next);
        if (options.mode == IntegrationMode::adiabatic)
            current.sigma = solve_instantaneous(params, current.z);
        t += h;
        ++traj.steps;
        if (options.sample_every > 0 && traj.steps % options.sample_every == 0)
            record(t);
    }
    if (traj.times.back() != t)
        record(t);
    traj.final_dt = dt;
    return traj;
}

// Newton iterations on the relative forces with the analytic stiffness.  The
// translation null space is lifted by adding a multiple of 11^T.
std::optional<ChainState> polish_equilibrium(const SystemParams& params, const ChainState& from,
                                             const RelaxOptions& options)
{
    const Eigen::Index n = from.size();
    RealVector z = from.z;
    // Bounded per neighbour spacing, not per atom: near resonance the whole
    // chain breathes, so end atoms move by tenths of a wavelength between
    // adjacent sweep points while each spacing changes by ~1e-3.
    const double max_shift = 5e-2;
    const RealVector gaps0 = from.z.tail(n - 1) - from.z.head(n - 1);
    for (int iter = 0; iter < 8; ++iter) {
        ComplexVector sigma = solve_instantaneous(params, z);
        RealVector f = force(params, z, sigma);
        f.array() -= f.mean();
        if (f.cwiseAbs().maxCoeff() < 1e-4 * options.tol_force)
            break;
        RealMatrix k = stiffness_matrix(params, z);
        const double lift = k.diagonal().cwiseAbs().mean() + 1e-300;
        k.array() += lift / static_cast<double>(n);
        RealVector dz = k.partialPivLu().solve(f);
        if (!dz.allFinite())
            return std::nullopt;
        z += dz;
        const RealVector gaps = z.tail(n - 1) - z.head(n - 1);
        if (n > 1 && (gaps - gaps0).cwiseAbs().maxCoeff() > max_shift)
            return std::nullopt;
        for (Eigen::Index j = 1; j < n; ++j)
            if (!(z[j] > z[j - 1]))
                return std::nullopt;
    }

    ChainState out = state_at_rest(params, z);
    out.p.setConstant(from.p.mean());
    if (options.mode != IntegrationMode::adiabatic)
        out.sigma = solve_instantaneous(params, z);
    if (convergence_metrics(params, out, options.mode).max_force >= options.tol_force)
        return std::nullopt;

    // reject saddles: every mode of the damped linearization must decay
    RealMatrix l = options.mode == IntegrationMode::adiabatic ? RealMatrix::Zero(n, n)
                                                              : damping_matrix(params, z);
    l.diagonal().array() += params.ext_damping;
    const double scale = phonon_frequency_scale(params);
    const double c = nondimensional_velocity_factor(params);
    RealMatrix a = RealMatrix::Zero(2 * n, 2 * n);
    a.topRightCorner(n, n).diagonal().setConstant(scale);
    a.bottomLeftCorner(n, n) = -(c / scale) * stiffness_matrix(params, z);
    a.bottomRightCorner(n, n) = -l;
    Eigen::EigenSolver<RealMatrix> es(a, false);
    if (es.info() != Eigen::Success || es.eigenvalues().real().maxCoeff() > 1e-6 * scale)
        return std::nullopt;
    return out;
}

RelaxResult relax_to_steady_state(const SystemParams& params, const ChainState& initial,
                                  const RelaxOptions& options)
{
    if (!(params.ext_damping > 0.0))
        throw ConfigError("relax_to_steady_state requires ext_damping > 0");
    initial.validate();

    RelaxResult result;
    result.state = initial;
    if (options.mode == IntegrationMode::adiabatic)
        result.state.sigma = solve_instantaneous(params, initial.z);

    auto converged = [&](const ConvergenceMetrics& m) {
        return m.max_momentum < options.tol_momentum && m.max_force < options.tol_force;
    };

    result.metrics = convergence_metrics(params, result.state, options.mode);
    if (converged(result.metrics)) {
        result.noop = true;
        return result;
    }

    const double t_max = options.t_max > 0.0 ? options.t_max : 2000.0 / params.ext_damping;
    double dt = options.dt > 0.0 ? options.dt
                                 : suggested_time_step(params, result.state, options.mode);

    IntegrateOptions iopt;
    iopt.mode = options.mode;
    iopt.sample_every = 0;
    iopt.record_metrics = false;
    const std::int64_t chunk = std::max<std::int64_t>(options.check_every, 1);
    const double s0 = single_atom_population(params);
    double polish_below = options.polish_trigger * params.gamma_1d * s0;

    while (result.time < t_max) {
        const double span = std::min(dt * static_cast<double>(chunk), t_max - result.time);
        Trajectory traj = integrate(params, result.state, dt, span, iopt);
        result.state = std::move(traj.snapshots.back());
        result.time += traj.times.back();
        result.steps += traj.steps;
        dt = traj.final_dt;

        result.metrics = convergence_metrics(params, result.state, options.mode);
        const bool done = converged(result.metrics);
        if (options.newton_polish && (done || result.metrics.max_force < polish_below)) {
            if (auto polished = polish_equilibrium(params, result.state, options)) {
                result.state = std::move(*polished);
                result.metrics = convergence_metrics(params, result.state, options.mode);
                result.polished = true;
                return result;
            }
            polish_below = 0.5 * result.metrics.max_force;
        }
        if (done)
            return result;
    }

    std::ostringstream os;
    os << "relaxation did not converge within t = " << t_max << " (max |p| = "
       << result.metrics.max_momentum << ", max |F| = " << result.metrics.max_force << ")";
    throw TimeoutError(os.str(), result.metrics.max_momentum, result.metrics.max_force,
                       result.time);
}

} // namespace selforg
