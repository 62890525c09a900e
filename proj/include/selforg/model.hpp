#pragma once

#include <complex>
#include <functional>
#include <string>

#include <Eigen/Dense>

namespace selforg {

using cplx = std::complex<double>;
using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

/*
 * Units used throughout: the total single-atom decay rate Gamma is 1 (time
 * in 1/Gamma), lengths are in units of the resonant wavelength lambda0
 * (so k0 = 2 pi), and momenta are in units of hbar k0.  Forces come out in
 * hbar k0 Gamma.
 */
struct SystemParams
{
    int n_atoms = 150;
    double gamma_1d = 0.25;       ///< guided-mode emission rate
    double rabi = 0.05;           ///< pump Rabi frequency
    double pump_detuning = -15.0; ///< omega_pump - omega_0
    double recoil = 1e-3;         ///< hbar k0^2 / 2m
    double ext_damping = 0.0;     ///< external momentum damping rate

    /// Free-space emission rate, always 1 - gamma_1d.
    double gamma_prime() const noexcept { return 1.0 - gamma_1d; }

    /// Throws ConfigError when a field is out of range.  Emits a warning
    /// (see set_warning_handler) when the recoil frequency is not small.
    void validate() const;

    SystemParams with_detuning(double delta) const
    {
        SystemParams out = *this;
        out.pump_detuning = delta;
        return out;
    }

    bool operator==(const SystemParams&) const = default;
};

/// Positions, momenta and coherences of the chain at one instant.
struct ChainState
{
    RealVector z;
    RealVector p;
    ComplexVector sigma;

    int size() const noexcept { return static_cast<int>(z.size()); }

    /// Checks sizes, finiteness and strict ordering of z.
    void validate() const;
};

/// Positions modulo lambda0, each in (0, 1].
struct FractionalConfig
{
    RealVector f;
};

/// z_j = n_j + f_j with integer n_j and 0 < f_j <= 1.
FractionalConfig fractional_positions(const RealVector& z);

/// Coefficient of p in dz/dt for the dimensionless variables: omega_r / pi.
///
/// From dz/dt = p/m with z in lambda0, p in hbar k0 and t in 1/Gamma:
/// hbar k0 / (m lambda0 Gamma) = 2 omega_r / (k0 lambda0 Gamma) = omega_r / pi.
double nondimensional_velocity_factor(const SystemParams& params);

/// Single, independently driven atom: i Omega / (Gamma/2 - i delta).
cplx free_coherence(const SystemParams& params);

/// s0 = Omega^2 / (delta^2 + Gamma^2/4).  Recomputed on every call.
double single_atom_population(const SystemParams& params);

/// Natural phonon frequency scale sqrt(omega_r s0 N Gamma_1D).
double phonon_frequency_scale(const SystemParams& params);

/// Damping used when ext_damping is left at zero: the phonon frequency scale.
double default_ext_damping(const SystemParams& params);

/// Throws DegenerateConfigurationError if two neighbours coincide and
/// OrderingViolationError if z is not increasing.
void require_strictly_increasing(const RealVector& z);

using WarningHandler = std::function<void(const std::string&)>;

/// Replaces the sink for non-fatal warnings (stderr by default).  Passing
/// an empty function silences warnings.
void set_warning_handler(WarningHandler handler);
void warn(const std::string& message);

} // namespace selforg
