#pragma once

#include <utility>

#include "selforg/model.hpp"

namespace selforg {

/// Minimum-energy lattice of the weak-scattering potential.
struct WeakScatteringSolution
{
    double lattice_constant = 0.0;   ///< 1 - 1/2N, in lambda0
    RealVector z;                    ///< z_j = (j - 1) d, z_1 = 0
    FractionalConfig fractions;      ///< f_j = 1 - (j - 1)/2N
    double energy = 0.0;             ///< exact finite-N pair sum, hbar Gamma_1D s0
    double energy_asymptote = 0.0;   ///< large-N value -N^2/pi
};

WeakScatteringSolution weak_lattice(int n_atoms);

/// (1/2) sum_{j,j'} sin(k0 |z_j - z_j'|), units hbar Gamma_1D s0.
double potential_energy(const RealVector& z);

struct EffectiveLattice
{
    double transmission_phase = 0.0;   ///< single-atom phase shift theta_t (rad)
    double wavelength = 1.0;           ///< lambda_eff / lambda0
    double lattice_constant = 1.0;     ///< d_eff = lambda_eff (1 - 1/2N)
};

/// Effective-index estimate of the lattice constant at pump detuning `detuning`.
EffectiveLattice effective_lattice_constant(const SystemParams& params, double detuning);

/// Weak-scattering phonon frequencies omega_ph,j for wave numbers 2 pi j / N,
/// j = 0..N-1 (units Gamma; s0 taken at params.pump_detuning).
RealVector weak_phonon_spectrum(const SystemParams& params, int n_atoms);

/// Order-of-magnitude anti-damping estimate N^2 Gamma_1D^2 s0 omega_r / delta^2,
/// with s0 taken at params.pump_detuning.
double weak_max_antidamping(const SystemParams& params, int n_atoms, double detuning);

struct CavityEstimate
{
    double peak_reflectance = 0.0;   ///< 1 - 4 Gamma' / (N Gamma_1D), clipped to [0, 1]
    double fwhm = 0.0;               ///< N Gamma_1D / sqrt(2)
};

/// Two atomic mirrors forming a cavity (phase-slip configuration).
CavityEstimate cavity_model(const SystemParams& params, int n_atoms);

} // namespace selforg
