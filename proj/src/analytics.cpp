#include "selforg/analytics.hpp"

#include <algorithm>
#include <cmath>

#include "selforg/errors.hpp"

namespace selforg {

WeakScatteringSolution weak_lattice(int n_atoms)
{
    if (n_atoms < 2)
        throw ConfigError("weak_lattice requires at least two atoms");
    WeakScatteringSolution out;
    const double n = n_atoms;
    out.lattice_constant = 1.0 - 1.0 / (2.0 * n);
    out.z.resize(n_atoms);
    out.fractions.f.resize(n_atoms);
    for (int j = 0; j < n_atoms; ++j) {
        out.z[j] = j * out.lattice_constant;
        out.fractions.f[j] = 1.0 - j / (2.0 * n);
    }
    out.energy = potential_energy(out.z);
    out.energy_asymptote = -n * n / pi;
    return out;
}

double potential_energy(const RealVector& z)
{
    double sum = 0.0;
    for (Eigen::Index j = 0; j < z.size(); ++j)
        for (Eigen::Index k = j + 1; k < z.size(); ++k)
            sum += std::sin(two_pi * std::abs(z[k] - z[j]));
    // each unordered pair appears twice in the double sum, halved by the prefactor
    return sum;
}

EffectiveLattice effective_lattice_constant(const SystemParams& params, double detuning)
{
    const double g1d = params.gamma_1d;
    EffectiveLattice out;
    out.transmission_phase =
        -std::atan(2.0 * g1d * detuning / (1.0 - g1d + 4.0 * detuning * detuning));
    out.wavelength = 1.0 - out.transmission_phase / two_pi;
    out.lattice_constant = out.wavelength * (1.0 - 1.0 / (2.0 * params.n_atoms));
    return out;
}

RealVector weak_phonon_spectrum(const SystemParams& params, int n_atoms)
{
    if (n_atoms < 2)
        throw ConfigError("weak_phonon_spectrum requires at least two atoms");
    const double n = n_atoms;
    const double prefactor =
        2.0 * params.recoil * single_atom_population(params) * params.gamma_1d;
    const double cot = 1.0 / std::tan(pi / (2.0 * n));
    RealVector out(n_atoms);
    out[0] = 0.0;
    for (int j = 1; j < n_atoms; ++j) {
        const double bracket =
            cot - std::sin(pi / n) / (std::cos(two_pi * j / n) - std::cos(pi / n));
        out[j] = std::sqrt(prefactor * std::max(bracket, 0.0));
    }
    return out;
}

double weak_max_antidamping(const SystemParams& params, int n_atoms, double detuning)
{
    const double n = n_atoms;
    const double g = params.gamma_1d;
    return n * n * g * g * single_atom_population(params) *
           params.recoil / (detuning * detuning);
}

CavityEstimate cavity_model(const SystemParams& params, int n_atoms)
{
    CavityEstimate out;
    const double depth = n_atoms * params.gamma_1d;
    out.peak_reflectance = std::clamp(1.0 - 4.0 * params.gamma_prime() / depth, 0.0, 1.0);
    out.fwhm = depth / std::sqrt(2.0);
    return out;
}

} // namespace selforg
