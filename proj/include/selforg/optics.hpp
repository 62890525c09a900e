#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "selforg/model.hpp"

namespace selforg {

/// Guided-probe response of a fixed configuration.  The reflection
/// amplitude is referenced to z = 0, the transmission amplitude to the
/// bare waveguide.
struct OpticalSpectrum
{
    std::vector<double> probe_detuning;
    std::vector<cplx> r;
    std::vector<cplx> t;
    /// Points where the coupled-dipole solve was ill-conditioned (r, t are NaN).
    std::vector<bool> flagged;

    std::size_t size() const noexcept { return probe_detuning.size(); }
    double reflectance(std::size_t i) const { return std::norm(r[i]); }
    double transmittance(std::size_t i) const { return std::norm(t[i]); }

    /// Columns delta_p, re_r, im_r, re_t, im_t, R, T.
    void write_csv(std::ostream& os) const;
};

/// r = -Gamma_1D / (Gamma - 2 i delta_p), t = 1 + r.
std::pair<cplx, cplx> single_atom_rt(const SystemParams& params, double probe_detuning);

/// Product of per-atom 2x2 transfer matrices and free propagation
/// exp(i k0 (z_{j+1} - z_j)) between neighbours.
OpticalSpectrum chain_spectrum_transfer(const SystemParams& params, const RealVector& z,
                                        const std::vector<double>& probe_grid, int threads = 1);

/// Coupled-dipole solution M sigma = -i Omega_p exp(i k0 z) at the probe
/// detuning, with r and t read off the radiated guided fields.
OpticalSpectrum chain_spectrum_spinmodel(const SystemParams& params, const RealVector& z,
                                         const std::vector<double>& probe_grid,
                                         int threads = 1);

struct BlochResult
{
    cplx bloch_phase;   ///< q d, principal arccos branch with Im >= 0
    cplx q;             ///< Bloch wavevector in units of 1/lambda0
    cplx zeta;
    cplx rhs;           ///< cos(k0 d) - zeta sin(k0 d)
    bool in_gap = false;   ///< |Re rhs| > 1 once absorption (Im zeta) is dropped
};

/// cos(q d) = cos(k0 d) - zeta sin(k0 d) for an infinite lattice of constant d.
/// Throws ParameterDomainError when Gamma' = 0.
BlochResult bloch_dispersion(const SystemParams& params, double d, double probe_detuning);

struct BandGap
{
    bool exists = false;
    double epsilon = 0.0;   ///< 2 pi (1 - d)
    double lower = 0.0;     ///< -Gamma_1D / epsilon
    double upper = 0.0;     ///< -epsilon Gamma'^2 / (4 Gamma_1D)

    /// Membership in [lower, upper] widened on both sides by
    /// `broadening` times the gap width.
    bool contains(double probe_detuning, double broadening = 0.0) const;
};

BandGap band_gap_edges(const SystemParams& params, double d);

/// 601 points over [-60, 60] merged with 201 points over [-2, 2].
std::vector<double> default_probe_grid();
std::vector<double> uniform_grid(double lo, double hi, int points);

} // namespace selforg
