#pragma once

#include <iosfwd>
#include <vector>

#include "selforg/model.hpp"

namespace selforg {

/// K_jk = -dF_j/dz_k with sigma = sigma_inst(z), in hbar k0 Gamma / lambda0.
/// Computed analytically through d(M^-1) = -M^-1 (dM) M^-1.
RealMatrix stiffness_matrix(const SystemParams& params, const RealVector& z_eq);

/// Central finite-difference stiffness (step in lambda0) with sigma
/// re-solved at every displaced configuration.
RealMatrix stiffness_matrix_fd(const SystemParams& params, const RealVector& z_eq,
                               double step = 1e-6);

/// Result of comparing the analytic stiffness against finite differences at
/// step h and 2h.
struct GradientCheck
{
    double relative_error = 0.0;       ///< max |K - K_fd(h)| / max |K|
    double richardson_spread = 0.0;    ///< max |K_fd(h) - K_fd(2h)| / max |K|
};

GradientCheck check_stiffness_gradient(const SystemParams& params, const RealVector& z_eq,
                                       double step = 1e-6);

/// Stiffness with the coherences held fixed (no dependence of sigma on z).
RealMatrix frozen_stiffness_matrix(const SystemParams& params, const RealVector& z,
                                   const ComplexVector& sigma);

/// Weak-scattering stiffness: all coherences equal to the free value, so
/// K_jk = 2 pi Gamma_1D s0 sin(k0 |z_j - z_k|) off the diagonal and rows sum
/// to zero.  Circulant on the weak lattice.
RealMatrix weak_limit_stiffness(const SystemParams& params, const RealVector& z);

/// Momentum-damping matrix L in dp/dt = -K dz - L p, from the first-order
/// delay correction sigma_d = M^-1 (dz/dt . grad) sigma_inst.  Units 1/Gamma^-1;
/// positive eigenvalues damp.
RealMatrix damping_matrix(const SystemParams& params, const RealVector& z_eq);

/// Stiffness and damping sharing one factorization.
struct Linearization
{
    RealMatrix stiffness;
    RealMatrix damping;
};
Linearization linearize(const SystemParams& params, const RealVector& z_eq);

struct PhononModes
{
    /// omega + i gamma in units of Gamma; gamma > 0 is anti-damping.
    ComplexVector frequencies;
    /// Position components of each mode, one column per mode.
    ComplexMatrix vectors;
    std::vector<bool> zero_mode;
    std::vector<bool> damped;
    std::vector<bool> antidamped;

    int size() const noexcept { return static_cast<int>(frequencies.size()); }
    /// Largest gamma over all modes (the maximal anti-damping rate when positive).
    double max_growth_rate() const;

    /// Columns j, re_omega, im_omega, re_omega_norm, im_omega_norm; the
    /// normalized columns divide by `scale` (usually phonon_frequency_scale).
    void write_csv(std::ostream& os, double scale) const;
};

/// Normal modes of  x'' = -(omega_r/pi) K x - L x'  via the 2N x 2N
/// first-order companion matrix.  Of each conjugate pair the member with
/// Re omega >= 0 is kept; real eigenvalues (overdamped or free motion) are
/// filled in by decreasing magnitude.  Modes are sorted by |Re omega|.
PhononModes normal_modes(const RealMatrix& stiffness, const RealMatrix& damping,
                         const SystemParams& params);

} // namespace selforg
