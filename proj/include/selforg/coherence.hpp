#pragma once

#include <utility>

#include "selforg/model.hpp"

namespace selforg {

/// Coupling matrix of the linear coherence equations
///     d sigma / dt = M sigma + i Omega,
/// with M_jj = i delta - 1/2 and M_jk = -(Gamma_1D / 2) exp(i k0 |z_j - z_k|).
struct CouplingMatrix
{
    ComplexMatrix m;
};

/// Condition-number guard for the coherence solve.
inline constexpr double max_condition_number = 1e12;

CouplingMatrix build_coupling_matrix(const SystemParams& params, const RealVector& z);

/// Same matrix at an arbitrary detuning (pump or probe).
CouplingMatrix build_coupling_matrix(const SystemParams& params, const RealVector& z,
                                     double detuning);

/// Factorized coupling matrix together with its steady-state coherences.
/// Shared by the force, stiffness and damping evaluations so that one LU
/// serves all of them.
struct InstantaneousSolution
{
    ComplexMatrix m;
    Eigen::PartialPivLU<ComplexMatrix> lu;
    ComplexVector sigma;
    double condition = 1.0;
};

/// Solves M sigma = -i drive.  Throws IllConditionedError above
/// max_condition_number.
InstantaneousSolution solve_driven(ComplexMatrix m, const ComplexVector& drive);

/// Steady-state coherences for uniform pumping at fixed positions:
/// sigma_inst = -i M^-1 Omega (1, ..., 1).
InstantaneousSolution solve_instantaneous_full(const SystemParams& params, const RealVector& z);

ComplexVector solve_instantaneous(const SystemParams& params, const RealVector& z);

/// mean_j |sigma_j|^2 normalized by s0.
double excited_population(const ComplexVector& sigma, const SystemParams& params);

/// Semiclassical emission rates into the right (+) and left (-) guided
/// modes, (Gamma_1D/2) |sum_j sigma_j exp(-/+ i k0 z_j)|^2.
std::pair<double, double> collective_emission_rates(const ComplexVector& sigma,
                                                    const RealVector& z,
                                                    const SystemParams& params);

} // namespace selforg
