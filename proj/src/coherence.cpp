#include "selforg/coherence.hpp"

#include <cmath>
#include <sstream>

#include "selforg/errors.hpp"

namespace selforg {

CouplingMatrix build_coupling_matrix(const SystemParams& params, const RealVector& z,
                                     double detuning)
{
    require_strictly_increasing(z);
    const Eigen::Index n = z.size();
    const cplx diagonal(-0.5, detuning);
    const double half_g = 0.5 * params.gamma_1d;

    CouplingMatrix out{ComplexMatrix(n, n)};
    for (Eigen::Index j = 0; j < n; ++j) {
        out.m(j, j) = diagonal;
        for (Eigen::Index k = j + 1; k < n; ++k) {
            const cplx c = -half_g * std::polar(1.0, two_pi * (z[k] - z[j]));
            out.m(j, k) = c;
            out.m(k, j) = c;
        }
    }
    return out;
}

CouplingMatrix build_coupling_matrix(const SystemParams& params, const RealVector& z)
{
    return build_coupling_matrix(params, z, params.pump_detuning);
}

InstantaneousSolution solve_driven(ComplexMatrix m, const ComplexVector& drive)
{
    InstantaneousSolution out;
    out.m = std::move(m);
    out.lu.compute(out.m);

    const double rcond = out.lu.rcond();
    out.condition = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
    if (!(out.condition <= max_condition_number)) {
        std::ostringstream os;
        os << "coupling matrix is numerically singular (condition estimate " << out.condition
           << ")";
        throw IllConditionedError(os.str(), out.condition);
    }

    const ComplexVector rhs = cplx(0.0, -1.0) * drive;
    out.sigma = out.lu.solve(rhs);
    // one step of iterative refinement keeps the residual at round-off level
    const ComplexVector residual = rhs - out.m * out.sigma;
    out.sigma += out.lu.solve(residual);
    return out;
}

InstantaneousSolution solve_instantaneous_full(const SystemParams& params, const RealVector& z)
{
    const ComplexVector drive = ComplexVector::Constant(z.size(), cplx(params.rabi, 0.0));
    return solve_driven(build_coupling_matrix(params, z).m, drive);
}

ComplexVector solve_instantaneous(const SystemParams& params, const RealVector& z)
{
    return solve_instantaneous_full(params, z).sigma;
}

double excited_population(const ComplexVector& sigma, const SystemParams& params)
{
    if (sigma.size() == 0)
        return 0.0;
    return sigma.squaredNorm() / static_cast<double>(sigma.size()) /
           single_atom_population(params);
}

std::pair<double, double> collective_emission_rates(const ComplexVector& sigma,
                                                    const RealVector& z,
                                                    const SystemParams& params)
{
    cplx forward(0.0), backward(0.0);
    for (Eigen::Index j = 0; j < sigma.size(); ++j) {
        const cplx phase = std::polar(1.0, two_pi * z[j]);
        forward += sigma[j] * std::conj(phase);
        backward += sigma[j] * phase;
    }
    const double half_g = 0.5 * params.gamma_1d;
    return {half_g * std::norm(forward), half_g * std::norm(backward)};
}

} // namespace selforg
