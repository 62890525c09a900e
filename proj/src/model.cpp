#include "selforg/model.hpp"

#include <cmath>
#include <iostream>
#include <mutex>
#include <sstream>

#include "selforg/errors.hpp"

namespace selforg {

namespace {

std::mutex warning_mutex;
WarningHandler warning_handler = [](const std::string& message) {
    std::cerr << "warning: " << message << '\n';
};

} // namespace

void set_warning_handler(WarningHandler handler)
{
    std::lock_guard lock(warning_mutex);
    warning_handler = std::move(handler);
}

void warn(const std::string& message)
{
    std::lock_guard lock(warning_mutex);
    if (warning_handler)
        warning_handler(message);
}

void SystemParams::validate() const
{
    auto fail = [](const std::string& msg) { throw ConfigError("invalid parameters: " + msg); };

    if (n_atoms < 1)
        fail("n_atoms must be positive");
    if (!std::isfinite(gamma_1d) || gamma_1d <= 0.0 || gamma_1d > 1.0)
        fail("gamma_1d must lie in (0, 1]");
    if (!std::isfinite(rabi) || rabi < 0.0)
        fail("rabi must be finite and non-negative");
    if (!std::isfinite(pump_detuning))
        fail("pump_detuning must be finite");
    if (!std::isfinite(recoil) || recoil < 0.0)
        fail("recoil must be finite and non-negative");
    if (!std::isfinite(ext_damping) || ext_damping < 0.0)
        fail("ext_damping must be finite and non-negative");

    if (recoil >= 0.1) {
        std::ostringstream os;
        os << "recoil = " << recoil
           << " is not small compared to Gamma; the adiabatic-following picture breaks down";
        warn(os.str());
    }
}

void require_strictly_increasing(const RealVector& z)
{
    for (Eigen::Index j = 0; j + 1 < z.size(); ++j) {
        if (z[j + 1] == z[j]) {
            std::ostringstream os;
            os << "atoms " << j + 1 << " and " << j + 2 << " coincide at z = " << z[j];
            throw DegenerateConfigurationError(os.str());
        }
        if (z[j + 1] < z[j]) {
            std::ostringstream os;
            os << "ordering violation: z[" << j + 2 << "] = " << z[j + 1] << " < z[" << j + 1
               << "] = " << z[j];
            throw OrderingViolationError(os.str());
        }
    }
}

void ChainState::validate() const
{
    if (p.size() != z.size() || sigma.size() != z.size())
        throw InvalidStateError("chain state vectors have mismatched lengths");
    if (!z.allFinite() || !p.allFinite() || !sigma.allFinite())
        throw InvalidStateError("chain state contains non-finite entries");
    require_strictly_increasing(z);
}

FractionalConfig fractional_positions(const RealVector& z)
{
    if (!z.allFinite())
        throw InvalidStateError("fractional_positions: non-finite position");
    FractionalConfig out{RealVector(z.size())};
    for (Eigen::Index j = 0; j < z.size(); ++j) {
        double f = z[j] - std::ceil(z[j] - 1.0);
        // ceil(x - 1) can round so that f lands on 0 or just above 1
        if (f <= 0.0)
            f += 1.0;
        if (f > 1.0)
            f -= 1.0;
        out.f[j] = f;
    }
    return out;
}

double nondimensional_velocity_factor(const SystemParams& params)
{
    return params.recoil / pi;
}

cplx free_coherence(const SystemParams& params)
{
    return cplx(0.0, params.rabi) / cplx(0.5, -params.pump_detuning);
}

double single_atom_population(const SystemParams& params)
{
    const double d = params.pump_detuning;
    return params.rabi * params.rabi / (d * d + 0.25);
}

double phonon_frequency_scale(const SystemParams& params)
{
    return std::sqrt(params.recoil * single_atom_population(params) * params.n_atoms *
                     params.gamma_1d);
}

double default_ext_damping(const SystemParams& params)
{
    return phonon_frequency_scale(params);
}

} // namespace selforg
