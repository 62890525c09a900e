#include "selforg/optics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include "selforg/coherence.hpp"
#include "selforg/errors.hpp"
#include "selforg/parallel.hpp"

namespace selforg {

namespace {

using Mat2 = Eigen::Matrix2cd;

constexpr double overflow_guard = 1e150;

/// (right-moving, left-moving) amplitudes on the left of a point scatterer
/// mapped to those on its right.
Mat2 scatterer_matrix(cplx r, cplx t)
{
    Mat2 m;
    m << (t * t - r * r) / t, r / t,
         -r / t, 1.0 / t;
    return m;
}

Mat2 propagation(double distance)
{
    Mat2 m = Mat2::Zero();
    m(0, 0) = std::polar(1.0, two_pi * distance);
    m(1, 1) = std::polar(1.0, -two_pi * distance);
    return m;
}

std::pair<cplx, cplx> chain_rt(const SystemParams& params, const RealVector& z, double detuning)
{
    const auto [r1, t1] = single_atom_rt(params, detuning);
    // a lossless atom on resonance is a perfect mirror; its transfer matrix does not exist
    if (std::abs(t1) < 1e-14)
        return {r1 * std::polar(1.0, 2.0 * two_pi * z[0]), cplx(0.0)};
    const Mat2 atom = scatterer_matrix(r1, t1);

    Mat2 total = propagation(z[0]);
    double log_scale = 0.0;
    for (Eigen::Index j = 0; j < z.size(); ++j) {
        total = atom * total;
        const double distance = j + 1 < z.size() ? z[j + 1] - z[j] : -z[j];
        total = propagation(distance) * total;
        const double big = total.cwiseAbs().maxCoeff();
        if (big > overflow_guard) {
            total /= big;
            log_scale += std::log(big);
        }
    }
    const cplx r = -total(1, 0) / total(1, 1);
    // det(total) = exp(-2 log_scale) since every factor is unimodular
    const cplx t = std::exp(-log_scale) / total(1, 1);
    return {r, t};
}

std::pair<cplx, cplx> spinmodel_rt(const SystemParams& params, const RealVector& z,
                                   double detuning)
{
    ComplexVector drive(z.size());
    for (Eigen::Index j = 0; j < z.size(); ++j)
        drive[j] = std::polar(1.0, two_pi * z[j]);
    const ComplexVector sigma =
        solve_driven(build_coupling_matrix(params, z, detuning).m, drive).sigma;

    cplx back(0.0), forward(0.0);
    for (Eigen::Index j = 0; j < z.size(); ++j) {
        back += sigma[j] * drive[j];
        forward += sigma[j] * std::conj(drive[j]);
    }
    const cplx coupling(0.0, 0.5 * params.gamma_1d);
    return {coupling * back, 1.0 + coupling * forward};
}

template <class Solver>
OpticalSpectrum evaluate(const std::vector<double>& grid, int threads, Solver&& solve)
{
    OpticalSpectrum out;
    out.probe_detuning = grid;
    out.r.resize(grid.size());
    out.t.resize(grid.size());
    std::vector<char> flagged(grid.size(), 0);
    parallel_for(grid.size(), threads, [&](std::size_t i) {
        try {
            std::tie(out.r[i], out.t[i]) = solve(grid[i]);
        } catch (const IllConditionedError&) {
            const double nan = std::numeric_limits<double>::quiet_NaN();
            out.r[i] = out.t[i] = cplx(nan, nan);
            flagged[i] = 1;
        }
    });
    out.flagged.assign(flagged.begin(), flagged.end());
    return out;
}

} // namespace

void OpticalSpectrum::write_csv(std::ostream& os) const
{
    os << "delta_p,re_r,im_r,re_t,im_t,R,T\n";
    char buf[256];
    for (std::size_t i = 0; i < size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      probe_detuning[i], r[i].real(), r[i].imag(), t[i].real(), t[i].imag(),
                      reflectance(i), transmittance(i));
        os << buf;
    }
}

std::pair<cplx, cplx> single_atom_rt(const SystemParams& params, double probe_detuning)
{
    const cplx r = -params.gamma_1d / cplx(1.0, -2.0 * probe_detuning);
    return {r, 1.0 + r};
}

OpticalSpectrum chain_spectrum_transfer(const SystemParams& params, const RealVector& z,
                                        const std::vector<double>& probe_grid, int threads)
{
    require_strictly_increasing(z);
    if (z.size() == 0)
        throw InvalidStateError("chain_spectrum_transfer: empty configuration");
    return evaluate(probe_grid, threads,
                    [&](double detuning) { return chain_rt(params, z, detuning); });
}

OpticalSpectrum chain_spectrum_spinmodel(const SystemParams& params, const RealVector& z,
                                         const std::vector<double>& probe_grid, int threads)
{
    require_strictly_increasing(z);
    if (z.size() == 0)
        throw InvalidStateError("chain_spectrum_spinmodel: empty configuration");
    return evaluate(probe_grid, threads,
                    [&](double detuning) { return spinmodel_rt(params, z, detuning); });
}

BlochResult bloch_dispersion(const SystemParams& params, double d, double probe_detuning)
{
    const double loss = params.gamma_prime();
    if (!(loss > 0.0))
        throw ParameterDomainError("bloch_dispersion: undefined for Gamma' = 0");

    const double x = 2.0 * probe_detuning / loss;
    BlochResult out;
    out.zeta = (params.gamma_1d / loss) * cplx(-x, 1.0) / (1.0 + x * x);
    const double c = std::cos(two_pi * d), s = std::sin(two_pi * d);
    out.rhs = c - out.zeta * s;
    out.bloch_phase = std::acos(out.rhs);
    if (out.bloch_phase.imag() < 0.0)
        out.bloch_phase = -out.bloch_phase;
    out.q = out.bloch_phase / d;
    out.in_gap = std::abs(c - out.zeta.real() * s) > 1.0;
    return out;
}

bool BandGap::contains(double probe_detuning, double broadening) const
{
    if (!exists)
        return false;
    const double pad = broadening * (upper - lower);
    const double lo = lower - pad;
    const double hi = upper + pad;
    return probe_detuning >= lo && probe_detuning <= hi;
}

BandGap band_gap_edges(const SystemParams& params, double d)
{
    BandGap out;
    out.epsilon = two_pi * (1.0 - d);
    if (!(out.epsilon > 0.0))
        return out;
    const double loss = params.gamma_prime();
    out.exists = true;
    out.lower = -params.gamma_1d / out.epsilon;
    out.upper = -out.epsilon * loss * loss / (4.0 * params.gamma_1d);
    if (loss > 0.0 && out.epsilon > 0.1 * params.gamma_1d / loss) {
        std::ostringstream os;
        os << "band-gap edges assume Gamma_1D/Gamma' >> epsilon (epsilon = " << out.epsilon
           << ")";
        warn(os.str());
    }
    return out;
}

std::vector<double> uniform_grid(double lo, double hi, int points)
{
    std::vector<double> out(std::max(points, 0));
    for (int i = 0; i < points; ++i)
        out[i] = points == 1 ? lo : lo + (hi - lo) * i / (points - 1);
    return out;
}

std::vector<double> default_probe_grid()
{
    std::vector<double> grid = uniform_grid(-60.0, 60.0, 601);
    const std::vector<double> fine = uniform_grid(-2.0, 2.0, 201);
    grid.insert(grid.end(), fine.begin(), fine.end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-12; }),
               grid.end());
    return grid;
}

} // namespace selforg
