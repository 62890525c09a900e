#pragma once

// Deliberately naive reference implementations used as test oracles.  They
// share no code with the library beyond the parameter struct.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "selforg/model.hpp"

namespace oracle {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using Mat = Eigen::MatrixXd;

constexpr double k0 = 2.0 * 3.14159265358979323846;
const cplx I{0.0, 1.0};

inline CMat coupling(const selforg::SystemParams& p, const Vec& z, double delta)
{
    const auto n = z.size();
    CMat m(n, n);
    for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = 0; b < n; ++b)
            m(a, b) = a == b ? I * delta - 0.5
                             : -0.5 * p.gamma_1d * std::exp(I * k0 * std::abs(z[a] - z[b]));
    return m;
}

// sigma solving M sigma + i drive = 0, by Householder QR instead of LU.
inline CVec coherences(const selforg::SystemParams& p, const Vec& z, const CVec& drive,
                       double delta)
{
    return coupling(p, z, delta).colPivHouseholderQr().solve(-I * drive);
}

inline CVec coherences(const selforg::SystemParams& p, const Vec& z)
{
    return coherences(p, z, CVec::Constant(z.size(), cplx(p.rabi, 0.0)), p.pump_detuning);
}

inline Vec force(const selforg::SystemParams& p, const Vec& z, const CVec& s)
{
    const auto n = z.size();
    Vec f = Vec::Zero(n);
    for (Eigen::Index a = 0; a < n; ++a) {
        cplx acc = 0.0;
        for (Eigen::Index b = 0; b < n; ++b) {
            if (a == b)
                continue;
            const double dz = z[a] - z[b];
            const double sgn = dz > 0 ? 1.0 : -1.0;
            acc += s[a] * std::conj(s[b]) * std::exp(-I * k0 * std::abs(dz)) * sgn;
        }
        f[a] = -p.gamma_1d * acc.real();
    }
    return f;
}

inline Vec steady_force(const selforg::SystemParams& p, const Vec& z)
{
    return force(p, z, coherences(p, z));
}

// K = -dF/dz by fourth-order central differences.
inline Mat stiffness_fd(const selforg::SystemParams& p, const Vec& z, double h = 1e-5)
{
    const auto n = z.size();
    Mat k(n, n);
    for (Eigen::Index c = 0; c < n; ++c) {
        auto shifted = [&](double s) {
            Vec zz = z;
            zz[c] += s;
            return steady_force(p, zz);
        };
        const Vec d = (-shifted(2 * h) + 8.0 * shifted(h) - 8.0 * shifted(-h) + shifted(-2 * h)) /
                      (12.0 * h);
        k.col(c) = -d;
    }
    return k;
}

// Pair potential (1/2) sum sin(k0 |dz|), unordered pairs counted once each way.
inline double energy(const Vec& z)
{
    double e = 0.0;
    for (Eigen::Index a = 0; a < z.size(); ++a)
        for (Eigen::Index b = a + 1; b < z.size(); ++b)
            e += std::sin(k0 * std::abs(z[a] - z[b]));
    return e;
}

inline Vec weak_positions(int n)
{
    Vec z(n);
    for (int j = 0; j < n; ++j)
        z[j] = j * (1.0 - 0.5 / n);
    return z;
}

// Ordered random chain with neighbour spacing in [lo, hi].
inline Vec random_chain(int n, std::mt19937_64& rng, double lo = 0.3, double hi = 1.7)
{
    std::uniform_real_distribution<double> u(lo, hi);
    Vec z(n);
    z[0] = u(rng);
    for (int j = 1; j < n; ++j)
        z[j] = z[j - 1] + u(rng);
    return z;
}

// Two scatterers with amplitudes r, t separated by d, summed as a geometric
// series of round trips (Airy formula), reflection referenced to the first.
inline std::pair<cplx, cplx> two_mirrors(cplx r, cplx t, double d)
{
    const cplx ph = std::exp(I * k0 * d);
    const cplx denom = 1.0 - r * r * ph * ph;
    return {r + t * t * r * ph * ph / denom, t * t * ph / denom * std::exp(-I * k0 * d)};
}

} // namespace oracle
