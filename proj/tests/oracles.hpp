// Independent reference implementations used as test oracles. None of these
// share code with the library paths they check.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <lapacke.h>

#include "stabres/model1d.hpp"

namespace oracles {

/// Lowest eigenvalue of -1/(2 mu) d2/dx2 + V on [-L, L] by second-order finite
/// differences with Dirichlet ends, `m` interior points.
inline double fd_ground_state(const stabres::PotentialParams& p, double L, double mu,
                              int m) {
    const double h = 2.0 * L / (m + 1);
    std::vector<double> diag(m), off(m - 1, -0.5 / (mu * h * h));
    for (int i = 0; i < m; ++i) {
        const double x = -L + (i + 1) * h;
        diag[i] = 1.0 / (mu * h * h) + stabres::eval_potential(x, p);
    }
    std::vector<double> w(1);
    std::vector<lapack_int> isuppz(2);
    lapack_int found = 0;
    std::vector<double> z(1);
    const lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'N', 'I', m, diag.data(),
                                           off.data(), 0.0, 0.0, 1, 1, 0.0, &found,
                                           w.data(), z.data(), 1, isuppz.data());
    if (info != 0 || found < 1) throw std::runtime_error("fd_ground_state: dstevr failed");
    return w[0];
}

/// Grid-converged ground state: a 1e4-point grid plus one Richardson
/// step (second-order scheme; the h^2 error cancels).
inline double fd_ground_state_richardson(const stabres::PotentialParams& p, double L,
                                         double mu, int m = 10000) {
    const double e1 = fd_ground_state(p, L, mu, m);
    const double e2 = fd_ground_state(p, L, mu, 2 * m);
    return e2 + (e2 - e1) / 3.0;
}

/// Roots of a monic cubic z^3 + a z^2 + b z + c by Durand-Kerner iteration.
inline std::array<std::complex<double>, 3> cubic_roots(std::complex<double> a,
                                                       std::complex<double> b,
                                                       std::complex<double> c) {
    using C = std::complex<double>;
    auto f = [&](C z) { return ((z + a) * z + b) * z + c; };
    std::array<C, 3> r{C(0.4, 0.9), C(-0.6, 0.3), C(0.2, -0.8)};
    for (int it = 0; it < 200; ++it) {
        double move = 0.0;
        for (int i = 0; i < 3; ++i) {
            C denom(1.0, 0.0);
            for (int j = 0; j < 3; ++j)
                if (j != i) denom *= r[i] - r[j];
            const C d = f(r[i]) / denom;
            r[i] -= d;
            move = std::max(move, std::abs(d));
        }
        if (move < 1e-15) break;
    }
    return r;
}

/// Adiabatic curves of the two-level diabat with a linear channel
/// E_eta = E_r - a (eta - eta_c); the forward generator for fit round-trips.
struct TwoLevelCurves {
    std::vector<double> etas, lower, upper;
};
inline TwoLevelCurves two_level_curves(double E_r, double delta, double eta_c, double a,
                                       double lo, double hi, int n) {
    TwoLevelCurves out;
    for (int i = 0; i < n; ++i) {
        const double eta = lo + (hi - lo) * i / (n - 1);
        const double Ee = E_r - a * (eta - eta_c);
        const double mean = 0.5 * (E_r + Ee);
        const double half = 0.5 * std::hypot(Ee - E_r, delta);
        out.etas.push_back(eta);
        out.lower.push_back(mean - half);
        out.upper.push_back(mean + half);
    }
    return out;
}

/// Gaussian noise injection with a fixed seed.
inline void add_noise(std::vector<double>& v, double amplitude, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> g(0.0, amplitude);
    for (double& x : v) x += g(rng);
}

}  // namespace oracles
