#include "stabres/direct_cs.hpp"

#include <algorithm>
#include <cmath>

#include "stabres/eig.hpp"
#include "stabres/numerics.hpp"

namespace stabres {

namespace {

std::complex<double> nearest(const Eigen::VectorXcd& spec, std::complex<double> target) {
    int best = 0;
    double bd = std::abs(spec[0] - target);
    for (int k = 1; k < spec.size(); ++k) {
        const double d = std::abs(spec[k] - target);
        if (d < bd) {
            bd = d;
            best = k;
        }
    }
    return spec[best];
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return (n % 2) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

BenchmarkResult benchmark_resonance(const PotentialParams& p, const BasisSpec& b,
                                    const std::vector<double>& theta_grid,
                                    std::complex<double> E_guess, int threads) {
    if (theta_grid.size() < 5)
        throw InvalidArgument("benchmark_resonance: need >= 5 theta points");

    ThetaTrajectory traj;
    traj.thetas = theta_grid;
    traj.spectra.resize(theta_grid.size());
    num::parallel_for(theta_grid.size(), threads, [&](std::size_t i) {
        traj.spectra[i] =
            eigvals_complex(build_complex_hamiltonian(theta_grid[i], 0.0, p, b).matrix);
    });

    traj.resonance.resize(theta_grid.size());
    std::complex<double> prev = E_guess;
    for (std::size_t i = 0; i < theta_grid.size(); ++i) {
        traj.resonance[i] = nearest(traj.spectra[i], prev);
        prev = traj.resonance[i];
    }

    // continuity invariant of the tracked eigenvalue: a branch switch jumps by
    // a spectral spacing; convergence transients toward the stationary point
    // stay below ~1e-5 of the energy scale
    const std::size_t n = theta_grid.size();
    std::vector<double> jumps(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i)
        jumps[i] = std::abs(traj.resonance[i + 1] - traj.resonance[i]);
    const double med = median(jumps);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double floor = 1e-5 * std::max(1.0, std::abs(traj.resonance[i]));
        if (jumps[i] > 10.0 * std::max(med, floor))
            throw TrackingLost("trajectory jump at theta = " +
                               std::to_string(traj.thetas[i + 1]));
    }
    std::vector<double> sp(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t a = (i == 0) ? 0 : i - 1;
        const std::size_t c = (i + 1 == n) ? i : i + 1;
        sp[i] = std::abs(traj.resonance[c] - traj.resonance[a]) /
                (traj.thetas[c] - traj.thetas[a]);
    }

    // stationary point: interior |dE/dtheta| minimum orders of magnitude below
    // the fastest motion (a rotated-string eigenvalue never slows down)
    std::size_t k = 1;
    double sp_max = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (sp[i] < sp[k]) k = i;
        sp_max = std::max(sp_max, sp[i]);
    }
    if (!(sp[k] < 0.01 * sp_max))
        throw NoStationaryPoint("no resonance detachment along the trajectory (min speed " +
                                std::to_string(sp[k]) + ", max " + std::to_string(sp_max) +
                                ")");

    // three-point parabolic refinement of the speed minimum
    const double t0 = traj.thetas[k - 1], t1 = traj.thetas[k], t2 = traj.thetas[k + 1];
    const double s0 = sp[k - 1], s1 = sp[k], s2 = sp[k + 1];
    double tstar = t1;
    const double denom = (t1 - t0) * (s1 - s2) - (t1 - t2) * (s1 - s0);
    if (std::abs(denom) > 0.0) {
        const double num_ =
            (t1 - t0) * (t1 - t0) * (s1 - s2) - (t1 - t2) * (t1 - t2) * (s1 - s0);
        const double cand = t1 - 0.5 * num_ / denom;
        if (cand > t0 && cand < t2) tstar = cand;
    }
    traj.theta_star = tstar;

    // evaluate E(theta_star) from a local quadratic through the three points
    std::vector<double> th{t0, t1, t2};
    std::vector<double> re{traj.resonance[k - 1].real(), traj.resonance[k].real(),
                           traj.resonance[k + 1].real()};
    std::vector<double> im{traj.resonance[k - 1].imag(), traj.resonance[k].imag(),
                           traj.resonance[k + 1].imag()};
    const Eigen::VectorXd cr = num::polyfit(th, re, 2);
    const Eigen::VectorXd ci = num::polyfit(th, im, 2);
    BenchmarkResult out;
    out.energy = {num::polyval(cr, tstar), num::polyval(ci, tstar)};
    out.trajectory = std::move(traj);
    return out;
}

}  // namespace stabres
