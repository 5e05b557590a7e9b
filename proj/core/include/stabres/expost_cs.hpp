#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "stabres/contfit.hpp"

namespace stabres {

/// One resonance plus N quasi-continuum channels with couplings delta_k.
/// The generated matrix is an arrowhead: continuum-continuum couplings are
/// exactly zero.
struct DiabaticModel {
    double E_r = 0.0;
    std::vector<std::pair<ContinuumChannel, double>> channels;
};

/// H(eta): (0,0) = E_r (constant; the resonance depends on Re eta only and is
/// flat there), (k,k) = channel energy at eta, (0,k) = (k,0) = delta_k / 2.
Eigen::MatrixXcd assemble(const DiabaticModel& model, std::complex<double> eta);

/// Tracked resonance eigenvalue of the complex-scaled model, eta = i theta + delta_eta.
struct ResonanceTrajectory {
    std::vector<double> thetas;
    std::vector<std::complex<double>> energies;
    std::vector<double> weights;  // |v_0|^2 of the c-normalized eigenvector
    double delta_eta = 0.0;
};

/// Diagonalizes the model on a theta grid; the resonance is identified by the
/// dominant first component of the c-normalized eigenvector, with a
/// continuity fallback (re-selection by nearest predicted energy). Throws
/// TrackingLost when both selections jump by more than 10x the local secant.
ResonanceTrajectory theta_sweep(const DiabaticModel& model,
                                const std::vector<double>& theta_grid,
                                double delta_eta, int threads = 1);

struct Extrapolation {
    std::complex<double> energy;  // extrapolated E(theta -> 0)
    double window_lo = 0.0;
    double window_hi = 0.0;
    int degree = 2;
    double fit_rms = 0.0;
};

/// Longest contiguous run with |dE/dtheta| below 10x the trajectory median;
/// the default stable window for extrapolation.
std::pair<double, double> auto_stable_window(const ResonanceTrajectory& traj,
                                             int min_points = 6);

/// Separate polynomial least squares of Re E(theta), Im E(theta) over the
/// window, evaluated at theta = 0. Throws UnstableWindow if the window
/// violates the |dE/dtheta| diagnostic or holds too few points.
Extrapolation extrapolate(const ResonanceTrajectory& traj, double window_lo,
                          double window_hi, int degree = 2);

}  // namespace stabres
