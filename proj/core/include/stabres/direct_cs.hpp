#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "stabres/model1d.hpp"

namespace stabres {

/// Tracked eigenvalue of the directly complex-scaled Hamiltonian along a
/// theta grid, with per-theta full spectra.
struct ThetaTrajectory {
    std::vector<double> thetas;
    std::vector<Eigen::VectorXcd> spectra;
    std::vector<std::complex<double>> resonance;
    double theta_star = 0.0;  // stationary point
};

struct BenchmarkResult {
    std::complex<double> energy;  // at the stationary theta
    ThetaTrajectory trajectory;
};

/// Direct complex-scaling benchmark: diagonalizes H(theta) on the grid,
/// tracks the eigenvalue seeded nearest E_guess by continuity, and returns
/// the value where |dE/dtheta| is stationary (discrete minimum refined by
/// three-point parabolic interpolation). Throws NoStationaryPoint when the
/// trajectory has no interior slow-down (e.g. free particle).
BenchmarkResult benchmark_resonance(const PotentialParams& p, const BasisSpec& b,
                                    const std::vector<double>& theta_grid,
                                    std::complex<double> E_guess, int threads = 1);

}  // namespace stabres
