#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "stabres/eig.hpp"
#include "stabres/model1d.hpp"

namespace stabres {

/// Real spectra on an ascending eta grid, rows ascending.
struct StabilizationGraph {
    std::vector<double> etas;
    std::vector<Eigen::VectorXd> energies;
    PotentialParams potential;
    BasisSpec basis;

    int n_states() const { return energies.empty() ? 0 : static_cast<int>(energies[0].size()); }
    /// Insert a row keeping etas strictly increasing; replaces an existing
    /// eta within 1e-12.
    void insert(double eta, Eigen::VectorXd row);
    double min_eta() const { return etas.front(); }
    double max_eta() const { return etas.back(); }
};

/// One avoided crossing: adjacent branches (lower, lower+1), the eta points
/// where both lie in the energy window near the gap minimum, and the pairs
/// (eps_-, eps_+) there.
struct CrossingWindow {
    int lower_branch = 0;
    std::vector<double> etas;
    std::vector<double> lower;  // eps_-
    std::vector<double> upper;  // eps_+
    double eta_at_min = 0.0;
    double gap_min = 0.0;
    bool needs_refinement = false;  // fewer than min_points in the window
};

/// Eigenvalue row for a single eta (the unit of work of sweep()).
Eigen::VectorXd sweep_point(double eta, const PotentialParams& p, const BasisSpec& b);

/// Dense eta sweep; parallel over grid points, deterministic for fixed inputs.
StabilizationGraph sweep(const std::vector<double>& eta_grid, const PotentialParams& p,
                         const BasisSpec& b, int threads = 1);

/// Per-eta indices of eigenvalues inside [center - half_width, center + half_width].
/// Throws EmptyWindow if some eta has none (bad center).
std::vector<std::vector<int>> window(const StabilizationGraph& g, double center,
                                     double half_width);

struct DetectOptions {
    double center = 0.0;
    double half_width = 0.0;
    int min_points = 5;
    /// Windows are trimmed to this fraction of the distance to the nearest
    /// other gap minimum (two-state assumption) ...
    double neighbor_fraction = 0.35;
    /// ... and to this hard half-extent in eta.
    double max_half_extent = 0.012;
};

/// One CrossingWindow per interior local minimum of the adjacent-curve gap
/// inside the energy window. Throws OverlappingCrossings when two minima of
/// one branch pair share a contiguous in-window run.
std::vector<CrossingWindow> detect_crossings(const StabilizationGraph& g,
                                             const DetectOptions& opt);

/// Eigenvectors of two adjacent branches on a fine eta grid across a crossing.
struct CrossingVectors {
    std::vector<double> etas;
    Eigen::MatrixXd lower;  // column per eta
    Eigen::MatrixXd upper;
};

CrossingVectors sweep_vectors(const std::vector<double>& etas, int lower_branch,
                              const PotentialParams& p, const BasisSpec& b,
                              int threads = 1);

/// Central-difference <psi_1 | d/d eta | psi_2> with sign-fixed vectors.
/// Returns (eta, coupling) at interior grid points. Throws SignTrackingFailure
/// if successive overlaps drop below 0.5.
std::vector<std::pair<double, double>> nonadiabatic_coupling(const CrossingVectors& v);

}  // namespace stabres
