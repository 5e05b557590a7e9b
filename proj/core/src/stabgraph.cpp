#include "stabres/stabgraph.hpp"

#include <algorithm>
#include <cmath>

#include "stabres/numerics.hpp"

namespace stabres {

void StabilizationGraph::insert(double eta, Eigen::VectorXd row) {
    auto it = std::lower_bound(etas.begin(), etas.end(), eta - 1e-12);
    const auto pos = it - etas.begin();
    if (it != etas.end() && std::abs(*it - eta) < 1e-12) {
        energies[pos] = std::move(row);
        return;
    }
    etas.insert(it, eta);
    energies.insert(energies.begin() + pos, std::move(row));
}

Eigen::VectorXd sweep_point(double eta, const PotentialParams& p, const BasisSpec& b) {
    return eigvals_symmetric(build_real_hamiltonian(eta, p, b).matrix);
}

StabilizationGraph sweep(const std::vector<double>& eta_grid, const PotentialParams& p,
                         const BasisSpec& b, int threads) {
    if (eta_grid.empty()) throw InvalidArgument("sweep: empty eta grid");
    for (std::size_t i = 1; i < eta_grid.size(); ++i)
        if (!(eta_grid[i] > eta_grid[i - 1]))
            throw InvalidArgument("sweep: eta grid must be strictly increasing");
    if (eta_grid.front() < -1.75 || eta_grid.back() > 2.0)
        throw InvalidArgument("sweep: eta grid outside [-1.75, 2]");
    StabilizationGraph g;
    g.etas = eta_grid;
    g.energies.resize(eta_grid.size());
    g.potential = p;
    g.basis = b;
    num::parallel_for(eta_grid.size(), threads,
                      [&](std::size_t i) { g.energies[i] = sweep_point(eta_grid[i], p, b); });
    return g;
}

std::vector<std::vector<int>> window(const StabilizationGraph& g, double center,
                                     double half_width) {
    if (!(half_width >= 0.0)) throw InvalidArgument("window: half_width must be >= 0");
    std::vector<std::vector<int>> out(g.etas.size());
    for (std::size_t i = 0; i < g.etas.size(); ++i) {
        const auto& row = g.energies[i];
        for (int k = 0; k < row.size(); ++k)
            if (std::abs(row[k] - center) <= half_width) out[i].push_back(k);
        if (half_width > 0.0 && out[i].empty())
            throw EmptyWindow("no state inside the window at eta = " +
                              std::to_string(g.etas[i]));
    }
    return out;
}

namespace {

bool in_window(double e, const DetectOptions& o) {
    return std::abs(e - o.center) <= o.half_width;
}

}  // namespace

std::vector<CrossingWindow> detect_crossings(const StabilizationGraph& g,
                                             const DetectOptions& opt) {
    if (!(opt.half_width > 0.0))
        throw InvalidArgument("detect_crossings: half_width must be > 0");
    const int npts = static_cast<int>(g.etas.size());
    const int nst = g.n_states();

    // interior local minima of the adjacent-curve gap with both curves in window
    struct Minimum {
        int branch;
        int idx;
    };
    std::vector<Minimum> minima;
    for (int j = 0; j + 1 < nst; ++j) {
        for (int i = 1; i + 1 < npts; ++i) {
            const auto gap = [&](int k) { return g.energies[k][j + 1] - g.energies[k][j]; };
            if (!in_window(g.energies[i][j], opt) || !in_window(g.energies[i][j + 1], opt))
                continue;
            if (gap(i) < gap(i - 1) && gap(i) <= gap(i + 1))
                minima.push_back({j, i});
        }
    }
    std::sort(minima.begin(), minima.end(),
              [&](const Minimum& a, const Minimum& b) {
                  return g.etas[a.idx] < g.etas[b.idx];
              });

    // two minima of one pair inside a contiguous in-window run violate the
    // two-state assumption
    for (std::size_t a = 0; a + 1 < minima.size(); ++a) {
        if (minima[a].branch != minima[a + 1].branch) continue;
        const int j = minima[a].branch;
        bool contiguous = true;
        for (int i = minima[a].idx; i <= minima[a + 1].idx; ++i)
            if (!in_window(g.energies[i][j], opt) || !in_window(g.energies[i][j + 1], opt)) {
                contiguous = false;
                break;
            }
        if (contiguous)
            throw OverlappingCrossings("two gap minima of branch pair (" +
                                       std::to_string(j) + "," + std::to_string(j + 1) +
                                       ") share a window near eta = " +
                                       std::to_string(g.etas[minima[a].idx]));
    }

    std::vector<CrossingWindow> out;
    for (std::size_t m = 0; m < minima.size(); ++m) {
        const int j = minima[m].branch;
        const int i0 = minima[m].idx;
        double half_extent = opt.max_half_extent;
        if (m > 0)
            half_extent = std::min(half_extent,
                                   opt.neighbor_fraction *
                                       (g.etas[i0] - g.etas[minima[m - 1].idx]));
        if (m + 1 < minima.size())
            half_extent = std::min(half_extent,
                                   opt.neighbor_fraction *
                                       (g.etas[minima[m + 1].idx] - g.etas[i0]));

        CrossingWindow w;
        w.lower_branch = j;
        const double e0 = g.etas[i0];
        for (int i = 0; i < npts; ++i) {
            if (std::abs(g.etas[i] - e0) > half_extent) continue;
            if (!in_window(g.energies[i][j], opt) || !in_window(g.energies[i][j + 1], opt))
                continue;
            w.etas.push_back(g.etas[i]);
            w.lower.push_back(g.energies[i][j]);
            w.upper.push_back(g.energies[i][j + 1]);
        }
        w.eta_at_min = e0;
        w.gap_min = g.energies[i0][j + 1] - g.energies[i0][j];
        w.needs_refinement = static_cast<int>(w.etas.size()) < opt.min_points;
        out.push_back(std::move(w));
    }
    return out;
}

CrossingVectors sweep_vectors(const std::vector<double>& etas, int lower_branch,
                              const PotentialParams& p, const BasisSpec& b,
                              int threads) {
    if (etas.size() < 3) throw InvalidArgument("sweep_vectors: need >= 3 eta points");
    CrossingVectors v;
    v.etas = etas;
    const int dim = b.size();
    v.lower.resize(dim, etas.size());
    v.upper.resize(dim, etas.size());
    num::parallel_for(etas.size(), threads, [&](std::size_t i) {
        const RealEigenSystem s = eig_symmetric(build_real_hamiltonian(etas[i], p, b).matrix);
        v.lower.col(i) = s.vectors.col(lower_branch);
        v.upper.col(i) = s.vectors.col(lower_branch + 1);
    });
    return v;
}

namespace {

// align column signs along eta by successive overlaps
void fix_signs(Eigen::MatrixXd& cols) {
    for (Eigen::Index i = 1; i < cols.cols(); ++i) {
        const double ov = cols.col(i - 1).dot(cols.col(i));
        if (std::abs(ov) < 0.5)
            throw SignTrackingFailure("overlap " + std::to_string(ov) +
                                      " between adjacent eta points");
        if (ov < 0.0) cols.col(i) = -cols.col(i);
    }
}

}  // namespace

std::vector<std::pair<double, double>> nonadiabatic_coupling(const CrossingVectors& v) {
    Eigen::MatrixXd lo = v.lower, up = v.upper;
    fix_signs(lo);
    fix_signs(up);
    std::vector<std::pair<double, double>> out;
    for (std::size_t i = 1; i + 1 < v.etas.size(); ++i) {
        const double dh = v.etas[i + 1] - v.etas[i - 1];
        const Eigen::VectorXd dpsi2 = (up.col(i + 1) - up.col(i - 1)) / dh;
        out.emplace_back(v.etas[i], lo.col(i).dot(dpsi2));
    }
    return out;
}

}  // namespace stabres
