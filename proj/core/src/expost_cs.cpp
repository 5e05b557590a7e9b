#include "stabres/expost_cs.hpp"

#include <algorithm>
#include <cmath>

#include "stabres/eig.hpp"
#include "stabres/numerics.hpp"

namespace stabres {

Eigen::MatrixXcd assemble(const DiabaticModel& model, std::complex<double> eta) {
    const int n = static_cast<int>(model.channels.size()) + 1;
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(n, n);
    H(0, 0) = model.E_r;
    for (int k = 1; k < n; ++k) {
        const auto& [ch, delta] = model.channels[k - 1];
        H(k, k) = channel_energy(ch, eta);
        H(0, k) = H(k, 0) = 0.5 * delta;
    }
    return H;
}

namespace {

struct Selection {
    std::complex<double> energy;
    double weight;
};

// all eigenpairs with their resonance weights |v_0|^2 (c-normalized)
std::vector<Selection> selections(const Eigen::MatrixXcd& H) {
    const ComplexEigenSystem s = eig_complex(H);
    std::vector<Selection> out(s.values.size());
    for (int k = 0; k < s.values.size(); ++k)
        out[k] = {s.values[k], std::norm(s.vectors(0, k))};
    return out;
}

}  // namespace

ResonanceTrajectory theta_sweep(const DiabaticModel& model,
                                const std::vector<double>& theta_grid,
                                double delta_eta, int threads) {
    if (theta_grid.empty()) throw InvalidArgument("theta_sweep: empty grid");
    const double quarter_pi = std::atan(1.0);
    for (std::size_t i = 0; i < theta_grid.size(); ++i) {
        if (theta_grid[i] <= 0.0 || theta_grid[i] >= quarter_pi)
            throw InvalidArgument("theta_sweep: theta grid must lie in (0, pi/4)");
        if (i > 0 && theta_grid[i] <= theta_grid[i - 1])
            throw InvalidArgument("theta_sweep: theta grid must be increasing");
    }

    std::vector<std::vector<Selection>> per_theta(theta_grid.size());
    num::parallel_for(theta_grid.size(), threads, [&](std::size_t i) {
        per_theta[i] =
            selections(assemble(model, std::complex<double>(delta_eta, theta_grid[i])));
    });

    ResonanceTrajectory traj;
    traj.thetas = theta_grid;
    traj.delta_eta = delta_eta;
    traj.energies.resize(theta_grid.size());
    traj.weights.resize(theta_grid.size());
    for (std::size_t i = 0; i < theta_grid.size(); ++i) {
        const auto& cand = per_theta[i];
        const auto by_weight =
            std::max_element(cand.begin(), cand.end(),
                             [](const Selection& a, const Selection& b) {
                                 return a.weight < b.weight;
                             });
        Selection pick = *by_weight;
        if (i >= 2) {
            const double dt = traj.thetas[i] - traj.thetas[i - 1];
            const double dt_prev = traj.thetas[i - 1] - traj.thetas[i - 2];
            const std::complex<double> secant =
                (traj.energies[i - 1] - traj.energies[i - 2]) / dt_prev;
            const double allowed = 10.0 * std::max(std::abs(secant) * dt, 1e-10);
            if (std::abs(pick.energy - traj.energies[i - 1]) > allowed) {
                // re-selection fallback: nearest to the linear prediction
                const std::complex<double> pred = traj.energies[i - 1] + secant * dt;
                const auto by_dist = std::min_element(
                    cand.begin(), cand.end(), [&](const Selection& a, const Selection& b) {
                        return std::abs(a.energy - pred) < std::abs(b.energy - pred);
                    });
                if (std::abs(by_dist->energy - traj.energies[i - 1]) > allowed)
                    throw TrackingLost("resonance jump at theta = " +
                                       std::to_string(traj.thetas[i]));
                pick = *by_dist;
            }
        }
        traj.energies[i] = pick.energy;
        traj.weights[i] = pick.weight;
    }
    return traj;
}

namespace {

std::vector<double> speed(const ResonanceTrajectory& t) {
    const std::size_t n = t.thetas.size();
    std::vector<double> s(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t a = (i == 0) ? 0 : i - 1;
        const std::size_t b = (i + 1 == n) ? i : i + 1;
        s[i] = std::abs(t.energies[b] - t.energies[a]) / (t.thetas[b] - t.thetas[a]);
    }
    return s;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return (n % 2) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

std::pair<double, double> auto_stable_window(const ResonanceTrajectory& traj,
                                             int min_points) {
    if (traj.thetas.size() < static_cast<std::size_t>(min_points))
        throw UnstableWindow("trajectory too short for a stable window");
    const std::vector<double> s = speed(traj);
    const double thresh = 10.0 * median(s);
    std::size_t best_len = 0, best_start = 0, cur = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i < s.size() && s[i] <= thresh) {
            ++cur;
            if (cur > best_len) {
                best_len = cur;
                best_start = i + 1 - cur;
            }
        } else {
            cur = 0;
        }
    }
    if (best_len < static_cast<std::size_t>(min_points))
        throw UnstableWindow("no contiguous stable region found");
    return {traj.thetas[best_start], traj.thetas[best_start + best_len - 1]};
}

Extrapolation extrapolate(const ResonanceTrajectory& traj, double window_lo,
                          double window_hi, int degree) {
    if (degree < 1 || degree > 3)
        throw InvalidArgument("extrapolate: degree must be in 1..3");
    std::vector<double> th, re, im;
    for (std::size_t i = 0; i < traj.thetas.size(); ++i) {
        if (traj.thetas[i] < window_lo - 1e-15 || traj.thetas[i] > window_hi + 1e-15)
            continue;
        th.push_back(traj.thetas[i]);
        re.push_back(traj.energies[i].real());
        im.push_back(traj.energies[i].imag());
    }
    if (static_cast<int>(th.size()) < degree + 2)
        throw UnstableWindow("extrapolation window holds too few points");

    // instability diagnostic inside the window
    std::vector<double> s(th.size(), 0.0);
    for (std::size_t i = 0; i < th.size(); ++i) {
        const std::size_t a = (i == 0) ? 0 : i - 1;
        const std::size_t b = (i + 1 == th.size()) ? i : i + 1;
        s[i] = std::hypot(re[b] - re[a], im[b] - im[a]) / (th[b] - th[a]);
    }
    double scale = 0.0;
    for (std::size_t i = 0; i < th.size(); ++i)
        scale = std::max(scale, std::hypot(re[i], im[i]));
    const double med = median(s);
    for (double v : s)
        if (v > 10.0 * med && v > 1e-14 * scale)
            throw UnstableWindow("|dE/dtheta| exceeds 10x the window median");

    const Eigen::VectorXd cr = num::polyfit(th, re, degree);
    const Eigen::VectorXd ci = num::polyfit(th, im, degree);
    Extrapolation ex;
    ex.energy = {num::polyval(cr, 0.0), num::polyval(ci, 0.0)};
    ex.window_lo = window_lo;
    ex.window_hi = window_hi;
    ex.degree = degree;
    double ss = 0.0;
    for (std::size_t i = 0; i < th.size(); ++i) {
        const double dr = num::polyval(cr, th[i]) - re[i];
        const double di = num::polyval(ci, th[i]) - im[i];
        ss += dr * dr + di * di;
    }
    ex.fit_rms = std::sqrt(ss / th.size());
    return ex;
}

}  // namespace stabres
