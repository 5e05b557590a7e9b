#include "stabres/diabatize.hpp"

#include <algorithm>
#include <cmath>

#include "stabres/numerics.hpp"

namespace stabres {

PredictorEstimate predictor(const CrossingWindow& w) {
    const std::size_t n = w.etas.size();
    if (n < 5) throw InvalidArgument("predictor: need >= 5 points in the window");
    std::vector<double> gap(n), mean(n);
    for (std::size_t i = 0; i < n; ++i) {
        gap[i] = w.upper[i] - w.lower[i];
        mean[i] = 0.5 * (w.upper[i] + w.lower[i]);
    }
    const std::size_t i0 = std::min_element(gap.begin(), gap.end()) - gap.begin();
    if (i0 == 0 || i0 == n - 1)
        throw MinimumAtBoundary("gap minimum at window edge, eta = " +
                                std::to_string(w.etas[i0]));
    const num::CubicSpline sgap(w.etas, gap);
    const double eta_c = num::minimize_scalar([&](double e) { return sgap(e); },
                                              w.etas[i0 - 1], w.etas[i0 + 1]);
    PredictorEstimate est;
    est.eta_c = eta_c;
    est.delta = sgap(eta_c);
    est.E_r = num::CubicSpline(w.etas, mean)(eta_c);
    return est;
}

namespace {

struct CorrectorData {
    std::vector<double> eta, d_eps, eps_bar;
    double eta_c;
};

double sigma_objective(const CorrectorData& c, double Er, double delta, int* n_excluded) {
    const std::size_t n = c.eta.size();
    double penalty = 0.0;
    int excl = 0;
    std::vector<double> dk, erk;
    dk.reserve(n);
    erk.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double de2 = c.d_eps[i] * c.d_eps[i];
        const double disc = de2 - 4.0 * (c.eps_bar[i] - Er) * (c.eps_bar[i] - Er);
        if (disc >= 0.0) {
            dk.push_back(std::sqrt(disc));
        } else {
            penalty += -disc;
            ++excl;
        }
        const double r2 = de2 - delta * delta;
        if (r2 >= 0.0) {
            const double sgn = (c.eta[i] >= c.eta_c) ? 1.0 : -1.0;
            erk.push_back(sgn * 0.5 * std::sqrt(r2) + c.eps_bar[i]);
        } else {
            penalty += -r2;
            ++excl;
        }
    }
    auto variance = [](const std::vector<double>& v) {
        if (v.size() < 2) return 0.0;
        double m = 0.0;
        for (double x : v) m += x;
        m /= v.size();
        double s = 0.0;
        for (double x : v) s += (x - m) * (x - m);
        return s / v.size();
    };
    if (n_excluded) *n_excluded = excl;
    return std::sqrt(variance(dk) + variance(erk)) + penalty;
}

}  // namespace

double corrector_sigma(const CrossingWindow& w, double E_r, double delta, double eta_c) {
    CorrectorData c;
    c.eta = w.etas;
    c.eta_c = eta_c;
    c.d_eps.resize(w.etas.size());
    c.eps_bar.resize(w.etas.size());
    for (std::size_t i = 0; i < w.etas.size(); ++i) {
        c.d_eps[i] = w.upper[i] - w.lower[i];
        c.eps_bar[i] = 0.5 * (w.upper[i] + w.lower[i]);
    }
    return sigma_objective(c, E_r, delta, nullptr);
}

TwoLevelDiabat corrector(const CrossingWindow& w, const PredictorEstimate& est) {
    const std::size_t n = w.etas.size();
    if (n < 5) throw InvalidArgument("corrector: need >= 5 points in the window");
    CorrectorData c;
    c.eta = w.etas;
    c.eta_c = est.eta_c;
    c.d_eps.resize(n);
    c.eps_bar.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        c.d_eps[i] = w.upper[i] - w.lower[i];
        c.eps_bar[i] = 0.5 * (w.upper[i] + w.lower[i]);
    }

    auto f = [&](const Eigen::VectorXd& p) {
        if (p[1] <= 0.0) return 1e6 * (1.0 - p[1]);  // delta must stay positive
        return sigma_objective(c, p[0], p[1], nullptr);
    };
    Eigen::VectorXd start(2), scale(2);
    start << est.E_r, est.delta;
    scale << std::max(0.2 * est.delta, 1e-9), std::max(0.2 * est.delta, 1e-9);
    const num::MinimizeResult res = num::nelder_mead(f, start, scale, 1e-30, 4000);

    int excl = 0;
    const double sig = sigma_objective(c, res.x[0], res.x[1], &excl);
    if (excl >= static_cast<int>(2 * n))
        throw NegativeDiscriminant("corrector: all points excluded at the optimum");

    TwoLevelDiabat d;
    d.E_r = res.x[0];
    d.delta = res.x[1];
    d.eta_c = est.eta_c;
    d.fit_sigma = sig;
    // diabatic channel slope across the window
    std::vector<double> E_eta(n);
    for (std::size_t i = 0; i < n; ++i) E_eta[i] = w.upper[i] + w.lower[i] - d.E_r;
    const Eigen::VectorXd line = num::polyfit(c.eta, E_eta, 1);
    d.a_c = -line[1];
    return d;
}

EpLocation ep_location(const TwoLevelDiabat& d, const ContinuumChannel& ch) {
    using C = std::complex<double>;
    const C target = C(d.E_r, -d.delta);
    // (E_anchor - E0) e^{-alpha u - beta u^2} + E0 = target, u = eta - eta_c
    const C w = std::log((target - ch.E0) / (ch.E_anchor - ch.E0));
    C u;
    if (std::abs(ch.beta_c) < 1e-14) {
        u = -w / ch.alpha_c;
    } else {
        // beta u^2 + alpha u + w = 0; root continuous with the beta -> 0 limit
        const C disc = std::sqrt(C(ch.alpha_c * ch.alpha_c) - 4.0 * ch.beta_c * w);
        const C u1 = (-ch.alpha_c + disc) / (2.0 * ch.beta_c);
        const C u2 = (-ch.alpha_c - disc) / (2.0 * ch.beta_c);
        u = (std::abs(u1) < std::abs(u2)) ? u1 : u2;
    }
    if (std::abs(u) >= 1.0)
        throw NoRoot("ep_location: |eta_EP - eta_c| = " + std::to_string(std::abs(u)));
    EpLocation ep;
    ep.eta_EP = ch.eta_c + u;
    ep.energy = C(d.E_r, -0.5 * d.delta);
    return ep;
}

}  // namespace stabres
