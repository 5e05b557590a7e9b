#include "stabres/contfit.hpp"

#include <algorithm>
#include <cmath>

#include "stabres/numerics.hpp"

namespace stabres {

std::complex<double> channel_energy(const ContinuumChannel& ch, std::complex<double> eta) {
    const std::complex<double> u = eta - ch.eta_c;
    return (ch.E_anchor - ch.E0) * std::exp(-ch.alpha_c * u - ch.beta_c * u * u) + ch.E0;
}

double channel_energy(const ContinuumChannel& ch, double eta) {
    const double u = eta - ch.eta_c;
    return (ch.E_anchor - ch.E0) * std::exp(-ch.alpha_c * u - ch.beta_c * u * u) + ch.E0;
}

double fit_eta_c(const std::vector<double>& etas, const std::vector<double>& E_eta,
                 double E_r, double eta_c_hint) {
    if (etas.size() < 3) throw InvalidArgument("fit_eta_c: need >= 3 points");
    const Eigen::VectorXd c = num::polyfit(etas, E_eta, 2);  // a0 + a1 x + a2 x^2
    const double a2 = c[2], a1 = c[1], a0 = c[0] - E_r;
    if (a2 == 0.0) {
        if (a1 == 0.0) throw NoRealRoot("fit_eta_c: degenerate parabola");
        return -a0 / a1;
    }
    const double disc = a1 * a1 - 4.0 * a2 * a0;
    if (disc < 0.0) throw NoRealRoot("fit_eta_c: E_eta never reaches E_r");
    // stable quadratic roots: q/a2 and a0/q do not cancel when a2 is tiny
    // (near-linear embedded data)
    const double q = -0.5 * (a1 + std::copysign(std::sqrt(disc), a1));
    std::vector<double> roots;
    if (a2 != 0.0) roots.push_back(q / a2);
    if (q != 0.0) roots.push_back(a0 / q);
    if (roots.empty()) throw NoRealRoot("fit_eta_c: vanishing parabola");
    double best = roots[0];
    for (double r : roots)
        if (std::abs(r - eta_c_hint) < std::abs(best - eta_c_hint)) best = r;
    return best;
}

ExponentFit fit_exponent(const std::vector<double>& etas, const std::vector<double>& E_eta,
                         double eta_c, double E_r, double E0) {
    const std::size_t n = etas.size();
    if (n < 3 || E_eta.size() != n) throw InvalidArgument("fit_exponent: need >= 3 points");
    const double denom = E_r - E0;
    if (!(denom > 0.0)) throw InvalidArgument("fit_exponent: E_r must exceed E0");

    // weighted normal equations for f = -alpha x - beta x^2
    double s_xx = 0, s_xx2 = 0, s_x2x2 = 0, b_x = 0, b_x2 = 0, sw = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double num_ = E_eta[i] - E0;
        if (!(num_ > 0.0))
            throw ThresholdViolation("fit_exponent: point at eta = " +
                                     std::to_string(etas[i]) + " at or below threshold");
        const double x = etas[i] - eta_c;
        const double f = std::log(num_ / denom);
        const double w = denom / num_;
        s_xx += w * x * x;
        s_xx2 += w * x * x * x;
        s_x2x2 += w * x * x * x * x;
        b_x += w * x * f;
        b_x2 += w * x * x * f;
        sw += w;
    }
    const double det = s_xx * s_x2x2 - s_xx2 * s_xx2;
    if (std::abs(det) < 1e-14 * std::max(1.0, s_xx * s_x2x2))
        throw IllConditioned("fit_exponent: degenerate design (single-cluster abscissae?)");
    ExponentFit fit;
    fit.alpha = -(b_x * s_x2x2 - b_x2 * s_xx2) / det;
    fit.beta = -(s_xx * b_x2 - s_xx2 * b_x) / det;
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = etas[i] - eta_c;
        const double f = std::log((E_eta[i] - E0) / denom);
        const double r = f + fit.alpha * x + fit.beta * x * x;
        ss += (denom / (E_eta[i] - E0)) * r * r;
    }
    fit.residual = std::sqrt(ss / sw);
    return fit;
}

ChannelData extract_channel_data(const StabilizationGraph& g,
                                 const CrossingWindow& crossing, double E_r,
                                 const ChannelDataOptions& opt) {
    if (crossing.etas.empty()) throw InvalidArgument("extract_channel_data: empty crossing");
    ChannelData out;
    const double wlo = crossing.etas.front();
    const double whi = crossing.etas.back();
    const int j = crossing.lower_branch;
    const double e_floor = opt.E0 + opt.energy_min_fraction * (E_r - opt.E0);
    // adiabatic values near the resonance are repelled and are not valid
    // channel samples; the embedded segment covers that region instead
    const double margin = opt.window_margin_factor * opt.window_half_width;

    for (std::size_t i = 0; i < g.etas.size(); ++i) {
        const double eta = g.etas[i];
        double v;
        if (eta < wlo) v = g.energies[i][j + 1];       // descending toward the crossing
        else if (eta > whi) v = g.energies[i][j];      // continuing below it
        else continue;
        if (v <= e_floor || v >= opt.energy_max) continue;
        if (std::abs(v - E_r) < margin) continue;
        out.etas.push_back(eta);
        out.E_eta.push_back(v);
    }
    // embedded segment: diabatic channel energy from the adiabatic pair sum
    for (std::size_t i = 0; i < crossing.etas.size(); ++i) {
        out.emb_etas.push_back(crossing.etas[i]);
        out.emb_E.push_back(crossing.upper[i] + crossing.lower[i] - E_r);
    }
    out.etas.insert(out.etas.end(), out.emb_etas.begin(), out.emb_etas.end());
    out.E_eta.insert(out.E_eta.end(), out.emb_E.begin(), out.emb_E.end());
    return out;
}

}  // namespace stabres
