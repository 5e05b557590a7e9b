#pragma once

#include <complex>
#include <vector>

#include "stabres/stabgraph.hpp"

namespace stabres {

/// Analytic eta-dependence of one quasi-continuum channel:
///   E(eta) = (E_anchor - E0) exp(-alpha (eta - eta_c) - beta (eta - eta_c)^2) + E0
/// anchored so that E(eta_c) = E_anchor exactly.
struct ContinuumChannel {
    double eta_c = 0.0;
    double alpha_c = 2.0;   // > 0; 2 is the infinite-box free-particle limit
    double beta_c = 0.0;
    double E0 = 0.0;        // continuum threshold (0 for the 1D model)
    double E_anchor = 0.0;  // resonance energy at the crossing
};

std::complex<double> channel_energy(const ContinuumChannel& ch, std::complex<double> eta);
double channel_energy(const ContinuumChannel& ch, double eta);

/// Crossing position from the embedded segment: least-squares parabola through
/// (eta_k, E_eta(eta_k)) solved for E_eta(eta_c) = E_r, root nearest
/// `eta_c_hint`. Throws NoRealRoot.
double fit_eta_c(const std::vector<double>& etas, const std::vector<double>& E_eta,
                 double E_r, double eta_c_hint);

struct ExponentFit {
    double alpha = 0.0;
    double beta = 0.0;
    double residual = 0.0;  // weighted rms of the log-space fit
};

/// Weighted least squares of f_i = log[(E_i - E0)/(E_r - E0)] to
/// -alpha (eta_i - eta_c) - beta (eta_i - eta_c)^2, weights
/// w_i = (E_r - E0)/(E_i - E0). Throws ThresholdViolation if a point is at or
/// below E0, IllConditioned on a degenerate design.
ExponentFit fit_exponent(const std::vector<double>& etas, const std::vector<double>& E_eta,
                         double eta_c, double E_r, double E0);

/// Channel data assembled from a stabilization graph: the embedded segment
/// (inside the crossing, E_eta = eps_+ + eps_- - E_r) plus isolated adiabatic
/// segments of the same diabatic channel outside it.
struct ChannelData {
    std::vector<double> etas;
    std::vector<double> E_eta;
    std::vector<double> emb_etas;  // embedded subset, used for eta_c
    std::vector<double> emb_E;
};

struct ChannelDataOptions {
    /// exclude isolated points with (E - E0) < min_fraction * (E_r - E0),
    /// where the quasi-continuum character degrades near threshold ...
    double energy_min_fraction = 0.2;
    /// ... and isolated points above this absolute energy (influence of
    /// higher-lying structures).
    double energy_max = 2.4;
    /// isolated points within window_margin_factor * window_half_width of the
    /// resonance are skipped (adiabatic != diabatic there)
    double window_margin_factor = 2.0;
    double window_half_width = 0.05;
    double E0 = 0.0;
};

/// Branch bookkeeping: the channel is adiabatic branch (lower+1) before its
/// own crossing and (lower) after it; it crosses nothing else.
ChannelData extract_channel_data(const StabilizationGraph& g,
                                 const CrossingWindow& crossing, double E_r,
                                 const ChannelDataOptions& opt);

}  // namespace stabres
