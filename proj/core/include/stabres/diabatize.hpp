#pragma once

#include <complex>

#include "stabres/contfit.hpp"
#include "stabres/stabgraph.hpp"

namespace stabres {

/// Two-level diabatic model of one avoided crossing,
///   H = [[E_r, delta/2], [delta/2, E_eta]],  E_eta ~ E_r - a_c (eta - eta_c).
struct TwoLevelDiabat {
    double E_r = 0.0;      // resonance energy (a.u.)
    double delta = 0.0;    // 2x off-diagonal coupling = minimum adiabatic gap
    double eta_c = 0.0;    // crossing position
    double a_c = 0.0;      // local |slope| of the diabatic channel, > 0
    double fit_sigma = 0.0;
};

struct PredictorEstimate {
    double E_r = 0.0;
    double delta = 0.0;
    double eta_c = 0.0;
};

/// Spline-interpolated gap minimum: eta_c = argmin of the cubic spline through
/// (eta_k, eps_+ - eps_-), delta = gap(eta_c), E_r = spline of the mean
/// adiabatic energy at eta_c. Throws MinimumAtBoundary when the minimum sits
/// on the window edge.
PredictorEstimate predictor(const CrossingWindow& w);

/// Robust (E_r, delta) fit: per-point inversions
///   delta(eta_k) = sqrt(D_eps^2 - 4 (eps_bar - E_r)^2)
///   E_r(eta_k)   = sign(eta_k - eta_c) sqrt(D_eps^2 - delta^2)/2 + eps_bar
/// must be constant in eta; sigma = sqrt(Var delta + Var E_r) is minimized
/// over (E_r, delta) by simplex search from the predictor point. Points with a
/// negative discriminant contribute a penalty instead. Also fits a_c as the
/// slope of the diabatic channel E_eta = eps_+ + eps_- - E_r over the window.
TwoLevelDiabat corrector(const CrossingWindow& w, const PredictorEstimate& est);

/// The corrector's objective at given (E_r, delta); eta_c fixes the branch
/// signs. Exposed for diagnostics (sigma of the predictor point, refinement
/// checks).
double corrector_sigma(const CrossingWindow& w, double E_r, double delta, double eta_c);

/// Exceptional point of the two-level model with an analytic channel: solves
/// channel(eta_EP) = E_r - i delta. Returns (eta_EP, E_r - i delta/2).
/// Throws NoRoot outside the trust region |eta_EP - eta_c| < 1.
struct EpLocation {
    std::complex<double> eta_EP;
    std::complex<double> energy;  // degenerate pair value
};
EpLocation ep_location(const TwoLevelDiabat& d, const ContinuumChannel& ch);

}  // namespace stabres
