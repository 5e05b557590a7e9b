#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "stabres/contfit.hpp"

using namespace stabres;

TEST_CASE("channel_energy: anchoring, pure rotation, free-particle law") {
    ContinuumChannel ch{0.2, 2.3, 0.05, 0.0, 1.5388};
    CHECK(channel_energy(ch, 0.2) == doctest::Approx(1.5388).epsilon(1e-15));

    // beta = 0, E0 = 0, eta - eta_c = i theta: modulus preserved, arg = -alpha theta
    ContinuumChannel rot{0.0, 2.3, 0.0, 0.0, 1.5388};
    const auto e = channel_energy(rot, std::complex<double>(0.0, 0.1));
    CHECK(std::abs(e) == doctest::Approx(1.5388).epsilon(1e-14));
    CHECK(std::arg(e) == doctest::Approx(-2.3 * 0.1).epsilon(1e-14));

    // alpha = 2 reproduces E(eta) = E(eta_c) e^{-2 (eta - eta_c)}
    ContinuumChannel freech{0.0, 2.0, 0.0, 0.0, 0.7};
    for (double eta : {-0.4, 0.3, 1.0})
        CHECK(channel_energy(freech, eta) ==
              doctest::Approx(0.7 * std::exp(-2.0 * eta)).epsilon(1e-14));
}

TEST_CASE("fit_eta_c: exact on linear data, accurate on synthetic channels") {
    // exact linear channel through E_r at eta = 0.37
    std::vector<double> etas, E;
    for (int i = 0; i < 9; ++i) {
        etas.push_back(0.3 + 0.02 * i);
        E.push_back(1.5 - 3.0 * (etas.back() - 0.37));
    }
    CHECK(fit_eta_c(etas, E, 1.5, 0.35) == doctest::Approx(0.37).epsilon(1e-12));

    // synthetic exponential channel; the parabola truncation error scales with
    // the cube of the window half-extent
    ContinuumChannel ch{0.25, 2.21, -0.04, 0.0, 1.5388};
    etas.clear();
    E.clear();
    for (int i = 0; i < 15; ++i) {
        etas.push_back(0.247 + 0.0004 * i);
        E.push_back(channel_energy(ch, etas.back()));
    }
    CHECK(std::abs(fit_eta_c(etas, E, 1.5388, 0.25) - 0.25) < 1e-8);

    // channel never reaching E_r
    for (auto& v : E) v += 1.0;
    CHECK_THROWS_AS(fit_eta_c(etas, E, 0.2, 0.25), NoRealRoot);
}

TEST_CASE("fit_exponent recovers generator parameters to 1e-10") {
    const ContinuumChannel gen{0.1, 2.37, -0.083, 0.0, 1.5388};
    std::vector<double> etas, E;
    for (int i = 0; i <= 120; ++i) {
        etas.push_back(-0.9 + i * 0.015);
        E.push_back(channel_energy(gen, etas.back()));
    }
    const ExponentFit f = fit_exponent(etas, E, gen.eta_c, gen.E_anchor, 0.0);
    CHECK(std::abs(f.alpha - gen.alpha_c) < 1e-10);
    CHECK(std::abs(f.beta - gen.beta_c) < 1e-10);
    CHECK(f.residual < 1e-12);
}

TEST_CASE("fit_exponent degrades gracefully under 1e-8 noise") {
    const ContinuumChannel gen{0.1, 2.37, -0.083, 0.0, 1.5388};
    std::vector<double> etas, E;
    for (int i = 0; i <= 120; ++i) {
        etas.push_back(-0.9 + i * 0.015);
        E.push_back(channel_energy(gen, etas.back()));
    }
    oracles::add_noise(E, 1e-8, 7);
    const ExponentFit f = fit_exponent(etas, E, gen.eta_c, gen.E_anchor, 0.0);
    CHECK(std::abs(f.alpha - gen.alpha_c) < 1e-7);
    CHECK(std::abs(f.beta - gen.beta_c) < 1e-6);  // curvature is less constrained
}

TEST_CASE("fit_exponent with a nonzero threshold (helium-style workflow)") {
    const ContinuumChannel gen{-0.3, 1.9, 0.02, -2.0, -0.723};
    std::vector<double> etas, E;
    for (int i = 0; i <= 100; ++i) {
        etas.push_back(-0.8 + i * 0.02);
        E.push_back(channel_energy(gen, etas.back()));
    }
    const ExponentFit f = fit_exponent(etas, E, gen.eta_c, gen.E_anchor, gen.E0);
    CHECK(std::abs(f.alpha - gen.alpha_c) < 1e-10);
    CHECK(std::abs(f.beta - gen.beta_c) < 1e-10);

    // a point at the threshold is rejected
    E.back() = -2.0;
    CHECK_THROWS_AS(fit_exponent(etas, E, gen.eta_c, gen.E_anchor, gen.E0),
                    ThresholdViolation);
}

TEST_CASE("fit_exponent: V=0 box data gives alpha = 2, beta = 0") {
    // a free box state scales exactly as e^{-2 eta}
    const double E_at_c = 1.31;
    std::vector<double> etas, E;
    for (int i = 0; i <= 60; ++i) {
        etas.push_back(-0.4 + i * 0.02);
        E.push_back(E_at_c * std::exp(-2.0 * etas.back()));
    }
    const ExponentFit f = fit_exponent(etas, E, 0.0, E_at_c, 0.0);
    CHECK(std::abs(f.alpha - 2.0) < 1e-8);
    CHECK(std::abs(f.beta) < 1e-8);
}

TEST_CASE("fit_exponent property: fit of generate is the identity") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 8; ++t) {
        ContinuumChannel gen{-0.5 + u(rng), 1.8 + u(rng), -0.1 + 0.2 * u(rng), 0.0,
                             1.0 + u(rng)};
        std::vector<double> etas, E;
        bool monotone = true;
        for (int i = 0; i <= 80; ++i) {
            etas.push_back(gen.eta_c - 0.5 + i * 0.015);
            E.push_back(channel_energy(gen, etas.back()));
            if (i > 0 && E[i] >= E[i - 1]) monotone = false;
        }
        if (!monotone) continue;  // fitted channels must be decreasing
        const ExponentFit f = fit_exponent(etas, E, gen.eta_c, gen.E_anchor, 0.0);
        CAPTURE(t);
        CHECK(std::abs(f.alpha - gen.alpha_c) < 1e-10);
        CHECK(std::abs(f.beta - gen.beta_c) < 1e-10);
    }
}

TEST_CASE("extract_channel_data follows the branch through its crossing") {
    // two-state graph: flat resonance at 1.5, channel descending through it
    const double Er = 1.5, delta = 0.006, eta_c = 0.0, a = 3.0;
    const auto c = oracles::two_level_curves(Er, delta, eta_c, a, -0.15, 0.15, 301);
    StabilizationGraph g;
    for (std::size_t i = 0; i < c.etas.size(); ++i) {
        Eigen::VectorXd row(2);
        row << c.lower[i], c.upper[i];
        g.insert(c.etas[i], row);
    }
    CrossingWindow w;
    w.lower_branch = 0;
    for (std::size_t i = 0; i < c.etas.size(); ++i) {
        if (std::abs(c.etas[i]) > 0.01) continue;
        w.etas.push_back(c.etas[i]);
        w.lower.push_back(c.lower[i]);
        w.upper.push_back(c.upper[i]);
    }
    ChannelDataOptions opt;
    opt.energy_max = 3.0;
    opt.window_half_width = 0.03;
    opt.window_margin_factor = 2.0;
    const ChannelData data = extract_channel_data(g, w, Er, opt);
    REQUIRE(!data.etas.empty());
    // every sample must sit near the true diabatic line E = Er - a eta; the
    // residual level repulsion at the margin is delta^2 / (4 * margin)
    for (std::size_t i = 0; i < data.etas.size(); ++i) {
        const double exact = Er - a * data.etas[i];
        CHECK(std::abs(data.E_eta[i] - exact) < 2.5e-4);
    }
    // embedded part is exact under the two-level model
    for (std::size_t i = 0; i < data.emb_etas.size(); ++i) {
        const double exact = Er - a * data.emb_etas[i];
        CHECK(std::abs(data.emb_E[i] - exact) < 1e-12);
    }
}
