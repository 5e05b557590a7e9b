#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "stabres/numerics.hpp"
#include "stabres/stabgraph.hpp"

using namespace stabres;

namespace {
const PotentialParams kFree{0.0, 0.0, 4.0, 2.0, 4.92};

BasisSpec tiny_basis() {
    BasisSpec b;
    b.L0 = 20.0;
    b.N = 40;
    b.quadrature_points = 160;
    return b;
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
    return v;
}

// graph whose two rows are the adiabatic curves of a linear two-level crossing
StabilizationGraph synthetic_graph(double Er, double delta, double eta_c, double a,
                                   double lo, double hi, int n) {
    const auto c = oracles::two_level_curves(Er, delta, eta_c, a, lo, hi, n);
    StabilizationGraph g;
    for (int i = 0; i < n; ++i) {
        Eigen::VectorXd row(2);
        row << c.lower[i], c.upper[i];
        g.insert(c.etas[i], row);
    }
    return g;
}
}  // namespace

TEST_CASE("free-particle sweep obeys the e^{-2 eta} law; curves never cross") {
    const auto grid = linspace(-0.5, 0.5, 21);
    const StabilizationGraph g = sweep(grid, kFree, tiny_basis());
    const Eigen::VectorXd& e0 = g.energies[10];  // eta = 0
    for (std::size_t i = 0; i < g.etas.size(); ++i) {
        const double f = std::exp(-2.0 * g.etas[i]);
        for (int k = 0; k < e0.size(); ++k)
            CHECK(std::abs(g.energies[i][k] - e0[k] * f) < 1e-12 * e0[k] * f);
        for (int k = 1; k < e0.size(); ++k)
            CHECK(g.energies[i][k] - g.energies[i][k - 1] > 0.0);  // min gap > 0
    }
}

TEST_CASE("sweep is self-consistent under 2x grid refinement") {
    // smooth continuum curves: values computed on the fine grid agree with a
    // spline through the coarse table well below 1e-6
    const PotentialParams well{7.1, 4.5, 4.0, 2.0, 4.92};
    BasisSpec b;
    b.L0 = 25.0;
    b.N = 80;
    b.quadrature_points = 320;
    b.parity = Parity::Even;
    const auto coarse_grid = linspace(-0.2, 0.2, 41);  // production spacing 0.01
    const auto fine_grid = linspace(-0.2, 0.2, 81);
    const StabilizationGraph gc = sweep(coarse_grid, well, b);
    const StabilizationGraph gf = sweep(fine_grid, well, b);
    // columns safely below the resonance (no crossing kinks), interior points
    // (the natural spline's end-panel error decays ~0.27 per knot inward)
    for (int col : {3, 6, 9}) {
        std::vector<double> y;
        for (const auto& row : gc.energies) y.push_back(row[col]);
        const num::CubicSpline s(gc.etas, y);
        for (std::size_t i = 16; i + 16 < gf.etas.size(); ++i)
            CHECK(std::abs(s(gf.etas[i]) - gf.energies[i][col]) < 1e-6);
    }
}

TEST_CASE("sweep validates its grid") {
    CHECK_THROWS_AS(sweep({}, kFree, tiny_basis()), InvalidArgument);
    CHECK_THROWS_AS(sweep({0.0, 0.0}, kFree, tiny_basis()), InvalidArgument);
    CHECK_THROWS_AS(sweep({-1.8, 0.0}, kFree, tiny_basis()), InvalidArgument);
    CHECK_THROWS_AS(sweep({0.0, 2.5}, kFree, tiny_basis()), InvalidArgument);
}

TEST_CASE("window: counts, monotonicity, emptiness") {
    const auto grid = linspace(-0.3, 0.3, 13);
    const StabilizationGraph g = sweep(grid, kFree, tiny_basis());

    // zero width selects nothing and does not throw
    const auto w0 = window(g, 0.05, 0.0);
    for (const auto& idx : w0) CHECK(idx.empty());

    // direct-count oracle
    const auto w1 = window(g, 0.05, 0.02);
    for (std::size_t i = 0; i < g.etas.size(); ++i) {
        int count = 0;
        for (int k = 0; k < g.energies[i].size(); ++k)
            if (std::abs(g.energies[i][k] - 0.05) <= 0.02) ++count;
        CHECK(static_cast<int>(w1[i].size()) == count);
    }

    // enlarging the window never drops indices
    const auto w2 = window(g, 0.05, 0.04);
    for (std::size_t i = 0; i < g.etas.size(); ++i)
        for (int k : w1[i])
            CHECK(std::find(w2[i].begin(), w2[i].end(), k) != w2[i].end());

    // a center far outside the spectrum signals a bad window
    CHECK_THROWS_AS(window(g, -50.0, 0.01), EmptyWindow);
}

TEST_CASE("detect_crossings: free particle has none") {
    const auto grid = linspace(-0.5, 0.5, 41);
    const StabilizationGraph g = sweep(grid, kFree, tiny_basis());
    DetectOptions opt;
    opt.center = 0.05;
    opt.half_width = 0.02;
    CHECK(detect_crossings(g, opt).empty());
}

TEST_CASE("detect_crossings finds a synthetic avoided crossing with an interior minimum") {
    const double Er = 1.5, delta = 0.01, eta_c = 0.13, a = 2.9;
    const StabilizationGraph g = synthetic_graph(Er, delta, eta_c, a, 0.0, 0.3, 301);
    DetectOptions opt;
    opt.center = Er;
    opt.half_width = 0.05;
    opt.max_half_extent = 0.05;
    const auto cs = detect_crossings(g, opt);
    REQUIRE(cs.size() == 1);
    const CrossingWindow& w = cs[0];
    CHECK(std::abs(w.eta_at_min - eta_c) < 0.002);
    CHECK(std::abs(w.gap_min - delta) < 1e-4);
    CHECK(!w.needs_refinement);
    for (std::size_t i = 0; i < w.etas.size(); ++i) CHECK(w.upper[i] > w.lower[i]);
    // interior minimum
    CHECK(w.eta_at_min > w.etas.front());
    CHECK(w.eta_at_min < w.etas.back());
}

TEST_CASE("detect_crossings is idempotent under grid refinement") {
    const double Er = 1.5, delta = 0.01, eta_c = 0.13, a = 2.9;
    DetectOptions opt;
    opt.center = Er;
    opt.half_width = 0.05;
    opt.max_half_extent = 0.05;
    const auto coarse =
        detect_crossings(synthetic_graph(Er, delta, eta_c, a, 0.0, 0.3, 151), opt);
    const auto fine =
        detect_crossings(synthetic_graph(Er, delta, eta_c, a, 0.0, 0.3, 301), opt);
    REQUIRE(coarse.size() == fine.size());
    CHECK(std::abs(coarse[0].eta_at_min - fine[0].eta_at_min) < 0.3 / 150.0);
}

TEST_CASE("two gap minima sharing a window raise OverlappingCrossings") {
    StabilizationGraph g;
    for (int i = 0; i <= 100; ++i) {
        const double eta = i * 0.01;
        const double gap = 0.02 + 0.01 * std::sin(4.0 * std::numbers::pi * eta);
        Eigen::VectorXd row(2);
        row << 1.5 - 0.5 * gap, 1.5 + 0.5 * gap;
        g.insert(eta, row);
    }
    DetectOptions opt;
    opt.center = 1.5;
    opt.half_width = 0.1;
    CHECK_THROWS_AS(detect_crossings(g, opt), OverlappingCrossings);
}

namespace {
// eigenvectors of the analytic two-level model packed as CrossingVectors
CrossingVectors two_level_vectors(double Er, double delta, double eta_c, double a,
                                  double lo, double hi, int n) {
    CrossingVectors v;
    v.lower.resize(2, n);
    v.upper.resize(2, n);
    for (int i = 0; i < n; ++i) {
        const double eta = lo + (hi - lo) * i / (n - 1);
        const double Ee = Er - a * (eta - eta_c);
        const double phi = 0.5 * std::atan2(delta, Er - Ee);
        v.etas.push_back(eta);
        v.lower.col(i) << std::cos(phi), -std::sin(phi);
        v.upper.col(i) << std::sin(phi), std::cos(phi);
    }
    return v;
}
}  // namespace

TEST_CASE("nonadiabatic coupling: zero for decoupled curves") {
    CrossingVectors v;
    const int n = 21;
    v.lower.resize(2, n);
    v.upper.resize(2, n);
    for (int i = 0; i < n; ++i) {
        v.etas.push_back(0.01 * i);
        v.lower.col(i) << 1.0, 0.0;
        v.upper.col(i) << 0.0, 1.0;
    }
    for (const auto& [eta, tau] : nonadiabatic_coupling(v)) CHECK(tau == 0.0);
}

TEST_CASE("nonadiabatic coupling: Lorentzian of area pi/2 peaked at a/(2 delta)") {
    const double Er = 1.5, delta = 0.01, eta_c = 0.0, a = 3.0;
    const double W = 100.0 * delta / a;
    const int n = 4001;
    const auto v = two_level_vectors(Er, delta, eta_c, a, -W, W, n);
    const auto nac = nonadiabatic_coupling(v);
    double peak = 0.0, area = 0.0;
    const double h = 2.0 * W / (n - 1);
    for (const auto& [eta, tau] : nac) {
        peak = std::max(peak, std::abs(tau));
        area += std::abs(tau) * h;
    }
    CHECK(peak == doctest::Approx(a / (2.0 * delta)).epsilon(0.02));
    CHECK(area == doctest::Approx(std::numbers::pi / 2.0).epsilon(0.02));
    // analytic check at the crossing point
    for (const auto& [eta, tau] : nac)
        CHECK(std::abs(tau) <= a / (2.0 * delta) * 1.0001);
}

TEST_CASE("nonadiabatic coupling on a real crossing peaks at ~a_c/(2 delta) near eta_c") {
    // the first avoided crossing of the double-barrier well on a small box:
    // eta_c ~ ln(19.3/25) = -0.259, delta ~ 9e-3, a_c ~ 4.3
    const PotentialParams well{7.1, 4.5, 4.0, 2.0, 4.92};
    BasisSpec b;
    b.L0 = 25.0;
    b.N = 120;
    b.quadrature_points = 480;
    b.parity = Parity::Even;

    // locate the crossing pair on a coarse grid first
    const auto grid = linspace(-0.29, -0.23, 13);
    const StabilizationGraph g = sweep(grid, well, b);
    DetectOptions opt;
    opt.center = 1.5388;
    opt.half_width = 0.05;
    opt.min_points = 3;
    const auto cs = detect_crossings(g, opt);
    REQUIRE(!cs.empty());
    const int j = cs[0].lower_branch;
    const double eta_c = cs[0].eta_at_min;

    const auto fine = linspace(eta_c - 0.012, eta_c + 0.012, 49);
    const CrossingVectors v = sweep_vectors(fine, j, well, b);
    const auto nac = nonadiabatic_coupling(v);
    double peak = 0.0, peak_eta = 0.0;
    for (const auto& [eta, tau] : nac)
        if (std::abs(tau) > peak) {
            peak = std::abs(tau);
            peak_eta = eta;
        }
    // two-level estimate of the expected peak from the local gap and slope
    const double delta = cs[0].gap_min;
    const double a_c =
        std::abs((cs[0].upper.back() + cs[0].lower.back()) -
                 (cs[0].upper.front() + cs[0].lower.front())) /
        (cs[0].etas.back() - cs[0].etas.front());
    CHECK(std::abs(peak_eta - eta_c) < 2e-3);
    CHECK(peak == doctest::Approx(a_c / (2.0 * delta)).epsilon(0.25));
}

TEST_CASE("sign tracking failure is reported for incoherent vectors") {
    CrossingVectors v;
    const int n = 5;
    v.lower.resize(2, n);
    v.upper.resize(2, n);
    for (int i = 0; i < n; ++i) {
        v.etas.push_back(0.1 * i);
        // alternate between orthogonal vectors: overlaps vanish
        if (i % 2) {
            v.lower.col(i) << 0.0, 1.0;
            v.upper.col(i) << 1.0, 0.0;
        } else {
            v.lower.col(i) << 1.0, 0.0;
            v.upper.col(i) << 0.0, 1.0;
        }
    }
    CHECK_THROWS_AS(nonadiabatic_coupling(v), SignTrackingFailure);
}
