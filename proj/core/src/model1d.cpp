#include "stabres/model1d.hpp"

#include <cmath>
#include <numbers>

#include "stabres/numerics.hpp"

namespace stabres {

namespace {

constexpr double kQuadTol = 1e-10;
constexpr int kMaxRefinements = 6;
constexpr int kPanelOrder = 16;

template <class Scalar>
Scalar gauss_well(Scalar x, double depth, double width) {
    return depth * std::exp(-(x * x) / (width * width));
}

}  // namespace

void PotentialParams::validate() const {
    // v0 = v1 = 0 is allowed: the free-particle configuration drives the
    // e^{-2 eta} scaling-law checks
    if (!(v0 >= 0.0)) throw InvalidArgument("PotentialParams: v0 must be >= 0");
    if (!(v1 >= 0.0)) throw InvalidArgument("PotentialParams: v1 must be >= 0");
    if (!(sigma0 > 0.0) || !(sigma1 > 0.0))
        throw InvalidArgument("PotentialParams: widths must be > 0");
    if (!(x0 > 0.0)) throw InvalidArgument("PotentialParams: x0 must be > 0");
}

double eval_potential(double x, const PotentialParams& p) {
    return -gauss_well(x, p.v0, p.sigma0) + gauss_well(x - p.x0, p.v1, p.sigma1) +
           gauss_well(x + p.x0, p.v1, p.sigma1);
}

std::complex<double> eval_potential(std::complex<double> x, const PotentialParams& p) {
    using C = std::complex<double>;
    return -gauss_well<C>(x, p.v0, p.sigma0) + gauss_well<C>(x - p.x0, p.v1, p.sigma1) +
           gauss_well<C>(x + p.x0, p.v1, p.sigma1);
}

void BasisSpec::validate() const {
    if (!(L0 > 0.0)) throw InvalidArgument("BasisSpec: L0 must be > 0");
    if (N < 2) throw InvalidArgument("BasisSpec: N must be >= 2");
    if (!(mu > 0.0)) throw InvalidArgument("BasisSpec: mu must be > 0");
    if (quadrature_points < 4 * N)
        throw InvalidArgument("BasisSpec: quadrature_points must be >= 4N");
}

std::vector<int> BasisSpec::indices() const {
    std::vector<int> ns;
    const int start = (parity == Parity::Odd) ? 2 : 1;
    const int step = (parity == Parity::Full) ? 1 : 2;
    for (int n = start; n <= N; n += step) ns.push_back(n);
    return ns;
}

namespace {

// Potential matrix elements in the s = x/L variable on [-1, 1]:
//   V_nm = int sin(n pi (s+1)/2) sin(m pi (s+1)/2) Vtil(s) ds
//        = (C_{|n-m|} - C_{n+m}) / 2,
//   C_k  = int cos(k pi (s+1)/2) Vtil(s) ds,  Vtil(s) = V(s * scale).
// The cosine moments are accumulated with the Chebyshev three-term recurrence
// over k, vectorized across quadrature nodes.
template <class Scalar>
std::vector<Scalar> cosine_moments(const num::GaussRule& rule, int kmax,
                                   const std::vector<Scalar>& wV) {
    const std::size_t q = rule.nodes.size();
    std::vector<double> cos_phi(q), c_prev(q), c_cur(q);
    for (std::size_t i = 0; i < q; ++i) {
        const double phi = 0.5 * std::numbers::pi * (rule.nodes[i] + 1.0);
        cos_phi[i] = std::cos(phi);
        c_prev[i] = 1.0;       // cos(0)
        c_cur[i] = cos_phi[i];  // cos(phi)
    }
    std::vector<Scalar> C(kmax + 1, Scalar{});
    for (std::size_t i = 0; i < q; ++i) C[0] += wV[i];
    for (int k = 1; k <= kmax; ++k) {
        Scalar acc{};
        for (std::size_t i = 0; i < q; ++i) acc += wV[i] * c_cur[i];
        C[k] = acc;
        if (k == kmax) break;
        for (std::size_t i = 0; i < q; ++i) {
            const double next = 2.0 * cos_phi[i] * c_cur[i] - c_prev[i];
            c_prev[i] = c_cur[i];
            c_cur[i] = next;
        }
    }
    return C;
}

template <class Scalar, class Matrix>
Matrix assemble_from_moments(const std::vector<int>& ns, const std::vector<Scalar>& C) {
    const int m = static_cast<int>(ns.size());
    Matrix V(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            const Scalar v = 0.5 * (C[std::abs(ns[i] - ns[j])] - C[ns[i] + ns[j]]);
            V(i, j) = v;
            V(j, i) = v;
        }
    return V;
}

template <class Scalar, class Matrix, class Eval>
Matrix potential_matrix(const BasisSpec& b, const Eval& eval_at_node) {
    const std::vector<int> ns = b.indices();
    const int kmax = 2 * b.N;
    int panels = (b.quadrature_points + kPanelOrder - 1) / kPanelOrder;

    auto level = [&](int np) {
        const num::GaussRule rule = num::composite_gauss(np, kPanelOrder);
        std::vector<Scalar> wV(rule.nodes.size());
        for (std::size_t i = 0; i < wV.size(); ++i)
            wV[i] = rule.weights[i] * eval_at_node(rule.nodes[i]);
        return assemble_from_moments<Scalar, Matrix>(ns, cosine_moments(rule, kmax, wV));
    };

    Matrix prev = level(panels);
    for (int r = 0; r < kMaxRefinements; ++r) {
        panels *= 2;
        Matrix cur = level(panels);
        const double diff = (cur - prev).cwiseAbs().maxCoeff();
        if (diff <= kQuadTol) return cur;
        prev.swap(cur);
    }
    throw QuadratureUnderResolved("potential matrix did not converge to 1e-10 at " +
                                  std::to_string(panels) + " panels");
}

}  // namespace

RealHamiltonian build_real_hamiltonian(double eta, const PotentialParams& p,
                                       const BasisSpec& b) {
    p.validate();
    b.validate();
    const double L = b.L0 * std::exp(eta);
    Eigen::MatrixXd H = potential_matrix<double, Eigen::MatrixXd>(
        b, [&](double s) { return eval_potential(s * L, p); });
    const std::vector<int> ns = b.indices();
    const double tk = std::numbers::pi * std::numbers::pi / (8.0 * b.mu * L * L);
    for (std::size_t i = 0; i < ns.size(); ++i)
        H(i, i) += tk * static_cast<double>(ns[i]) * static_cast<double>(ns[i]);
    return RealHamiltonian{eta, std::move(H)};
}

ComplexHamiltonian build_complex_hamiltonian(double theta, double delta_eta,
                                             const PotentialParams& p,
                                             const BasisSpec& b) {
    p.validate();
    b.validate();
    if (theta < 0.0 || theta >= std::numbers::pi / 4.0)
        throw InvalidArgument("build_complex_hamiltonian: require 0 <= theta < pi/4");
    const std::complex<double> scale =
        b.L0 * std::exp(std::complex<double>(delta_eta, theta));
    Eigen::MatrixXcd H = potential_matrix<std::complex<double>, Eigen::MatrixXcd>(
        b, [&](double s) { return eval_potential(s * scale, p); });
    const std::vector<int> ns = b.indices();
    const std::complex<double> tk =
        std::numbers::pi * std::numbers::pi / (8.0 * b.mu * b.L0 * b.L0) *
        std::exp(-2.0 * std::complex<double>(delta_eta, theta));
    for (std::size_t i = 0; i < ns.size(); ++i)
        H(i, i) += tk * static_cast<double>(ns[i]) * static_cast<double>(ns[i]);
    return ComplexHamiltonian{theta, delta_eta, std::move(H)};
}

Eigen::MatrixXd basis_gram_matrix(double /*eta*/, const BasisSpec& b) {
    // In the s variable the Gram matrix is eta-independent; quadrature quality
    // is what is actually being probed here.
    b.validate();
    return potential_matrix<double, Eigen::MatrixXd>(b, [](double) { return 1.0; });
}

}  // namespace stabres
