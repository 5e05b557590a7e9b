#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "stabres/errors.hpp"

namespace stabres {

/// Double-Gaussian-barrier well (all parameters in atomic units):
///   V(x) = -v0 exp(-x^2/s0^2) + v1 [exp(-(x-x0)^2/s1^2) + exp(-(x+x0)^2/s1^2)]
/// Even in x by construction; supports bound states and shape resonances.
struct PotentialParams {
    double v0 = 7.1;      // well depth, >= 0 (0 = free particle)
    double v1 = 4.5;      // barrier height, >= 0
    double sigma0 = 4.0;  // well width, > 0
    double sigma1 = 2.0;  // barrier width, > 0
    double x0 = 4.92;     // barrier center offset, > 0

    void validate() const;
};

double eval_potential(double x, const PotentialParams& p);
std::complex<double> eval_potential(std::complex<double> x, const PotentialParams& p);

/// Which symmetry block of the sine basis to use. The potential is even, so
/// the Hamiltonian decouples exactly into even/odd wavefunction blocks
/// (chi_n is even for odd n). `Full` keeps all n = 1..N.
enum class Parity { Full, Even, Odd };

/// Sine box basis chi_n(x; eta) = L^-1/2 sin(n pi (x+L) / (2L)), L = L0 e^eta,
/// orthonormal on [-L, L].
struct BasisSpec {
    double L0 = 50.0;            // unscaled half-box length, > 0
    int N = 500;                 // max sine index, >= 2
    double mu = 1.0;             // particle mass
    int quadrature_points = 2048;  // initial quadrature resolution, >= 4N
    Parity parity = Parity::Full;

    void validate() const;
    /// Basis indices n for the selected block.
    std::vector<int> indices() const;
    /// Number of basis functions in the block.
    int size() const { return static_cast<int>(indices().size()); }
};

struct RealHamiltonian {
    double eta = 0.0;
    Eigen::MatrixXd matrix;
};

struct ComplexHamiltonian {
    double theta = 0.0;
    double delta_eta = 0.0;
    Eigen::MatrixXcd matrix;
};

/// H(eta) in the eta-scaled basis: kinetic diagonal n^2 pi^2 / (8 mu L_eta^2),
/// potential block by adaptive composite Gauss-Legendre quadrature.
/// Throws QuadratureUnderResolved if refinements fail to agree to 1e-10.
RealHamiltonian build_real_hamiltonian(double eta, const PotentialParams& p,
                                       const BasisSpec& b);

/// Complex-scaled Hamiltonian, eta = delta_eta + i theta: kinetic scaled by
/// e^{-2(delta_eta + i theta)}, potential evaluated at x e^{delta_eta + i theta}
/// along the real quadrature grid of the unscaled box.
ComplexHamiltonian build_complex_hamiltonian(double theta, double delta_eta,
                                             const PotentialParams& p,
                                             const BasisSpec& b);

/// Gram matrix of the basis via the same quadrature path (identity to
/// quadrature accuracy); used by orthonormality checks.
Eigen::MatrixXd basis_gram_matrix(double eta, const BasisSpec& b);

}  // namespace stabres
