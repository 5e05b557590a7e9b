#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "stabres/errors.hpp"

namespace stabres {

/// Full spectrum of a real symmetric matrix, eigenvalues ascending,
/// orthonormal eigenvectors with a deterministic sign (largest-magnitude
/// component positive).
struct RealEigenSystem {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;  // columns
};

/// Full spectrum of a general complex matrix, sorted by real part (ties by
/// imaginary part). For complex-symmetric input the right eigenvectors are
/// normalized under the c-product v^T v = 1 (no conjugation), so left
/// eigenvectors are their transposes.
struct ComplexEigenSystem {
    Eigen::VectorXcd values;
    Eigen::MatrixXcd vectors;  // columns
    /// Indices of eigenvalues closer than 1e-8 to a neighbor, grouped.
    /// Near-degenerate pairs (exceptional-point probes) are reported here
    /// instead of failing.
    std::vector<std::vector<int>> clusters;
};

/// Eigendecomposition of a real symmetric matrix (LAPACK dsyevd behind the
/// contract). Throws NotSymmetric if the input is asymmetric beyond 1e-10
/// relative, NoConvergence on LAPACK failure.
RealEigenSystem eig_symmetric(const Eigen::MatrixXd& A);

/// Eigenvalues only (same backend, cheaper).
Eigen::VectorXd eigvals_symmetric(const Eigen::MatrixXd& A);

/// Eigendecomposition of a general complex matrix (LAPACK zgeev behind the
/// contract). Throws NoConvergence on LAPACK failure.
ComplexEigenSystem eig_complex(const Eigen::MatrixXcd& A);

/// Eigenvalues only, sorted by (Re, Im).
Eigen::VectorXcd eigvals_complex(const Eigen::MatrixXcd& A);

}  // namespace stabres
