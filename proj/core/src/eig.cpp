#include "stabres/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <lapacke.h>

namespace stabres {

namespace {

constexpr double kClusterGap = 1e-8;

void check_symmetric(const Eigen::MatrixXd& A) {
    const double scale = std::max(A.cwiseAbs().maxCoeff(), 1e-300);
    const double dev = (A - A.transpose()).cwiseAbs().maxCoeff();
    if (dev > 1e-10 * scale)
        throw NotSymmetric("asymmetry " + std::to_string(dev / scale) + " relative");
}

}  // namespace

RealEigenSystem eig_symmetric(const Eigen::MatrixXd& A) {
    if (A.rows() != A.cols()) throw InvalidArgument("eig_symmetric: matrix not square");
    check_symmetric(A);
    const lapack_int n = static_cast<lapack_int>(A.rows());
    RealEigenSystem sys;
    sys.vectors = A;  // dsyevd overwrites with eigenvectors
    sys.values.resize(n);
    const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n,
                                           sys.vectors.data(), n, sys.values.data());
    if (info != 0)
        throw NoConvergence("dsyevd info = " + std::to_string(info));
    // deterministic sign: largest-magnitude component positive
    for (lapack_int k = 0; k < n; ++k) {
        Eigen::Index imax = 0;
        sys.vectors.col(k).cwiseAbs().maxCoeff(&imax);
        if (sys.vectors(imax, k) < 0.0) sys.vectors.col(k) = -sys.vectors.col(k);
    }
    return sys;
}

Eigen::VectorXd eigvals_symmetric(const Eigen::MatrixXd& A) {
    if (A.rows() != A.cols()) throw InvalidArgument("eigvals_symmetric: matrix not square");
    check_symmetric(A);
    const lapack_int n = static_cast<lapack_int>(A.rows());
    Eigen::MatrixXd work = A;
    Eigen::VectorXd vals(n);
    const lapack_int info =
        LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'L', n, work.data(), n, vals.data());
    if (info != 0)
        throw NoConvergence("dsyevd info = " + std::to_string(info));
    return vals;
}

namespace {

std::vector<int> sort_order(const Eigen::VectorXcd& w) {
    std::vector<int> idx(w.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        if (w[a].real() != w[b].real()) return w[a].real() < w[b].real();
        return w[a].imag() < w[b].imag();
    });
    return idx;
}

std::vector<std::vector<int>> find_clusters(const Eigen::VectorXcd& sorted) {
    std::vector<std::vector<int>> clusters;
    const int n = static_cast<int>(sorted.size());
    int i = 0;
    while (i < n) {
        int j = i;
        while (j + 1 < n && std::abs(sorted[j + 1] - sorted[j]) < kClusterGap) ++j;
        if (j > i) {
            std::vector<int> c(j - i + 1);
            std::iota(c.begin(), c.end(), i);
            clusters.push_back(std::move(c));
        }
        i = j + 1;
    }
    return clusters;
}

}  // namespace

ComplexEigenSystem eig_complex(const Eigen::MatrixXcd& A) {
    if (A.rows() != A.cols()) throw InvalidArgument("eig_complex: matrix not square");
    if (!A.allFinite()) throw InvalidArgument("eig_complex: non-finite entries");
    const lapack_int n = static_cast<lapack_int>(A.rows());
    Eigen::MatrixXcd work = A;
    Eigen::VectorXcd w(n);
    Eigen::MatrixXcd vr(n, n);
    const lapack_int info = LAPACKE_zgeev(
        LAPACK_COL_MAJOR, 'N', 'V', n,
        reinterpret_cast<lapack_complex_double*>(work.data()), n,
        reinterpret_cast<lapack_complex_double*>(w.data()), nullptr, 1,
        reinterpret_cast<lapack_complex_double*>(vr.data()), n);
    if (info != 0)
        throw NoConvergence("zgeev info = " + std::to_string(info));

    const std::vector<int> idx = sort_order(w);
    ComplexEigenSystem sys;
    sys.values.resize(n);
    sys.vectors.resize(n, n);
    for (int k = 0; k < n; ++k) {
        sys.values[k] = w[idx[k]];
        sys.vectors.col(k) = vr.col(idx[k]);
        // c-normalization: v^T v = 1 when the bilinear norm is away from zero
        // (it vanishes at an exceptional point; keep the unit 2-norm vector then)
        const std::complex<double> cn =
            sys.vectors.col(k).transpose() * sys.vectors.col(k);
        if (std::abs(cn) > 1e-12) sys.vectors.col(k) /= std::sqrt(cn);
    }
    sys.clusters = find_clusters(sys.values);
    return sys;
}

Eigen::VectorXcd eigvals_complex(const Eigen::MatrixXcd& A) {
    if (A.rows() != A.cols()) throw InvalidArgument("eigvals_complex: matrix not square");
    if (!A.allFinite()) throw InvalidArgument("eigvals_complex: non-finite entries");
    const lapack_int n = static_cast<lapack_int>(A.rows());
    Eigen::MatrixXcd work = A;
    Eigen::VectorXcd w(n);
    const lapack_int info = LAPACKE_zgeev(
        LAPACK_COL_MAJOR, 'N', 'N', n,
        reinterpret_cast<lapack_complex_double*>(work.data()), n,
        reinterpret_cast<lapack_complex_double*>(w.data()), nullptr, 1, nullptr, 1);
    if (info != 0)
        throw NoConvergence("zgeev info = " + std::to_string(info));
    const std::vector<int> idx = sort_order(w);
    Eigen::VectorXcd out(n);
    for (int k = 0; k < n; ++k) out[k] = w[idx[k]];
    return out;
}

}  // namespace stabres
