#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace stabres::num {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussRule gauss_legendre(int order);

/// Composite rule: `panels` equal panels of a fixed-order Gauss rule on [-1, 1].
GaussRule composite_gauss(int panels, int order = 16);

/// Natural cubic spline through strictly increasing abscissae.
class CubicSpline {
public:
    CubicSpline(std::vector<double> x, std::vector<double> y);
    double operator()(double t) const;
    double min_x() const { return x_.front(); }
    double max_x() const { return x_.back(); }

private:
    std::vector<double> x_, y_, m_;  // m_: second derivatives
};

/// Minimum of a 1D function on [lo, hi] by golden-section search with a
/// parabolic polish. Returns the abscissa.
double minimize_scalar(const std::function<double(double)>& f, double lo, double hi,
                       double xtol = 1e-13);

/// Nelder-Mead for small dimension with coordinate-wise parabolic polishing.
/// `scale` sets the initial simplex size per coordinate.
struct MinimizeResult {
    Eigen::VectorXd x;
    double value = 0.0;
    int iterations = 0;
};
MinimizeResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                           const Eigen::VectorXd& start, const Eigen::VectorXd& scale,
                           double ftol = 1e-15, int max_iter = 2000);

/// Weighted polynomial least squares: returns coefficients c0..c_degree of
/// sum_k c_k x^k minimizing sum_i w_i (p(x_i) - y_i)^2.
Eigen::VectorXd polyfit(const std::vector<double>& x, const std::vector<double>& y,
                        int degree, const std::vector<double>* weights = nullptr);
double polyval(const Eigen::VectorXd& coeffs, double x);

/// FNV-1a 64-bit hash, used for config fingerprints in output metadata.
std::uint64_t fnv1a64(const std::string& data);

/// Runs f(i) for i in [0, n) on `threads` workers (inline when threads <= 1).
/// Results must be written to disjoint slots; the partition is deterministic.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& f);

}  // namespace stabres::num
