#include "stabres/numerics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "stabres/errors.hpp"

namespace stabres::num {

GaussRule gauss_legendre(int order) {
    if (order < 1) throw InvalidArgument("gauss_legendre: order must be >= 1");
    GaussRule r;
    r.nodes.resize(order);
    r.weights.resize(order);
    // Newton iteration on P_n, symmetric about 0
    const int m = (order + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < order; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = order * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.nodes[i] = -x;
        r.nodes[order - 1 - i] = x;
        r.weights[i] = r.weights[order - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
    return r;
}

GaussRule composite_gauss(int panels, int order) {
    if (panels < 1) throw InvalidArgument("composite_gauss: panels must be >= 1");
    const GaussRule base = gauss_legendre(order);
    GaussRule r;
    r.nodes.reserve(static_cast<std::size_t>(panels) * order);
    r.weights.reserve(static_cast<std::size_t>(panels) * order);
    const double h = 2.0 / panels;
    for (int p = 0; p < panels; ++p) {
        const double a = -1.0 + p * h;
        for (int q = 0; q < order; ++q) {
            r.nodes.push_back(a + 0.5 * h * (base.nodes[q] + 1.0));
            r.weights.push_back(0.5 * h * base.weights[q]);
        }
    }
    return r;
}

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 3 || y_.size() != n)
        throw InvalidArgument("CubicSpline: need >= 3 points with matching sizes");
    for (std::size_t i = 1; i < n; ++i)
        if (!(x_[i] > x_[i - 1]))
            throw InvalidArgument("CubicSpline: abscissae must be strictly increasing");
    // natural boundary: solve tridiagonal system for second derivatives
    m_.assign(n, 0.0);
    std::vector<double> c(n, 0.0), d(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h0 = x_[i] - x_[i - 1];
        const double h1 = x_[i + 1] - x_[i];
        const double a = h0 / 6.0, b = (h0 + h1) / 3.0, cc = h1 / 6.0;
        const double rhs = (y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0;
        const double denom = b - a * c[i - 1];
        c[i] = cc / denom;
        d[i] = (rhs - a * d[i - 1]) / denom;
    }
    for (std::size_t i = n - 2; i >= 1; --i) {
        m_[i] = d[i] - c[i] * m_[i + 1];
        if (i == 1) break;
    }
}

double CubicSpline::operator()(double t) const {
    const std::size_t n = x_.size();
    std::size_t i = std::upper_bound(x_.begin(), x_.end(), t) - x_.begin();
    i = std::clamp<std::size_t>(i, 1, n - 1);
    const double h = x_[i] - x_[i - 1];
    const double a = (x_[i] - t) / h, b = (t - x_[i - 1]) / h;
    return a * y_[i - 1] + b * y_[i] +
           ((a * a * a - a) * m_[i - 1] + (b * b * b - b) * m_[i]) * h * h / 6.0;
}

double minimize_scalar(const std::function<double(double)>& f, double lo, double hi,
                       double xtol) {
    if (!(hi > lo)) throw InvalidArgument("minimize_scalar: empty interval");
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > xtol) {
        if (f1 < f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - gr * (b - a); f1 = f(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + gr * (b - a); f2 = f(x2);
        }
    }
    // parabolic polish through the final bracket
    const double xm = 0.5 * (a + b);
    const double h = std::max(1e-3 * (hi - lo), 4.0 * xtol);
    const double xl = std::max(lo, xm - h), xr = std::min(hi, xm + h);
    const double fl = f(xl), fm = f(xm), fr = f(xr);
    const double denom = (xm - xl) * (fm - fr) - (xm - xr) * (fm - fl);
    if (std::abs(denom) > 0) {
        const double num =
            (xm - xl) * (xm - xl) * (fm - fr) - (xm - xr) * (xm - xr) * (fm - fl);
        const double cand = xm - 0.5 * num / denom;
        // equal-within-roundoff candidates are accepted: golden section alone
        // stalls at sqrt(eps) on smooth minima, the parabola does not
        if (cand > lo && cand < hi && f(cand) <= fm + 1e-12 * (std::abs(fm) + 1e-30))
            return cand;
    }
    return xm;
}

namespace {

MinimizeResult polish_coordinates(const std::function<double(const Eigen::VectorXd&)>& f,
                                  MinimizeResult best, const Eigen::VectorXd& scale) {
    // quadratic line search per coordinate, shrinking steps; nails minima that
    // Nelder-Mead leaves at ~sqrt(ftol) accuracy
    const int dim = static_cast<int>(best.x.size());
    Eigen::VectorXd step = 1e-4 * scale;
    for (int round = 0; round < 60; ++round) {
        bool moved = false;
        for (int k = 0; k < dim; ++k) {
            Eigen::VectorXd xp = best.x, xm = best.x;
            xp[k] += step[k];
            xm[k] -= step[k];
            const double fp = f(xp), fm = f(xm);
            // parabola through (-1, fm), (0, f0), (+1, fp) in units of step
            const double denom = fp - 2.0 * best.value + fm;
            double t = 0.0;
            if (denom > 0) t = std::clamp(0.5 * (fm - fp) / denom, -1.0, 1.0);
            else if (fp < fm) t = 1.0;
            else if (fm < fp) t = -1.0;
            if (t != 0.0) {
                Eigen::VectorXd xt = best.x;
                xt[k] += t * step[k];
                const double ft = f(xt);
                if (ft < best.value) {
                    best.x = xt;
                    best.value = ft;
                    moved = true;
                }
            }
            if (fp < best.value) { best.x = xp; best.value = fp; moved = true; }
            if (fm < best.value) { best.x = xm; best.value = fm; moved = true; }
        }
        if (!moved) step *= 0.35;
        if (step.cwiseQuotient(scale).maxCoeff() < 1e-15) break;
    }
    return best;
}

}  // namespace

MinimizeResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                           const Eigen::VectorXd& start, const Eigen::VectorXd& scale,
                           double ftol, int max_iter) {
    const int dim = static_cast<int>(start.size());
    if (dim < 1 || scale.size() != dim)
        throw InvalidArgument("nelder_mead: dimension mismatch");
    std::vector<Eigen::VectorXd> pts(dim + 1, start);
    for (int i = 0; i < dim; ++i) pts[i + 1][i] += scale[i];
    std::vector<double> fv(dim + 1);
    for (int i = 0; i <= dim; ++i) fv[i] = f(pts[i]);

    int iter = 0;
    auto order = [&] {
        std::vector<int> idx(dim + 1);
        for (int i = 0; i <= dim; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fv[a] < fv[b]; });
        std::vector<Eigen::VectorXd> p2(dim + 1);
        std::vector<double> f2(dim + 1);
        for (int i = 0; i <= dim; ++i) { p2[i] = pts[idx[i]]; f2[i] = fv[idx[i]]; }
        pts.swap(p2);
        fv.swap(f2);
    };
    order();
    while (iter++ < max_iter) {
        if (std::abs(fv[dim] - fv[0]) <= ftol * (std::abs(fv[0]) + ftol)) break;
        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(dim);
        for (int i = 0; i < dim; ++i) centroid += pts[i];
        centroid /= dim;
        const Eigen::VectorXd refl = centroid + (centroid - pts[dim]);
        const double fr = f(refl);
        if (fr < fv[0]) {
            const Eigen::VectorXd exp_ = centroid + 2.0 * (centroid - pts[dim]);
            const double fe = f(exp_);
            if (fe < fr) { pts[dim] = exp_; fv[dim] = fe; }
            else { pts[dim] = refl; fv[dim] = fr; }
        } else if (fr < fv[dim - 1]) {
            pts[dim] = refl;
            fv[dim] = fr;
        } else {
            const Eigen::VectorXd con = centroid + 0.5 * (pts[dim] - centroid);
            const double fc = f(con);
            if (fc < fv[dim]) { pts[dim] = con; fv[dim] = fc; }
            else {
                for (int i = 1; i <= dim; ++i) {
                    pts[i] = pts[0] + 0.5 * (pts[i] - pts[0]);
                    fv[i] = f(pts[i]);
                }
            }
        }
        order();
    }
    MinimizeResult res{pts[0], fv[0], iter};
    return polish_coordinates(f, std::move(res), scale);
}

Eigen::VectorXd polyfit(const std::vector<double>& x, const std::vector<double>& y,
                        int degree, const std::vector<double>* weights) {
    const std::size_t n = x.size();
    if (y.size() != n || n < static_cast<std::size_t>(degree) + 1)
        throw InvalidArgument("polyfit: not enough points");
    Eigen::MatrixXd A(n, degree + 1);
    Eigen::VectorXd b(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double w = weights ? std::sqrt((*weights)[i]) : 1.0;
        double p = 1.0;
        for (int k = 0; k <= degree; ++k) {
            A(i, k) = w * p;
            p *= x[i];
        }
        b(i) = w * y[i];
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    if (qr.rank() < degree + 1) throw IllConditioned("polyfit: rank-deficient design matrix");
    return qr.solve(b);
}

double polyval(const Eigen::VectorXd& coeffs, double x) {
    double acc = 0.0;
    for (int k = static_cast<int>(coeffs.size()) - 1; k >= 0; --k) acc = acc * x + coeffs[k];
    return acc;
}

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& f) {
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            f(i);
        }
    };
    std::vector<std::thread> pool;
    const int k = std::min<std::size_t>(threads, n);
    pool.reserve(k);
    for (int t = 0; t < k; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

}  // namespace stabres::num
