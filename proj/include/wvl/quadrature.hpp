#pragma once

// Shared numerical substrate: truncated uniform grids, trapezoid integration
// with a half-resolution Richardson estimate, centered differences, the
// classical RK4 step and an adaptive Gauss-Kronrod rule.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <utility>

#include "wvl/errors.hpp"

namespace wvl {

/// One axis of a truncated evaluation grid. Point count is odd and >= 3.
class GridSpec {
public:
    GridSpec() = default;
    GridSpec(double center, double half_width, int points)
        : center_(center), half_width_(half_width), points_(points) {
        if (!(half_width > 0.0) || !std::isfinite(half_width) || !std::isfinite(center)) {
            throw InvalidArgument("GridSpec: half-width must be positive and finite");
        }
        if (points < 3 || points % 2 == 0) {
            throw InvalidArgument("GridSpec: point count must be odd and >= 3, got " +
                                  std::to_string(points));
        }
    }

    double center() const { return center_; }
    double half_width() const { return half_width_; }
    int points() const { return points_; }
    double lower() const { return center_ - half_width_; }
    double upper() const { return center_ + half_width_; }
    double spacing() const { return 2.0 * half_width_ / (points_ - 1); }
    double node(int i) const { return lower() + i * spacing(); }

    Eigen::ArrayXd nodes() const {
        Eigen::ArrayXd out(points_);
        for (int i = 0; i < points_; ++i) out(i) = node(i);
        return out;
    }

    /// Same extent, 2(points-1)+1 points.
    GridSpec refined() const { return GridSpec(center_, half_width_, 2 * points_ - 1); }

private:
    double center_ = 0.0;
    double half_width_ = 1.0;
    int points_ = 3;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
};

namespace detail {

inline double trapezoid_weight(int i, int n, int stride) {
    return (i == 0 || i == n - 1) ? 0.5 * stride : 1.0 * stride;
}

inline void require_finite(double v, std::initializer_list<double> at) {
    if (!std::isfinite(v)) {
        throw EvaluationError("integrate: non-finite integrand sample", std::vector<double>(at));
    }
}

}  // namespace detail

/// Trapezoid rule on pre-sampled values; error estimate from the every-other-point subgrid.
inline QuadratureResult integrate_samples(const Eigen::ArrayXd& values, const GridSpec& grid) {
    const int n = grid.points();
    if (values.size() != n) throw InvalidArgument("integrate_samples: size mismatch");
    double fine = 0.0;
    double coarse = 0.0;
    for (int i = 0; i < n; ++i) {
        fine += detail::trapezoid_weight(i, n, 1) * values(i);
        if (i % 2 == 0) coarse += detail::trapezoid_weight(i, n, 2) * values(i);
    }
    const double h = grid.spacing();
    fine *= h;
    coarse *= h;
    return {fine, std::abs(fine - coarse) / 3.0};
}

/// Tensor-product trapezoid on values(i, j) = f(x_i, p_j).
inline QuadratureResult integrate_samples(const Eigen::ArrayXXd& values, const GridSpec& gx,
                                          const GridSpec& gp) {
    const int nx = gx.points();
    const int np = gp.points();
    if (values.rows() != nx || values.cols() != np) {
        throw InvalidArgument("integrate_samples: shape mismatch");
    }
    double fine = 0.0;
    double coarse = 0.0;
    for (int i = 0; i < nx; ++i) {
        const double wx = detail::trapezoid_weight(i, nx, 1);
        const double wx2 = detail::trapezoid_weight(i, nx, 2);
        for (int j = 0; j < np; ++j) {
            fine += wx * detail::trapezoid_weight(j, np, 1) * values(i, j);
            if (i % 2 == 0 && j % 2 == 0) {
                coarse += wx2 * detail::trapezoid_weight(j, np, 2) * values(i, j);
            }
        }
    }
    const double area = gx.spacing() * gp.spacing();
    fine *= area;
    coarse *= area;
    return {fine, std::abs(fine - coarse) / 3.0};
}

template <typename F>
QuadratureResult integrate(F&& fn, const GridSpec& grid) {
    Eigen::ArrayXd values(grid.points());
    for (int i = 0; i < grid.points(); ++i) {
        const double x = grid.node(i);
        values(i) = fn(x);
        detail::require_finite(values(i), {x});
    }
    return integrate_samples(values, grid);
}

template <typename F>
QuadratureResult integrate(F&& fn, const GridSpec& gx, const GridSpec& gp) {
    Eigen::ArrayXXd values(gx.points(), gp.points());
    for (int i = 0; i < gx.points(); ++i) {
        const double x = gx.node(i);
        for (int j = 0; j < gp.points(); ++j) {
            const double p = gp.node(j);
            values(i, j) = fn(x, p);
            detail::require_finite(values(i, j), {x, p});
        }
    }
    return integrate_samples(values, gx, gp);
}

/// Second-order centered difference, first or second derivative.
template <typename F>
auto central_diff(F&& fn, double at, double h, int order) -> decltype(fn(at)) {
    if (!(h > 0.0)) throw InvalidArgument("central_diff: step must be positive");
    if (order == 1) return (fn(at + h) - fn(at - h)) / (2.0 * h);
    if (order == 2) return (fn(at + h) - 2.0 * fn(at) + fn(at - h)) / (h * h);
    throw InvalidArgument("central_diff: order must be 1 or 2");
}

/// One classical fourth-order Runge-Kutta step of y' = f(t, y).
template <typename Vec, typename F>
Vec rk4_step(const Vec& y, F&& f, double t, double h) {
    auto checked = [&](double tt, const Vec& yy) {
        Vec d = f(tt, yy);
        if (!d.allFinite()) throw IntegrationError("rk4_step: non-finite derivative", tt);
        return d;
    };
    const Vec k1 = checked(t, y);
    const Vec k2 = checked(t + 0.5 * h, Vec(y + 0.5 * h * k1));
    const Vec k3 = checked(t + 0.5 * h, Vec(y + 0.5 * h * k2));
    const Vec k4 = checked(t + h, Vec(y + h * k3));
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

namespace detail {

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1].
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename F>
std::pair<double, double> gk15(F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double r = 0.5 * (b - a);
    const double fc = f(c);
    double kronrod = kKronrodWeights[7] * fc;
    double gauss = kGaussWeights[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = r * kKronrodNodes[i];
        const double s = f(c - dx) + f(c + dx);
        kronrod += kKronrodWeights[i] * s;
        if (i % 2 == 1) gauss += kGaussWeights[i / 2] * s;
    }
    return {kronrod * r, std::abs((kronrod - gauss) * r)};
}

template <typename F>
QuadratureResult gk_adaptive(F& f, double a, double b, double tol, int depth) {
    auto [value, err] = gk15(f, a, b);
    if (err <= tol || depth <= 0) return {value, err};
    const double mid = 0.5 * (a + b);
    const QuadratureResult left = gk_adaptive(f, a, mid, 0.5 * tol, depth - 1);
    const QuadratureResult right = gk_adaptive(f, mid, b, 0.5 * tol, depth - 1);
    return {left.value + right.value, left.error_estimate + right.error_estimate};
}

}  // namespace detail

/// Adaptive bisection with a 7/15 Gauss-Kronrod pair. Oriented: swapping limits negates.
template <typename F>
QuadratureResult integrate_adaptive(F&& fn, double a, double b, double tol = 1e-12,
                                    int max_depth = 40) {
    if (a == b) return {0.0, 0.0};
    auto f = [&](double x) {
        const double v = fn(x);
        detail::require_finite(v, {x});
        return v;
    };
    if (b < a) {
        QuadratureResult r = detail::gk_adaptive(f, b, a, tol, max_depth);
        r.value = -r.value;
        return r;
    }
    return detail::gk_adaptive(f, a, b, tol, max_depth);
}

}  // namespace wvl
