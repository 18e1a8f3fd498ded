#include "wvl/vlasov.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace wvl {

namespace {

bool near_zero(const std::vector<double>& zeros, double x, double guard) {
    return std::any_of(zeros.begin(), zeros.end(), [&](double z) { return std::abs(x - z) <= guard; });
}

}  // namespace

std::vector<double> scaled_zeros(int n, const SigmaState& s) {
    require_positive_sigma(s, "scaled_zeros");
    std::vector<double> z = hermite_zeros(n);
    const double scale = std::sqrt(2.0) * s.sigma;
    for (double& v : z) v *= scale;
    return z;
}

double velocity_field(int n, const SigmaState& s, const FlowParams& flow, double x) {
    check_order(n, "velocity_field");
    require_positive_sigma(s, "velocity_field");
    const double linear = (s.sigma_dot / s.sigma) * x;
    if (flow.C == 0.0) return linear;

    for (double z : scaled_zeros(n, s)) {
        if (std::abs(x - z) <= 1e-12 * std::max(1.0, std::abs(z))) {
            throw PoleError("velocity_field: x=" + std::to_string(x) + " sits on a pole", z);
        }
    }
    const double xs = x / (std::sqrt(2.0) * s.sigma);
    const double h = hermite(n, xs);
    if (h == 0.0) throw PoleError("velocity_field: H_n vanishes at x", x);
    return flow.C * std::exp(xs * xs) / (h * h) + linear;
}

std::vector<Interval> pole_intervals(int n, const SigmaState& s) {
    const std::vector<double> z = scaled_zeros(n, s);
    std::vector<Interval> out;
    out.reserve(z.size() + 1);
    double lo = -std::numeric_limits<double>::infinity();
    for (double b : z) {
        out.push_back({lo, b});
        lo = b;
    }
    out.push_back({lo, std::numeric_limits<double>::infinity()});
    return out;
}

double probability_current(int n, const SigmaState& s, const FlowParams& flow, double x) {
    check_order(n, "probability_current");
    require_positive_sigma(s, "probability_current");
    const double asymptote =
        flow.C / (hermite_norm<double>(n) * std::sqrt(2.0 * kPi) * s.sigma);
    return asymptote + density(n, s, x) * (s.sigma_dot / s.sigma) * x;
}

double theta_integral(int n, const SigmaState& s, double x0, double x) {
    check_order(n, "theta_integral");
    require_positive_sigma(s, "theta_integral");
    if (!std::isfinite(x0) || !std::isfinite(x)) throw InvalidArgument("theta_integral: limits must be finite");

    const std::vector<double> zeros = scaled_zeros(n, s);
    for (double z : zeros) {
        if (std::abs(x0 - z) < kPoleGuard || std::abs(x - z) < kPoleGuard) {
            throw PoleError("theta_integral: limit within guard distance of a pole", z);
        }
    }
    const auto intervals = pole_intervals(n, s);
    const auto home = std::find_if(intervals.begin(), intervals.end(),
                                   [&](const Interval& iv) { return iv.contains(x0); });
    if (home == intervals.end() || !home->contains(x)) {
        throw DomainError("theta_integral: limits straddle a pole of H_n");
    }
    if (x0 == x) return 0.0;

    const double r2s = std::sqrt(2.0) * s.sigma;
    auto integrand = [n](double u) {
        const double h = hermite(n, u);
        return std::exp(u * u) / (h * h);
    };
    const double u0 = x0 / r2s;
    const double u1 = x / r2s;
    // Rough pass sets the scale for a relative tolerance.
    const double rough = integrate_adaptive(integrand, u0, u1, 1e-6).value;
    const double tol = 1e-13 * std::max(1.0, std::abs(rough));
    return r2s * integrate_adaptive(integrand, u0, u1, tol).value;
}

GridSpec default_x_grid(int n, const SigmaState& s, int points) {
    require_positive_sigma(s, "default_x_grid");
    return GridSpec(0.0, 8.0 * s.sigma * std::sqrt(2.0 * n + 1.0), points);
}

ResidualReport continuity_residual(int n, const SigmaSource& source, const GridSpec& grid, double t,
                                   double dt) {
    check_order(n, "continuity_residual");
    const SigmaState s = source.state(t);
    const SigmaState sp = source.state(t + dt);
    const SigmaState sm = source.state(t - dt);
    const std::vector<double> zeros = scaled_zeros(n, s);
    const double dvdx = s.sigma_dot / s.sigma;

    ResidualAccumulator acc;
    for (int i = 0; i < grid.points(); ++i) {
        const double x = grid.node(i);
        if (near_zero(zeros, x, kZeroGuard)) continue;
        const double df_dt = (density(n, sp, x) - density(n, sm, x)) / (2.0 * dt);
        const double f = density(n, s, x);
        const double v = dvdx * x;
        const double advect = v * density_dx(n, s, x);
        const double compress = f * dvdx;
        acc.add(std::abs(df_dt + advect + compress), std::abs(df_dt) + std::abs(advect) + std::abs(compress));
    }
    return acc.report(dt);
}

}  // namespace wvl
