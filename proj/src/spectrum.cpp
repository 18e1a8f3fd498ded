#include "wvl/spectrum.hpp"

#include <cmath>

#include "wvl/vlasov.hpp"
#include "wvl/wavefunction.hpp"

namespace wvl {

std::string to_string(SpectrumMethod m) {
    return m == SpectrumMethod::quadrature ? "quadrature" : "trajectory";
}

SpectrumSample spectrum_by_quadrature(int n, const SigmaState& s, const PhysicalParams& params,
                                      const PhaseGrid& grid, double tol) {
    check_order(n, "spectrum_by_quadrature");
    const QuadratureResult r = integrate_phase(
        [&](double x, double p) {
            const PhasePoint pt{x, p};
            return wigner(n, s, params, pt) * energy_function(s, params, pt);
        },
        grid);
    if (r.error_estimate > tol * std::max(1.0, std::abs(r.value))) {
        throw AccuracyError("spectrum_by_quadrature: grid underresolved at n=" + std::to_string(n) +
                                ", t=" + std::to_string(s.t),
                            r.error_estimate);
    }
    SpectrumSample out;
    out.t = s.t;
    out.n = n;
    out.energy = r.value;
    out.method = SpectrumMethod::quadrature;
    out.error_estimate = r.error_estimate;
    return out;
}

SpectrumSample spectrum_by_quadrature(int n, const SigmaState& s, const PhysicalParams& params, double tol) {
    return spectrum_by_quadrature(n, s, params, default_phase_grid(n, s, params), tol);
}

std::vector<SpectrumSample> spectrum_by_trajectory(int n, const SigmaSource& source, const std::vector<double>& times,
                                                   const TrajectoryLaunch& launch) {
    check_order(n, "spectrum_by_trajectory");
    if (!(launch.h > 0.0)) throw InvalidArgument("spectrum_by_trajectory: step must be positive");
    const PhysicalParams& params = source.params();
    const double m = params.m();
    const double e0 = spectrum_by_quadrature(n, source.state(0.0), params).energy;
    if (!(e0 > 0.0)) throw DomainError("spectrum_by_trajectory: initial energy must be positive");

    double x = 0.0;
    double p = std::sqrt(2.0 * m * e0) * std::cos(launch.angle);
    if (launch.angle != 0.0) {
        const double w2 = source.omega_squared(0.0);
        if (!(w2 > 0.0)) throw DomainError("spectrum_by_trajectory: angled launch needs Omega^2(0) > 0");
        x = std::sqrt(2.0 * e0 / (m * w2)) * std::sin(launch.angle);
    }

    auto rhs = [&](double t, const Eigen::Vector2d& y) {
        return Eigen::Vector2d(y(1) / m, -m * source.omega_squared(t) * y(0));
    };
    std::vector<SpectrumSample> out;
    out.reserve(times.size());
    Eigen::Vector2d y(x, p);
    double t = 0.0;
    for (double target : times) {
        if (target < t) throw InvalidArgument("spectrum_by_trajectory: times must be nondecreasing and >= 0");
        const double span = target - t;
        const int steps = static_cast<int>(std::ceil(span / launch.h - 1e-9));
        if (steps > 0) {
            const double dt = span / steps;
            for (int k = 0; k < steps; ++k) y = rk4_step(y, rhs, t + k * dt, dt);
        }
        t = target;
        SpectrumSample smp;
        smp.t = t;
        smp.n = n;
        smp.energy = energy_function(source.state(t), params, PhasePoint{y(0), y(1)});
        smp.method = SpectrumMethod::trajectory;
        out.push_back(smp);
    }
    return out;
}

double mean_energy_field(int n, const SigmaState& s, const PhysicalParams& params, double x, const GridSpec& p_grid) {
    check_order(n, "mean_energy_field");
    for (double z : scaled_zeros(n, s)) {
        if (std::abs(x - z) <= kZeroGuard) throw PoleError("mean_energy_field: x at a density zero", z);
    }
    const double m = params.m();
    const double u = potential_U1(s, params, x);
    const double f = integrate([&](double p) { return wigner(n, s, params, PhasePoint{x, p}); }, p_grid).value;
    const double e = integrate(
                         [&](double p) {
                             return wigner(n, s, params, PhasePoint{x, p}) * (p * p / (2.0 * m) + u);
                         },
                         p_grid)
                         .value;
    return e / f;
}

}  // namespace wvl
