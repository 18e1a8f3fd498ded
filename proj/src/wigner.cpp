#include "wvl/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "wvl/vlasov.hpp"

namespace wvl {

namespace {

double momentum_deviation(const SigmaState& s, const PhysicalParams& params) {
    return params.hbar() / (2.0 * s.sigma);
}

int odd_points(double half_width, double spacing) {
    return 2 * static_cast<int>(std::ceil(half_width / spacing)) + 1;
}

void require_off_zeros(int n, const SigmaState& s, double x, const char* who) {
    for (double z : scaled_zeros(n, s)) {
        if (std::abs(x - z) <= kZeroGuard) {
            throw ConditioningError(std::string(who) + ": x within guard band of a density zero");
        }
    }
}

struct Moments {
    double mass;
    double mean_p;
};

Moments p_moments(int n, const SigmaState& s, const PhysicalParams& params, double x, const GridSpec& g) {
    const double mass = integrate([&](double p) { return wigner(n, s, params, PhasePoint{x, p}); }, g).value;
    const double first = integrate([&](double p) { return wigner(n, s, params, PhasePoint{x, p}) * p; }, g).value;
    if (!(std::abs(mass) > 1e-300)) throw ConditioningError("wigner moments: vanishing marginal density");
    return {mass, first / mass};
}

GridSpec shifted(const GridSpec& g, double offset) {
    return GridSpec(g.center() + offset, g.half_width(), g.points());
}

}  // namespace

EllipseGeometry ellipse_geometry(const SigmaState& s, const PhysicalParams& params) {
    require_positive_sigma(s, "ellipse_geometry");
    EllipseGeometry e;
    const double r = s.sigma * s.sigma_dot / params.alpha();
    e.a11 = 1.0 + r * r;
    e.a12 = r;
    e.a22 = 1.0;
    e.det = e.a11 * e.a22 - e.a12 * e.a12;
    e.theta = s.sigma_dot == 0.0 ? 0.0 : 0.5 * std::atan2(2.0 * e.a12, e.a11 - e.a22);
    e.area_at_unit_level = kPi / std::sqrt(e.det);
    return e;
}

GridSpec default_p_grid(int n, const SigmaState& s, const PhysicalParams& params, double x, int points) {
    require_positive_sigma(s, "default_p_grid");
    const double shear = params.m() * s.sigma_dot / s.sigma;
    return GridSpec(shear * x, 8.0 * momentum_deviation(s, params) * std::sqrt(2.0 * n + 1.0), points);
}

double mean_velocity_from_wigner(int n, const SigmaState& s, const PhysicalParams& params, double x,
                                 const GridSpec& p_grid) {
    require_off_zeros(n, s, x, "mean_velocity_from_wigner");
    return p_moments(n, s, params, x, p_grid).mean_p / params.m();
}

double pressure_force_from_wigner(int n, const SigmaState& s, const PhysicalParams& params, double x,
                                  const GridSpec& p_grid, double dx) {
    require_off_zeros(n, s, x, "pressure_force_from_wigner");
    if (!(dx > 0.0)) throw InvalidArgument("pressure_force_from_wigner: dx must be positive");
    const double m = params.m();
    const double shear = m * s.sigma_dot / s.sigma;
    auto pressure = [&](double xx) {
        const GridSpec g = shifted(p_grid, shear * (xx - x));
        const Moments mo = p_moments(n, s, params, xx, g);
        const double v = mo.mean_p / m;
        return integrate(
                   [&](double p) {
                       const double dv = p / m - v;
                       return wigner(n, s, params, PhasePoint{xx, p}) * dv * dv;
                   },
                   g)
            .value;
    };
    const double f = p_moments(n, s, params, x, p_grid).mass;
    return -(pressure(x + dx) - pressure(x - dx)) / (2.0 * dx) / f;
}

PhaseGrid default_phase_grid(int n, const SigmaState& s, const PhysicalParams& params, double resolution) {
    check_order(n, "default_phase_grid");
    require_positive_sigma(s, "default_phase_grid");
    if (!(resolution > 0.0)) throw InvalidArgument("default_phase_grid: resolution must be positive");
    const double spread = std::sqrt(2.0 * n + 1.0);
    const double sp = momentum_deviation(s, params);
    const double hx = s.sigma / (3.0 * spread * resolution);
    const double hq = sp / (3.0 * spread * resolution);
    const double lx = 8.0 * s.sigma * spread;
    const double lq = 8.0 * sp * spread;
    return {GridSpec(0.0, lx, odd_points(lx, hx)), GridSpec(0.0, lq, odd_points(lq, hq)),
            params.m() * s.sigma_dot / s.sigma};
}

ResidualReport moyal_residual(int n, const SigmaSource& source, const PhaseGrid& grid, double t, double dt,
                              double omega2_offset) {
    check_order(n, "moyal_residual");
    const PhysicalParams& params = source.params();
    const SigmaState s = source.state(t);
    const SigmaState sp = source.state(t + dt);
    const SigmaState sm = source.state(t - dt);
    const double m = params.m();
    const double w2 = omega_squared(s, params) + omega2_offset;

    ResidualAccumulator acc;
    for (int i = 0; i < grid.x.points(); ++i) {
        for (int j = 0; j < grid.q.points(); ++j) {
            const PhasePoint pt{grid.x.node(i), grid.p(i, j)};
            // W_n depends on t only through eps, so the stencil acts on eps.
            const double de_dt = (epsilon(sp, params, pt) - epsilon(sm, params, pt)) / (2.0 * dt);
            const double dw_de = wigner_deps(n, epsilon(s, params, pt), params);
            const double dw_dt = dw_de * de_dt;
            const PhasePoint grad = epsilon_gradient(s, params, pt);
            const double drift = (pt.p / m) * dw_de * grad.x;
            const double force = -m * w2 * pt.x * dw_de * grad.p;
            acc.add(std::abs(dw_dt + drift + force), std::abs(dw_dt) + std::abs(drift) + std::abs(force));
        }
    }
    return acc.report(dt);
}

double epsilon_material_derivative(const SigmaSource& source, double t, double dt, const PhasePoint& pt) {
    const PhysicalParams& params = source.params();
    const SigmaState s = source.state(t);
    const double de_dt =
        (epsilon(source.state(t + dt), params, pt) - epsilon(source.state(t - dt), params, pt)) / (2.0 * dt);
    const PhasePoint grad = epsilon_gradient(s, params, pt);
    const double m = params.m();
    return de_dt + (pt.p / m) * grad.x - m * omega_squared(s, params) * pt.x * grad.p;
}

}  // namespace wvl
