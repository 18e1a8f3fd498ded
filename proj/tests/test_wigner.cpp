#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "wvl/vlasov.hpp"
#include "wvl/wigner.hpp"

using doctest::Approx;
using namespace wvl;

namespace {

const PhysicalParams unit(1.0, 1.0, 1.0);

SigmaState state(double sigma, double sigma_dot = 0.0, double sigma_ddot = 0.0) {
    SigmaState s;
    s.sigma = sigma;
    s.sigma_dot = sigma_dot;
    s.sigma_ddot = sigma_ddot;
    return s;
}

const SigmaState ground = state(1.0 / std::sqrt(2.0));

}  // namespace

TEST_CASE("epsilon values and expanded form") {
    CHECK(epsilon(ground, unit, PhasePoint{1.0, 0.0}) == Approx(1.0).epsilon(1e-14));
    CHECK(epsilon(ground, unit, PhasePoint{}) == 0.0);
    CHECK(epsilon(state(1.0, 1.0), unit, PhasePoint{1.0, 1.0}) == Approx(0.5).epsilon(1e-14));

    const PhysicalParams p(1.7, 0.6, 1.0);
    for (const SigmaState& s : {state(0.7, 0.3), state(1.4, -2.0)}) {
        for (double x : {-1.0, 0.4}) {
            for (double q : {-0.9, 0.0, 1.3}) {
                const double shear = p.m() * s.sigma_dot / s.sigma;
                const double expanded = x * x / (2 * s.sigma * s.sigma) +
                                        2 * s.sigma * s.sigma / (p.hbar() * p.hbar()) * std::pow(q - shear * x, 2);
                CHECK(epsilon(s, p, PhasePoint{x, q}) == Approx(expanded).epsilon(1e-13));
            }
        }
    }
    // Static case: eps is the classical energy in units of hbar omega / 2.
    for (double x : {-0.6, 1.1}) {
        for (double q : {0.3, -1.5}) {
            CHECK(epsilon(ground, unit, PhasePoint{x, q}) == Approx(2.0 * (q * q / 2 + x * x / 2)).epsilon(1e-14));
        }
    }
}

TEST_CASE("epsilon gradient matches differences") {
    const PhysicalParams p(1.3, 0.8, 1.0);
    const SigmaState s = state(0.9, 0.5);
    const PhasePoint pt{0.7, -0.4};
    const double h = 1e-6;
    const PhasePoint g = epsilon_gradient(s, p, pt);
    CHECK(g.x == Approx((epsilon(s, p, PhasePoint{pt.x + h, pt.p}) - epsilon(s, p, PhasePoint{pt.x - h, pt.p})) / (2 * h)).epsilon(1e-7));
    CHECK(g.p == Approx((epsilon(s, p, PhasePoint{pt.x, pt.p + h}) - epsilon(s, p, PhasePoint{pt.x, pt.p - h})) / (2 * h)).epsilon(1e-7));
}

TEST_CASE("wigner at the origin") {
    CHECK(wigner(0, ground, unit, PhasePoint{}) == Approx(1.0 / kPi).epsilon(1e-15));
    CHECK(wigner(1, ground, unit, PhasePoint{}) == Approx(-1.0 / kPi).epsilon(1e-15));
    CHECK(wigner(2, ground, unit, PhasePoint{}) == Approx(1.0 / kPi).epsilon(1e-15));
    CHECK_THROWS_AS(wigner(0, state(0.0), unit, PhasePoint{}), DomainError);
}

TEST_CASE("wigner agrees with the transform of the static eigenfunction") {
    for (int n = 0; n <= 4; ++n) {
        for (double x : {0.0, 0.6, -1.3}) {
            for (double q : {0.0, 0.8, -1.7}) {
                const double ref = oracle::wigner_transform_static(n, 1.0, 1.0, 1.0, x, q);
                CHECK(wigner(n, ground, unit, PhasePoint{x, q}) == Approx(ref).epsilon(1e-9).scale(1.0));
            }
        }
    }
}

TEST_CASE("wigner derivative in epsilon") {
    for (int n : {0, 2, 5}) {
        for (double e : {0.1, 1.0, 3.3}) {
            const double h = 1e-6;
            const double s = (n % 2 == 0) ? 1.0 : -1.0;
            auto w = [&](double v) { return s / kPi * std::exp(-v) * laguerre(n, 2 * v); };
            CHECK(wigner_deps(n, e, unit) == Approx((w(e + h) - w(e - h)) / (2 * h)).epsilon(1e-7).scale(1.0));
        }
    }
}

TEST_CASE("normalization, marginal and negativity") {
    const PhysicalParams p(1.0, 1.0, 1.0);
    for (const SigmaState& s : {ground, state(1.2, 0.8), state(0.5, -1.5)}) {
        for (int n = 0; n <= 6; ++n) {
            const PhaseGrid g = default_phase_grid(n, s, p);
            const QuadratureResult mass =
                integrate_phase([&](double x, double q) { return wigner(n, s, p, PhasePoint{x, q}); }, g);
            CHECK(mass.value == Approx(1.0).epsilon(1e-6));

            double lowest = 1.0;
            for (int i = 0; i < g.x.points(); i += 2) {
                for (int j = 0; j < g.q.points(); j += 2) {
                    lowest = std::min(lowest, wigner(n, s, p, PhasePoint{g.x.node(i), g.p(i, j)}));
                }
            }
            if (n == 0) {
                CHECK(lowest >= -1e-12);
            } else {
                CHECK(lowest < 0.0);
            }

            for (double x : {-0.9 * s.sigma, 0.35 * s.sigma, 1.7 * s.sigma}) {
                const GridSpec pg = default_p_grid(n, s, p, x, 801);
                const double marginal =
                    integrate([&](double q) { return wigner(n, s, p, PhasePoint{x, q}); }, pg).value;
                CHECK(marginal == Approx(density(n, s, x)).epsilon(1e-6).scale(1.0));
            }
        }
    }
}

TEST_CASE("ellipse geometry") {
    const EllipseGeometry c = ellipse_geometry(ground, unit);
    CHECK(c.a11 == 1.0);
    CHECK(c.a12 == 0.0);
    CHECK(c.a22 == 1.0);
    CHECK(c.theta == 0.0);
    CHECK(c.det == 1.0);
    CHECK(c.area_at_unit_level == Approx(kPi));

    const EllipseGeometry t = ellipse_geometry(state(1.0, 0.5), unit);
    CHECK(t.a12 == Approx(-1.0));
    CHECK(t.a11 == Approx(2.0));
    CHECK(std::tan(2.0 * t.theta) == Approx(-2.0).epsilon(1e-12));

    const SigmaSource src(SinSquaredDriver{0.9, 1.4}, unit);
    for (double tt = 0.0; tt < 5.0; tt += 0.37) {
        const EllipseGeometry e = ellipse_geometry(src.state(tt), unit);
        CHECK(std::abs(e.det - 1.0) < 1e-12);
        CHECK(e.area_at_unit_level == Approx(kPi).epsilon(1e-12));
        CHECK(e.theta > -kPi / 4 - 1e-15);
        CHECK(e.theta <= kPi / 4);
    }
}

TEST_CASE("velocity moment") {
    const SigmaState still = state(0.8);
    CHECK(std::abs(mean_velocity_from_wigner(2, still, unit, 0.3, default_p_grid(2, still, unit, 0.3))) < 1e-12);
    const SigmaState s = state(1.5, 1.0);
    for (int n : {0, 3}) {
        const double v = mean_velocity_from_wigner(n, s, unit, 2.0, default_p_grid(n, s, unit, 2.0));
        CHECK(v == Approx(4.0 / 3.0).epsilon(1e-6));
    }
    CHECK_THROWS_AS(mean_velocity_from_wigner(1, s, unit, 0.0, default_p_grid(1, s, unit, 0.0)), ConditioningError);
}

TEST_CASE("pressure force moment") {
    CHECK(std::abs(pressure_force_from_wigner(0, ground, unit, 0.0, default_p_grid(0, ground, unit, 0.0))) < 1e-9);
    const double f = pressure_force_from_wigner(0, ground, unit, 1.0, default_p_grid(0, ground, unit, 1.0));
    CHECK(f == Approx(1.0).epsilon(1e-5));
    const SigmaState wide = state(2.0 * ground.sigma, 0.4);
    const double fw = pressure_force_from_wigner(0, wide, unit, 1.0, default_p_grid(0, wide, unit, 1.0));
    CHECK(fw == Approx(1.0 / 16.0).epsilon(1e-5));
    const SigmaState s3 = state(0.9, -0.7);
    const double x = 0.5;
    const double f3 = pressure_force_from_wigner(3, s3, unit, x, default_p_grid(3, s3, unit, x));
    CHECK(f3 == Approx(0.25 / std::pow(0.9, 4) * x).epsilon(1e-5));
}

TEST_CASE("moyal residual") {
    const SigmaSource still(ConstantDriver::from_frequency(1.0, unit), unit);
    CHECK(moyal_residual(2, still, default_phase_grid(2, still.state(0.0), unit), 0.4, 1e-3).max_norm <= 1e-10);

    const SigmaSource sin2(SinSquaredDriver{1.0, 1.0}, unit);
    const PhaseGrid g = default_phase_grid(2, sin2.state(0.4), unit);
    const ResidualReport r = convergence_study([&](double dt) { return moyal_residual(2, sin2, g, 0.4, dt); }, 1e-3);
    CHECK(r.max_norm <= 1e-5);
    CHECK(r.convergence_ratio == Approx(4.0).epsilon(0.1));

    const SigmaSource mat(MathieuDriver{1.0, 0.2, {}, 0.0}, unit, 3.0);
    const PhaseGrid gm = default_phase_grid(2, mat.state(1.5), unit);
    const ResidualReport rm = convergence_study([&](double dt) { return moyal_residual(2, mat, gm, 1.5, dt); }, 1e-3);
    CHECK(rm.max_norm <= 1e-5);
    CHECK(rm.convergence_ratio == Approx(4.0).epsilon(0.1));

    // A wrong transport coefficient is detected.
    CHECK(moyal_residual(2, sin2, g, 0.4, 1e-3, 0.05).max_norm > 1e-3);
}

TEST_CASE("epsilon is conserved along the flow") {
    const SigmaSource still(ConstantDriver::from_frequency(1.0, unit), unit);
    CHECK(std::abs(epsilon_material_derivative(still, 0.3, 1e-4, PhasePoint{0.8, -0.2})) < 1e-12);
    const SigmaSource sin2(SinSquaredDriver{1.0, 1.0}, unit);
    CHECK(std::abs(epsilon_material_derivative(sin2, 0.7, 1e-4, PhasePoint{1.0, 0.5})) <= 1e-6);
    const SigmaSource mat(MathieuDriver{1.0, 0.2, {}, 0.0}, unit, 4.0);
    for (const PhasePoint& pt : {PhasePoint{0.3, -1.1}, PhasePoint{-1.4, 0.6}, PhasePoint{2.0, 2.0}}) {
        CHECK(std::abs(epsilon_material_derivative(mat, 2.2, 1e-4, pt)) <= 1e-6);
    }
}

TEST_CASE("epsilon is constant along hill characteristics") {
    const SigmaSource mat(MathieuDriver{1.0, 0.2, {}, 0.0}, unit, 5 * kPi + 0.01);
    auto w2 = [&](double t) { return mat.omega_squared(t); };
    for (const PhasePoint& start : {PhasePoint{0.0, 1.0}, PhasePoint{0.8, -0.3}}) {
        const PhaseTrajectory tr = integrate_hill(w2, start.x, start.p, unit, 5 * kPi);
        const double e0 = epsilon(mat.state(0.0), unit, start);
        double drift = 0.0;
        for (std::size_t k = 0; k < tr.samples.size(); k += 50) {
            const auto& s = tr.samples[k];
            drift = std::max(drift, std::abs(epsilon(mat.state(s.t), unit, PhasePoint{s.x, s.p}) - e0));
        }
        CHECK(drift <= 1e-6);
    }
}
