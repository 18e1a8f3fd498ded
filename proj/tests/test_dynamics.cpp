#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "wvl/dynamics.hpp"
#include "wvl/spectrum.hpp"

using doctest::Approx;
using namespace wvl;

namespace {
const PhysicalParams unit(1.0, 1.0, 1.0);
}

TEST_CASE("physical params") {
    CHECK_THROWS_AS(PhysicalParams(0.0, 1.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(PhysicalParams(1.0, -1.0, 1.0), InvalidArgument);
    const PhysicalParams p(2.0, 3.0, 5.0);
    CHECK(p.alpha() == Approx(-0.75));
    CHECK(p.beta() == Approx(1.0 / 3.0));
    CHECK(p.alpha2() == Approx(-1.25));
    CHECK(p.alpha() * p.beta() == Approx(-1.0 / (2.0 * p.m())));
}

TEST_CASE("closed-form drivers") {
    const SigmaState a = sigma_eval(SinSquaredDriver{1.0, 1.0}, unit, kPi / 4);
    CHECK(a.sigma == Approx(1.5));
    CHECK(a.sigma_dot == Approx(1.0));
    CHECK(std::abs(a.sigma_ddot) < 1e-15);

    const ConstantDriver c = ConstantDriver::from_frequency(1.0, unit);
    CHECK(c.sigma0 == Approx(1.0 / std::sqrt(2.0)));
    const SigmaState b = sigma_eval(c, unit, 12.3);
    CHECK(b.sigma == Approx(0.70711).epsilon(1e-5));
    CHECK(b.sigma_dot == 0.0);
    CHECK(b.sigma_ddot == 0.0);

    const SigmaState d = sigma_eval(SeparatrixDriver{1.0, 0.0, 1}, unit, 2.0);
    CHECK(d.sigma == Approx(std::sqrt(4.25)));

    CHECK_THROWS_AS(sigma_eval(MathieuDriver{}, unit, 0.0), UnsupportedError);
    CHECK_THROWS_AS(validate_driver(SeparatrixDriver{0.0, 1.0, 1}, unit), InvalidArgument);
    CHECK_THROWS_AS(sigma_eval(SinSquaredDriver{-1.0, 1.0}, unit, 0.0), DomainError);
}

TEST_CASE("analytic derivatives agree with differences") {
    const SigmaDriver drivers[] = {SinSquaredDriver{0.8, 1.3}, SeparatrixDriver{0.7, 0.4, -1}};
    for (const auto& drv : drivers) {
        for (double t : {0.2, 1.1, 2.7}) {
            const double h = 1e-4;
            const SigmaState s = sigma_eval(drv, unit, t);
            const SigmaState sp = sigma_eval(drv, unit, t + h);
            const SigmaState sm = sigma_eval(drv, unit, t - h);
            CHECK(s.sigma_dot == Approx((sp.sigma - sm.sigma) / (2 * h)).epsilon(1e-7));
            CHECK(s.sigma_ddot == Approx((sp.sigma_dot - sm.sigma_dot) / (2 * h)).epsilon(1e-6).scale(1.0));
            CHECK(s.sigma_dddot == Approx((sp.sigma_ddot - sm.sigma_ddot) / (2 * h)).epsilon(1e-6).scale(1.0));
        }
    }
}

TEST_CASE("omega squared") {
    const SigmaState s = sigma_eval(ConstantDriver::from_frequency(1.0, unit), unit, 0.0);
    CHECK(omega_squared(s, unit) == Approx(1.0).epsilon(1e-14));
    for (double t = -3.0; t <= 3.0; t += 0.25) {
        const SigmaState sep = sigma_eval(SeparatrixDriver{1.3, 0.5, 1}, unit, t);
        CHECK(std::abs(omega_squared(sep, unit)) < 1e-12);
    }
    SigmaState q;
    q.sigma = 1.0;
    q.sigma_ddot = unit.alpha() * unit.alpha();
    CHECK(std::abs(omega_squared(q, unit)) < 1e-15);
}

TEST_CASE("sigma ode equilibrium and convergence") {
    const double s0 = std::sqrt(0.5);
    const SigmaTrajectory tr = solve_sigma_ode(1.0, 0.0, unit, s0, 0.0, 10 * kPi);
    double dev = 0.0;
    for (const auto& s : tr.samples()) dev = std::max(dev, std::abs(s.sigma - s0));
    CHECK(dev <= 1e-6);
    CHECK(std::abs(std::pow(unit.alpha(), 2) / std::pow(s0, 3) - s0) < 1e-15);

    // Off-equilibrium start: error against a fine reference falls at least 16x per halving.
    auto end_sigma = [&](double h) { return solve_sigma_ode(1.0, 0.2, unit, 0.8, 0.1, 4.0, h).samples().back().sigma; };
    const double ref = end_sigma(1e-4);
    const double e1 = std::abs(end_sigma(0.02) - ref);
    const double e2 = std::abs(end_sigma(0.01) - ref);
    CHECK(e1 / e2 > 14.0);
    CHECK(e1 / e2 < 32.0);
}

TEST_CASE("sigma ode rejects bad input and detects collapse") {
    CHECK_THROWS_AS(solve_sigma_ode(1.0, 0.2, unit, 0.0, 0.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(solve_sigma_ode(1.0, 0.2, unit, 1.0, 0.0, 1.0, -0.1), InvalidArgument);
    // A large floor turns an ordinary contraction into a reported singularity.
    try {
        solve_sigma_ode(1.0, 0.2, unit, 0.6, -2.0, 5.0, kDefaultStep, 0.3);
        FAIL("expected SingularityError");
    } catch (const SingularityError& e) {
        CHECK(e.time() > 0.0);
        CHECK(e.time() < 5.0);
    }
}

TEST_CASE("mathieu trajectory grows and satisfies its ode") {
    const SigmaSource src(MathieuDriver{1.0, 0.2, {}, 0.0}, unit, 6 * kPi);
    const SigmaTrajectory* tr = src.trajectory();
    REQUIRE(tr != nullptr);
    CHECK(tr->samples().front().sigma == Approx(std::sqrt(0.5)));
    double first = 0.0;
    double last = 0.0;
    for (const auto& s : tr->samples()) {
        if (s.t < kPi) first = std::max(first, s.sigma);
        if (s.t > 5 * kPi) last = std::max(last, s.sigma);
    }
    CHECK(last > 1.5 * first);

    for (double t : {0.1234, 3.0, 17.77}) {
        const SigmaState s = src.state(t);
        const double lhs = std::pow(s.sigma, 3) * s.sigma_ddot + std::pow(s.sigma, 4) * (1.0 - 0.4 * std::cos(2 * t)) -
                           unit.alpha() * unit.alpha();
        CHECK(std::abs(lhs) < 1e-12);
        CHECK(src.omega_squared(t) == Approx(1.0 - 0.4 * std::cos(2 * t)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(src.state(6 * kPi + 0.5), OutOfRangeError);
    CHECK_THROWS_AS(src.state(-0.5), OutOfRangeError);
}

TEST_CASE("dense output is continuous and matches nodes") {
    const SigmaSource src(MathieuDriver{1.0, 0.2, {}, 0.0}, unit, 5.0);
    const auto& nodes = src.trajectory()->samples();
    const SigmaState at = src.state(nodes[100].t);
    CHECK(at.sigma == nodes[100].sigma);
    const double tk = nodes[101].t;
    CHECK(src.state(tk - 1e-12).sigma == Approx(src.state(tk).sigma).epsilon(1e-12));
}

TEST_CASE("hill characteristics") {
    auto one = [](double) { return 1.0; };
    const PhaseTrajectory tr = integrate_hill(one, 0.0, 1.0, unit, kPi / 2, kPi / 2000);
    CHECK(tr.samples.back().x == Approx(1.0).epsilon(1e-8));
    CHECK(std::abs(tr.samples.back().p) < 1e-8);

    auto zero = [](double) { return 0.0; };
    const PhaseTrajectory free = integrate_hill(zero, 0.0, 1.0, unit, 3.0, 0.01);
    CHECK(free.samples.back().x == Approx(3.0).epsilon(1e-12));

    for (std::size_t k = 1; k < tr.samples.size(); ++k) CHECK(tr.samples[k].t > tr.samples[k - 1].t);
}

TEST_CASE("hill amplitude and energy grow in the unstable case") {
    const SigmaSource src(MathieuDriver{1.0, 0.2, {}, 0.0}, unit, 5 * kPi + 0.1);
    auto w2 = [&](double t) { return src.omega_squared(t); };
    const PhaseTrajectory tr = integrate_hill(w2, 0.0, std::sqrt(0.8), unit, 5 * kPi);
    double prev_amp = 0.0;
    double prev_e = 0.0;
    for (int k = 1; k <= 5; ++k) {
        double amp = 0.0;
        for (const auto& s : tr.samples) {
            if (s.t > (k - 1) * kPi - 1e-9 && s.t <= k * kPi + 1e-9) amp = std::max(amp, std::abs(s.x));
        }
        const auto& end = tr.samples[static_cast<std::size_t>(k * 2000)];
        const double e = energy_function(src.state(end.t), unit, PhasePoint{end.x, end.p});
        CHECK(amp > prev_amp);
        CHECK(e >= prev_e);
        prev_amp = amp;
        prev_e = e;
    }
}

TEST_CASE("floquet classification") {
    const StabilityVerdict v1 = floquet_classify(2.25, 0.0);
    CHECK(std::abs(v1.trace) < 1e-9);
    CHECK(v1.classification == Stability::stable);
    CHECK(floquet_classify(1.0, 0.2).classification == Stability::unstable);
    CHECK(floquet_classify(2.0, 0.2).classification == Stability::stable);
    const StabilityVerdict m = floquet_classify(1.0, 0.0);
    CHECK(m.classification == Stability::marginal);
    CHECK(m.trace == Approx(-2.0).epsilon(1e-9));

    for (double a : {0.3, 1.0, 2.0, 3.7}) {
        const StabilityVerdict v = floquet_classify(a, 0.35);
        CHECK(std::abs(v.wronskian - 1.0) < 1e-8);
        CHECK(v.trace == Approx(floquet_classify(a, -0.35).trace).epsilon(1e-10).scale(1.0));
    }
    CHECK_THROWS_AS(floquet_classify(1.0, 0.2, 0.1), InvalidArgument);
    CHECK(to_string(Stability::marginal) == "marginal");
}
