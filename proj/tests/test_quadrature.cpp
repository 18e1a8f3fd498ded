#include "doctest.h"

#include <Eigen/Dense>
#include <cmath>

#include "wvl/quadrature.hpp"

using doctest::Approx;
using namespace wvl;

TEST_CASE("grid spec validation") {
    CHECK_THROWS_AS(GridSpec(0.0, 1.0, 4), InvalidArgument);
    CHECK_THROWS_AS(GridSpec(0.0, 1.0, 1), InvalidArgument);
    CHECK_THROWS_AS(GridSpec(0.0, 0.0, 5), InvalidArgument);
    const GridSpec g(1.0, 2.0, 5);
    CHECK(g.spacing() == 1.0);
    CHECK(g.node(0) == -1.0);
    CHECK(g.node(4) == 3.0);
    CHECK(g.refined().points() == 9);
}

TEST_CASE("gaussian integral on a truncated grid") {
    const auto r = integrate([](double x) { return std::exp(-x * x); }, GridSpec(0.0, 8.0, 1601));
    CHECK(std::abs(r.value - std::sqrt(3.14159265358979323846)) < 1e-10);
    CHECK(r.error_estimate < 1e-10);
}

TEST_CASE("odd integrand on a symmetric grid vanishes") {
    const auto r = integrate([](double x) { return x * x * x * std::exp(-x * x); }, GridSpec(0.0, 6.0, 301));
    CHECK(std::abs(r.value) < 1e-15);
}

TEST_CASE("linear and monotone") {
    const GridSpec g(0.0, 3.0, 61);
    auto f = [](double x) { return std::exp(-x * x); };
    auto h = [](double x) { return x * x * std::exp(-x * x); };
    const double a = integrate(f, g).value;
    const double b = integrate(h, g).value;
    CHECK(integrate([&](double x) { return 2.0 * f(x) - 3.0 * h(x); }, g).value == Approx(2.0 * a - 3.0 * b));
    CHECK(integrate([&](double x) { return f(x) + h(x); }, g).value >= a);
}

TEST_CASE("non-finite samples raise with coordinates") {
    try {
        integrate([](double x) { return x == 0.0 ? std::nan("") : 1.0; }, GridSpec(0.0, 1.0, 5));
        FAIL("expected EvaluationError");
    } catch (const EvaluationError& e) {
        REQUIRE(e.coordinates().size() == 1);
        CHECK(e.coordinates()[0] == 0.0);
    }
}

TEST_CASE("two dimensional integral") {
    const auto r = integrate([](double x, double p) { return std::exp(-x * x - 2.0 * p * p); },
                             GridSpec(0.0, 8.0, 161), GridSpec(0.0, 6.0, 121));
    CHECK(r.value == Approx(3.14159265358979323846 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("central differences") {
    CHECK(central_diff([](double x) { return x * x; }, 3.0, 0.1, 1) == Approx(6.0).epsilon(1e-14));
    CHECK(std::abs(central_diff([](double x) { return std::sin(x); }, 0.0, 1e-3, 2)) < 1e-12);
    const double e = std::exp(1.0);
    const double e1 = std::abs(central_diff([](double x) { return std::exp(x); }, 1.0, 1e-2, 1) - e);
    const double e2 = std::abs(central_diff([](double x) { return std::exp(x); }, 1.0, 5e-3, 1) - e);
    CHECK(e1 / e2 == Approx(4.0).epsilon(0.01));
    CHECK_THROWS_AS(central_diff([](double x) { return x; }, 0.0, 0.1, 3), InvalidArgument);
    const auto c = central_diff([](double x) { return std::complex<double>(x * x, -x); }, 2.0, 0.1, 1);
    CHECK(c.real() == Approx(4.0));
    CHECK(c.imag() == Approx(-1.0));
}

TEST_CASE("rk4 step") {
    using V1 = Eigen::Matrix<double, 1, 1>;
    auto f = [](double, const V1& y) { return V1(y); };
    V1 y;
    y << 1.0;
    for (int k = 0; k < 10; ++k) y = rk4_step(y, f, 0.1 * k, 0.1);
    CHECK(std::abs(y(0) - std::exp(1.0)) < 1e-5);

    auto run = [&](int steps) {
        V1 z;
        z << 1.0;
        const double h = 1.0 / steps;
        for (int k = 0; k < steps; ++k) z = rk4_step(z, f, k * h, h);
        return std::abs(z(0) - std::exp(1.0));
    };
    CHECK(run(10) / run(20) == Approx(16.0).epsilon(0.05));

    using V2 = Eigen::Vector2d;
    auto osc = [](double, const V2& s) { return V2(s(1), -s(0)); };
    V2 s(1.0, 0.0);
    const int n = 1000;
    const double h = 2.0 * 3.14159265358979323846 / n;
    for (int k = 0; k < n; ++k) s = rk4_step(s, osc, k * h, h);
    CHECK(std::abs(0.5 * s.squaredNorm() - 0.5) < 1e-8);

    auto bad = [](double, const V2&) { return V2(std::nan(""), 0.0); };
    CHECK_THROWS_AS(rk4_step(s, bad, 0.0, 0.1), IntegrationError);
}

TEST_CASE("adaptive gauss-kronrod") {
    const auto r = integrate_adaptive([](double u) { return std::exp(u * u); }, 0.0, 1.0, 1e-13);
    CHECK(r.value == Approx(1.4626517459071816).epsilon(1e-13));
    const auto s = integrate_adaptive([](double u) { return std::exp(u * u); }, 1.0, 0.0, 1e-13);
    CHECK(s.value == Approx(-r.value).epsilon(1e-15));
    CHECK(integrate_adaptive([](double u) { return u; }, 2.0, 2.0).value == 0.0);
}

TEST_CASE("deterministic") {
    auto f = [](double x) { return std::cos(3.0 * x) * std::exp(-x * x); };
    const GridSpec g(0.1, 4.0, 201);
    CHECK(integrate(f, g).value == integrate(f, g).value);
}
