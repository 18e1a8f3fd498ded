#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "wvl/polynomials.hpp"

using doctest::Approx;
using namespace wvl;

TEST_CASE("hermite values") {
    CHECK(hermite(0, 1.7) == 1.0);
    CHECK(hermite(1, 0.5) == 1.0);
    CHECK(hermite(3, 1.0) == Approx(-4.0).epsilon(1e-15));
    for (int n = 0; n <= 12; ++n) {
        for (double x : {-2.3, -0.4, 0.0, 0.9, 3.1}) {
            const double ref = oracle::hermite_explicit(n, x);
            CHECK(hermite(n, x) == Approx(ref).epsilon(1e-12).scale(1.0));
        }
    }
}

TEST_CASE("hermite derivative") {
    CHECK(hermite_derivative(0, 3.0) == 0.0);
    CHECK(hermite_derivative(1, 3.0) == 2.0);
    CHECK(hermite_derivative(4, 0.5) == Approx(-40.0).epsilon(1e-14));
}

TEST_CASE("negative or oversized orders are rejected") {
    CHECK_THROWS_AS(hermite(-1, 0.0), InvalidArgument);
    CHECK_THROWS_AS(hermite_derivative(-2, 0.0), InvalidArgument);
    CHECK_THROWS_AS(laguerre(-1, 0.0), InvalidArgument);
    CHECK_THROWS_AS(hermite_zeros(-3), InvalidArgument);
    CHECK_THROWS_AS(hermite(kMaxOrder + 1, 0.0), InvalidArgument);
}

TEST_CASE("hermite parity and recurrence") {
    for (int n = 0; n <= 10; ++n) {
        for (double x = -5.0; x <= 5.0; x += 0.37) {
            const double h = hermite(n, x);
            const double sign = n % 2 == 0 ? 1.0 : -1.0;
            CHECK(hermite(n, -x) == Approx(sign * h).epsilon(1e-12).scale(1.0));
            if (n >= 2) {
                const double r = h - 2.0 * x * hermite(n - 1, x) + 2.0 * (n - 1) * hermite(n - 2, x);
                CHECK(std::abs(r) <= 1e-10 * std::max(1.0, std::abs(h)));
            }
        }
    }
}

TEST_CASE("hermite zeros") {
    CHECK(hermite_zeros(0).empty());
    const auto z1 = hermite_zeros(1);
    REQUIRE(z1.size() == 1);
    CHECK(z1[0] == 0.0);
    const auto z2 = hermite_zeros(2);
    REQUIRE(z2.size() == 2);
    CHECK(z2[0] == Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(z2[1] == Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    const auto z4 = hermite_zeros(4);
    const double expect[] = {-1.650680123885785, -0.524647623275290, 0.524647623275290, 1.650680123885785};
    REQUIRE(z4.size() == 4);
    for (int i = 0; i < 4; ++i) CHECK(z4[i] == Approx(expect[i]).epsilon(1e-12));

    for (int n = 1; n <= 20; ++n) {
        const auto z = hermite_zeros(n);
        REQUIRE(static_cast<int>(z.size()) == n);
        for (int i = 0; i < n; ++i) {
            CHECK(std::abs(hermite(n, z[i])) <= 1e-13 * std::max(1.0, std::abs(hermite_derivative(n, z[i]))) * 10.0);
            CHECK(z[i] == -z[n - 1 - i]);
            if (i > 0) CHECK(z[i] > z[i - 1]);
        }
    }
}

TEST_CASE("hermite zeros interlace") {
    for (int n = 1; n <= 15; ++n) {
        const auto a = hermite_zeros(n);
        const auto b = hermite_zeros(n + 1);
        for (int i = 0; i < n; ++i) {
            CHECK(b[i] < a[i]);
            CHECK(a[i] < b[i + 1]);
        }
    }
}

TEST_CASE("laguerre values and recurrence") {
    CHECK(laguerre(5, 0.0) == 1.0);
    CHECK(laguerre(1, 2.0) == -1.0);
    CHECK(laguerre(2, 1.0) == Approx(-0.5).epsilon(1e-15));
    for (int n = 0; n <= 10; ++n) {
        for (double x = 0.0; x <= 12.0; x += 0.61) {
            CHECK(laguerre(n, x) == Approx(oracle::laguerre_explicit(n, x)).epsilon(1e-10).scale(1.0));
            if (n >= 1) {
                const double lhs = (n + 1) * laguerre(n + 1, x);
                const double rhs = (2 * n + 1 - x) * laguerre(n, x) - n * laguerre(n - 1, x);
                CHECK(lhs == Approx(rhs).epsilon(1e-12).scale(1.0));
            }
        }
    }
}

TEST_CASE("laguerre derivative matches a centered difference") {
    for (int n = 0; n <= 8; ++n) {
        for (double x : {0.0, 0.7, 3.2, 9.0}) {
            const double h = 1e-5;
            const double fd = (laguerre(n, x + h) - laguerre(n, x - h)) / (2 * h);
            CHECK(laguerre_derivative(n, x) == Approx(fd).epsilon(1e-6).scale(1.0));
        }
    }
}

TEST_CASE("templated on scalar type") {
    CHECK(hermite<long double>(3, 1.0L) == Approx(-4.0));
    CHECK(laguerre<float>(2, 1.0f) == Approx(-0.5));
}
