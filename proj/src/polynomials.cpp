#include "wvl/polynomials.hpp"

#include <algorithm>
#include <cmath>

namespace wvl {

namespace {

constexpr double kRootTol = 1e-13;

// Safeguarded Newton inside a sign-change bracket.
double refine_root(int n, double lo, double hi) {
    double f_lo = hermite(n, lo);
    double x = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        const double f = hermite(n, x);
        if (f == 0.0) return x;
        if ((f < 0.0) == (f_lo < 0.0)) {
            lo = x;
            f_lo = f;
        } else {
            hi = x;
        }
        const double df = hermite_derivative(n, x);
        double next = (df != 0.0) ? x - f / df : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        const double step = std::abs(next - x);
        x = next;
        if (step < 0.1 * kRootTol || hi - lo < 0.1 * kRootTol) break;
    }
    return x;
}

}  // namespace

std::vector<double> hermite_zeros(int n) {
    check_order(n, "hermite_zeros");
    std::vector<double> roots;
    if (n == 0) return roots;
    roots.reserve(static_cast<std::size_t>(n));

    const double bound = std::sqrt(2.0 * n + 1.0) + 1.0;
    // Adjacent zeros are at least ~pi/sqrt(2n+1) apart; sample far finer than that.
    const int samples = 64 * n + 64;
    const double step = 2.0 * bound / samples;
    double x_prev = -bound;
    double f_prev = hermite(n, x_prev);
    for (int i = 1; i <= samples && static_cast<int>(roots.size()) < n; ++i) {
        const double x = -bound + i * step;
        const double f = hermite(n, x);
        if (f == 0.0) {
            roots.push_back(x);
        } else if ((f < 0.0) != (f_prev < 0.0) && f_prev != 0.0) {
            roots.push_back(refine_root(n, x_prev, x));
        }
        x_prev = x;
        f_prev = f;
    }
    if (static_cast<int>(roots.size()) != n) {
        throw DomainError("hermite_zeros: bracketing found " + std::to_string(roots.size()) +
                          " of " + std::to_string(n) + " zeros");
    }

    std::sort(roots.begin(), roots.end());
    // Average mirrored pairs so the set is exactly symmetric about the origin.
    for (int i = 0; i < n / 2; ++i) {
        const double r = 0.5 * (roots[n - 1 - i] - roots[i]);
        roots[i] = -r;
        roots[n - 1 - i] = r;
    }
    if (n % 2 == 1) {
        double& mid = roots[n / 2];
        if (std::abs(mid) < kRootTol) mid = 0.0;
    }
    return roots;
}

}  // namespace wvl
