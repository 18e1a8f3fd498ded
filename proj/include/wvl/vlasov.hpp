#pragma once

// Probability density of the n-th state, its velocity-field family, pole
// intervals, probability current, the Theta integral and a continuity check.

#include <cmath>
#include <limits>
#include <vector>

#include "wvl/dynamics.hpp"
#include "wvl/params.hpp"
#include "wvl/polynomials.hpp"
#include "wvl/quadrature.hpp"
#include "wvl/residual.hpp"

namespace wvl {

/// C: free constant of the general velocity solution. x0: reference point for Theta.
struct FlowParams {
    double C = 0.0;
    double x0 = 0.0;
};

struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();

    bool contains(double x) const { return x > lo && x < hi; }
};

/// 2^n n!
template <typename Scalar>
inline Scalar hermite_norm(int n) {
    Scalar v = Scalar(1);
    for (int k = 1; k <= n; ++k) v *= Scalar(2 * k);
    return v;
}

/// f_n(x) = (2^n n!)^{-1} (sqrt(2 pi) sigma)^{-1} exp(-x^2/2 sigma^2) H_n^2(x / sqrt(2) sigma).
template <typename Scalar>
inline Scalar density(int n, const SigmaStateT<Scalar>& s, Scalar x) {
    check_order(n, "density");
    require_positive_sigma(s, "density");
    using std::exp;
    using std::sqrt;
    const Scalar xs = x / (sqrt(Scalar(2)) * s.sigma);
    const Scalar h = hermite(n, xs);
    return exp(-xs * xs) * h * h /
           (hermite_norm<Scalar>(n) * sqrt(Scalar(2) * Scalar(kPi)) * s.sigma);
}

/// d f_n / dx.
template <typename Scalar>
inline Scalar density_dx(int n, const SigmaStateT<Scalar>& s, Scalar x) {
    check_order(n, "density_dx");
    using std::exp;
    using std::sqrt;
    const Scalar r2s = sqrt(Scalar(2)) * s.sigma;
    const Scalar xs = x / r2s;
    const Scalar h = hermite(n, xs);
    const Scalar dh = hermite_derivative(n, xs);
    const Scalar pref = exp(-xs * xs) / (hermite_norm<Scalar>(n) * sqrt(Scalar(2) * Scalar(kPi)) * s.sigma);
    return pref * (Scalar(2) * h * dh - Scalar(2) * xs * h * h) / r2s;
}

/// Positions of the density zeros: sqrt(2) sigma times the zeros of H_n.
std::vector<double> scaled_zeros(int n, const SigmaState& s);

/// Velocity field C exp(x^2/2sigma^2)/H_n^2 + (sigma_dot/sigma) x. Throws PoleError at a zero when C != 0.
double velocity_field(int n, const SigmaState& s, const FlowParams& flow, double x);

/// The n + 1 open intervals between consecutive density zeros.
std::vector<Interval> pole_intervals(int n, const SigmaState& s);

/// f * v in the cancelled form C/(2^n n! sqrt(2 pi) sigma) + f (sigma_dot/sigma) x.
double probability_current(int n, const SigmaState& s, const FlowParams& flow, double x);

inline constexpr double kPoleGuard = 1e-9;

/// sigma sqrt(2) * integral of exp(u^2) H_n(u)^{-2} du between the scaled limits.
double theta_integral(int n, const SigmaState& s, double x0, double x);

/// Guard band around density zeros excluded from residual grids.
inline constexpr double kZeroGuard = 1e-6;

/// Truncated x grid of half-width 8 sigma sqrt(2n + 1) around the origin.
GridSpec default_x_grid(int n, const SigmaState& s, int points = 401);

/// Residual of df/dt + v df/dx + f dv/dx = 0 with C = 0; time derivative by central difference.
ResidualReport continuity_residual(int n, const SigmaSource& source, const GridSpec& grid, double t,
                                   double dt);

}  // namespace wvl
