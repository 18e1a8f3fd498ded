#pragma once

// Wigner function of the n-th state, the geometry of its level ellipses,
// phase-space moments and the Moyal (Liouville) transport residual.

#include <cmath>

#include "wvl/dynamics.hpp"
#include "wvl/params.hpp"
#include "wvl/polynomials.hpp"
#include "wvl/quadrature.hpp"
#include "wvl/residual.hpp"

namespace wvl {

template <typename Scalar>
struct PhasePointT {
    Scalar x = Scalar(0);
    Scalar p = Scalar(0);
};
using PhasePoint = PhasePointT<double>;

/// eps = kappa^2 x^2 + [sigma sigma_dot (x/alpha) kappa + p/(kappa hbar)]^2, kappa = 1/(sigma sqrt 2).
template <typename Scalar>
inline Scalar epsilon(const SigmaStateT<Scalar>& s, const PhysicalParamsT<Scalar>& params, const PhasePointT<Scalar>& pt) {
    require_positive_sigma(s, "epsilon");
    const Scalar kappa = Scalar(1) / (s.sigma * std::sqrt(Scalar(2)));
    const Scalar xs = kappa * pt.x;
    const Scalar mixed = s.sigma * s.sigma_dot * xs / params.alpha() + pt.p / (kappa * params.hbar());
    return xs * xs + mixed * mixed;
}

/// (d eps/dx, d eps/dp).
template <typename Scalar>
inline PhasePointT<Scalar> epsilon_gradient(const SigmaStateT<Scalar>& s, const PhysicalParamsT<Scalar>& params,
                                            const PhasePointT<Scalar>& pt) {
    const Scalar hbar = params.hbar();
    const Scalar shear = params.m() * s.sigma_dot / s.sigma;
    const Scalar w = Scalar(4) * s.sigma * s.sigma / (hbar * hbar) * (pt.p - shear * pt.x);
    return {pt.x / (s.sigma * s.sigma) - w * shear, w};
}

/// W_n = (-1)^n / (pi hbar) e^{-eps} L_n(2 eps).
template <typename Scalar>
inline Scalar wigner(int n, const SigmaStateT<Scalar>& s, const PhysicalParamsT<Scalar>& params, const PhasePointT<Scalar>& pt) {
    check_order(n, "wigner");
    const Scalar e = epsilon(s, params, pt);
    const Scalar sign = (n % 2 == 0) ? Scalar(1) : Scalar(-1);
    return sign / (Scalar(kPi) * params.hbar()) * std::exp(-e) * laguerre(n, Scalar(2) * e);
}

/// dW_n / d eps = (-1)^n / (pi hbar) e^{-eps} [2 L_n'(2 eps) - L_n(2 eps)].
template <typename Scalar>
inline Scalar wigner_deps(int n, Scalar e, const PhysicalParamsT<Scalar>& params) {
    check_order(n, "wigner_deps");
    const Scalar sign = (n % 2 == 0) ? Scalar(1) : Scalar(-1);
    const Scalar u = Scalar(2) * e;
    return sign / (Scalar(kPi) * params.hbar()) * std::exp(-e) *
           (Scalar(2) * laguerre_derivative(n, u) - laguerre(n, u));
}

/// Level ellipse a11 xs^2 + 2 a12 xs ps + a22 ps^2 in xs = kappa x, ps = p/(hbar kappa).
struct EllipseGeometry {
    double a11 = 1.0;
    double a12 = 0.0;
    double a22 = 1.0;
    double theta = 0.0;
    double det = 1.0;
    double area_at_unit_level = kPi;
};

EllipseGeometry ellipse_geometry(const SigmaState& s, const PhysicalParams& params);

/// Momentum grid covering the sheared Gaussian core of W_n at position x.
GridSpec default_p_grid(int n, const SigmaState& s, const PhysicalParams& params, double x, int points = 401);

/// (1/f) integral of W_n(x, p) p/m dp.
double mean_velocity_from_wigner(int n, const SigmaState& s, const PhysicalParams& params, double x,
                                 const GridSpec& p_grid);

/// -(1/f) dP11/dx with P11 = integral of W_n (p/m - <v>)^2 dp; dx is the central-difference step.
double pressure_force_from_wigner(int n, const SigmaState& s, const PhysicalParams& params, double x,
                                  const GridSpec& p_grid, double dx = 1e-3);

/// Phase-space grid in sheared coordinates (x, q) with p = q + shear x, so the
/// tilted Gaussian core of W_n is axis-aligned. The map has unit Jacobian.
struct PhaseGrid {
    GridSpec x;
    GridSpec q;
    double shear = 0.0;

    double p(int i, int j) const { return q.node(j) + shear * x.node(i); }
    PhaseGrid refined() const { return {x.refined(), q.refined(), shear}; }
};

/// Covers 8 deviations times sqrt(2n + 1) on each axis; spacing is a deviation over
/// 3 sqrt(2n + 1), divided by resolution.
PhaseGrid default_phase_grid(int n, const SigmaState& s, const PhysicalParams& params, double resolution = 1.0);

/// Trapezoid integral of fn(x, p) over the sheared grid with the half-resolution error estimate.
template <typename F>
QuadratureResult integrate_phase(F&& fn, const PhaseGrid& g) {
    Eigen::ArrayXXd values(g.x.points(), g.q.points());
    for (int i = 0; i < g.x.points(); ++i) {
        for (int j = 0; j < g.q.points(); ++j) {
            const double x = g.x.node(i);
            const double p = g.p(i, j);
            values(i, j) = fn(x, p);
            detail::require_finite(values(i, j), {x, p});
        }
    }
    return integrate_samples(values, g.x, g.q);
}

/// Residual of [d/dt + (p/m) d/dx - m Omega^2 x d/dp] W_n = 0 over the grid points.
/// omega2_offset perturbs the transport coefficient only (harness negative control).
ResidualReport moyal_residual(int n, const SigmaSource& source, const PhaseGrid& grid, double t, double dt,
                              double omega2_offset = 0.0);

/// d eps/dt along the Hamiltonian flow; vanishes up to O(dt^2).
double epsilon_material_derivative(const SigmaSource& source, double t, double dt, const PhasePoint& pt);

}  // namespace wvl
