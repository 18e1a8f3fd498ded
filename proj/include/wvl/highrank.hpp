#pragma once

// Extended phase-space objects: the rank-2 wave function on (x, v), its
// potential, the rank-4 Wigner function on (x, p, p_dot, p_ddot) and residual
// probes for the rank-2 Schrodinger and rank-4 Moyal equations.

#include <cmath>
#include <complex>
#include <optional>
#include <string>

#include "wvl/dynamics.hpp"
#include "wvl/params.hpp"
#include "wvl/quadrature.hpp"
#include "wvl/residual.hpp"

namespace wvl {

struct ExtendedPhasePoint {
    double x = 0.0;
    double p = 0.0;
    double p_dot = 0.0;
    double p_ddot = 0.0;
};

/// dE12/dt = m hbar2^2 sigma^2 / hbar^2.
inline double rank2_energy_rate(const SigmaState& s, const PhysicalParams& params) {
    const double r = params.hbar2() / params.hbar();
    return params.m() * r * r * s.sigma * s.sigma;
}

/// Rank-2 phase chirp K: the phase carries -K x v / (2 hbar2).
inline double rank2_chirp(const SigmaState& s, const PhysicalParams& params) {
    const double m = params.m();
    const double hbar = params.hbar();
    const double s2 = s.sigma * s.sigma;
    return hbar * hbar / (2.0 * m * s2 * s2) - 2.0 * m * s.sigma_ddot / s.sigma;
}

/// Exponent of Psi12 without the energy phase.
std::complex<double> rank2_exponent(const SigmaState& s, const PhysicalParams& params, double x, double v);

/// Psi12 = (pi hbar)^{-1/2} exp(-x^2/4sigma^2 - (m/hbar)^2 (sigma_dot x - sigma v)^2
///         - i K x v/(2 hbar2) - i E12/hbar2).
std::complex<double> psi_rank2(const SigmaState& s, const PhysicalParams& params, double e12, double x, double v);

enum class U12Variant {
    consistent,  ///< x v coefficient that solves the rank-2 equation with the phase above
    printed,     ///< x v coefficient with m (sigma_ddot sigma - sigma_dot^2)/sigma^2
};

/// U12 = A v^2 - B x v + C x^2.
struct U12Coefficients {
    double v2 = 0.0;
    double xv = 0.0;  ///< B, entering with a minus sign
    double x2 = 0.0;
};

U12Coefficients potential_U12_coefficients(const SigmaState& s, const PhysicalParams& params,
                                           U12Variant variant = U12Variant::consistent);

double potential_U12(const SigmaState& s, const PhysicalParams& params, double x, double v,
                     U12Variant variant = U12Variant::consistent);

struct EtaXi {
    double eta = 0.0;
    std::optional<double> xi;  ///< empty when sigma_dot = 0
};

EtaXi eta_xi(const SigmaState& s, const PhysicalParams& params);

enum class Rank4Sign {
    reduced,  ///< + hbar^2/(4 sigma^2) (p_dot + eta x)^2 inside the braces; reproduces the static limit
    paper,    ///< the printed minus sign
};

Rank4Sign parse_rank4_sign(const std::string& name);
std::string to_string(Rank4Sign sign);

/// W4 = (pi hbar2)^{-2} exp(-Q). Q is quadratic in the four coordinates.
double wigner_rank4(const SigmaState& s, const PhysicalParams& params, const ExtendedPhasePoint& pt,
                    Rank4Sign sign = Rank4Sign::reduced);

/// Static rank-4 function for frequency omega0: the reference closed form.
double wigner_rank4_static(double omega0, const PhysicalParams& params, const ExtendedPhasePoint& pt);

/// Residual of i hbar2 (d/dt + v d/dx) Psi12 = -(hbar2^2/2m) d^2 Psi12/dv^2 + U12 Psi12 on a (x, v) grid.
ResidualReport schrodinger2_residual(const SigmaSource& source, const GridSpec& gx, const GridSpec& gv, double t,
                                     double dt, U12Variant variant = U12Variant::consistent);

struct Rank4Grid {
    GridSpec x;
    GridSpec p;
    GridSpec p_dot;
    GridSpec p_ddot;
};

/// Coarse grid of 9 points per axis around the static-like centres of W4.
Rank4Grid default_rank4_grid(const SigmaState& s, const PhysicalParams& params, int points = 9);

/// Residual of [d/dt + (p/m) d/dx + p_dot d/dp + (p_ddot - dU12/dv) d/dp_dot + dU12/dx d/dp_ddot] W4 = 0.
ResidualReport moyal4_residual(const SigmaSource& source, const Rank4Grid& grid, double t, double dt,
                               Rank4Sign sign = Rank4Sign::reduced, U12Variant variant = U12Variant::consistent);

}  // namespace wvl
