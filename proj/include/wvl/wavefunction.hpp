#pragma once

// Closed-form wave function of the n-th state, its potential and quantum
// potential, the phase-energy accumulator, and Schrodinger / Hamilton-Jacobi
// residual checks.

#include <cmath>
#include <complex>
#include <vector>

#include "wvl/dynamics.hpp"
#include "wvl/params.hpp"
#include "wvl/polynomials.hpp"
#include "wvl/quadrature.hpp"
#include "wvl/residual.hpp"
#include "wvl/vlasov.hpp"

namespace wvl {

/// dE_n/dt = hbar^2 (n + 1/2) / (2 m sigma^2).
template <typename Scalar>
inline Scalar phase_energy_rate(int n, const SigmaStateT<Scalar>& s, const PhysicalParamsT<Scalar>& p) {
    check_order(n, "phase_energy_rate");
    require_positive_sigma(s, "phase_energy_rate");
    const Scalar hbar = p.hbar();
    return hbar * hbar * (Scalar(n) + Scalar(0.5)) / (Scalar(2) * p.m() * s.sigma * s.sigma);
}

/// Psi_n = (2^n n!)^{-1/2} (sqrt(2 pi) sigma)^{-1/2}
///         exp(-x^2/4sigma^2 - i sigma_dot x^2/(4 alpha sigma) - i beta E) H_n(x / sqrt(2) sigma).
template <typename Scalar>
inline std::complex<Scalar> wavefunction(int n, const SigmaStateT<Scalar>& s, const PhysicalParamsT<Scalar>& p,
                                         Scalar energy, Scalar x) {
    check_order(n, "wavefunction");
    require_positive_sigma(s, "wavefunction");
    using std::sqrt;
    const Scalar xs = x / (sqrt(Scalar(2)) * s.sigma);
    const Scalar modulus_pref =
        Scalar(1) / sqrt(hermite_norm<Scalar>(n) * sqrt(Scalar(2) * Scalar(kPi)) * s.sigma);
    const Scalar gauss = -x * x / (Scalar(4) * s.sigma * s.sigma);
    const Scalar phase = -s.sigma_dot * x * x / (Scalar(4) * p.alpha() * s.sigma) - p.beta() * energy;
    return modulus_pref * hermite(n, xs) * std::exp(std::complex<Scalar>(gauss, phase));
}

/// Real amplitude of Psi_n: the wave function without its phase factors (keeps the sign of H_n).
double wavefunction_amplitude(int n, const SigmaState& s, double x);

/// d^2 Psi / dx^2 from the Hermite recurrences.
std::complex<double> wavefunction_dxx(int n, const SigmaState& s, const PhysicalParams& p, double energy,
                                      double x);

/// U = (m/2) Omega^2 x^2.
template <typename Scalar>
inline Scalar potential_U1(const SigmaStateT<Scalar>& s, const PhysicalParamsT<Scalar>& p, Scalar x) {
    require_positive_sigma(s, "potential_U1");
    return Scalar(0.5) * p.m() * omega_squared(s, p) * x * x;
}

/// The same potential written as (sigma_ddot - alpha^2/sigma^3) x^2 / (4 alpha beta sigma).
template <typename Scalar>
inline Scalar potential_U1_sigma_form(const SigmaStateT<Scalar>& s, const PhysicalParamsT<Scalar>& p, Scalar x) {
    require_positive_sigma(s, "potential_U1_sigma_form");
    const Scalar a = p.alpha();
    return (s.sigma_ddot - a * a / (s.sigma * s.sigma * s.sigma)) * x * x / (Scalar(4) * a * p.beta() * s.sigma);
}

/// Q_n = -(hbar^2 / 8 m sigma^4) [x^2 - 2 sigma^2 (1 + 2n)].
template <typename Scalar>
inline Scalar quantum_potential(int n, const SigmaStateT<Scalar>& s, const PhysicalParamsT<Scalar>& p, Scalar x) {
    check_order(n, "quantum_potential");
    require_positive_sigma(s, "quantum_potential");
    const Scalar s2 = s.sigma * s.sigma;
    const Scalar hbar = p.hbar();
    return -hbar * hbar / (Scalar(8) * p.m() * s2 * s2) * (x * x - Scalar(2) * s2 * Scalar(1 + 2 * n));
}

/// (1/sqrt f) d^2 sqrt f / dx^2 from H_n, H_{n-1}, H_{n-2}; undefined at density zeros.
double sqrt_density_curvature(int n, const SigmaState& s, double x);

/// E_n(t) = integral from 0 to t of phase_energy_rate, with E_n(0) = 0.
class PhaseAccumulator {
public:
    /// Nodes every h on [0, t_end]; queries outside integrate from the nearest end node.
    PhaseAccumulator(int n, const SigmaSource& source, double t_end, double h = kDefaultStep);

    int n() const { return n_; }
    double energy(double t) const;
    double rate(double t) const;

private:
    double unit_integral(double a, double b) const;

    int n_;
    const SigmaSource* source_;
    double h_;
    std::vector<double> nodes_;  ///< integral of sigma^{-2} up to k h
};

/// Residual of i hbar dPsi/dt = -(hbar^2/2m) Psi'' + U Psi. The global phase
/// exp(-i beta E_n) is differentiated exactly; the rest by central difference.
ResidualReport schrodinger_residual(int n, const SigmaSource& source, const GridSpec& grid, double t, double dt);

/// Residual of -beta U = dphi/dt + alpha (1/sqrt f)(sqrt f)'' - alpha (dphi/dx)^2.
ResidualReport hamilton_jacobi_residual(int n, const SigmaSource& source, const GridSpec& grid, double t,
                                        double dt);

}  // namespace wvl
