#pragma once

// Time-dependent energy spectra: phase-space average of the energy function
// over W_n, the characteristic-trajectory shortcut, and the conditional
// energy field at fixed x.

#include <string>
#include <vector>

#include "wvl/dynamics.hpp"
#include "wvl/wigner.hpp"

namespace wvl {

enum class SpectrumMethod { quadrature, trajectory };

std::string to_string(SpectrumMethod m);

struct SpectrumSample {
    double t = 0.0;
    int n = 0;
    double energy = 0.0;
    SpectrumMethod method = SpectrumMethod::quadrature;
    double error_estimate = 0.0;  ///< quadrature only
};

/// E(x, p, t) = p^2/2m + m Omega^2 x^2 / 2.
template <typename Scalar>
inline Scalar energy_function(const SigmaStateT<Scalar>& s, const PhysicalParamsT<Scalar>& params,
                              const PhasePointT<Scalar>& pt) {
    require_positive_sigma(s, "energy_function");
    const Scalar m = params.m();
    return pt.p * pt.p / (Scalar(2) * m) + Scalar(0.5) * m * omega_squared(s, params) * pt.x * pt.x;
}

inline constexpr double kSpectrumTolerance = 1e-9;

/// Double integral of W_n E over the grid. Throws AccuracyError when the
/// half-resolution estimate exceeds tol relative to max(1, |E|).
SpectrumSample spectrum_by_quadrature(int n, const SigmaState& s, const PhysicalParams& params,
                                      const PhaseGrid& grid, double tol = kSpectrumTolerance);

/// Same with default_phase_grid.
SpectrumSample spectrum_by_quadrature(int n, const SigmaState& s, const PhysicalParams& params,
                                      double tol = kSpectrumTolerance);

struct TrajectoryLaunch {
    /// Angle on the initial energy ellipse: (x0, p0) = (sqrt(2E0/(m Omega^2(0))) sin a, sqrt(2 m E0) cos a).
    /// The default 0 is the launch (0, sqrt(2 m E0)).
    double angle = 0.0;
    double h = kDefaultStep;
};

/// Energy function along the Hill characteristic launched with energy E_n(0)
/// from spectrum_by_quadrature at t = 0. times must be nondecreasing and >= 0.
std::vector<SpectrumSample> spectrum_by_trajectory(int n, const SigmaSource& source, const std::vector<double>& times,
                                                   const TrajectoryLaunch& launch = {});

/// (1/f) integral of W_n (p^2/2m + U) dp at fixed x. Throws PoleError near density zeros.
double mean_energy_field(int n, const SigmaState& s, const PhysicalParams& params, double x, const GridSpec& p_grid);

}  // namespace wvl
