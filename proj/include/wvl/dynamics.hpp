#pragma once

// Width-function histories sigma(t): closed-form drivers, the Mathieu-type
// sigma ODE, Hill characteristics and Floquet stability of the Mathieu equation.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wvl/params.hpp"

namespace wvl {

inline constexpr double kPi = 3.14159265358979323846;

/// Static width; from a frequency, sigma0^2 = hbar/(2 m omega0).
struct ConstantDriver {
    double sigma0 = 1.0;
    static ConstantDriver from_frequency(double omega0, const PhysicalParams& params);
};

/// sigma(t) = sigma0 (1 + sin^2(varpi0 t)).
struct SinSquaredDriver {
    double sigma0 = 1.0;
    double varpi0 = 1.0;
};

/// sigma^2(t) = c1^2 (t + sign c2)^2 + alpha^2/c1^2; Omega^2 vanishes identically.
struct SeparatrixDriver {
    double c1 = 1.0;
    double c2 = 0.0;
    int sign = 1;
};

/// sigma^3 sigma_ddot + sigma^4 (a - 2g cos 2t) - alpha^2 = 0, solved numerically.
struct MathieuDriver {
    double a = 1.0;
    double g = 0.2;
    std::optional<double> sigma0;  ///< defaults to the g = 0 equilibrium (alpha^2/a)^{1/4}
    double sigma_dot0 = 0.0;

    double initial_sigma(const PhysicalParams& params) const;
};

using SigmaDriver = std::variant<ConstantDriver, SinSquaredDriver, SeparatrixDriver, MathieuDriver>;

std::string driver_name(const SigmaDriver& driver);
void validate_driver(const SigmaDriver& driver, const PhysicalParams& params);

/// Closed-form sigma and its analytic derivatives. MathieuDriver is unsupported here.
SigmaState sigma_eval(const SigmaDriver& driver, const PhysicalParams& params, double t);

inline constexpr double kSigmaFloor = 1e-9;
inline constexpr double kDefaultStep = kPi / 2000.0;

/// Uniformly sampled solution of the sigma ODE. Queries between nodes take one
/// RK4 step from the preceding node; sigma_ddot and sigma_dddot follow from the ODE.
class SigmaTrajectory {
public:
    SigmaTrajectory(PhysicalParams params, double a, double g, double step,
                    std::vector<SigmaState> samples);

    const PhysicalParams& params() const { return params_; }
    double a() const { return a_; }
    double g() const { return g_; }
    double step() const { return step_; }
    const std::vector<SigmaState>& samples() const { return samples_; }
    double t_begin() const { return samples_.front().t; }
    double t_end() const { return samples_.back().t; }

    /// State at t; throws OutOfRangeError outside [t_begin, t_end].
    SigmaState state_at(double t) const;
    /// a - 2g cos 2t.
    double mathieu_omega_squared(double t) const;

private:
    double sigma_accel(double t, double sigma) const;
    SigmaState ode_state(double t, double sigma, double sigma_dot) const;

    PhysicalParams params_;
    double a_;
    double g_;
    double step_;
    std::vector<SigmaState> samples_;
};

SigmaTrajectory solve_sigma_ode(double a, double g, const PhysicalParams& params, double sigma0,
                                double sigma_dot0, double t_end, double h = kDefaultStep,
                                double floor = kSigmaFloor);

/// sigma(t) from any driver: closed forms directly, Mathieu via a precomputed trajectory.
class SigmaSource {
public:
    /// For MathieuDriver the ODE is solved on [0, t_end] with step h.
    SigmaSource(const SigmaDriver& driver, const PhysicalParams& params, double t_end = 0.0,
                double h = kDefaultStep);

    SigmaState state(double t) const;
    double omega_squared(double t) const;
    const PhysicalParams& params() const { return params_; }
    const SigmaDriver& driver() const { return driver_; }
    /// Null for closed-form drivers.
    const SigmaTrajectory* trajectory() const { return trajectory_.get(); }

private:
    SigmaDriver driver_;
    PhysicalParams params_;
    std::shared_ptr<const SigmaTrajectory> trajectory_;
};

using Omega2Function = std::function<double(double)>;

struct PhaseSample {
    double t;
    double x;
    double p;
};

struct PhaseTrajectory {
    std::vector<PhaseSample> samples;
};

/// x' = p/m, p' = -m Omega^2(t) x by fixed-step RK4 from t0.
PhaseTrajectory integrate_hill(const Omega2Function& omega2, double x0, double p0,
                               const PhysicalParams& params, double t_end, double h = kDefaultStep,
                               double t0 = 0.0);

enum class Stability { stable, unstable, marginal };

std::string to_string(Stability s);

struct StabilityVerdict {
    double a = 0.0;
    double g = 0.0;
    double trace = 0.0;
    Stability classification = Stability::marginal;
    double wronskian = 1.0;  ///< det of the monodromy matrix; exactly 1 in exact arithmetic
};

inline constexpr double kMarginalMargin = 1e-6;

/// Monodromy trace of x'' + (a - 2g cos 2t) x = 0 over one period pi.
StabilityVerdict floquet_classify(double a, double g, double h = kDefaultStep,
                                  double margin = kMarginalMargin);

}  // namespace wvl
