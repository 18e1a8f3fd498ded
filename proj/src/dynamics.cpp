#include "wvl/dynamics.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "wvl/quadrature.hpp"

namespace wvl {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

using Vec2 = Eigen::Vector2d;
using Vec4 = Eigen::Vector4d;

double mathieu_coefficient(double a, double g, double t) { return a - 2.0 * g * std::cos(2.0 * t); }

}  // namespace

ConstantDriver ConstantDriver::from_frequency(double omega0, const PhysicalParams& params) {
    if (!(omega0 > 0.0)) throw InvalidArgument("ConstantDriver: omega0 must be positive");
    return ConstantDriver{std::sqrt(params.hbar() / (2.0 * params.m() * omega0))};
}

double MathieuDriver::initial_sigma(const PhysicalParams& params) const {
    if (sigma0) return *sigma0;
    if (!(a > 0.0)) {
        throw InvalidArgument("MathieuDriver: default sigma(0) needs a > 0; set sigma0 explicitly");
    }
    const double alpha = params.alpha();
    return std::pow(alpha * alpha / a, 0.25);
}

std::string driver_name(const SigmaDriver& driver) {
    return std::visit(overloaded{[](const ConstantDriver&) { return std::string("constant"); },
                                 [](const SinSquaredDriver&) { return std::string("sin_squared"); },
                                 [](const SeparatrixDriver&) { return std::string("separatrix"); },
                                 [](const MathieuDriver&) { return std::string("mathieu"); }},
                      driver);
}

void validate_driver(const SigmaDriver& driver, const PhysicalParams& params) {
    std::visit(overloaded{[](const ConstantDriver& d) {
                              if (!(d.sigma0 > 0.0)) throw InvalidArgument("constant driver: sigma0 must be positive");
                          },
                          [](const SinSquaredDriver& d) {
                              if (!(d.sigma0 > 0.0)) throw InvalidArgument("sin_squared driver: sigma0 must be positive");
                              if (!std::isfinite(d.varpi0)) throw InvalidArgument("sin_squared driver: varpi0 must be finite");
                          },
                          [](const SeparatrixDriver& d) {
                              if (d.c1 == 0.0 || !std::isfinite(d.c1)) throw InvalidArgument("separatrix driver: c1 must be nonzero");
                              if (d.sign != 1 && d.sign != -1) throw InvalidArgument("separatrix driver: sign must be +1 or -1");
                          },
                          [&](const MathieuDriver& d) {
                              if (!std::isfinite(d.a) || !std::isfinite(d.g)) throw InvalidArgument("mathieu driver: a and g must be finite");
                              if (!(d.initial_sigma(params) > 0.0)) throw InvalidArgument("mathieu driver: sigma0 must be positive");
                          }},
               driver);
}

SigmaState sigma_eval(const SigmaDriver& driver, const PhysicalParams& params, double t) {
    if (!std::isfinite(t)) throw InvalidArgument("sigma_eval: time must be finite");
    SigmaState s;
    s.t = t;
    std::visit(
        overloaded{
            [&](const ConstantDriver& d) {
                s.sigma = d.sigma0;
                s.sigma_dot = s.sigma_ddot = s.sigma_dddot = 0.0;
            },
            [&](const SinSquaredDriver& d) {
                const double w = d.varpi0;
                const double sn = std::sin(w * t);
                s.sigma = d.sigma0 * (1.0 + sn * sn);
                s.sigma_dot = d.sigma0 * w * std::sin(2.0 * w * t);
                s.sigma_ddot = 2.0 * d.sigma0 * w * w * std::cos(2.0 * w * t);
                s.sigma_dddot = -4.0 * d.sigma0 * w * w * w * std::sin(2.0 * w * t);
            },
            [&](const SeparatrixDriver& d) {
                const double alpha = params.alpha();
                const double c1sq = d.c1 * d.c1;
                const double u = t + d.sign * d.c2;
                s.sigma = std::sqrt(c1sq * u * u + alpha * alpha / c1sq);
                s.sigma_dot = c1sq * u / s.sigma;
                s.sigma_ddot = (c1sq - s.sigma_dot * s.sigma_dot) / s.sigma;
                s.sigma_dddot = -3.0 * s.sigma_dot * s.sigma_ddot / s.sigma;
            },
            [&](const MathieuDriver&) {
                throw UnsupportedError("sigma_eval: Mathieu driver has no closed form; use solve_sigma_ode");
            }},
        driver);
    if (!(s.sigma > 0.0)) throw DomainError("sigma_eval: driver produced nonpositive sigma");
    return s;
}

SigmaTrajectory::SigmaTrajectory(PhysicalParams params, double a, double g, double step,
                                 std::vector<SigmaState> samples)
    : params_(params), a_(a), g_(g), step_(step), samples_(std::move(samples)) {
    if (samples_.size() < 2) throw InvalidArgument("SigmaTrajectory: need at least two samples");
}

double SigmaTrajectory::mathieu_omega_squared(double t) const { return mathieu_coefficient(a_, g_, t); }

double SigmaTrajectory::sigma_accel(double t, double sigma) const {
    const double alpha = params_.alpha();
    return alpha * alpha / (sigma * sigma * sigma) - sigma * mathieu_coefficient(a_, g_, t);
}

SigmaState SigmaTrajectory::ode_state(double t, double sigma, double sigma_dot) const {
    const double alpha = params_.alpha();
    SigmaState st;
    st.t = t;
    st.sigma = sigma;
    st.sigma_dot = sigma_dot;
    st.sigma_ddot = sigma_accel(t, sigma);
    st.sigma_dddot = -3.0 * alpha * alpha * sigma_dot / (sigma * sigma * sigma * sigma) -
                     sigma_dot * mathieu_coefficient(a_, g_, t) - sigma * 4.0 * g_ * std::sin(2.0 * t);
    return st;
}

SigmaState SigmaTrajectory::state_at(double t) const {
    const double tol = 1e-12 * std::max(1.0, std::abs(t_end()));
    if (!(t >= t_begin() - tol && t <= t_end() + tol)) {
        throw OutOfRangeError("SigmaTrajectory: t=" + std::to_string(t) + " outside [" +
                                  std::to_string(t_begin()) + ", " + std::to_string(t_end()) + "]",
                              t);
    }
    const auto last = static_cast<long>(samples_.size()) - 1;
    const long k = std::clamp(static_cast<long>(std::floor((t - t_begin()) / step_)), 0L, last);
    const SigmaState& s0 = samples_[static_cast<std::size_t>(k)];

    // Dense output: one RK4 step of length t - t_k from the stored node. A full step
    // reproduces the next node exactly, so the output is continuous across nodes.
    Vec2 y(s0.sigma, s0.sigma_dot);
    const double dt = t - s0.t;
    if (dt != 0.0) {
        auto rhs = [this](double tt, const Vec2& yy) { return Vec2(yy(1), sigma_accel(tt, yy(0))); };
        y = rk4_step(y, rhs, s0.t, dt);
    }
    SigmaState out = ode_state(t, y(0), y(1));
    return out;
}

SigmaTrajectory solve_sigma_ode(double a, double g, const PhysicalParams& params, double sigma0,
                                double sigma_dot0, double t_end, double h, double floor) {
    if (!(sigma0 > 0.0)) throw InvalidArgument("solve_sigma_ode: sigma0 must be positive");
    if (!(h > 0.0)) throw InvalidArgument("solve_sigma_ode: step must be positive");
    if (!(t_end > 0.0)) throw InvalidArgument("solve_sigma_ode: t_end must be positive");

    const double alpha2 = params.alpha() * params.alpha();
    auto accel = [&](double t, double s) { return alpha2 / (s * s * s) - s * mathieu_coefficient(a, g, t); };
    auto rhs = [&](double t, const Vec2& y) { return Vec2(y(1), accel(t, y(0))); };
    auto make_state = [&](double t, const Vec2& y) {
        SigmaState st;
        st.t = t;
        st.sigma = y(0);
        st.sigma_dot = y(1);
        st.sigma_ddot = accel(t, y(0));
        st.sigma_dddot = -3.0 * alpha2 * y(1) / std::pow(y(0), 4) - y(1) * mathieu_coefficient(a, g, t) -
                         y(0) * 4.0 * g * std::sin(2.0 * t);
        return st;
    };

    const auto steps = static_cast<std::size_t>(std::ceil(t_end / h - 1e-9));
    std::vector<SigmaState> samples;
    samples.reserve(steps + 1);
    Vec2 y(sigma0, sigma_dot0);
    samples.push_back(make_state(0.0, y));
    for (std::size_t k = 0; k < steps; ++k) {
        const double t = static_cast<double>(k) * h;
        y = rk4_step(y, rhs, t, h);
        const double t_next = static_cast<double>(k + 1) * h;
        if (!(y(0) > floor)) {
            throw SingularityError("solve_sigma_ode: sigma fell below floor at t=" + std::to_string(t_next), t_next);
        }
        samples.push_back(make_state(t_next, y));
    }
    return SigmaTrajectory(params, a, g, h, std::move(samples));
}

SigmaSource::SigmaSource(const SigmaDriver& driver, const PhysicalParams& params, double t_end, double h)
    : driver_(driver), params_(params) {
    validate_driver(driver_, params_);
    if (const auto* m = std::get_if<MathieuDriver>(&driver_)) {
        const double horizon = std::max(t_end, h);
        trajectory_ = std::make_shared<const SigmaTrajectory>(
            solve_sigma_ode(m->a, m->g, params_, m->initial_sigma(params_), m->sigma_dot0, horizon, h));
    }
}

SigmaState SigmaSource::state(double t) const {
    if (trajectory_) return trajectory_->state_at(t);
    return sigma_eval(driver_, params_, t);
}

double SigmaSource::omega_squared(double t) const { return wvl::omega_squared(state(t), params_); }

PhaseTrajectory integrate_hill(const Omega2Function& omega2, double x0, double p0,
                               const PhysicalParams& params, double t_end, double h, double t0) {
    if (!(h > 0.0)) throw InvalidArgument("integrate_hill: step must be positive");
    if (!(t_end > t0)) throw InvalidArgument("integrate_hill: t_end must exceed t0");
    const double m = params.m();
    auto rhs = [&](double t, const Vec2& y) { return Vec2(y(1) / m, -m * omega2(t) * y(0)); };

    const auto steps = static_cast<std::size_t>(std::ceil((t_end - t0) / h - 1e-9));
    PhaseTrajectory out;
    out.samples.reserve(steps + 1);
    Vec2 y(x0, p0);
    out.samples.push_back({t0, x0, p0});
    for (std::size_t k = 0; k < steps; ++k) {
        const double t = t0 + static_cast<double>(k) * h;
        y = rk4_step(y, rhs, t, h);
        out.samples.push_back({t0 + static_cast<double>(k + 1) * h, y(0), y(1)});
    }
    return out;
}

std::string to_string(Stability s) {
    switch (s) {
        case Stability::stable: return "stable";
        case Stability::unstable: return "unstable";
        case Stability::marginal: return "marginal";
    }
    return "marginal";
}

StabilityVerdict floquet_classify(double a, double g, double h, double margin) {
    if (!(h > 0.0)) throw InvalidArgument("floquet_classify: step must be positive");
    const auto steps = static_cast<int>(std::lround(kPi / h));
    if (steps < 100) throw InvalidArgument("floquet_classify: need at least 100 steps per period");
    const double dt = kPi / steps;

    // Two fundamental solutions (1, 0) and (0, 1) in (x, x').
    auto rhs = [&](double t, const Vec4& y) {
        const double c = mathieu_coefficient(a, g, t);
        return Vec4(y(1), -c * y(0), y(3), -c * y(2));
    };
    Vec4 y(1.0, 0.0, 0.0, 1.0);
    for (int k = 0; k < steps; ++k) y = rk4_step(y, rhs, k * dt, dt);

    StabilityVerdict v;
    v.a = a;
    v.g = g;
    v.trace = y(0) + y(3);
    v.wronskian = y(0) * y(3) - y(2) * y(1);
    const double excess = std::abs(v.trace) - 2.0;
    if (excess > margin) {
        v.classification = Stability::unstable;
    } else if (excess < -margin) {
        v.classification = Stability::stable;
    } else {
        v.classification = Stability::marginal;
    }
    return v;
}

}  // namespace wvl
