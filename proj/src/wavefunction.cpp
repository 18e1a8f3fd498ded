#include "wvl/wavefunction.hpp"

#include <algorithm>

namespace wvl {

namespace {

using cplx = std::complex<double>;

bool near_zero(const std::vector<double>& zeros, double x) {
    return std::any_of(zeros.begin(), zeros.end(), [&](double z) { return std::abs(x - z) <= kZeroGuard; });
}

}  // namespace

cplx wavefunction_dxx(int n, const SigmaState& s, const PhysicalParams& p, double energy, double x) {
    check_order(n, "wavefunction_dxx");
    require_positive_sigma(s, "wavefunction_dxx");
    const double r2s = std::sqrt(2.0) * s.sigma;
    const double xs = x / r2s;
    // Psi = N exp(g) H_n(xs) with g = -c x^2.
    const cplx c(1.0 / (4.0 * s.sigma * s.sigma), s.sigma_dot / (4.0 * p.alpha() * s.sigma));
    const cplx g1 = -2.0 * c * x;
    const cplx g2 = -2.0 * c;
    const double h = hermite(n, xs);
    const double h1 = hermite_derivative(n, xs);
    const double h2 = n >= 2 ? 4.0 * n * (n - 1) * hermite(n - 2, xs) : 0.0;
    const cplx carrier = wavefunction(0, s, p, energy, x);  // N0 exp(g - i beta E)
    const double ratio = 1.0 / std::sqrt(hermite_norm<double>(n));
    return ratio * carrier * ((g1 * g1 + g2) * h + 2.0 * g1 * h1 / r2s + h2 / (r2s * r2s));
}

double wavefunction_amplitude(int n, const SigmaState& s, double x) {
    check_order(n, "wavefunction_amplitude");
    require_positive_sigma(s, "wavefunction_amplitude");
    const double xs = x / (std::sqrt(2.0) * s.sigma);
    return hermite(n, xs) * std::exp(-0.25 * x * x / (s.sigma * s.sigma)) /
           std::sqrt(hermite_norm<double>(n) * std::sqrt(2.0 * kPi) * s.sigma);
}

double sqrt_density_curvature(int n, const SigmaState& s, double x) {
    check_order(n, "sqrt_density_curvature");
    require_positive_sigma(s, "sqrt_density_curvature");
    const double xs = x / (std::sqrt(2.0) * s.sigma);
    const double h = hermite(n, xs);
    const double h1 = n >= 1 ? hermite(n - 1, xs) : 0.0;
    const double h2 = n >= 2 ? hermite(n - 2, xs) : 0.0;
    const double num = (xs * xs - 1.0) * h - 4.0 * n * xs * h1 + 4.0 * n * (n - 1) * h2;
    return num / (2.0 * s.sigma * s.sigma * h);
}

PhaseAccumulator::PhaseAccumulator(int n, const SigmaSource& source, double t_end, double h)
    : n_(n), source_(&source), h_(h) {
    check_order(n, "PhaseAccumulator");
    if (!(h > 0.0)) throw InvalidArgument("PhaseAccumulator: step must be positive");
    if (!(t_end >= 0.0)) throw InvalidArgument("PhaseAccumulator: t_end must be nonnegative");
    const auto steps = static_cast<std::size_t>(std::ceil(t_end / h - 1e-9));
    nodes_.reserve(steps + 1);
    nodes_.push_back(0.0);
    for (std::size_t k = 0; k < steps; ++k) {
        const double a = static_cast<double>(k) * h;
        const double b = std::min(t_end, a + h);
        nodes_.push_back(nodes_.back() + unit_integral(a, b));
    }
}

double PhaseAccumulator::unit_integral(double a, double b) const {
    auto inv_s2 = [this](double t) {
        const double s = source_->state(t).sigma;
        return 1.0 / (s * s);
    };
    return integrate_adaptive(inv_s2, a, b, 1e-14 * std::max(1.0, std::abs(b - a))).value;
}

double PhaseAccumulator::rate(double t) const {
    return phase_energy_rate(n_, source_->state(t), source_->params());
}

double PhaseAccumulator::energy(double t) const {
    const auto last = static_cast<long>(nodes_.size()) - 1;
    const long k = std::clamp(static_cast<long>(std::floor(t / h_)), 0L, last);
    const double t_node = std::min(static_cast<double>(k) * h_, static_cast<double>(last) * h_);
    const double unit = nodes_[static_cast<std::size_t>(k)] + unit_integral(t_node, t);
    const double hbar = source_->params().hbar();
    return hbar * hbar * (n_ + 0.5) / (2.0 * source_->params().m()) * unit;
}

ResidualReport schrodinger_residual(int n, const SigmaSource& source, const GridSpec& grid, double t, double dt) {
    check_order(n, "schrodinger_residual");
    const PhysicalParams& p = source.params();
    const SigmaState s = source.state(t);
    const SigmaState sp = source.state(t + dt);
    const SigmaState sm = source.state(t - dt);
    const double e_dot = phase_energy_rate(n, s, p);
    const double hbar = p.hbar();
    const cplx i(0.0, 1.0);

    // Psi = A exp(i chi x^2 - i beta E): the real amplitude A and the scalar chirp chi
    // are central-differenced separately, which keeps the fast chirp out of the stencil.
    auto chirp = [&p](const SigmaState& st) { return -st.sigma_dot / (4.0 * p.alpha() * st.sigma); };
    const double dchi_dt = (chirp(sp) - chirp(sm)) / (2.0 * dt);

    ResidualAccumulator acc;
    for (int k = 0; k < grid.points(); ++k) {
        const double x = grid.node(k);
        const double amp = wavefunction_amplitude(n, s, x);
        const double damp_dt = (wavefunction_amplitude(n, sp, x) - wavefunction_amplitude(n, sm, x)) / (2.0 * dt);
        const cplx carrier = std::exp(cplx(0.0, chirp(s) * x * x));
        const cplx phi = amp * carrier;
        const cplx dphi_dt = carrier * cplx(damp_dt, amp * dchi_dt * x * x);
        const cplx lhs = i * hbar * (dphi_dt - i * p.beta() * e_dot * phi);
        const cplx kinetic = -hbar * hbar / (2.0 * p.m()) * wavefunction_dxx(n, s, p, 0.0, x);
        const cplx pot = potential_U1(s, p, x) * phi;
        acc.add(std::abs(lhs - kinetic - pot), std::abs(lhs) + std::abs(kinetic) + std::abs(pot));
    }
    return acc.report(dt);
}

ResidualReport hamilton_jacobi_residual(int n, const SigmaSource& source, const GridSpec& grid, double t,
                                        double dt) {
    check_order(n, "hamilton_jacobi_residual");
    const PhysicalParams& p = source.params();
    const SigmaState s = source.state(t);
    const SigmaState sp = source.state(t + dt);
    const SigmaState sm = source.state(t - dt);
    const double alpha = p.alpha();
    const double beta = p.beta();
    const double e_dot = phase_energy_rate(n, s, p);
    const std::vector<double> zeros = scaled_zeros(n, s);
    // phi = -sigma_dot x^2 / (4 alpha sigma) - beta E_n.
    auto chirp = [alpha](const SigmaState& st) { return -st.sigma_dot / (4.0 * alpha * st.sigma); };
    const double dchirp_dt = (chirp(sp) - chirp(sm)) / (2.0 * dt);

    ResidualAccumulator acc;
    for (int k = 0; k < grid.points(); ++k) {
        const double x = grid.node(k);
        if (near_zero(zeros, x)) continue;
        const double dphi_dt = dchirp_dt * x * x - beta * e_dot;
        const double quantum = alpha * sqrt_density_curvature(n, s, x);
        const double dphi_dx = 2.0 * chirp(s) * x;
        const double gradient = -alpha * dphi_dx * dphi_dx;
        const double pot = beta * potential_U1(s, p, x);
        const double r = dphi_dt + quantum + gradient + pot;
        acc.add(std::abs(r), std::abs(dphi_dt) + std::abs(quantum) + std::abs(gradient) + std::abs(pot));
    }
    return acc.report(dt);
}

}  // namespace wvl
