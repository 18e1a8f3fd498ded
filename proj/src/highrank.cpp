#include "wvl/highrank.hpp"

#include <array>
#include <cmath>

namespace wvl {

namespace {

using cplx = std::complex<double>;

// Exponent Q of W4 and its gradient in (x, p, p_dot, p_ddot).
struct Rank4Exponent {
    double q;
    std::array<double, 4> grad;
};

Rank4Exponent rank4_exponent(const SigmaState& s, const PhysicalParams& params, const ExtendedPhasePoint& pt,
                             Rank4Sign sign) {
    const double m = params.m();
    const double hbar = params.hbar();
    const double hbar2 = params.hbar2();
    const double sg = s.sigma;
    const double sd = s.sigma_dot;
    const double eta = eta_xi(s, params).eta;
    const double sgn = sign == Rank4Sign::reduced ? 1.0 : -1.0;

    const double a = sd * m * pt.x - sg * pt.p;
    const double u = pt.p_dot + eta * pt.x;
    const double w = sg * (m * pt.p_ddot - eta * pt.p) - m * sd * u;
    const double c = 2.0 / (m * m * hbar2 * hbar2);
    const double k = hbar * hbar / (4.0 * sg * sg);

    Rank4Exponent e;
    e.q = pt.x * pt.x / (2.0 * sg * sg) + 2.0 / (hbar * hbar) * a * a + c * (w * w + sgn * k * u * u);
    const double da = 4.0 / (hbar * hbar) * a;
    e.grad[0] = pt.x / (sg * sg) + da * sd * m + c * (2.0 * w * (-m * sd * eta) + sgn * 2.0 * k * u * eta);
    e.grad[1] = -da * sg + c * (2.0 * w * (-sg * eta));
    e.grad[2] = c * (2.0 * w * (-m * sd) + sgn * 2.0 * k * u);
    e.grad[3] = c * (2.0 * w * sg * m);
    return e;
}

double rank4_prefactor(const PhysicalParams& params) {
    const double d = kPi * params.hbar2();
    return 1.0 / (d * d);
}

}  // namespace

cplx rank2_exponent(const SigmaState& s, const PhysicalParams& params, double x, double v) {
    const double m = params.m();
    const double hbar = params.hbar();
    const double hbar2 = params.hbar2();
    const double shear = s.sigma_dot * x - s.sigma * v;
    const double re = -x * x / (4.0 * s.sigma * s.sigma) - (m * m) / (hbar * hbar) * shear * shear;
    const double im = -rank2_chirp(s, params) * x * v / (2.0 * hbar2);
    return {re, im};
}

cplx psi_rank2(const SigmaState& s, const PhysicalParams& params, double e12, double x, double v) {
    require_positive_sigma(s, "psi_rank2");
    return std::exp(rank2_exponent(s, params, x, v) - cplx(0.0, e12 / params.hbar2())) /
           std::sqrt(kPi * params.hbar());
}

U12Coefficients potential_U12_coefficients(const SigmaState& s, const PhysicalParams& params, U12Variant variant) {
    require_positive_sigma(s, "potential_U12");
    const double m = params.m();
    const double hbar = params.hbar();
    const double hbar2 = params.hbar2();
    const double sg = s.sigma;
    const double sd = s.sigma_dot;
    const double sdd = s.sigma_ddot;
    const double s2 = sg * sg;
    const double s4 = s2 * s2;
    const double g = hbar2 * hbar2 * m * m * m / (hbar * hbar * hbar * hbar);

    U12Coefficients c;
    c.v2 = hbar * hbar / (4.0 * m * s4) - m * sdd / sg + 2.0 * g * s4;
    const double inner = variant == U12Variant::consistent ? sg * s.sigma_dddot - sd * sdd : sdd * sg - sd * sd;
    c.xv = hbar * hbar * sd / (m * s4 * sg) + m * inner / s2 + 4.0 * g * s2 * sg * sd;
    const double bracket = hbar * hbar / (4.0 * m * std::sqrt(2.0 * m) * s4) - (sdd / sg) * std::sqrt(m / 2.0);
    c.x2 = 2.0 * g * s2 * sd * sd - bracket * bracket;
    return c;
}

double potential_U12(const SigmaState& s, const PhysicalParams& params, double x, double v, U12Variant variant) {
    const U12Coefficients c = potential_U12_coefficients(s, params, variant);
    return c.v2 * v * v - c.xv * x * v + c.x2 * x * x;
}

EtaXi eta_xi(const SigmaState& s, const PhysicalParams& params) {
    require_positive_sigma(s, "eta_xi");
    const double m = params.m();
    const double hbar = params.hbar();
    const double s2 = s.sigma * s.sigma;
    EtaXi out;
    out.eta = (hbar * hbar - 4.0 * m * m * s2 * s.sigma * s.sigma_ddot) / (4.0 * m * s2 * s2);
    if (s.sigma_dot != 0.0) {
        const double d = 4.0 * m * m * s2 * s.sigma_dot * s.sigma_dot;
        out.xi = (hbar * hbar + d) / d;
    }
    return out;
}

Rank4Sign parse_rank4_sign(const std::string& name) {
    if (name == "reduced") return Rank4Sign::reduced;
    if (name == "paper") return Rank4Sign::paper;
    throw InvalidArgument("rank-4 sign must be 'paper' or 'reduced', got '" + name + "'");
}

std::string to_string(Rank4Sign sign) { return sign == Rank4Sign::reduced ? "reduced" : "paper"; }

double wigner_rank4(const SigmaState& s, const PhysicalParams& params, const ExtendedPhasePoint& pt, Rank4Sign sign) {
    require_positive_sigma(s, "wigner_rank4");
    return rank4_prefactor(params) * std::exp(-rank4_exponent(s, params, pt, sign).q);
}

double wigner_rank4_static(double omega0, const PhysicalParams& params, const ExtendedPhasePoint& pt) {
    if (!(omega0 > 0.0)) throw InvalidArgument("wigner_rank4_static: omega0 must be positive");
    const double m = params.m();
    const double w2 = omega0 * omega0;
    const double u = pt.p_dot + m * w2 * pt.x;
    const double r = pt.p_ddot - w2 * pt.p;
    const double bracket = pt.p * pt.p / (2.0 * m) + 0.5 * m * w2 * pt.x * pt.x + u * u / (2.0 * m * w2) +
                           r * r / (2.0 * m * w2 * w2);
    return rank4_prefactor(params) * std::exp(-2.0 / (params.hbar() * omega0) * bracket);
}

ResidualReport schrodinger2_residual(const SigmaSource& source, const GridSpec& gx, const GridSpec& gv, double t,
                                     double dt, U12Variant variant) {
    const PhysicalParams& params = source.params();
    const SigmaState s = source.state(t);
    const SigmaState sp = source.state(t + dt);
    const SigmaState sm = source.state(t - dt);
    const double m = params.m();
    const double hbar = params.hbar();
    const double hbar2 = params.hbar2();
    const double e_dot = rank2_energy_rate(s, params);
    const double k = rank2_chirp(s, params);
    const double mh = m * m / (hbar * hbar);
    const cplx i(0.0, 1.0);

    ResidualAccumulator acc;
    for (int a = 0; a < gx.points(); ++a) {
        const double x = gx.node(a);
        for (int b = 0; b < gv.points(); ++b) {
            const double v = gv.node(b);
            const cplx psi = psi_rank2(s, params, 0.0, x, v);
            const cplx ds_dt =
                (rank2_exponent(sp, params, x, v) - rank2_exponent(sm, params, x, v)) / (2.0 * dt);
            const cplx dpsi_dt = (ds_dt - i * (e_dot / hbar2)) * psi;
            const double shear = s.sigma_dot * x - s.sigma * v;
            const cplx ds_dx = -x / (2.0 * s.sigma * s.sigma) - 2.0 * mh * shear * s.sigma_dot - i * k * v / (2.0 * hbar2);
            const cplx ds_dv = 2.0 * mh * shear * s.sigma - i * k * x / (2.0 * hbar2);
            const double ds_dvv = -2.0 * mh * s.sigma * s.sigma;
            const cplx lhs = i * hbar2 * (dpsi_dt + v * ds_dx * psi);
            const cplx kinetic = -hbar2 * hbar2 / (2.0 * m) * (ds_dv * ds_dv + ds_dvv) * psi;
            const cplx pot = potential_U12(s, params, x, v, variant) * psi;
            acc.add(std::abs(lhs - kinetic - pot), std::abs(lhs) + std::abs(kinetic) + std::abs(pot));
        }
    }
    return acc.report(dt);
}

Rank4Grid default_rank4_grid(const SigmaState& s, const PhysicalParams& params, int points) {
    require_positive_sigma(s, "default_rank4_grid");
    const double m = params.m();
    const double hbar = params.hbar();
    const double hbar2 = params.hbar2();
    const double eta = std::abs(eta_xi(s, params).eta);
    const double lx = 2.0 * s.sigma;
    const double lp = 2.0 * std::hypot(hbar / (2.0 * s.sigma), m * s.sigma_dot);
    const double lu = 2.0 * m * hbar2 * s.sigma / hbar;
    const double lpd = eta * lx + lu;
    const double lpdd = (eta * lp + m * std::abs(s.sigma_dot) * lu / s.sigma) / m + 2.0 * hbar2 / (2.0 * s.sigma);
    return {GridSpec(0.0, lx, points), GridSpec(0.0, lp, points), GridSpec(0.0, lpd, points),
            GridSpec(0.0, lpdd, points)};
}

ResidualReport moyal4_residual(const SigmaSource& source, const Rank4Grid& grid, double t, double dt, Rank4Sign sign,
                               U12Variant variant) {
    const PhysicalParams& params = source.params();
    const SigmaState s = source.state(t);
    const SigmaState sp = source.state(t + dt);
    const SigmaState sm = source.state(t - dt);
    const double m = params.m();
    const U12Coefficients u = potential_U12_coefficients(s, params, variant);

    ResidualAccumulator acc;
    for (int a = 0; a < grid.x.points(); ++a) {
        for (int b = 0; b < grid.p.points(); ++b) {
            for (int c = 0; c < grid.p_dot.points(); ++c) {
                for (int d = 0; d < grid.p_ddot.points(); ++d) {
                    const ExtendedPhasePoint pt{grid.x.node(a), grid.p.node(b), grid.p_dot.node(c),
                                                grid.p_ddot.node(d)};
                    const Rank4Exponent e = rank4_exponent(s, params, pt, sign);
                    const double w = rank4_prefactor(params) * std::exp(-e.q);
                    const double dq_dt = (rank4_exponent(sp, params, pt, sign).q -
                                          rank4_exponent(sm, params, pt, sign).q) /
                                         (2.0 * dt);
                    const double dw_dt = -w * dq_dt;
                    const double v = pt.p / m;
                    const double du_dv = 2.0 * u.v2 * v - u.xv * pt.x;
                    const double du_dx = -u.xv * v + 2.0 * u.x2 * pt.x;
                    const std::array<double, 4> coeff = {v, pt.p_dot, pt.p_ddot - du_dv, du_dx};
                    double transport = 0.0;
                    double magnitude = std::abs(dw_dt);
                    for (int k = 0; k < 4; ++k) {
                        const double term = -w * coeff[static_cast<std::size_t>(k)] * e.grad[static_cast<std::size_t>(k)];
                        transport += term;
                        magnitude += std::abs(term);
                    }
                    acc.add(std::abs(dw_dt + transport), magnitude);
                }
            }
        }
    }
    return acc.report(dt);
}

}  // namespace wvl
