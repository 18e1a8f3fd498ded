#pragma once

#include <cmath>
#include <string>

#include "wvl/errors.hpp"

namespace wvl {

/// Mass and action scales. alpha = -hbar/(2m), beta = 1/hbar, alpha2 = -hbar2/(2m).
template <typename Scalar>
class PhysicalParamsT {
public:
    PhysicalParamsT() = default;
    PhysicalParamsT(Scalar m, Scalar hbar, Scalar hbar2) : m_(m), hbar_(hbar), hbar2_(hbar2) {
        if (!(m > 0) || !(hbar > 0) || !(hbar2 > 0)) {
            throw InvalidArgument("PhysicalParams: m, hbar and hbar2 must be positive");
        }
    }

    Scalar m() const { return m_; }
    Scalar hbar() const { return hbar_; }
    Scalar hbar2() const { return hbar2_; }
    Scalar alpha() const { return -hbar_ / (Scalar(2) * m_); }
    Scalar beta() const { return Scalar(1) / hbar_; }
    Scalar alpha2() const { return -hbar2_ / (Scalar(2) * m_); }

private:
    Scalar m_ = Scalar(1);
    Scalar hbar_ = Scalar(1);
    Scalar hbar2_ = Scalar(1);
};

using PhysicalParams = PhysicalParamsT<double>;

/// The width function and its time derivatives at one instant.
/// sigma_dddot is only consumed by the rank-2 potential.
template <typename Scalar>
struct SigmaStateT {
    Scalar t = Scalar(0);
    Scalar sigma = Scalar(1);
    Scalar sigma_dot = Scalar(0);
    Scalar sigma_ddot = Scalar(0);
    Scalar sigma_dddot = Scalar(0);
};

using SigmaState = SigmaStateT<double>;

template <typename Scalar>
inline void require_positive_sigma(const SigmaStateT<Scalar>& s, const char* who) {
    if (!(s.sigma > 0)) throw DomainError(std::string(who) + ": sigma must be positive");
}

/// Omega^2 = (alpha^2/sigma^3 - sigma_ddot)/sigma; negative values are allowed.
template <typename Scalar>
inline Scalar omega_squared(const SigmaStateT<Scalar>& s, const PhysicalParamsT<Scalar>& p) {
    const Scalar a = p.alpha();
    return (a * a / (s.sigma * s.sigma * s.sigma) - s.sigma_ddot) / s.sigma;
}

}  // namespace wvl
