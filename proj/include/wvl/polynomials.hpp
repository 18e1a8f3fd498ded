#pragma once

// Physicists' Hermite and standard Laguerre polynomials by upward three-term
// recurrence. Orders are capped at kMaxOrder: the toolkit targets low quantum
// numbers and double precision recurrences stay accurate well past that.

#include <cmath>
#include <string>
#include <vector>

#include "wvl/errors.hpp"

namespace wvl {

inline constexpr int kMaxOrder = 50;

inline void check_order(int n, const char* who) {
    if (n < 0) {
        throw InvalidArgument(std::string(who) + ": negative polynomial order " + std::to_string(n));
    }
    if (n > kMaxOrder) {
        throw InvalidArgument(std::string(who) + ": order " + std::to_string(n) + " exceeds cap " +
                              std::to_string(kMaxOrder));
    }
}

namespace detail {

// H_n and H_{n-1} in one pass; prev is 0 for n = 0.
template <typename Scalar>
inline void hermite_pair(int n, Scalar x, Scalar& cur, Scalar& prev) {
    prev = Scalar(0);
    cur = Scalar(1);
    for (int k = 1; k <= n; ++k) {
        // H_k = 2x H_{k-1} - 2(k-1) H_{k-2}
        Scalar next = Scalar(2) * x * cur - Scalar(2 * (k - 1)) * prev;
        prev = cur;
        cur = next;
    }
}

}  // namespace detail

/// H_n(x), physicists' convention (H_1 = 2x).
template <typename Scalar>
inline Scalar hermite(int n, Scalar x) {
    check_order(n, "hermite");
    Scalar cur, prev;
    detail::hermite_pair(n, x, cur, prev);
    return cur;
}

/// H_n'(x) = 2n H_{n-1}(x).
template <typename Scalar>
inline Scalar hermite_derivative(int n, Scalar x) {
    check_order(n, "hermite_derivative");
    if (n == 0) return Scalar(0);
    return Scalar(2 * n) * hermite(n - 1, x);
}

/// L_n(x) with L_n(0) = 1.
template <typename Scalar>
inline Scalar laguerre(int n, Scalar x) {
    check_order(n, "laguerre");
    Scalar prev = Scalar(0);
    Scalar cur = Scalar(1);
    for (int k = 0; k < n; ++k) {
        // (k+1) L_{k+1} = (2k+1-x) L_k - k L_{k-1}
        Scalar next = ((Scalar(2 * k + 1) - x) * cur - Scalar(k) * prev) / Scalar(k + 1);
        prev = cur;
        cur = next;
    }
    return cur;
}

/// L_n'(x) via L_k' = L_{k-1}' - L_{k-1}; regular at x = 0.
template <typename Scalar>
inline Scalar laguerre_derivative(int n, Scalar x) {
    check_order(n, "laguerre_derivative");
    Scalar l_prev = Scalar(0);
    Scalar l_cur = Scalar(1);
    Scalar d_cur = Scalar(0);
    for (int k = 0; k < n; ++k) {
        Scalar l_next = ((Scalar(2 * k + 1) - x) * l_cur - Scalar(k) * l_prev) / Scalar(k + 1);
        d_cur = d_cur - l_cur;
        l_prev = l_cur;
        l_cur = l_next;
    }
    return d_cur;
}

/// All n real zeros of H_n in increasing order, exactly symmetric about 0.
/// n = 0 yields an empty list.
std::vector<double> hermite_zeros(int n);

}  // namespace wvl
