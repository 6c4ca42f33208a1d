#pragma once

// Special functions needed by the closed forms: physicists' Hermite and
// Legendre polynomials with complex argument, the real-arithmetic scaled
// Legendre form, and the two-index coefficients F_{m,n}.

#include <cmath>
#include <complex>
#include <string>

#include "hpssv/detail/combinatorics.hpp"
#include "hpssv/errors.hpp"

namespace hpssv {

using Complex = std::complex<double>;

namespace detail {

inline bool finite(const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

inline void require_order(int n, const char* what) {
  if (n < 0) throw InvalidArgument(std::string(what) + ": order must be non-negative");
}

}  // namespace detail

/// H_n(z) by the three-term recurrence H_{k+1} = 2z H_k - 2k H_{k-1}.
inline Complex hermite(int n, Complex z) {
  detail::require_order(n, "hermite");
  if (n == 0) return {1.0, 0.0};
  Complex prev{1.0, 0.0};
  Complex cur = 2.0 * z;
  for (int k = 1; k < n; ++k) {
    Complex next = 2.0 * z * cur - 2.0 * static_cast<double>(k) * prev;
    prev = cur;
    cur = next;
  }
  if (!detail::finite(cur)) throw OverflowError("hermite(" + std::to_string(n) + ") overflowed");
  return cur;
}

/// P_n(x) by Bonnet's recurrence.
inline Complex legendre(int n, Complex x) {
  detail::require_order(n, "legendre");
  if (n == 0) return {1.0, 0.0};
  Complex prev{1.0, 0.0};
  Complex cur = x;
  for (int k = 1; k < n; ++k) {
    const double kd = k;
    Complex next = ((2.0 * kd + 1.0) * x * cur - kd * prev) / (kd + 1.0);
    prev = cur;
    cur = next;
  }
  if (!detail::finite(cur)) throw OverflowError("legendre(" + std::to_string(n) + ") overflowed");
  return cur;
}

/// B^n P_n(c / B) with B = sqrt(b_squared), written as the polynomial
///   sum_l n! / (4^l l!^2 (n-2l)!) c^{n-2l} (c^2 - b^2)^l,
/// so it stays real (and branch-free) when b_squared < 0.
inline double scaled_legendre(int n, double c, double b_squared) {
  detail::require_order(n, "scaled_legendre");
  const double gap = c * c - b_squared;
  double sum = 0.0;
  for (int l = 0; 2 * l <= n; ++l) {
    const double coeff = detail::factorial(n) /
                         (detail::factorial(l) * detail::factorial(l) * detail::factorial(n - 2 * l) *
                          detail::ipow(4.0, l));
    sum += coeff * detail::ipow(c, n - 2 * l) * detail::ipow(gap, l);
  }
  if (!std::isfinite(sum)) throw OverflowError("scaled_legendre overflowed");
  return sum;
}

/// F_{m,n}(lambda^2) = d^m/ds^m d^n/dt^n exp(-t^2 - s^2 + 4 s t lambda^2) at s = t = 0.
inline double f_coeff(int m, int n, double lambda_squared) {
  detail::require_order(m, "f_coeff");
  detail::require_order(n, "f_coeff");
  if ((m + n) % 2 != 0) return 0.0;
  const bool exact = m <= detail::kExactFactorialMax && n <= detail::kExactFactorialMax;
  const double cross = 4.0 * lambda_squared;
  double sum = 0.0;
  for (int k = (m % 2); k <= std::min(m, n); k += 2) {
    const int hm = (m - k) / 2;
    const int hn = (n - k) / 2;
    const double sign = ((hm + hn) % 2 == 0) ? 1.0 : -1.0;
    double weight;
    if (exact) {
      weight = detail::factorial(m) * detail::factorial(n) /
               (detail::factorial(k) * detail::factorial(hm) * detail::factorial(hn));
    } else {
      weight = std::exp(detail::log_factorial(m) + detail::log_factorial(n) - detail::log_factorial(k) -
                        detail::log_factorial(hm) - detail::log_factorial(hn));
    }
    sum += sign * weight * detail::ipow(cross, k);
  }
  if (!std::isfinite(sum)) throw OverflowError("f_coeff overflowed");
  return sum;
}

/// d^m/dtau^m exp(quadratic tau^2 + linear tau) at tau = 0.
///
/// Equals (sqrt(-quadratic))^m H_m(linear / (2 sqrt(-quadratic))) but is a
/// polynomial in both arguments, so it stays finite as quadratic -> 0.
inline Complex gaussian_derivative(int m, Complex linear, Complex quadratic) {
  detail::require_order(m, "gaussian_derivative");
  Complex sum{0.0, 0.0};
  for (int j = 0; 2 * j <= m; ++j) {
    const double coeff = detail::factorial(m) / (detail::factorial(j) * detail::factorial(m - 2 * j));
    sum += coeff * detail::ipow(quadratic, j) * detail::ipow(linear, m - 2 * j);
  }
  if (!detail::finite(sum)) throw OverflowError("gaussian_derivative overflowed");
  return sum;
}

inline Complex gaussian_derivative(int m, Complex linear, double quadratic) {
  return gaussian_derivative(m, linear, Complex(quadratic, 0.0));
}

}  // namespace hpssv
