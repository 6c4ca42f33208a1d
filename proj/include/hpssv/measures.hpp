#pragma once

// Closed-form nonclassicality measures: Mandel Q, g2, photon-number
// distribution, p-quadrature distribution and the optimal squeezing degree.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "hpssv/detail/combinatorics.hpp"
#include "hpssv/errors.hpp"
#include "hpssv/specfun.hpp"
#include "hpssv/state.hpp"

namespace hpssv {

inline constexpr double kMeanPhotonFloor = 1e-14;

namespace detail {

inline double mean_photon_or_throw(const StateParams& p) {
  const double mean = moment_state(1, 1, p).real();
  if (!(mean > kMeanPhotonFloor)) {
    throw ZeroMeanPhoton("<a^dag a> = " + std::to_string(mean) + " (vacuum state)");
  }
  return mean;
}

}  // namespace detail

/// Q_M = <a^dag^2 a^2> / <a^dag a> - <a^dag a>. Negative means sub-Poissonian.
inline double mandel_q(const StateParams& p) {
  const double mean = detail::mean_photon_or_throw(p);
  return moment_state(2, 2, p).real() / mean - mean;
}

/// g2 = <a^dag^2 a^2> / <a^dag a>^2.
inline double g2(const StateParams& p) {
  const double mean = detail::mean_photon_or_throw(p);
  return moment_state(2, 2, p).real() / (mean * mean);
}

/// S = 2(<a^dag a> - |<a^dag^2>|); a value in [-1, 0) certifies squeezing.
inline double squeezing_degree(const StateParams& p) {
  return 2.0 * (moment_state(1, 1, p).real() - std::abs(moment_state(2, 0, p)));
}

/// Photon-number distribution P(m), m = 0..m_max.
struct PndResult {
  std::vector<double> probabilities;
  int m_max = 0;
};

/// Starting truncation n + 8 ceil(e^{2|r|}) + 20.
inline int default_pnd_cutoff(const StateParams& p) {
  return p.n() + 8 * static_cast<int>(std::ceil(std::exp(2.0 * std::abs(p.r())))) + 20;
}

/// Coefficients of the photon-number generating function
/// exp(-A1^2 t^2 - B1^2 x^2 + 2 C1 t x), written in the untransformed (mu, nu).
struct PndCoefficients {
  double a1_sq;
  double b1_sq;
  double c1;

  explicit PndCoefficients(const StateParams& p) {
    const double th = std::tanh(p.r());
    a1_sq = 1.0 + 2.0 * p.mu() * p.mu() * th - 2.0 * p.mu() * p.nu();
    b1_sq = 0.5 * th;
    c1 = p.nu() - p.mu() * th;
  }
  /// D1 = C1^2 - A1^2 B1^2.
  double d1() const { return c1 * c1 - a1_sq * b1_sq; }
};

namespace detail {

struct SignedLog {
  double sign = 1.0;
  double log_abs = 0.0;
};

/// base^k as (sign, log|.|); 0^0 = 1 and 0^k = 0 (sign 0) for k > 0.
inline SignedLog signed_log_pow(double base, int k) {
  if (k == 0) return {1.0, 0.0};
  if (base == 0.0) return {0.0, 0.0};
  return {(base < 0.0 && k % 2 == 1) ? -1.0 : 1.0, k * std::log(std::abs(base))};
}

/// sqrt(m!) n! [x^m t^n] exp(-A t^2 - B x^2 + 2 C t x): the Fock amplitude
/// <m|H_n(O) S(r)|0> without the sech^{1/2} r prefactor.
inline double pnd_amplitude(int m, int n, const PndCoefficients& c) {
  if ((m - n) % 2 != 0) return 0.0;
  const double log_prefactor = 0.5 * log_factorial(m) + log_factorial(n);
  double sum = 0.0;
  for (int k = (n % 2); k <= std::min(m, n); k += 2) {
    const int hn = (n - k) / 2;
    const int hm = (m - k) / 2;
    const SignedLog cross = signed_log_pow(2.0 * c.c1, k);
    const SignedLog at = signed_log_pow(-c.a1_sq, hn);
    const SignedLog bx = signed_log_pow(-c.b1_sq, hm);
    const double sign = cross.sign * at.sign * bx.sign;
    if (sign == 0.0) continue;
    const double log_mag = log_prefactor + cross.log_abs + at.log_abs + bx.log_abs - log_factorial(k) -
                           log_factorial(hn) - log_factorial(hm);
    sum += sign * std::exp(log_mag);
  }
  return sum;
}

}  // namespace detail

/// P(m) = N^2 sech r m! (n!)^2 |[x^m t^n] exp(-A1^2 t^2 - B1^2 x^2 + 2 C1 t x)|^2.
inline PndResult pnd(const StateParams& p, int m_max) {
  if (m_max < 0) throw InvalidArgument("pnd: m_max must be non-negative");
  const PndCoefficients coeff(p);
  const double scale = p.norm_sq() / std::cosh(p.r());
  PndResult out;
  out.m_max = m_max;
  out.probabilities.assign(static_cast<std::size_t>(m_max) + 1, 0.0);
  for (int m = 0; m <= m_max; ++m) {
    const double amp = detail::pnd_amplitude(m, p.n(), coeff);
    out.probabilities[m] = scale * amp * amp;
  }
  return out;
}

inline constexpr double kPndTailTol = 1e-12;
inline constexpr int kPndMaxCutoff = 4000;

/// pnd over the default truncation, extended until the last ten entries carry
/// less than kPndTailTol.
inline PndResult pnd(const StateParams& p) {
  int m_max = default_pnd_cutoff(p);
  while (true) {
    PndResult out = pnd(p, m_max);
    double tail = 0.0;
    for (int m = m_max - 9; m <= m_max; ++m) tail += out.probabilities[m];
    if (tail < kPndTailTol) return out;
    if (m_max >= kPndMaxCutoff) throw NonConvergence("pnd tail " + std::to_string(tail) + " at m_max " + std::to_string(m_max));
    m_max = std::min(kPndMaxCutoff, m_max + m_max / 2);
  }
}

/// P(m = n) through the scaled-Legendre route:
///   N^2 sech r n! 4^n [D1^{n/2} P_n(C1 / sqrt(D1))]^2.
inline double pnd_diagonal(const StateParams& p) {
  const PndCoefficients c(p);
  const int n = p.n();
  const double leg = scaled_legendre(n, c.c1, c.d1());
  return p.norm_sq() / std::cosh(p.r()) * detail::factorial(n) * detail::ipow(4.0, n) * leg * leg;
}

inline constexpr double kQuadratureDegeneracyFloor = 1e-14;
inline constexpr double kQuadratureResidueTol = 1e-10;

/// |Psi(p)|^2 for the p-quadrature: a Hermite-Gaussian of width u = e^r,
///   N^2/(sqrt(pi) u) e^{-p^2/u^2} |K|^n |H_n(-i sqrt2 nu1 (p/u) / sqrt K)|^2,
/// K = 1 - 2 mu1 nu1 - 2 nu1^2.
inline double quadrature_dist(const StateParams& p, double p_value) {
  const double u = std::exp(p.r());
  const double x = p_value / u;
  const double gaussian = p.norm_sq() / (std::sqrt(std::numbers::pi) * u) * std::exp(-x * x);
  if (p.n() == 0) return gaussian;

  const double k = 1.0 - 2.0 * p.mu1() * p.nu1() - 2.0 * p.nu1() * p.nu1();
  if (std::abs(k) < kQuadratureDegeneracyFloor) {
    throw DegenerateDenominator("1 - 2 mu1 nu1 - 2 nu1^2 vanishes");
  }
  const Complex arg = Complex(0.0, -std::sqrt(2.0) * p.nu1() * x) / std::sqrt(Complex(k, 0.0));
  const Complex h = hermite(p.n(), arg);
  const Complex value = gaussian * std::pow(std::abs(k), p.n()) * h * std::conj(h);
  if (std::abs(value.imag()) > kQuadratureResidueTol * std::max(1.0, std::abs(value.real()))) {
    throw FormulaResidue("quadrature_dist imaginary residue " + std::to_string(value.imag()));
  }
  return value.real();
}

}  // namespace hpssv
