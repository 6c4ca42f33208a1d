#pragma once

// The Hermite-excited squeezed vacuum family H_n(mu a + nu a^dag) S(r)|0>,
// its normalization, and the moments <a^dag^l a^k> it needs.

#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hpssv/detail/combinatorics.hpp"
#include "hpssv/errors.hpp"
#include "hpssv/specfun.hpp"

namespace hpssv {

inline constexpr double kNormFloor = 1e-14;

/// Weights of the squeeze-rotated operator mu1 a + nu1 a^dag.
struct TransformedParams {
  double mu1 = 0.0;
  double nu1 = 0.0;

  /// A = 1 - 2 mu1 nu1.
  double a() const { return 1.0 - 2.0 * mu1 * nu1; }
  /// B^2 = 4 nu1^4 - A^2 (B itself may be imaginary).
  double b_squared() const { return 4.0 * nu1 * nu1 * nu1 * nu1 - a() * a(); }
  /// lambda^2 = nu1^2 / (1 - 2 mu1 nu1); only meaningful when A > 0.
  double lambda_squared() const { return nu1 * nu1 / a(); }
  /// K = 4 nu1^4 - (1 - 2 mu1 nu1)^2, identical to b_squared() by construction.
  double k_param() const { return b_squared(); }
};

/// mu1 = mu cosh r - nu sinh r, nu1 = nu cosh r - mu sinh r.
inline TransformedParams transform_params(double mu, double nu, double r) {
  return {mu * std::cosh(r) - nu * std::sinh(r), nu * std::cosh(r) - mu * std::sinh(r)};
}

/// N^{-2} = 2^n n! B^n P_n(2 nu1^2 / B), evaluated branch-free.
inline double normalization_inv_sq(int n, double mu1, double nu1) {
  if (n < 0) throw InvalidArgument("normalization_inv_sq: n must be non-negative");
  const TransformedParams t{mu1, nu1};
  const double value = detail::ipow(2.0, n) * detail::factorial(n) *
                       scaled_legendre(n, 2.0 * nu1 * nu1, t.b_squared());
  if (!(value > kNormFloor)) {
    throw NonPositiveNorm("N^-2 = " + std::to_string(value) + " for n=" + std::to_string(n) +
                          ", mu1=" + std::to_string(mu1) + ", nu1=" + std::to_string(nu1));
  }
  return value;
}

/// Immutable, validated state parameters. N^{-2} is computed once here.
class StateParams {
 public:
  StateParams(int n, double mu, double nu, double r) : n_(n), mu_(mu), nu_(nu), r_(r) {
    if (n < 0) throw InvalidArgument("StateParams: n must be non-negative");
    if (!std::isfinite(mu) || !std::isfinite(nu) || !std::isfinite(r)) {
      throw InvalidArgument("StateParams: parameters must be finite");
    }
    if (mu == 0.0 && nu == 0.0) throw InvalidArgument("StateParams: mu and nu cannot both vanish");
    transformed_ = transform_params(mu, nu, r);
    norm_inv_sq_ = normalization_inv_sq(n, transformed_.mu1, transformed_.nu1);
  }

  int n() const { return n_; }
  double mu() const { return mu_; }
  double nu() const { return nu_; }
  double r() const { return r_; }
  const TransformedParams& transformed() const { return transformed_; }
  double mu1() const { return transformed_.mu1; }
  double nu1() const { return transformed_.nu1; }
  double norm_inv_sq() const { return norm_inv_sq_; }
  double norm_sq() const { return 1.0 / norm_inv_sq_; }

 private:
  int n_;
  double mu_;
  double nu_;
  double r_;
  TransformedParams transformed_;
  double norm_inv_sq_ = 1.0;
};

/// Fock amplitudes of the (unnormalized) vector H_n(mu a + nu a^dag)|0>;
/// entry m is nonzero only for m = n - 2j:
///   n! (-(1 - 2 mu nu))^j (2 nu)^m / (j! sqrt(m!)).
inline std::vector<double> hermite_vacuum_amplitudes(int n, double mu, double nu) {
  if (n < 0) throw InvalidArgument("hermite_vacuum_amplitudes: n must be non-negative");
  std::vector<double> amp(static_cast<std::size_t>(n) + 1, 0.0);
  const double a = 1.0 - 2.0 * mu * nu;
  for (int j = 0; 2 * j <= n; ++j) {
    const int m = n - 2 * j;
    amp[m] = detail::factorial(n) * detail::ipow(-a, j) * detail::ipow(2.0 * nu, m) /
             (detail::factorial(j) * std::sqrt(detail::factorial(m)));
  }
  return amp;
}

/// N^{-2} <a^dag^l a^k> for the Hermite-excited vacuum H_n(mu a + nu a^dag)|0>.
/// A finite sum over the amplitudes above; valid for any real (mu, nu).
inline Complex moment_vacuum(int l, int k, int n, double mu, double nu) {
  if (l < 0 || k < 0) throw InvalidArgument("moment_vacuum: l, k must be non-negative");
  const std::vector<double> amp = hermite_vacuum_amplitudes(n, mu, nu);
  double sum = 0.0;
  // <a^l psi | a^k psi> = sum_j c_{j+l} c_{j+k} sqrt((j+l)!/j!) sqrt((j+k)!/j!)
  for (int j = 0; j + l <= n && j + k <= n; ++j) {
    const double ladder = std::sqrt(detail::factorial(j + l) / detail::factorial(j)) *
                          std::sqrt(detail::factorial(j + k) / detail::factorial(j));
    sum += amp[j + l] * amp[j + k] * ladder;
  }
  return {sum, 0.0};
}

/// The lambda-substituted form of moment_vacuum, defined only when
/// 1 - 2 mu nu > 0. Kept as an independent cross-check route.
inline Complex moment_vacuum_lambda_form(int l, int k, int n, double mu, double nu) {
  const double a = 1.0 - 2.0 * mu * nu;
  if (!(a > 0.0)) throw DegenerateDenominator("lambda form needs 1 - 2 mu nu > 0");
  if (l > n || k > n) return {0.0, 0.0};
  const double lambda = nu / std::sqrt(a);
  // nu^{2n} / lambda^{2n} = a^n, which also covers nu = 0
  const double value = detail::ipow(a, n) * detail::ipow(2.0 * lambda, l + k) * detail::factorial(n) *
                       detail::factorial(n) / (detail::factorial(n - l) * detail::factorial(n - k)) *
                       f_coeff(n - l, n - k, lambda * lambda);
  return {value, 0.0};
}

namespace detail {

/// Polynomial in normally ordered monomials a^dag^i a^j.
using NormalPoly = std::map<std::pair<int, int>, double>;

inline double binomial(int n, int k) {
  return factorial(n) / (factorial(k) * factorial(n - k));
}

/// (a^dag^i a^j)(a^dag^k a^l) = sum_s C(j,s) C(k,s) s! a^dag^{i+k-s} a^{j+l-s}.
inline NormalPoly multiply(const NormalPoly& lhs, const NormalPoly& rhs) {
  NormalPoly out;
  for (const auto& [lk, lc] : lhs) {
    for (const auto& [rk, rc] : rhs) {
      const auto [i, j] = lk;
      const auto [k, l] = rk;
      for (int s = 0; s <= std::min(j, k); ++s) {
        out[{i + k - s, j + l - s}] += lc * rc * binomial(j, s) * binomial(k, s) * factorial(s);
      }
    }
  }
  return out;
}

}  // namespace detail

inline constexpr int kMaxStateMomentOrder = 4;

/// <a^dag^l a^k> in the normalized state. S^dag a S = a cosh r - a^dag sinh r
/// turns the moment into vacuum-frame moments with (mu1, nu1).
inline Complex moment_state(int l, int k, const StateParams& p) {
  if (l < 0 || k < 0) throw InvalidArgument("moment_state: l, k must be non-negative");
  if (l + k > kMaxStateMomentOrder) {
    throw UnsupportedMoment("moment_state supports l + k <= 4, got l=" + std::to_string(l) +
                            ", k=" + std::to_string(k));
  }
  const double c = std::cosh(p.r());
  const double s = std::sinh(p.r());
  const detail::NormalPoly creation{{{1, 0}, c}, {{0, 1}, -s}};
  const detail::NormalPoly annihilation{{{0, 1}, c}, {{1, 0}, -s}};
  detail::NormalPoly poly{{{0, 0}, 1.0}};
  for (int i = 0; i < l; ++i) poly = detail::multiply(poly, creation);
  for (int i = 0; i < k; ++i) poly = detail::multiply(poly, annihilation);

  Complex sum{0.0, 0.0};
  for (const auto& [key, coeff] : poly) {
    if (coeff == 0.0) continue;
    sum += coeff * moment_vacuum(key.first, key.second, p.n(), p.mu1(), p.nu1());
  }
  return sum / p.norm_inv_sq();
}

}  // namespace hpssv
