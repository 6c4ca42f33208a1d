#pragma once

// Wigner function of the Hermite-excited squeezed vacuum after evolution in
// a phase-sensitive (squeezed thermal) reservoir with parameters (nbar, M),
// as a function of the dimensionless time kappa t:
//
//   W(alpha, t) = W_r(alpha, t) F_n(alpha, t)
//
// where W_r is the evolved squeezed vacuum and F_n the Hermite factor.

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "hpssv/detail/combinatorics.hpp"
#include "hpssv/errors.hpp"
#include "hpssv/quadrature.hpp"
#include "hpssv/specfun.hpp"
#include "hpssv/state.hpp"
#include "hpssv/wigner.hpp"

namespace hpssv {

inline constexpr double kPhysicalitySlack = 1e-12;
inline constexpr double kSingularDFloor = 1e-13;
inline constexpr double kEvolvedResidueTol = 1e-8;

struct ReservoirParams {
  double kappa_t = 0.0;
  double nbar = 0.0;
  Complex m{0.0, 0.0};

  void validate() const {
    if (!(kappa_t >= 0.0) || !(nbar >= 0.0)) {
      throw InvalidArgument("ReservoirParams: kappa_t and nbar must be non-negative");
    }
    if (std::norm(m) > nbar * (nbar + 1.0) + kPhysicalitySlack) {
      throw UnphysicalReservoir("|M|^2 = " + std::to_string(std::norm(m)) + " exceeds nbar(nbar+1) = " +
                                std::to_string(nbar * (nbar + 1.0)));
    }
  }

  /// mu_inf = 1 / sqrt((2 nbar + 1)^2 - 4 |M|^2)
  double mu_inf() const {
    const double w = 2.0 * nbar + 1.0;
    return 1.0 / std::sqrt(w * w - 4.0 * std::norm(m));
  }
};

/// The steady-state matrix sigma_inf = [[M^*, nbar + 1/2], [nbar + 1/2, M]].
struct SigmaInfinity {
  Complex entries[2][2];

  explicit SigmaInfinity(const ReservoirParams& res)
      : entries{{std::conj(res.m), Complex(res.nbar + 0.5, 0.0)}, {Complex(res.nbar + 0.5, 0.0), res.m}} {}

  /// (x, x^*) sigma (x, x^*)^T
  Complex quadratic_form(Complex x) const {
    const Complex v[2] = {x, std::conj(x)};
    Complex sum{0.0, 0.0};
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) sum += v[i] * entries[i][j] * v[j];
    }
    return sum;
  }
};

/// Intermediate quantities of the closed form at one phase-space point.
struct EvolvedWignerTerms {
  double t = 0.0;       // T = 1 - e^{-2 kappa t}
  double mu_inf = 0.0;
  double p = 0.0;
  double d = 0.0;       // D = R1^2 - |R3|^2
  double r1 = 0.0;
  Complex r2;
  Complex r3;
  double g1 = 0.0;
  Complex g2;
  Complex g3;
};

inline double critical_time(double nbar, Complex m) {
  const ReservoirParams res{0.0, nbar, m};
  res.validate();
  return 0.5 * std::log(res.mu_inf() + 1.0);
}

struct TimeBracket {
  double lower = 0.0;
  double upper = 0.0;
};

/// Bounds of the critical time over all admissible M at fixed nbar.
inline TimeBracket critical_time_bracket(double nbar) {
  return {0.5 * std::log((2.0 * nbar + 2.0) / (2.0 * nbar + 1.0)), 0.5 * std::log(2.0)};
}

class EvolvedWignerEvaluator {
 public:
  EvolvedWignerEvaluator(const StateParams& s, const ReservoirParams& res)
      : n_(s.n()), res_(res), cosh_r_(std::cosh(s.r())), sinh_r_(std::sinh(s.r())), nu1_(s.nu1()) {
    res_.validate();
    if (!(res.kappa_t > 0.0)) throw InvalidArgument("evolved Wigner needs kappa_t > 0; use wigner_point at t = 0");
    decay_ = std::exp(-res.kappa_t);
    t_ = 1.0 - decay_ * decay_;
    mu_inf_ = res.mu_inf();
    const double mi2 = mu_inf_ * mu_inf_;
    const double c2 = std::cosh(2.0 * s.r());
    const double s2 = std::sinh(2.0 * s.r());
    r1_ = (1.0 + 2.0 * res.nbar) * mi2 * decay_ * decay_ + t_ * c2;
    r3_ = 2.0 * mi2 * std::conj(res.m) * decay_ * decay_ + t_ * s2;
    d_ = r1_ * r1_ - std::norm(r3_);
    if (std::abs(d_) < kSingularDFloor) throw NearSingularD("D = " + std::to_string(d_));
    if (d_ < 0.0) throw NearSingularD("D = " + std::to_string(d_) + " is negative");
    const Complex r3c = std::conj(r3_);
    g1_ = 4.0 * nu1_ * nu1_ * (1.0 + t_ / d_ * (2.0 * r3_.real() * s2 - 2.0 * r1_ * c2));
    g2_ = (2.0 * s.mu1() * nu1_ - 1.0) + 2.0 * t_ * nu1_ * nu1_ / d_ * (2.0 * r1_ * s2 - (r3_ - r3c + (r3_ + r3c) * c2));

    polynomial_form_ = std::abs(g2_) < kSingularSwitch;
    if (!polynomial_form_) scale_ = 1.0 / (Complex(0.0, 2.0) * std::sqrt(g2_));
    weights_.resize(static_cast<std::size_t>(n_) + 1);
    const double nf = detail::factorial(n_);
    for (int l = 0; l <= n_; ++l) {
      const int m = n_ - l;
      const double base = nf * nf * detail::ipow(-g1_, l) /
                          (detail::factorial(l) * detail::factorial(m) * detail::factorial(m)) * s.norm_sq();
      weights_[l] = polynomial_form_ ? base : base * std::pow(std::abs(g2_), m);
    }
    gaussian_scale_ = mu_inf_ / (std::numbers::pi * std::sqrt(d_));
  }

  EvolvedWignerTerms terms(Complex alpha) const {
    EvolvedWignerTerms out;
    out.t = t_;
    out.mu_inf = mu_inf_;
    out.d = d_;
    out.r1 = r1_;
    out.r3 = r3_;
    out.g1 = g1_;
    out.g2 = g2_;
    const Complex ac = std::conj(alpha);
    const double mi2 = mu_inf_ * mu_inf_;
    out.p = (2.0 * mi2 / t_ * ((2.0 * res_.nbar + 1.0) * std::norm(alpha) + res_.m * ac * ac +
                               std::conj(res_.m) * alpha * alpha))
                .real();
    out.r2 = mi2 * ((1.0 + 2.0 * res_.nbar) * ac + 2.0 * alpha * std::conj(res_.m)) * decay_;
    const Complex r2c = std::conj(out.r2);
    out.g3 = 4.0 * nu1_ / d_ * r1_ * (r2c * sinh_r_ + out.r2 * cosh_r_) -
             4.0 * nu1_ / d_ * (r2c * r3_ * cosh_r_ + std::conj(r3_) * out.r2 * sinh_r_);
    return out;
  }

  WignerValue evaluate(Complex alpha) const {
    const EvolvedWignerTerms tm = terms(alpha);
    const Complex r2c = std::conj(tm.r2);
    const Complex quad = (2.0 * r1_ * tm.r2 * r2c - r3_ * r2c * r2c - tm.r2 * tm.r2 * std::conj(r3_)) / (t_ * d_);
    const Complex exponent = -tm.p + quad;
    const double gaussian = gaussian_scale_ * std::exp(exponent.real());

    Complex sum{0.0, 0.0};
    if (polynomial_form_) {
      for (int l = 0; l <= n_; ++l) {
        const Complex g = gaussian_derivative(n_ - l, tm.g3, g2_);
        sum += weights_[l] * g * std::conj(g);
      }
    } else {
      const Complex z = scale_ * tm.g3;
      Complex prev{1.0, 0.0};
      sum += weights_[n_] * prev * std::conj(prev);
      if (n_ >= 1) {
        Complex cur = 2.0 * z;
        sum += weights_[n_ - 1] * cur * std::conj(cur);
        for (int k = 1; k < n_; ++k) {
          const Complex next = 2.0 * z * cur - 2.0 * static_cast<double>(k) * prev;
          prev = cur;
          cur = next;
          sum += weights_[n_ - k - 1] * cur * std::conj(cur);
        }
        if (!detail::finite(cur)) throw OverflowError("Hermite recurrence overflowed");
      }
    }
    const Complex value = gaussian * std::exp(Complex(0.0, exponent.imag())) * sum;
    return {value.real(), std::abs(value.imag())};
  }

  double operator()(Complex alpha) const {
    const WignerValue w = evaluate(alpha);
    if (w.imag_residue > kEvolvedResidueTol) {
      throw FormulaResidue("evolved Wigner imaginary residue " + std::to_string(w.imag_residue));
    }
    return w.value;
  }
  double operator()(double q, double p) const { return (*this)(phase_point(q, p)); }

 private:
  int n_;
  ReservoirParams res_;
  double cosh_r_;
  double sinh_r_;
  double nu1_;
  double decay_ = 1.0;
  double t_ = 0.0;
  double mu_inf_ = 1.0;
  double r1_ = 0.0;
  Complex r3_;
  double d_ = 1.0;
  double g1_ = 0.0;
  Complex g2_;
  bool polynomial_form_ = false;
  Complex scale_;
  double gaussian_scale_ = 0.0;
  std::vector<double> weights_;
};

inline double evolved_wigner_point(const StateParams& s, const ReservoirParams& res, Complex alpha) {
  return EvolvedWignerEvaluator(s, res)(alpha);
}

inline EvolvedWignerTerms evolved_terms(const StateParams& s, const ReservoirParams& res, Complex alpha) {
  return EvolvedWignerEvaluator(s, res).terms(alpha);
}

inline WignerField evolved_wigner_grid(const StateParams& s, const ReservoirParams& res, const PhaseGrid& grid) {
  const EvolvedWignerEvaluator w(s, res);
  return sample_grid(grid, [&](double q, double p) { return w.evaluate(phase_point(q, p)); });
}

/// Window for the evolved state: the static window stretched by the
/// steady-state width sqrt(2 nbar + 1 + 2|M|).
inline double evolved_half_width(const StateParams& s, const ReservoirParams& res) {
  return default_half_width(s) * std::sqrt(2.0 * res.nbar + 1.0 + 2.0 * std::abs(res.m));
}

inline AbsIntegral evolved_negative_volume_integral(const StateParams& s, const ReservoirParams& res, double tol) {
  const EvolvedWignerEvaluator w(s, res);
  AdaptiveOptions opt;
  opt.tol = tol;
  opt.half_width = evolved_half_width(s, res);
  opt.initial_spacing = default_initial_spacing(s);
  return integrate_abs_adaptive([&](double q, double p) { return w(q, p); }, opt);
}

inline double evolved_negative_volume(const StateParams& s, const ReservoirParams& res, double tol) {
  return evolved_negative_volume_integral(s, res, tol).negative_volume();
}

}  // namespace hpssv
