#pragma once

// Analytic Wigner function of the Hermite-excited squeezed vacuum, its
// sampling on phase-space grids, and the negative volume
//   delta = (int dq dp |W| - 1) / 2.
//
// Normalization is int dq dp W = 1 with alpha = (q + i p) / sqrt(2).

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "hpssv/detail/combinatorics.hpp"
#include "hpssv/detail/parallel.hpp"
#include "hpssv/detail/summation.hpp"
#include "hpssv/errors.hpp"
#include "hpssv/quadrature.hpp"
#include "hpssv/specfun.hpp"
#include "hpssv/state.hpp"

namespace hpssv {

inline constexpr double kWignerResidueTol = 1e-9;
/// Below this |2 mu1 nu1 - 1| the expanded polynomial form is used.
inline constexpr double kSingularSwitch = 1e-8;

inline Complex phase_point(double q, double p) { return Complex(q, p) / std::numbers::sqrt2; }

struct WignerValue {
  double value = 0.0;
  double imag_residue = 0.0;
};

/// Precomputes the per-state constants of
///   W = N^2 e^{-2|ab|^2} / pi * sum_l (n!)^2 (-4 nu1^2)^l |s|^{n-l}
///       / (l! ((n-l)!)^2) |H_{n-l}(2 nu1 ab / (i sqrt s))|^2
/// with ab = alpha cosh r + alpha^* sinh r and s = 2 mu1 nu1 - 1.
///
/// |s|^{n-l} (not s^{n-l}) is what the generating function produces; the
/// two differ for s < 0 and only the former is normalized.
class WignerEvaluator {
 public:
  explicit WignerEvaluator(const StateParams& p)
      : n_(p.n()),
        nu1_(p.nu1()),
        cosh_r_(std::cosh(p.r())),
        sinh_r_(std::sinh(p.r())),
        s_(2.0 * p.mu1() * p.nu1() - 1.0),
        prefactor_(p.norm_sq() / std::numbers::pi),
        polynomial_form_(std::abs(s_) < kSingularSwitch) {
    weights_.resize(static_cast<std::size_t>(n_) + 1);
    const double nf = detail::factorial(n_);
    for (int l = 0; l <= n_; ++l) {
      const int m = n_ - l;
      const double base = nf * nf * detail::ipow(-4.0 * nu1_ * nu1_, l) /
                          (detail::factorial(l) * detail::factorial(m) * detail::factorial(m));
      // the |s|^m factor is folded in here for the Hermite route
      weights_[l] = polynomial_form_ ? base : base * std::pow(std::abs(s_), m);
    }
    if (!polynomial_form_) scale_ = Complex(0.0, -2.0 * nu1_) / std::sqrt(Complex(s_, 0.0));
  }

  WignerValue evaluate(Complex alpha) const {
    const Complex ab = alpha * cosh_r_ + std::conj(alpha) * sinh_r_;
    const double envelope = prefactor_ * std::exp(-2.0 * std::norm(ab));
    Complex sum{0.0, 0.0};
    if (polynomial_form_) {
      const Complex linear = 4.0 * nu1_ * ab;
      for (int l = 0; l <= n_; ++l) {
        const Complex g = gaussian_derivative(n_ - l, linear, s_);
        sum += weights_[l] * g * std::conj(g);
      }
    } else {
      // accumulate weight(m) |H_m|^2 while running the recurrence
      const Complex z = scale_ * ab;
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
    return {envelope * sum.real(), envelope * std::abs(sum.imag())};
  }

  double operator()(Complex alpha) const {
    const WignerValue w = evaluate(alpha);
    if (w.imag_residue > kWignerResidueTol) {
      throw FormulaResidue("Wigner imaginary residue " + std::to_string(w.imag_residue));
    }
    return w.value;
  }
  double operator()(double q, double p) const { return (*this)(phase_point(q, p)); }

  bool uses_polynomial_form() const { return polynomial_form_; }

 private:
  int n_;
  double nu1_;
  double cosh_r_;
  double sinh_r_;
  double s_;
  double prefactor_;
  bool polynomial_form_;
  Complex scale_{0.0, 0.0};
  std::vector<double> weights_;
};

inline double wigner_point(const StateParams& p, Complex alpha) { return WignerEvaluator(p)(alpha); }

/// Rectangular grid of phase-space nodes; node counts are odd so the grid
/// supports composite Simpson integration.
struct PhaseGrid {
  double q_min = -5.0;
  double q_max = 5.0;
  double p_min = -5.0;
  double p_max = 5.0;
  int nq = 101;
  int np = 101;

  static PhaseGrid symmetric(double half_width, int count) {
    return {-half_width, half_width, -half_width, half_width, count, count};
  }

  void validate() const {
    if (nq < 3 || np < 3 || nq % 2 == 0 || np % 2 == 0) {
      throw InvalidArgument("PhaseGrid: node counts must be odd and >= 3");
    }
    if (!(q_max > q_min) || !(p_max > p_min)) throw InvalidArgument("PhaseGrid: empty window");
  }
  double q(int i) const { return q_min + (q_max - q_min) * i / (nq - 1); }
  double p(int j) const { return p_min + (p_max - p_min) * j / (np - 1); }
  double dq() const { return (q_max - q_min) / (nq - 1); }
  double dp() const { return (p_max - p_min) / (np - 1); }
};

/// Real Wigner samples on a PhaseGrid, stored p-major: samples[j * nq + i].
struct WignerField {
  PhaseGrid grid;
  std::vector<double> samples;
  double max_imag_residue = 0.0;

  double at(int i, int j) const { return samples[static_cast<std::size_t>(j) * grid.nq + i]; }

  /// Simpson integral over the grid window.
  double integral() const {
    std::vector<double> rows(grid.np), terms(grid.nq);
    for (int j = 0; j < grid.np; ++j) {
      for (int i = 0; i < grid.nq; ++i) {
        terms[i] = detail::simpson_weight(i, grid.nq - 1) * at(i, j);
      }
      rows[j] = detail::simpson_weight(j, grid.np - 1) * detail::pairwise_sum(terms);
    }
    return detail::pairwise_sum(rows) * grid.dq() * grid.dp() / 9.0;
  }

  double min_value() const { return *std::min_element(samples.begin(), samples.end()); }
};

/// Evaluates any (q, p) -> WignerValue function over a grid.
template <class Fn>
WignerField sample_grid(const PhaseGrid& grid, Fn&& fn) {
  grid.validate();
  WignerField field{grid, std::vector<double>(static_cast<std::size_t>(grid.nq) * grid.np), 0.0};
  std::vector<double> residues(grid.np, 0.0);
  detail::parallel_for(static_cast<std::size_t>(grid.np), [&](std::size_t j) {
    double worst = 0.0;
    for (int i = 0; i < grid.nq; ++i) {
      const WignerValue w = fn(grid.q(i), grid.p(static_cast<int>(j)));
      field.samples[j * grid.nq + i] = w.value;
      worst = std::max(worst, w.imag_residue);
    }
    residues[j] = worst;
  });
  field.max_imag_residue = *std::max_element(residues.begin(), residues.end());
  return field;
}

inline WignerField wigner_grid(const StateParams& p, const PhaseGrid& grid) {
  const WignerEvaluator w(p);
  return sample_grid(grid, [&](double q, double pv) { return w.evaluate(phase_point(q, pv)); });
}

/// Default window half-width 5 max(1, e^|r|) sqrt(n + 1).
inline double default_half_width(const StateParams& p) {
  return 5.0 * std::max(1.0, std::exp(std::abs(p.r()))) * std::sqrt(p.n() + 1.0);
}

/// Initial Simpson spacing, refined by the adaptive protocol.
inline double default_initial_spacing(const StateParams& p) {
  return 0.2 * std::exp(-std::abs(p.r())) / std::sqrt(p.n() + 1.0);
}

inline AbsIntegral negative_volume_integral(const StateParams& p, double tol) {
  AdaptiveOptions opt;
  opt.tol = tol;
  opt.half_width = default_half_width(p);
  opt.initial_spacing = default_initial_spacing(p);
  const WignerEvaluator w(p);
  return integrate_abs_adaptive([&](double q, double pv) { return w(q, pv); }, opt);
}

/// delta = (int |W| dq dp - 1) / 2 by adaptive Simpson quadrature.
inline double negative_volume(const StateParams& p, double tol) { return negative_volume_integral(p, tol).negative_volume(); }

struct DeltaOptimum {
  double nu_opt = 0.0;
  double delta_opt = 0.0;
};

/// Grid scan of delta over nu in [0, 1] with mu = sqrt(1 - nu^2); the first
/// maximum wins ties. Points where the state does not exist (N^{-2} = 0,
/// e.g. odd n at nu = 0, r = 0) are skipped.
inline DeltaOptimum optimize_delta(int n, double r, int nu_samples, double tol = 1e-4) {
  if (nu_samples < 10) throw InvalidArgument("optimize_delta: nu_samples must be >= 10");
  std::vector<std::optional<double>> deltas(static_cast<std::size_t>(nu_samples));
  for (int i = 0; i < nu_samples; ++i) {
    const double nu = static_cast<double>(i) / (nu_samples - 1);
    const double mu = std::sqrt(std::max(0.0, 1.0 - nu * nu));
    try {
      deltas[i] = negative_volume(StateParams(n, mu, nu, r), tol);
    } catch (const NonPositiveNorm&) {
      deltas[i] = std::nullopt;
    }
  }
  std::optional<DeltaOptimum> best;
  for (int i = 0; i < nu_samples; ++i) {
    if (!deltas[i]) continue;
    if (!best || *deltas[i] > best->delta_opt) {
      best = DeltaOptimum{static_cast<double>(i) / (nu_samples - 1), *deltas[i]};
    }
  }
  if (!best) throw NonPositiveNorm("optimize_delta: no valid state on the scan");
  return *best;
}

}  // namespace hpssv
