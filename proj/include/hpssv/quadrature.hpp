#pragma once

// Adaptive composite-Simpson integration of |f(q, p)| over a symmetric
// square window. Used for the negative volume of static and evolved Wigner
// functions.
//
// Protocol: sample on a (N+1)^2 node grid, grow the window by `growth` until
// the outer band carries less than tol/10 of the absolute mass, then halve the
// spacing (reusing the old nodes) until two successive negative-volume
// estimates differ by less than tol.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "hpssv/detail/parallel.hpp"
#include "hpssv/detail/summation.hpp"
#include "hpssv/errors.hpp"

namespace hpssv {

struct AdaptiveOptions {
  double tol = 1e-4;
  double half_width = 5.0;
  double initial_spacing = 0.1;
  int max_halvings = 4;
  int max_window_growths = 8;
  double growth = 1.5;
  double ring_fraction = 0.1;
};

struct AbsIntegral {
  double integral = 0.0;
  double abs_integral = 0.0;
  double boundary_ring = 0.0;
  double half_width = 0.0;
  std::size_t intervals = 0;
  int halvings = 0;
  int window_growths = 0;

  /// delta = (int |f| - 1) / 2
  double negative_volume() const { return 0.5 * (abs_integral - 1.0); }
};

namespace detail {

/// Samples of f on the nodes of [-L, L]^2 with `intervals` (even) intervals per axis.
class SquareSamples {
 public:
  template <class Fn>
  SquareSamples(Fn& f, double half_width, std::size_t intervals)
      : half_width_(half_width), intervals_(intervals), values_((intervals + 1) * (intervals + 1)) {
    const std::size_t n = intervals_ + 1;
    parallel_for(n, [&](std::size_t row) {
      const double p = node(row);
      for (std::size_t col = 0; col < n; ++col) values_[row * n + col] = f(node(col), p);
    });
  }

  /// Same window, half the spacing; previous samples land on even indices.
  template <class Fn>
  SquareSamples refined(Fn& f) const {
    SquareSamples out(half_width_, 2 * intervals_);
    const std::size_t n_old = intervals_ + 1;
    const std::size_t n = out.intervals_ + 1;
    parallel_for(n, [&](std::size_t row) {
      const double p = out.node(row);
      for (std::size_t col = 0; col < n; ++col) {
        if (row % 2 == 0 && col % 2 == 0) {
          out.values_[row * n + col] = values_[(row / 2) * n_old + col / 2];
        } else {
          out.values_[row * n + col] = f(out.node(col), p);
        }
      }
    });
    return out;
  }

  double node(std::size_t i) const {
    return -half_width_ + 2.0 * half_width_ * static_cast<double>(i) / static_cast<double>(intervals_);
  }
  double spacing() const { return 2.0 * half_width_ / static_cast<double>(intervals_); }
  double half_width() const { return half_width_; }
  std::size_t intervals() const { return intervals_; }

  /// Simpson sums of f, |f| and of |f| restricted to the outer band.
  void integrate(AbsIntegral& out, double ring_fraction) const {
    const std::size_t n = intervals_ + 1;
    const double inner = (1.0 - ring_fraction) * half_width_;
    std::vector<double> row_plain(n), row_abs(n), row_ring(n);
    std::vector<double> plain(n), absv(n), ring(n);
    for (std::size_t row = 0; row < n; ++row) {
      const double wr = simpson_weight(row, intervals_);
      const bool row_outer = std::abs(node(row)) > inner;
      for (std::size_t col = 0; col < n; ++col) {
        const double w = wr * simpson_weight(col, intervals_);
        const double v = values_[row * n + col];
        row_plain[col] = w * v;
        row_abs[col] = w * std::abs(v);
        row_ring[col] = (row_outer || std::abs(node(col)) > inner) ? w * std::abs(v) : 0.0;
      }
      plain[row] = pairwise_sum(row_plain);
      absv[row] = pairwise_sum(row_abs);
      ring[row] = pairwise_sum(row_ring);
    }
    const double h = spacing();
    const double scale = h * h / 9.0;
    out.integral = scale * pairwise_sum(plain);
    out.abs_integral = scale * pairwise_sum(absv);
    out.boundary_ring = scale * pairwise_sum(ring);
    out.half_width = half_width_;
    out.intervals = intervals_;
  }

 private:
  SquareSamples(double half_width, std::size_t intervals)
      : half_width_(half_width), intervals_(intervals), values_((intervals + 1) * (intervals + 1)) {}

  double half_width_;
  std::size_t intervals_;
  std::vector<double> values_;
};

inline std::size_t even_intervals(double half_width, double spacing) {
  auto n = static_cast<std::size_t>(std::ceil(2.0 * half_width / spacing));
  if (n < 4) n = 4;
  return n + (n % 2);
}

}  // namespace detail

/// Integrates f(q, p) and |f(q, p)| per the adaptive protocol above.
template <class Fn>
AbsIntegral integrate_abs_adaptive(Fn&& f, const AdaptiveOptions& opt) {
  if (!(opt.tol > 0.0)) throw InvalidArgument("integrate_abs_adaptive: tol must be positive");
  if (!(opt.half_width > 0.0) || !(opt.initial_spacing > 0.0)) {
    throw InvalidArgument("integrate_abs_adaptive: window and spacing must be positive");
  }
  AbsIntegral result;
  double half_width = opt.half_width;
  detail::SquareSamples grid(f, half_width, detail::even_intervals(half_width, opt.initial_spacing));
  grid.integrate(result, opt.ring_fraction);
  while (result.boundary_ring >= opt.tol / 10.0) {
    if (result.window_growths == opt.max_window_growths) {
      throw NonConvergence("window still carries " + std::to_string(result.boundary_ring) +
                           " of |f| at its boundary after " + std::to_string(opt.max_window_growths) +
                           " growths");
    }
    half_width *= opt.growth;
    const int growths = result.window_growths + 1;
    grid = detail::SquareSamples(f, half_width, detail::even_intervals(half_width, opt.initial_spacing));
    grid.integrate(result, opt.ring_fraction);
    result.window_growths = growths;
  }

  double previous = result.negative_volume();
  for (int halving = 1; halving <= opt.max_halvings; ++halving) {
    grid = grid.refined(f);
    const int growths = result.window_growths;
    grid.integrate(result, opt.ring_fraction);
    result.window_growths = growths;
    result.halvings = halving;
    const double current = result.negative_volume();
    if (std::abs(current - previous) < opt.tol) return result;
    previous = current;
  }
  throw NonConvergence("negative volume not converged to " + std::to_string(opt.tol) + " after " +
                       std::to_string(opt.max_halvings) + " halvings");
}

}  // namespace hpssv
