#pragma once

// Brute-force reference in a truncated Fock basis: the state vector, ladder
// moments, photon-number and quadrature distributions, the Wigner function
// by the displaced-parity sum, and RK4 integration of the master equation.
// Shares no formulas with the closed-form modules beyond StateParams.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "hpssv/detail/combinatorics.hpp"
#include "hpssv/errors.hpp"
#include "hpssv/reservoir.hpp"
#include "hpssv/specfun.hpp"
#include "hpssv/state.hpp"

namespace hpssv::oracle {

using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kTailMassTol = 1e-10;
inline constexpr int kTailWindow = 10;
inline constexpr double kGateTol = 1e-9;

struct FockState {
  Vector amplitudes;      // normalized, indices 0..cutoff
  int cutoff = 0;
  double raw_norm_sq = 0.0;  // <psi|psi> before normalization

  double tail_mass() const {
    const int from = std::max(0, cutoff - kTailWindow + 1);
    return amplitudes.segment(from, cutoff - from + 1).squaredNorm();
  }
};

namespace detail {

/// a v with the basis truncated at v.size() - 1.
inline Vector lower(const Vector& v) {
  Vector out = Vector::Zero(v.size());
  for (Eigen::Index m = 0; m + 1 < v.size(); ++m) out[m] = std::sqrt(static_cast<double>(m + 1)) * v[m + 1];
  return out;
}

/// a^dag v with the basis truncated at v.size() - 1.
inline Vector raise(const Vector& v) {
  Vector out = Vector::Zero(v.size());
  for (Eigen::Index m = 1; m < v.size(); ++m) out[m] = std::sqrt(static_cast<double>(m)) * v[m - 1];
  return out;
}

/// S(r)|0> on 0..size-1:
///   c_{2m+2} = c_{2m} (-tanh r / 2) sqrt((2m+1)(2m+2)) / (m+1), c_0 = sech^{1/2} r.
inline Vector squeezed_vacuum(double r, Eigen::Index size) {
  Vector c = Vector::Zero(size);
  c[0] = 1.0 / std::sqrt(std::cosh(r));
  const double t = std::tanh(r);
  for (Eigen::Index m = 0; 2 * m + 2 < size; ++m) {
    const double k = static_cast<double>(m);
    c[2 * m + 2] = c[2 * m] * (-0.5 * t) * std::sqrt((2.0 * k + 1.0) * (2.0 * k + 2.0)) / (k + 1.0);
  }
  return c;
}

}  // namespace detail

/// H_n(mu a + nu a^dag) S(r)|0> on 0..cutoff. Built on cutoff + n levels so
/// that the n ladder applications leave levels 0..cutoff exact.
inline FockState build_state(const StateParams& p, int cutoff) {
  const int n = p.n();
  if (cutoff < 2 * n + 20) {
    throw InvalidArgument("build_state: cutoff " + std::to_string(cutoff) + " < 2n + 20");
  }
  const Eigen::Index work = cutoff + n + 1;
  const Vector v0 = detail::squeezed_vacuum(p.r(), work);
  auto apply_o = [&](const Vector& v) -> Vector { return p.mu() * detail::lower(v) + p.nu() * detail::raise(v); };

  Vector prev = v0;
  Vector cur = v0;
  if (n >= 1) {
    cur = 2.0 * apply_o(v0);
    for (int k = 1; k < n; ++k) {
      Vector next = 2.0 * apply_o(cur) - 2.0 * static_cast<double>(k) * prev;
      prev = std::move(cur);
      cur = std::move(next);
    }
  }
  FockState out;
  out.cutoff = cutoff;
  out.amplitudes = cur.head(cutoff + 1);
  out.raw_norm_sq = out.amplitudes.squaredNorm();
  if (!(out.raw_norm_sq > 0.0) || !std::isfinite(out.raw_norm_sq)) {
    throw NonPositiveNorm("oracle state has norm^2 " + std::to_string(out.raw_norm_sq));
  }
  out.amplitudes /= std::sqrt(out.raw_norm_sq);
  if (out.tail_mass() > kTailMassTol) {
    throw CutoffTooSmall("tail mass " + std::to_string(out.tail_mass()) + " above level " +
                         std::to_string(cutoff - kTailWindow) + " at cutoff " + std::to_string(cutoff));
  }
  return out;
}

/// Evaluates quantity(cutoff) and quantity(2 cutoff) and admits the first
/// only when they agree to kGateTol (relative, absolute floor 1).
template <class Fn>
auto cutoff_gate(Fn&& quantity, int cutoff, double tol = kGateTol) {
  const auto base = quantity(cutoff);
  const auto doubled = quantity(2 * cutoff);
  using std::abs;
  const double change = abs(doubled - base);
  const double scale = std::max(1.0, static_cast<double>(abs(base)));
  if (change > tol * scale) {
    throw CutoffTooSmall("doubling cutoff " + std::to_string(cutoff) + " moved the value by " +
                         std::to_string(change));
  }
  return base;
}

inline constexpr double kStrictTailMass = 1e-22;

/// Smallest cutoff of the form start * 2^k whose norm^2 survives the doubling
/// gate and whose tail mass is below `tail_tol`. The default keeps truncated
/// amplitudes near 1e-11, so pointwise quantities (not just the norm) are
/// converged well below the comparison tolerances.
inline int adequate_cutoff(const StateParams& p, int start = 80, double tail_tol = kStrictTailMass,
                           int max_cutoff = 1280) {
  for (int cutoff = std::max(start, 2 * p.n() + 20); cutoff <= max_cutoff; cutoff *= 2) {
    try {
      cutoff_gate([&](int c) { return build_state(p, c).raw_norm_sq; }, cutoff);
      if (build_state(p, cutoff).tail_mass() < tail_tol) return cutoff;
    } catch (const CutoffTooSmall&) {
    }
  }
  throw CutoffTooSmall("no adequate cutoff up to " + std::to_string(max_cutoff));
}

/// <a^dag^l a^k> = sum_m conj(c_{m+l-k})... written as <a^l psi | a^k psi>.
inline Complex oracle_moment(const FockState& s, int l, int k) {
  if (l < 0 || k < 0) throw InvalidArgument("oracle_moment: l, k must be non-negative");
  if (2 * (l + k) > s.cutoff) throw InvalidArgument("oracle_moment: l + k exceeds cutoff / 2");
  Vector left = s.amplitudes;
  Vector right = s.amplitudes;
  for (int i = 0; i < l; ++i) left = detail::lower(left);
  for (int i = 0; i < k; ++i) right = detail::lower(right);
  return left.dot(right);  // Eigen's dot conjugates the first argument
}

inline std::vector<double> oracle_pnd(const FockState& s, int m_max) {
  std::vector<double> out(static_cast<std::size_t>(m_max) + 1, 0.0);
  for (int m = 0; m <= std::min(m_max, s.cutoff); ++m) out[m] = std::norm(s.amplitudes[m]);
  return out;
}

/// |<p|psi>|^2 with <p|m> = (-i)^m h_m(p), h_m the normalized Hermite functions.
inline double oracle_quadrature(const FockState& s, double p) {
  double h_prev = 0.0;
  double h = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * p * p);
  Complex phase{1.0, 0.0};
  Complex psi{0.0, 0.0};
  for (int m = 0; m <= s.cutoff; ++m) {
    psi += phase * h * s.amplitudes[m];
    const double next = std::sqrt(2.0 / (m + 1.0)) * p * h - std::sqrt(m / (m + 1.0)) * h_prev;
    h_prev = h;
    h = next;
    phase *= Complex(0.0, -1.0);
  }
  return std::norm(psi);
}

/// Displacement matrix <m|D(beta)|k> for m < rows, k < cols (rows >= cols) by
/// the normalized Laguerre recurrence along each diagonal, seeded in log space.
inline Matrix displacement(Complex beta, int rows, int cols) {
  if (rows < cols || cols < 1) throw InvalidArgument("displacement: need rows >= cols >= 1");
  Matrix d = Matrix::Zero(rows, cols);
  const double x = std::norm(beta);
  const double log_abs = x > 0.0 ? 0.5 * std::log(x) : 0.0;
  const double arg = std::arg(beta);
  for (int k = 0; k < rows; ++k) {
    // l_j = sqrt(j!/(j+k)!) L_j^{(k)}(x); pref carries beta^k e^{-x/2} and the 1/sqrt(k!) of l_0
    Complex pref;
    if (x == 0.0) {
      pref = k == 0 ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
    } else {
      pref = std::polar(std::exp(k * log_abs - 0.5 * hpssv::detail::log_factorial(k) - 0.5 * x), k * arg);
    }
    double l_prev = 0.0;
    double l_cur = 1.0;
    for (int j = 0; j < cols && j + k < rows; ++j) {
      const Complex lower_value = pref * l_cur;
      d(j + k, j) = lower_value;
      // <j|D|j+k> = (-1)^k conj(<j+k|D|j>)
      if (k > 0 && j + k < cols) d(j, j + k) = (k % 2 == 0 ? 1.0 : -1.0) * std::conj(lower_value);
      const double jd = j;
      const double kd = k;
      const double next = ((2.0 * jd + 1.0 + kd - x) * l_cur - std::sqrt(jd * (jd + kd)) * l_prev) /
                          std::sqrt((jd + 1.0) * (jd + kd + 1.0));
      l_prev = l_cur;
      l_cur = next;
    }
  }
  return d;
}

inline Matrix displacement(Complex beta, int cutoff) { return displacement(beta, cutoff + 1, cutoff + 1); }

/// Output levels needed so that D(beta) applied to states on 0..cutoff loses
/// no weight: the displaced support extends to about (sqrt(cutoff) + |beta|)^2.
inline int displaced_rows(int cutoff, Complex beta) {
  const double reach = std::sqrt(static_cast<double>(cutoff) + 1.0) + std::abs(beta);
  return cutoff + 1 + static_cast<int>(std::ceil(reach * reach - cutoff + 12.0 * reach + 20.0));
}

inline double parity_sum(const Vector& diagonal) {
  double sum = 0.0;
  for (Eigen::Index k = 0; k < diagonal.size(); ++k) sum += (k % 2 == 0 ? 1.0 : -1.0) * diagonal[k].real();
  return sum;
}

/// Density matrix with its validity checks.
class FockDensity {
 public:
  explicit FockDensity(Matrix rho) : rho_(std::move(rho)) {
    if (rho_.rows() != rho_.cols() || rho_.rows() < 1) throw InvalidArgument("FockDensity: matrix must be square");
  }

  static FockDensity pure(const FockState& s) { return FockDensity(s.amplitudes * s.amplitudes.adjoint()); }

  int cutoff() const { return static_cast<int>(rho_.rows()) - 1; }
  const Matrix& matrix() const { return rho_; }
  Complex trace() const { return rho_.trace(); }
  double hermiticity_error() const { return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff(); }
  double min_eigenvalue() const {
    const Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho_ + rho_.adjoint()), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
  }

  void validate() const {
    if (hermiticity_error() > 1e-12) {
      throw InvalidArgument("FockDensity: not Hermitian (" + std::to_string(hermiticity_error()) + ")");
    }
    if (std::abs(trace() - 1.0) > 1e-8) throw InvalidArgument("FockDensity: trace is not 1");
    if (min_eigenvalue() < -1e-8) throw InvalidArgument("FockDensity: negative eigenvalue");
  }

  double tail_mass() const {
    double sum = 0.0;
    for (int k = std::max(0, cutoff() - kTailWindow + 1); k <= cutoff(); ++k) sum += rho_(k, k).real();
    return sum;
  }

 private:
  Matrix rho_;
};

/// W(alpha) = (1/pi) sum_k (-1)^k <k|D(-alpha) rho D(alpha)|k>, normalized to
/// int dq dp W = 1 with alpha = (q + i p)/sqrt 2. Evaluated element-wise via
/// W[|m><n|](alpha) = (1/pi) (-1)^n <m|D(2 alpha^*)|n>, which is exact for
/// every retained matrix element.
inline double oracle_wigner(const FockDensity& rho, Complex alpha) {
  if (rho.tail_mass() > kTailMassTol) throw CutoffTooSmall("density tail mass " + std::to_string(rho.tail_mass()));
  const int size = rho.cutoff() + 1;
  const Matrix kernel = displacement(2.0 * std::conj(alpha), size, size);
  Complex sum{0.0, 0.0};
  for (int n = 0; n < size; ++n) {
    const double sign = n % 2 == 0 ? 1.0 : -1.0;
    sum += sign * rho.matrix().col(n).cwiseProduct(kernel.col(n)).sum();
  }
  return sum.real() / std::numbers::pi;
}

/// Pure-state route through the displaced vector D(-alpha)|psi> on an
/// extended basis; independent of the element-wise kernel above.
inline double oracle_wigner(const FockState& s, Complex alpha) {
  const Vector shifted = displacement(-alpha, displaced_rows(s.cutoff, -alpha), s.cutoff + 1) * s.amplitudes;
  return parity_sum(shifted.cwiseAbs2().cast<Complex>()) / std::numbers::pi;
}

struct Evolution {
  FockDensity rho;
  double max_trace_drift = 0.0;
  int renormalizations = 0;
};

namespace detail {

/// Right-hand side of the master equation with truncated ladder matrices,
/// applied through index shifts:
///   nbar (2 a^dag rho a - a a^dag rho - rho a a^dag)
///   + (nbar+1)(2 a rho a^dag - a^dag a rho - rho a^dag a)
///   + M (2 a^dag rho a^dag - a^dag^2 rho - rho a^dag^2)
///   + M^* (2 a rho a - a^2 rho - rho a^2).
inline void master_rhs(const Matrix& rho, const ReservoirParams& res, Matrix& out) {
  const int dim = static_cast<int>(rho.rows());
  const int top = dim - 1;
  std::vector<double> sq(dim + 2);
  for (int i = 0; i < dim + 2; ++i) sq[i] = std::sqrt(static_cast<double>(i));
  const double nb = res.nbar;
  const Complex m = res.m;
  const Complex mc = std::conj(res.m);
  auto at = [&](int i, int j) -> Complex { return (i >= 0 && j >= 0 && i < dim && j < dim) ? rho(i, j) : Complex{}; };
  // diagonal of a a^dag in the truncated basis: i + 1, except 0 at the top level
  auto aad = [&](int i) { return i < top ? static_cast<double>(i + 1) : 0.0; };

  for (int j = 0; j < dim; ++j) {
    for (int i = 0; i < dim; ++i) {
      const Complex r = rho(i, j);
      Complex v = nb * (2.0 * sq[i] * sq[j] * at(i - 1, j - 1) - (aad(i) + aad(j)) * r);
      if (i < top && j < top) v += (nb + 1.0) * 2.0 * sq[i + 1] * sq[j + 1] * at(i + 1, j + 1);
      v -= (nb + 1.0) * static_cast<double>(i + j) * r;

      Complex d{};
      if (i >= 1 && j < top) d += 2.0 * sq[i] * sq[j + 1] * at(i - 1, j + 1);
      if (i >= 2) d -= sq[i] * sq[i - 1] * at(i - 2, j);
      if (j + 2 <= top) d -= sq[j + 1] * sq[j + 2] * at(i, j + 2);
      v += m * d;

      Complex e{};
      if (i < top && j >= 1) e += 2.0 * sq[i + 1] * sq[j] * at(i + 1, j - 1);
      if (i + 2 <= top) e -= sq[i + 1] * sq[i + 2] * at(i + 2, j);
      if (j >= 2) e -= sq[j] * sq[j - 1] * at(i, j - 2);
      v += mc * e;
      out(i, j) = v;
    }
  }
}

}  // namespace detail

inline constexpr double kMaxStep = 1e-4;
inline constexpr double kRenormalizeDrift = 1e-10;
inline constexpr double kMaxTraceDrift = 1e-6;

/// Fixed-step RK4 in kappa t from 0 to res.kappa_t.
inline Evolution evolve_master_equation(const FockDensity& rho0, const ReservoirParams& res, int steps) {
  res.validate();
  if (steps < 0) throw InvalidArgument("evolve_master_equation: steps must be non-negative");
  if (steps == 0) {
    if (res.kappa_t != 0.0) throw InvalidArgument("evolve_master_equation: zero steps for kappa_t > 0");
    return {rho0, 0.0, 0};
  }
  const double h = res.kappa_t / steps;
  if (h > kMaxStep * (1.0 + 1e-12)) {
    throw InvalidArgument("evolve_master_equation: step " + std::to_string(h) + " exceeds 1e-4");
  }
  Matrix rho = rho0.matrix();
  const Eigen::Index dim = rho.rows();
  Matrix k1(dim, dim), k2(dim, dim), k3(dim, dim), k4(dim, dim), tmp(dim, dim);
  Evolution out{rho0, 0.0, 0};
  for (int step = 0; step < steps; ++step) {
    detail::master_rhs(rho, res, k1);
    tmp = rho + 0.5 * h * k1;
    detail::master_rhs(tmp, res, k2);
    tmp = rho + 0.5 * h * k2;
    detail::master_rhs(tmp, res, k3);
    tmp = rho + h * k3;
    detail::master_rhs(tmp, res, k4);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    const double drift = std::abs(rho.trace() - 1.0);
    out.max_trace_drift = std::max(out.max_trace_drift, drift);
    if (drift > kMaxTraceDrift) {
      throw TraceDrift("trace drift " + std::to_string(drift) + " at step " + std::to_string(step + 1));
    }
    if (drift > kRenormalizeDrift) {
      rho /= rho.trace();
      ++out.renormalizations;
    }
  }
  out.rho = FockDensity(std::move(rho));
  return out;
}

/// Steps for a given kappa t at the largest admissible step.
inline int steps_for(double kappa_t) { return std::max(1, static_cast<int>(std::ceil(kappa_t / kMaxStep - 1e-9))); }

}  // namespace hpssv::oracle
