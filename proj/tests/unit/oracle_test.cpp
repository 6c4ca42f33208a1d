#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <optional>
#include <random>

#include "hpssv/oracle.hpp"
#include "hpssv/reservoir.hpp"
#include "hpssv/wigner.hpp"

using hpssv::Complex;
using hpssv::ReservoirParams;
using hpssv::StateParams;
namespace oracle = hpssv::oracle;

namespace {

oracle::FockState basis_state(int k, int cutoff) {
  oracle::FockState s;
  s.cutoff = cutoff;
  s.amplitudes = oracle::Vector::Zero(cutoff + 1);
  s.amplitudes[k] = 1.0;
  s.raw_norm_sq = 1.0;
  return s;
}

std::optional<StateParams> random_state(std::mt19937_64& rng, int n_max, double w_max, double r_max) {
  std::uniform_int_distribution<int> order(0, n_max);
  std::uniform_real_distribution<double> w(-w_max, w_max);
  std::uniform_real_distribution<double> sq(-r_max, r_max);
  try {
    return StateParams(order(rng), w(rng), w(rng), sq(rng));
  } catch (const hpssv::NonPositiveNorm&) {
    return std::nullopt;
  }
}

}  // namespace

TEST(BuildState, TrivialStates) {
  const auto vac = oracle::build_state(StateParams(0, 1.0, 0.0, 0.0), 30);
  EXPECT_EQ(vac.amplitudes[0], Complex(1.0, 0.0));
  EXPECT_EQ(vac.amplitudes.tail(30).norm(), 0.0);

  const auto one = oracle::build_state(StateParams(1, 0.0, 1.0, 0.0), 30);
  EXPECT_NEAR(std::abs(one.amplitudes[1] - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(one.raw_norm_sq, 4.0, 1e-15);
}

TEST(BuildState, NormMatchesClosedForm) {
  std::mt19937_64 rng(31);
  int draws = 0;
  while (draws < 50) {
    const auto p = random_state(rng, 5, 2.0, 0.8);
    if (!p) continue;
    const auto s = oracle::build_state(*p, oracle::adequate_cutoff(*p));
    EXPECT_LE(std::abs(s.raw_norm_sq / p->norm_inv_sq() - 1.0), 1e-8);
    EXPECT_LE(std::abs(s.amplitudes.squaredNorm() - 1.0), 1e-12);
    ++draws;
  }
}

TEST(BuildState, SqueezeCommutesThroughHermite) {
  // H_n(mu a + nu a^dag) S|0> and S H_n(mu1 a + nu1 a^dag)|0> have the same norm
  std::mt19937_64 rng(32);
  int draws = 0;
  while (draws < 30) {
    const auto p = random_state(rng, 5, 2.0, 0.8);
    if (!p) continue;
    const auto squeezed = oracle::build_state(*p, oracle::adequate_cutoff(*p));
    const auto direct = oracle::build_state(StateParams(p->n(), p->mu1(), p->nu1(), 0.0), 40);
    EXPECT_LE(std::abs(squeezed.raw_norm_sq - direct.raw_norm_sq), 1e-10 * direct.raw_norm_sq);
    ++draws;
  }
}

TEST(BuildState, CutoffChecks) {
  EXPECT_THROW(oracle::build_state(StateParams(3, 1.0, 1.0, 0.2), 25), hpssv::InvalidArgument);
  EXPECT_THROW(oracle::build_state(StateParams(0, 1.0, 0.0, 1.5), 40), hpssv::CutoffTooSmall);
  EXPECT_EQ(oracle::adequate_cutoff(StateParams(2, 1.0, 1.0, 0.3)), 80);
  EXPECT_GT(oracle::adequate_cutoff(StateParams(4, 2.0, 2.0, 0.9)), 80);
}

TEST(OracleMoment, Examples) {
  EXPECT_EQ(oracle::oracle_moment(basis_state(0, 20), 1, 1), Complex(0.0, 0.0));
  EXPECT_EQ(oracle::oracle_moment(basis_state(1, 20), 1, 1), Complex(1.0, 0.0));
  const auto sv = oracle::build_state(StateParams(0, 1.0, 0.0, 0.3), 60);
  EXPECT_NEAR(oracle::oracle_moment(sv, 1, 1).real(), std::sinh(0.3) * std::sinh(0.3), 1e-13);
}

TEST(OracleQuadrature, NormalizedAndMatchesFockOne) {
  const auto one = basis_state(1, 20);
  for (double p : {-1.3, 0.0, 0.4, 2.2}) {
    // |<p|1>|^2 = 2 p^2 e^{-p^2} / sqrt(pi)
    EXPECT_NEAR(oracle::oracle_quadrature(one, p), 2.0 * p * p * std::exp(-p * p) / std::sqrt(std::numbers::pi), 1e-15);
  }
}

TEST(Displacement, UnitaryAndCoherent) {
  const Complex beta(0.7, -0.4);
  const auto d = oracle::displacement(beta, 60);
  // D(beta)|0> is the coherent state
  for (int m = 0; m < 10; ++m) {
    const Complex expected =
        std::exp(-0.5 * std::norm(beta)) * std::pow(beta, m) / std::sqrt(hpssv::detail::factorial(m));
    EXPECT_LE(std::abs(d(m, 0) - expected), 1e-14);
  }
  const auto id = (d.adjoint() * d).topLeftCorner(30, 30);
  EXPECT_LE((id - oracle::Matrix::Identity(30, 30)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(OracleWigner, CenterValues) {
  const auto vac = oracle::FockDensity::pure(basis_state(0, 20));
  const auto one = oracle::FockDensity::pure(basis_state(1, 20));
  EXPECT_NEAR(oracle::oracle_wigner(vac, Complex(0.0, 0.0)), 1.0 / std::numbers::pi, 1e-15);
  EXPECT_NEAR(oracle::oracle_wigner(one, Complex(0.0, 0.0)), -1.0 / std::numbers::pi, 1e-15);
}

TEST(OracleWigner, FirstMomentFixesPhaseConvention) {
  // (|0> + |1>)/sqrt2 has <a> = 1/2; int W alpha dq dp must reproduce it
  oracle::FockState s = basis_state(0, 20);
  s.amplitudes[0] = s.amplitudes[1] = 1.0 / std::numbers::sqrt2;
  const int nodes = 161;
  const double half = 6.0;
  const double h = 2.0 * half / (nodes - 1);
  Complex sum{0.0, 0.0};
  for (int j = 0; j < nodes; ++j) {
    for (int i = 0; i < nodes; ++i) {
      const Complex alpha = hpssv::phase_point(-half + i * h, -half + j * h);
      sum += oracle::oracle_wigner(s, alpha) * alpha;
    }
  }
  sum *= h * h;
  EXPECT_NEAR(sum.real(), 0.5, 1e-8);
  EXPECT_NEAR(sum.imag(), 0.0, 1e-8);
}

TEST(OracleWigner, PureShortcutMatchesDensity) {
  const StateParams p(2, 1.0, 1.0, 0.3);
  const auto s = oracle::build_state(p, 80);
  const auto rho = oracle::FockDensity::pure(s);
  for (Complex alpha : {Complex(0.5, 0.0), Complex(-0.3, 1.1), Complex(1.7, 0.2)}) {
    EXPECT_NEAR(oracle::oracle_wigner(s, alpha), oracle::oracle_wigner(rho, alpha), 1e-13);
  }
}

TEST(OracleWigner, MatchesClosedFormExample) {
  const StateParams p(2, 1.0, 1.0, 0.3);
  const auto s = oracle::build_state(p, 80);
  const Complex alpha(0.5, 0.0);
  const double value = oracle::cutoff_gate(
      [&](int c) { return oracle::oracle_wigner(oracle::build_state(p, c), alpha); }, 80);
  EXPECT_NEAR(value, oracle::oracle_wigner(s, alpha), 0.0);
  EXPECT_NEAR(hpssv::wigner_point(p, alpha), value, 1e-8);
}

TEST(FockDensity, Validation) {
  oracle::Matrix m = oracle::Matrix::Zero(3, 3);
  m(0, 0) = 0.5;
  m(1, 1) = 0.5;
  EXPECT_NO_THROW(oracle::FockDensity(m).validate());
  m(0, 1) = 0.1;
  EXPECT_THROW(oracle::FockDensity(m).validate(), hpssv::InvalidArgument);
  m(1, 0) = 0.1;
  EXPECT_NO_THROW(oracle::FockDensity(m).validate());
  m(0, 0) = 1.2;
  m(1, 1) = -0.2;
  EXPECT_THROW(oracle::FockDensity(m).validate(), hpssv::InvalidArgument);
}

TEST(MasterEquation, ZeroTimeIsIdentity) {
  const auto rho = oracle::FockDensity::pure(oracle::build_state(StateParams(1, 1.0, 1.0, 0.3), 40));
  const auto out = oracle::evolve_master_equation(rho, ReservoirParams{0.0, 1.0, 0.1}, 0);
  EXPECT_EQ((out.rho.matrix() - rho.matrix()).cwiseAbs().maxCoeff(), 0.0);
}

TEST(MasterEquation, PureLossSinglePhoton) {
  const auto rho = oracle::FockDensity::pure(basis_state(1, 20));
  for (double kt : {0.01, 0.1, 0.5}) {
    const auto out = oracle::evolve_master_equation(rho, ReservoirParams{kt, 0.0, 0.0}, oracle::steps_for(kt));
    EXPECT_NEAR(out.rho.matrix()(1, 1).real(), std::exp(-2.0 * kt), 1e-12);
    EXPECT_NEAR(out.rho.matrix()(0, 0).real(), 1.0 - std::exp(-2.0 * kt), 1e-12);
  }
}

TEST(MasterEquation, RejectsLargeStepsAndUnphysicalBath) {
  const auto rho = oracle::FockDensity::pure(basis_state(1, 20));
  EXPECT_THROW(oracle::evolve_master_equation(rho, ReservoirParams{0.1, 0.0, 0.0}, 10), hpssv::InvalidArgument);
  EXPECT_THROW(oracle::evolve_master_equation(rho, ReservoirParams{0.01, 0.5, 1.0}, 100), hpssv::UnphysicalReservoir);
}

TEST(MasterEquation, PreservesTraceAndHermiticity) {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int cases = 0;
  while (cases < 100) {
    const auto p = random_state(rng, 3, 1.5, 0.4);
    if (!p) continue;
    const double nbar = unit(rng);
    const double bound = std::sqrt(nbar * (nbar + 1.0));
    const Complex m = std::polar(bound * unit(rng), 2.0 * std::numbers::pi * unit(rng));
    const auto rho = oracle::FockDensity::pure(oracle::build_state(*p, oracle::adequate_cutoff(*p, 40)));
    const auto out = oracle::evolve_master_equation(rho, ReservoirParams{0.002, nbar, m}, 20);
    EXPECT_LE(std::abs(out.rho.trace() - 1.0), 1e-10);
    EXPECT_LE(out.rho.hermiticity_error(), 1e-12);
    EXPECT_LE(out.max_trace_drift, 1e-10);
    ++cases;
  }
}
