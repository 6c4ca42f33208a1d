#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <random>

#include "hpssv/measures.hpp"
#include "hpssv/oracle.hpp"

using hpssv::StateParams;
namespace oracle = hpssv::oracle;

namespace {

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

oracle::FockState oracle_state(const StateParams& p) { return oracle::build_state(p, oracle::adequate_cutoff(p)); }

double oracle_mandel_q(const oracle::FockState& s) {
  const double mean = oracle::oracle_moment(s, 1, 1).real();
  return oracle::oracle_moment(s, 2, 2).real() / mean - mean;
}

double simpson(const std::function<double(double)>& f, double a, double b, int intervals) {
  const double h = (b - a) / intervals;
  double sum = f(a) + f(b);
  for (int i = 1; i < intervals; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return sum * h / 3.0;
}

}  // namespace

TEST(MandelQ, SqueezedVacuum) {
  for (double r : {0.1, 0.3, 0.5, 0.9}) {
    const StateParams p(0, 1.0, 1.0, r);
    EXPECT_NEAR(hpssv::mandel_q(p) / std::cosh(2.0 * r), 1.0, 1e-10);
  }
}

TEST(MandelQ, SubPoissonianAndOracle) {
  const StateParams p1(1, 1.0, 1.0, 0.2);
  EXPECT_LT(hpssv::mandel_q(p1), 0.0);
  EXPECT_NEAR(hpssv::mandel_q(p1), oracle_mandel_q(oracle_state(p1)), 1e-8);
  const StateParams p2(2, 1.0, 1.0, 0.3);
  EXPECT_NEAR(hpssv::mandel_q(p2), oracle_mandel_q(oracle_state(p2)), 1e-8);
}

TEST(MandelQ, VacuumIsUndefined) {
  const StateParams vac(0, 1.0, 0.0, 0.0);
  EXPECT_THROW(hpssv::mandel_q(vac), hpssv::ZeroMeanPhoton);
  EXPECT_THROW(hpssv::g2(vac), hpssv::ZeroMeanPhoton);
}

TEST(G2, Examples) {
  EXPECT_NEAR(hpssv::g2(StateParams(0, 1.0, 1.0, 0.5)), 3.0 + 1.0 / std::pow(std::sinh(0.5), 2), 1e-10);
  const StateParams p(1, 1.0, 1.0, 0.2);
  const auto s = oracle_state(p);
  const double mean = oracle::oracle_moment(s, 1, 1).real();
  EXPECT_NEAR(hpssv::g2(p), oracle::oracle_moment(s, 2, 2).real() / (mean * mean), 1e-8);
}

TEST(G2, MandelIdentity) {
  std::mt19937_64 rng(41);
  int cases = 0;
  while (cases < 100) {
    const auto p = random_state(rng, 6, 2.0, 1.0);
    if (!p) continue;
    double mean = 0.0;
    try {
      mean = hpssv::moment_state(1, 1, *p).real();
      EXPECT_NEAR(hpssv::g2(*p), 1.0 + hpssv::mandel_q(*p) / mean, 1e-10 * std::max(1.0, hpssv::g2(*p)));
    } catch (const hpssv::ZeroMeanPhoton&) {
      continue;
    }
    ++cases;
  }
}

TEST(Pnd, SqueezedVacuum) {
  const double r = 0.4;
  const auto pnd = hpssv::pnd(StateParams(0, 1.0, 0.0, r), 30);
  for (int m = 0; m <= 30; ++m) {
    if (m % 2) {
      EXPECT_EQ(pnd.probabilities[m], 0.0);
      continue;
    }
    const int k = m / 2;
    const double expected = hpssv::detail::factorial(m) * std::pow(std::tanh(r) / 2.0, m) /
                            (std::cosh(r) * std::pow(hpssv::detail::factorial(k), 2));
    EXPECT_NEAR(pnd.probabilities[m], expected, 1e-14);
  }
}

TEST(Pnd, HermiteVacuum) {
  const double mu = 0.8, nu = 1.3;
  const int n = 5;
  const auto pnd = hpssv::pnd(StateParams(n, mu, nu, 0.0), 10);
  std::vector<double> weights(11, 0.0);
  double total = 0.0;
  for (int l = 0; 2 * l <= n; ++l) {
    const int m = n - 2 * l;
    const double c = std::pow(2.0 * mu * nu - 1.0, l) * std::pow(2.0 * nu, m) /
                     (hpssv::detail::factorial(l) * hpssv::detail::factorial(m));
    weights[m] = c * c * hpssv::detail::factorial(m);
    total += weights[m];
  }
  for (int m = 0; m <= 10; ++m) EXPECT_NEAR(pnd.probabilities[m], weights[m] / total, 1e-13) << m;
}

TEST(Pnd, PeakAndOracle) {
  const double h = 1.0 / std::numbers::sqrt2;
  const StateParams p(2, h, h, 0.3);
  const auto pnd = hpssv::pnd(p);
  const auto ref = oracle::oracle_pnd(oracle_state(p), pnd.m_max);
  for (int m = 0; m <= pnd.m_max; ++m) EXPECT_NEAR(pnd.probabilities[m], ref[m], 1e-9) << m;
  EXPECT_EQ(std::max_element(pnd.probabilities.begin(), pnd.probabilities.end()) - pnd.probabilities.begin(), 2);
}

TEST(Pnd, DiagonalRoute) {
  EXPECT_NEAR(hpssv::pnd_diagonal(StateParams(0, 1.0, 0.5, 0.7)), 1.0 / std::cosh(0.7), 1e-14);
  EXPECT_NEAR(hpssv::pnd_diagonal(StateParams(1, 0.0, 1.0, 0.0)), 1.0, 1e-14);
  std::mt19937_64 rng(42);
  int cases = 0;
  while (cases < 10) {
    const auto p = random_state(rng, 6, 2.0, 0.9);
    if (!p) continue;
    const double diag = hpssv::pnd_diagonal(*p);
    EXPECT_NEAR(diag, hpssv::pnd(*p, p->n()).probabilities[p->n()], 1e-10 * std::max(1.0, diag));
    ++cases;
  }
}

TEST(Pnd, ParityAndNormalization) {
  std::mt19937_64 rng(43);
  int cases = 0;
  while (cases < 100) {
    const auto p = random_state(rng, 6, 2.0, 1.0);
    if (!p) continue;
    const auto pnd = hpssv::pnd(*p);
    double sum = 0.0;
    for (int m = 0; m <= pnd.m_max; ++m) {
      if ((m - p->n()) % 2 != 0) {
        EXPECT_EQ(pnd.probabilities[m], 0.0);
      }
      EXPECT_GE(pnd.probabilities[m], 0.0);
      EXPECT_LE(pnd.probabilities[m], 1.0 + 1e-12);
      sum += pnd.probabilities[m];
    }
    EXPECT_NEAR(sum, 1.0, 1e-8) << p->n() << " " << p->mu() << " " << p->nu() << " " << p->r();
    ++cases;
  }
}

TEST(Quadrature, GaussianForVacuumFamily) {
  const double r = 0.35;
  const double u = std::exp(r);
  const StateParams p(0, 1.0, 0.0, r);
  for (double x : {-2.0, 0.0, 0.7}) {
    EXPECT_NEAR(hpssv::quadrature_dist(p, x), std::exp(-x * x / (u * u)) / (std::sqrt(std::numbers::pi) * u), 1e-15);
  }
}

TEST(Quadrature, NormalizationEvennessOracle) {
  std::mt19937_64 rng(44);
  int cases = 0;
  while (cases < 100) {
    const auto p = random_state(rng, 5, 2.0, 0.9);
    if (!p) continue;
    const auto f = [&](double x) { return hpssv::quadrature_dist(*p, x); };
    EXPECT_NEAR(simpson(f, -20.0, 20.0, 2000), 1.0, 1e-6);
    for (double x : {0.3, 1.1, 2.5}) EXPECT_NEAR(f(x), f(-x), 1e-12 * std::max(1.0, f(x)));
    ++cases;
  }
  const double h = 1.0 / std::numbers::sqrt2;
  const StateParams fig(2, h, h, 0.2);
  const auto s = oracle_state(fig);
  for (int i = 0; i <= 20; ++i) {
    const double x = -4.0 + 0.4 * i;
    EXPECT_NEAR(hpssv::quadrature_dist(fig, x), oracle::oracle_quadrature(s, x), 1e-8) << x;
  }
}

TEST(Quadrature, DegenerateDenominator) {
  // 1 - 2 mu nu - 2 nu^2 = 0 at r = 0 with mu = 0, nu = 1/sqrt2
  EXPECT_THROW(hpssv::quadrature_dist(StateParams(2, 0.0, 1.0 / std::numbers::sqrt2, 0.0), 0.3),
               hpssv::DegenerateDenominator);
}

TEST(Squeezing, SqueezedVacuum) {
  for (double r : {0.1, 0.5, 1.0}) {
    EXPECT_NEAR(hpssv::squeezing_degree(StateParams(0, 1.0, 1.0, r)), -2.0 * std::exp(-r) * std::sinh(r), 1e-10);
  }
  EXPECT_NEAR(hpssv::squeezing_degree(StateParams(0, 1.0, 1.0, 6.0)), -1.0, 1e-5);
}

TEST(Squeezing, EnhancedAndOracle) {
  const StateParams p(2, 1.0, 1.0, 0.8);
  const double s = hpssv::squeezing_degree(p);
  EXPECT_LT(s, 0.0);
  const auto st = oracle_state(p);
  const double ref = 2.0 * (oracle::oracle_moment(st, 1, 1).real() - std::abs(oracle::oracle_moment(st, 2, 0)));
  EXPECT_NEAR(s, ref, 1e-8);
}

TEST(Squeezing, LowerBound) {
  std::mt19937_64 rng(45);
  int cases = 0;
  while (cases < 200) {
    const auto p = random_state(rng, 6, 3.0, 2.0);
    if (!p) continue;
    EXPECT_GE(hpssv::squeezing_degree(*p), -1.0 - 1e-10);
    ++cases;
  }
}
