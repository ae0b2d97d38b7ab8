#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "bscroll/errors.hpp"
#include "bscroll/jet.hpp"
#include "support.hpp"

using namespace bscroll;

TEST(Jet, SquareOfIdentity) {
  const Jet s = Jet::variable(1.0, 5);
  const Jet q = s * s;
  EXPECT_EQ(q.value(), 1.0);
  EXPECT_EQ(q.derivative(1), 2.0);
  EXPECT_EQ(q.derivative(2), 2.0);
  EXPECT_EQ(q.derivative(3), 0.0);
}

TEST(Jet, TanhAtZero) {
  const Jet t = tanh(Jet::variable(0.0, 5));
  EXPECT_NEAR(t.value(), 0.0, 1e-15);
  EXPECT_NEAR(t.derivative(1), 1.0, 1e-15);
  EXPECT_NEAR(t.derivative(2), 0.0, 1e-15);
  EXPECT_NEAR(t.derivative(3), -2.0, 1e-14);
  EXPECT_NEAR(t.derivative(5), 16.0, 1e-12);

  const oracle::Fn f = [](double x) { return std::tanh(x); };
  EXPECT_NEAR(t.derivative(1), oracle::richardson(f, 0.0, 1, 1e-4), 1e-9);
  EXPECT_NEAR(t.derivative(2), oracle::richardson(f, 0.0, 2, 1e-3), 1e-6);
  EXPECT_NEAR(t.derivative(3), oracle::richardson(f, 0.0, 3, 1e-2), 1e-5);
}

TEST(Jet, CotExpValue) {
  const Jet s = Jet::variable(0.0, 5);
  EXPECT_NEAR(cot(exp(s) / 2.0).value(), std::cos(0.5) / std::sin(0.5), 1e-14);
  EXPECT_NEAR(cot(exp(s) / 2.0).value(), 1.830488, 1e-6);
}

TEST(Jet, OrderOfMixedOperandsIsMinimum) {
  const Jet a = Jet::variable(0.3, 5), b = Jet::variable(0.3, 3);
  EXPECT_EQ((a * b).order(), 3);
  EXPECT_EQ((a / (b + 2.0)).order(), 3);
  EXPECT_EQ((a + b).order(), 3);
}

TEST(Jet, DomainErrors) {
  const Jet m = Jet::variable(-1.0, 5);
  const Jet z = Jet::variable(0.0, 5);
  EXPECT_THROW(log(m), DomainError);
  EXPECT_THROW(sqrt(m), DomainError);
  EXPECT_THROW(cot(z), DomainError);
  EXPECT_THROW(1.0 / z, DomainError);
  try {
    log(m);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_EQ(e.function(), "log");
    EXPECT_EQ(e.point(), -1.0);
  }
}

TEST(Jet, IntegerPowersAcceptNegativeBase) {
  const Jet p = pow(Jet::variable(-2.0, 5), 3);
  EXPECT_NEAR(p.value(), -8.0, 1e-14);
  EXPECT_NEAR(p.derivative(1), 12.0, 1e-13);
  EXPECT_NEAR(p.derivative(2), -12.0, 1e-13);
  EXPECT_NEAR(p.derivative(3), 6.0, 1e-13);
}

// Every elementary function against the Richardson oracle at random points.
TEST(Jet, ElementaryFunctionsMatchFiniteDifferences) {
  struct Case {
    Jet (*jet)(const Jet&);
    double (*scalar)(double);
    double lo, hi;
  };
  const std::vector<Case> cases{
      {exp, [](double x) { return std::exp(x); }, -1.0, 1.0},
      {log, [](double x) { return std::log(x); }, 0.5, 3.0},
      {sin, [](double x) { return std::sin(x); }, -2.0, 2.0},
      {cos, [](double x) { return std::cos(x); }, -2.0, 2.0},
      {tan, [](double x) { return std::tan(x); }, -1.0, 1.0},
      {cot, [](double x) { return 1.0 / std::tan(x); }, 0.3, 2.5},
      {sinh, [](double x) { return std::sinh(x); }, -2.0, 2.0},
      {cosh, [](double x) { return std::cosh(x); }, -2.0, 2.0},
      {tanh, [](double x) { return std::tanh(x); }, -2.0, 2.0},
      {sqrt, [](double x) { return std::sqrt(x); }, 0.5, 3.0},
  };
  std::mt19937_64 rng(23);
  for (const Case& c : cases) {
    std::uniform_real_distribution<double> u(c.lo, c.hi);
    for (int i = 0; i < 20; ++i) {
      const double x = u(rng);
      const Jet j = c.jet(Jet::variable(x, 5));
      const oracle::Fn f = c.scalar;
      EXPECT_NEAR(j.value(), f(x), 1e-14 * (1 + std::fabs(f(x))));
      EXPECT_NEAR(j.derivative(1), oracle::richardson(f, x, 1, 1e-4), 1e-6);
      EXPECT_NEAR(j.derivative(2), oracle::richardson(f, x, 2, 1e-3), 1e-5);
      EXPECT_NEAR(j.derivative(3), oracle::richardson(f, x, 3, 1e-2), 1e-3 * (1 + std::fabs(j.derivative(3))));
    }
  }
}

TEST(Jet, ProductAndChainRulesMatchFiniteDifferences) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const double x = u(rng), a = u(rng) * 2, b = u(rng);
    const oracle::Fn f = [&](double y) { return std::sin(a * y) * std::exp(b * y * y) + std::cosh(std::sin(y + a)); };
    const Jet s = Jet::variable(x, 5);
    const Jet j = sin(a * s) * exp(b * s * s) + cosh(sin(s + a));
    EXPECT_NEAR(j.derivative(1), oracle::richardson(f, x, 1, 1e-4), 1e-6);
    EXPECT_NEAR(j.derivative(2), oracle::richardson(f, x, 2, 1e-3), 1e-5);
  }
}

TEST(Jet, LogExpRoundTrip) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    const double x = u(rng), k = u(rng);
    const Jet a = sin(k * Jet::variable(x, 6)) + 0.5 * Jet::variable(x, 6);
    const Jet r = log(exp(a));
    for (int n = 0; n <= 6; ++n) EXPECT_NEAR(r.derivative(n), a.derivative(n), 1e-12 * (1 + std::fabs(a.derivative(n))));
  }
}

TEST(Jet, DifferentiateShiftsDerivatives) {
  const Jet a = exp(2.0 * Jet::variable(0.4, 5));
  const Jet d = a.differentiate();
  EXPECT_EQ(d.order(), 4);
  for (int k = 0; k <= 4; ++k) EXPECT_NEAR(d.derivative(k), a.derivative(k + 1), 1e-12 * a.derivative(k + 1));
}

TEST(Schwarzian, Examples) {
  for (double s : {-1.5, -0.2, 0.0, 0.9}) {
    EXPECT_NEAR(schwarzian(tanh(Jet::variable(s, 5))).value(), -2.0, 1e-12);
  }
  const Jet x0 = Jet::variable(0.0, 5);
  EXPECT_NEAR(schwarzian(x0 + x0 * x0 * x0).value(), 6.0, 1e-12);
  const Jet c = schwarzian(cot(exp(x0) / 2.0));
  EXPECT_EQ(c.order(), 2);
  EXPECT_NEAR(c.value(), 0.0, 1e-12);
  EXPECT_NEAR(c.derivative(1), 1.0, 1e-12);
}

TEST(Schwarzian, DegenerateGenerator) {
  const Jet s = Jet::variable(0.0, 5);
  EXPECT_THROW(schwarzian(s * s), DomainError);
  EXPECT_THROW(schwarzian(Jet::constant(2.0, 0.0, 5)), DomainError);
}

TEST(Schwarzian, MoebiusInvariance) {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double s = u(rng);
    const Jet x = Jet::variable(s, 5);
    const Jet h = x + x * x * x;
    const oracle::Moebius m = oracle::random_moebius(rng, 2.0);
    const Jet g = (m.a * h + m.b) / (m.c * h + m.d);
    const Jet Sh = schwarzian(h), Sg = schwarzian(g);
    EXPECT_NEAR(Sg.value(), Sh.value(), 1e-9);
    EXPECT_NEAR(Sg.derivative(1), Sh.derivative(1), 1e-9);
  }
}
