#include "bscroll/jet.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "bscroll/errors.hpp"

namespace bscroll {

namespace {

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

void check_order(int order) {
  if (order < 0 || order > Jet::kMaxOrder) {
    throw std::invalid_argument("jet order " + std::to_string(order) + " outside [0, " +
                                std::to_string(Jet::kMaxOrder) + "]");
  }
}

// sin/cos and sinh/cosh share one recurrence; sign = -1 for the circular pair.
void trig_pair(const Jet& a, double s0, double c0, double sign, std::array<double, Jet::kMaxOrder + 1>& s,
               std::array<double, Jet::kMaxOrder + 1>& c) {
  s[0] = s0;
  c[0] = c0;
  for (int k = 1; k <= a.order(); ++k) {
    double ss = 0.0, cc = 0.0;
    for (int j = 1; j <= k; ++j) {
      ss += j * a.taylor(j) * c[static_cast<std::size_t>(k - j)];
      cc += j * a.taylor(j) * s[static_cast<std::size_t>(k - j)];
    }
    s[static_cast<std::size_t>(k)] = ss / k;
    c[static_cast<std::size_t>(k)] = sign * cc / k;
  }
}

// Solves t' = (1 + sign * t^2) a' for tan (sign = +1) and tanh (sign = -1).
Jet tan_like(const Jet& a, double t0, double sign) {
  const int n = a.order();
  std::array<double, Jet::kMaxOrder + 1> t{}, u{};
  t[0] = t0;
  u[0] = 1.0 + sign * t0 * t0;
  for (int k = 1; k <= n; ++k) {
    double acc = 0.0;
    for (int j = 1; j <= k; ++j) acc += j * a.taylor(j) * u[static_cast<std::size_t>(k - j)];
    t[static_cast<std::size_t>(k)] = acc / k;
    double sq = 0.0;
    for (int i = 0; i <= k; ++i) sq += t[static_cast<std::size_t>(i)] * t[static_cast<std::size_t>(k - i)];
    u[static_cast<std::size_t>(k)] = sign * sq;
  }
  return Jet::from_taylor(a.base_point(), std::span<const double>(t.data(), static_cast<std::size_t>(n + 1)));
}

}  // namespace

Jet::Jet(double base_point, int order) : base_(base_point), order_(order) { check_order(order); }

Jet Jet::constant(double value, double base_point, int order) {
  Jet j(base_point, order);
  j.c_[0] = value;
  return j;
}

Jet Jet::variable(double base_point, int order) {
  Jet j(base_point, order);
  j.c_[0] = base_point;
  if (order >= 1) j.c_[1] = 1.0;
  return j;
}

Jet Jet::from_taylor(double base_point, std::span<const double> coeffs) {
  if (coeffs.empty()) throw std::invalid_argument("jet needs at least one coefficient");
  Jet j(base_point, static_cast<int>(coeffs.size()) - 1);
  std::copy(coeffs.begin(), coeffs.end(), j.c_.begin());
  return j;
}

Jet Jet::from_derivatives(double base_point, std::span<const double> derivs) {
  if (derivs.empty()) throw std::invalid_argument("jet needs at least one derivative");
  Jet j(base_point, static_cast<int>(derivs.size()) - 1);
  for (std::size_t k = 0; k < derivs.size(); ++k) j.c_[k] = derivs[k] / factorial(static_cast<int>(k));
  return j;
}

double Jet::derivative(int k) const {
  if (k < 0 || k > order_) {
    throw std::out_of_range("derivative " + std::to_string(k) + " of a jet of order " +
                            std::to_string(order_));
  }
  return c_[static_cast<std::size_t>(k)] * factorial(k);
}

Jet Jet::differentiate() const {
  if (order_ == 0) throw std::out_of_range("cannot differentiate a jet of order 0");
  Jet d(base_, order_ - 1);
  for (int k = 0; k < order_; ++k) d.c_[static_cast<std::size_t>(k)] = (k + 1) * c_[static_cast<std::size_t>(k + 1)];
  return d;
}

Jet Jet::truncated(int order) const {
  Jet t(base_, std::min(order, order_));
  std::copy_n(c_.begin(), t.order_ + 1, t.c_.begin());
  return t;
}

void Jet::check_compatible(const Jet& o) const {
  if (base_ != o.base_) {
    throw std::invalid_argument("jets expanded at different base points");
  }
}

Jet& Jet::operator+=(const Jet& o) {
  check_compatible(o);
  order_ = std::min(order_, o.order_);
  for (int k = 0; k <= order_; ++k) c_[static_cast<std::size_t>(k)] += o.c_[static_cast<std::size_t>(k)];
  for (int k = order_ + 1; k <= kMaxOrder; ++k) c_[static_cast<std::size_t>(k)] = 0.0;
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  check_compatible(o);
  order_ = std::min(order_, o.order_);
  for (int k = 0; k <= order_; ++k) c_[static_cast<std::size_t>(k)] -= o.c_[static_cast<std::size_t>(k)];
  for (int k = order_ + 1; k <= kMaxOrder; ++k) c_[static_cast<std::size_t>(k)] = 0.0;
  return *this;
}

Jet& Jet::operator*=(const Jet& o) {
  check_compatible(o);
  const int n = std::min(order_, o.order_);
  std::array<double, kMaxOrder + 1> r{};
  for (int k = 0; k <= n; ++k) {
    double acc = 0.0;
    for (int j = 0; j <= k; ++j) acc += c_[static_cast<std::size_t>(j)] * o.c_[static_cast<std::size_t>(k - j)];
    r[static_cast<std::size_t>(k)] = acc;
  }
  c_ = r;
  order_ = n;
  return *this;
}

Jet& Jet::operator/=(const Jet& o) {
  check_compatible(o);
  if (o.c_[0] == 0.0) throw DomainError("div", base_, "division by a jet with zero value");
  const int n = std::min(order_, o.order_);
  std::array<double, kMaxOrder + 1> q{};
  for (int k = 0; k <= n; ++k) {
    double acc = c_[static_cast<std::size_t>(k)];
    for (int j = 1; j <= k; ++j) acc -= o.c_[static_cast<std::size_t>(j)] * q[static_cast<std::size_t>(k - j)];
    q[static_cast<std::size_t>(k)] = acc / o.c_[0];
  }
  c_ = q;
  order_ = n;
  return *this;
}

Jet& Jet::operator+=(double k) {
  c_[0] += k;
  return *this;
}

Jet& Jet::operator-=(double k) {
  c_[0] -= k;
  return *this;
}

Jet& Jet::operator*=(double k) {
  for (int i = 0; i <= order_; ++i) c_[static_cast<std::size_t>(i)] *= k;
  return *this;
}

Jet& Jet::operator/=(double k) {
  if (k == 0.0) throw DomainError("div", base_, "division by zero");
  for (int i = 0; i <= order_; ++i) c_[static_cast<std::size_t>(i)] /= k;
  return *this;
}

Jet operator/(double k, const Jet& a) { return Jet::constant(k, a.base_, a.order_) / a; }

Jet operator-(const Jet& a) {
  Jet r = a;
  for (int i = 0; i <= r.order_; ++i) r.c_[static_cast<std::size_t>(i)] = -r.c_[static_cast<std::size_t>(i)];
  return r;
}

Jet exp(const Jet& a) {
  const int n = a.order();
  std::array<double, Jet::kMaxOrder + 1> e{};
  e[0] = std::exp(a.value());
  for (int k = 1; k <= n; ++k) {
    double acc = 0.0;
    for (int j = 1; j <= k; ++j) acc += j * a.taylor(j) * e[static_cast<std::size_t>(k - j)];
    e[static_cast<std::size_t>(k)] = acc / k;
  }
  return Jet::from_taylor(a.base_point(), std::span<const double>(e.data(), static_cast<std::size_t>(n + 1)));
}

Jet log(const Jet& a) {
  const double a0 = a.value();
  if (!(a0 > 0.0)) throw DomainError("log", a.base_point(), "argument value " + std::to_string(a0) + " <= 0");
  const int n = a.order();
  std::array<double, Jet::kMaxOrder + 1> l{};
  l[0] = std::log(a0);
  for (int k = 1; k <= n; ++k) {
    double acc = 0.0;
    for (int j = 1; j < k; ++j) acc += j * l[static_cast<std::size_t>(j)] * a.taylor(k - j);
    l[static_cast<std::size_t>(k)] = (a.taylor(k) - acc / k) / a0;
  }
  return Jet::from_taylor(a.base_point(), std::span<const double>(l.data(), static_cast<std::size_t>(n + 1)));
}

Jet sin(const Jet& a) {
  std::array<double, Jet::kMaxOrder + 1> s{}, c{};
  trig_pair(a, std::sin(a.value()), std::cos(a.value()), -1.0, s, c);
  return Jet::from_taylor(a.base_point(), std::span<const double>(s.data(), static_cast<std::size_t>(a.order() + 1)));
}

Jet cos(const Jet& a) {
  std::array<double, Jet::kMaxOrder + 1> s{}, c{};
  trig_pair(a, std::sin(a.value()), std::cos(a.value()), -1.0, s, c);
  return Jet::from_taylor(a.base_point(), std::span<const double>(c.data(), static_cast<std::size_t>(a.order() + 1)));
}

Jet tan(const Jet& a) { return tan_like(a, std::tan(a.value()), 1.0); }

Jet cot(const Jet& a) {
  std::array<double, Jet::kMaxOrder + 1> s{}, c{};
  trig_pair(a, std::sin(a.value()), std::cos(a.value()), -1.0, s, c);
  if (s[0] == 0.0) throw DomainError("cot", a.base_point(), "sin of argument vanishes");
  const std::size_t n = static_cast<std::size_t>(a.order() + 1);
  return Jet::from_taylor(a.base_point(), std::span<const double>(c.data(), n)) /
         Jet::from_taylor(a.base_point(), std::span<const double>(s.data(), n));
}

Jet sinh(const Jet& a) {
  std::array<double, Jet::kMaxOrder + 1> s{}, c{};
  trig_pair(a, std::sinh(a.value()), std::cosh(a.value()), 1.0, s, c);
  return Jet::from_taylor(a.base_point(), std::span<const double>(s.data(), static_cast<std::size_t>(a.order() + 1)));
}

Jet cosh(const Jet& a) {
  std::array<double, Jet::kMaxOrder + 1> s{}, c{};
  trig_pair(a, std::sinh(a.value()), std::cosh(a.value()), 1.0, s, c);
  return Jet::from_taylor(a.base_point(), std::span<const double>(c.data(), static_cast<std::size_t>(a.order() + 1)));
}

Jet tanh(const Jet& a) { return tan_like(a, std::tanh(a.value()), -1.0); }

Jet sqrt(const Jet& a) {
  const double a0 = a.value();
  if (!(a0 > 0.0)) throw DomainError("sqrt", a.base_point(), "argument value " + std::to_string(a0) + " <= 0");
  const int n = a.order();
  std::array<double, Jet::kMaxOrder + 1> r{};
  r[0] = std::sqrt(a0);
  for (int k = 1; k <= n; ++k) {
    double acc = a.taylor(k);
    for (int j = 1; j < k; ++j) acc -= r[static_cast<std::size_t>(j)] * r[static_cast<std::size_t>(k - j)];
    r[static_cast<std::size_t>(k)] = acc / (2.0 * r[0]);
  }
  return Jet::from_taylor(a.base_point(), std::span<const double>(r.data(), static_cast<std::size_t>(n + 1)));
}

Jet pow(const Jet& a, int n) {
  if (n < 0) return 1.0 / pow(a, -n);
  Jet result = Jet::constant(1.0, a.base_point(), a.order());
  Jet base = a;
  unsigned e = static_cast<unsigned>(n);
  while (e) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e) base *= base;
  }
  return result;
}

Jet pow(const Jet& a, double p) {
  if (std::nearbyint(p) == p && std::fabs(p) <= 1024.0) return pow(a, static_cast<int>(p));
  const double a0 = a.value();
  if (!(a0 > 0.0)) {
    throw DomainError("pow", a.base_point(), "non-integer power of non-positive value " + std::to_string(a0));
  }
  const int n = a.order();
  std::array<double, Jet::kMaxOrder + 1> y{};
  y[0] = std::pow(a0, p);
  for (int k = 1; k <= n; ++k) {
    double acc = 0.0;
    for (int j = 1; j <= k; ++j) acc += (p * j - (k - j)) * a.taylor(j) * y[static_cast<std::size_t>(k - j)];
    y[static_cast<std::size_t>(k)] = acc / (k * a0);
  }
  return Jet::from_taylor(a.base_point(), std::span<const double>(y.data(), static_cast<std::size_t>(n + 1)));
}

Jet schwarzian(const Jet& h) {
  if (h.order() < 3) throw std::invalid_argument("schwarzian needs a jet of order >= 3");
  const Jet h1 = h.differentiate();
  if (std::fabs(h1.value()) < kDegenerateDerivative) {
    throw DomainError("schwarzian", h.base_point(), "h' vanishes");
  }
  const Jet h2 = h1.differentiate();
  const Jet h3 = h2.differentiate();
  const Jet r = h2 / h1;
  return h3 / h1 - 1.5 * (r * r);
}

}  // namespace bscroll
