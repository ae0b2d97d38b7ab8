#pragma once

// Truncated Taylor jets of scalar functions of one variable.
//
// A jet of order K at base point s0 carries f(s0), f'(s0), ..., f^(K)(s0).
// Internally the normalized Taylor coefficients f^(k)(s0)/k! are stored,
// which turns products and elementary-function compositions into the usual
// convolution recurrences.

#include <algorithm>
#include <array>
#include <span>

namespace bscroll {

class Jet {
 public:
  static constexpr int kMaxOrder = 12;

  Jet() = default;
  /// Zero jet of the given order.
  Jet(double base_point, int order);

  static Jet constant(double value, double base_point, int order);
  /// The identity function s at s = base_point.
  static Jet variable(double base_point, int order);
  /// Builds a jet from normalized Taylor coefficients c_k = f^(k)/k!.
  static Jet from_taylor(double base_point, std::span<const double> coeffs);
  /// Builds a jet from derivatives f, f', f'', ...
  static Jet from_derivatives(double base_point, std::span<const double> derivs);

  int order() const { return order_; }
  double base_point() const { return base_; }
  double value() const { return c_[0]; }
  /// k-th derivative at the base point; k <= order().
  double derivative(int k) const;
  /// Normalized Taylor coefficient f^(k)/k!.
  double taylor(int k) const { return c_[static_cast<std::size_t>(k)]; }

  /// d/ds of the jet, one order lower.
  Jet differentiate() const;
  Jet truncated(int order) const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(const Jet& o);
  Jet& operator/=(const Jet& o);
  Jet& operator+=(double k);
  Jet& operator-=(double k);
  Jet& operator*=(double k);
  Jet& operator/=(double k);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, const Jet& b) { return a *= b; }
  friend Jet operator/(Jet a, const Jet& b) { return a /= b; }
  friend Jet operator+(Jet a, double k) { return a += k; }
  friend Jet operator+(double k, Jet a) { return a += k; }
  friend Jet operator-(Jet a, double k) { return a -= k; }
  friend Jet operator-(double k, const Jet& a) { return -a + k; }
  friend Jet operator*(Jet a, double k) { return a *= k; }
  friend Jet operator*(double k, Jet a) { return a *= k; }
  friend Jet operator/(Jet a, double k) { return a /= k; }
  friend Jet operator/(double k, const Jet& a);
  friend Jet operator-(const Jet& a);

 private:
  void check_compatible(const Jet& o) const;

  double base_ = 0.0;
  int order_ = 0;
  std::array<double, kMaxOrder + 1> c_{};

};

Jet exp(const Jet& a);
Jet log(const Jet& a);
Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet tan(const Jet& a);
Jet cot(const Jet& a);
Jet sinh(const Jet& a);
Jet cosh(const Jet& a);
Jet tanh(const Jet& a);
Jet sqrt(const Jet& a);
/// a^p for a real constant p. Integer p is evaluated by repeated
/// multiplication and accepts non-positive bases.
Jet pow(const Jet& a, double p);
Jet pow(const Jet& a, int n);

/// S(h) = h'''/h' - (3/2) (h''/h')^2 as a jet of order order(h) - 3.
/// Throws DomainError when |h'| < kDegenerateDerivative.
Jet schwarzian(const Jet& h);

inline constexpr double kDegenerateDerivative = 1e-12;
inline constexpr int kDefaultJetOrder = 5;

}  // namespace bscroll
