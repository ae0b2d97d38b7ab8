#pragma once

// Independent numerical oracles shared by the unit tests and the acceptance
// runner: Richardson-extrapolated central differences, composite
// Gauss-Legendre quadrature, closed forms of the tanh example, and random
// Moebius perturbations.

#include <array>
#include <cstdio>
#include <cmath>
#include <functional>
#include <random>
#include <string>

#include "bscroll/lorentz.hpp"

namespace oracle {

using Fn = std::function<double(double)>;

inline double d1_central(const Fn& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}
inline double d2_central(const Fn& f, double x, double h) {
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}
inline double d3_central(const Fn& f, double x, double h) {
  return (f(x + 2 * h) - 2.0 * f(x + h) + 2.0 * f(x - h) - f(x - 2 * h)) / (2.0 * h * h * h);
}

/// k-th derivative (k = 1..3) by one Richardson step on a central stencil.
inline double richardson(const Fn& f, double x, int k, double h) {
  auto D = [&](double step) {
    switch (k) {
      case 1: return d1_central(f, x, step);
      case 2: return d2_central(f, x, step);
      default: return d3_central(f, x, step);
    }
  };
  return (4.0 * D(h / 2) - D(h)) / 3.0;
}

/// Composite 5-point Gauss-Legendre rule on `panels` equal panels.
inline double gauss_legendre(const Fn& f, double a, double b, int panels = 64) {
  static constexpr std::array<double, 5> x{0.0, 0.5384693101056831, -0.5384693101056831, 0.9061798459386640,
                                           -0.9061798459386640};
  static constexpr std::array<double, 5> w{0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
                                           0.2369268850561891, 0.2369268850561891};
  const double width = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * width;
    for (int i = 0; i < 5; ++i) sum += w[i] * f(mid + 0.5 * width * x[i]);
  }
  return 0.5 * width * sum;
}

// tanh example with H = 1: A = (cosh 2s, 1, -sinh 2s), B = (cosh 2s, -1, -sinh 2s)/2,
// C = (sinh 2s, 0, -cosh 2s).
inline bscroll::Vec3L tanh_A(double s) { return {std::cosh(2 * s), 1.0, -std::sinh(2 * s)}; }
inline bscroll::Vec3L tanh_B(double s) { return {std::cosh(2 * s) / 2, -0.5, -std::sinh(2 * s) / 2}; }
inline bscroll::Vec3L tanh_C(double s) { return {std::sinh(2 * s), 0.0, -std::cosh(2 * s)}; }

/// f_L(s,t) = (sinh 2s + t cosh 2s, 2s - t, -1 - cosh 2s - t sinh 2s)/2.
inline bscroll::Vec3L tanh_fL(double s, double t) {
  return {0.5 * (std::sinh(2 * s) + t * std::cosh(2 * s)), 0.5 * (2 * s - t),
          0.5 * (-1.0 - std::cosh(2 * s) - t * std::sinh(2 * s))};
}

/// Third coordinate of the Nil_3 surface, up to an additive constant.
inline double tanh_f3(double s, double t) {
  return 0.5 * (-0.5 - s * t * std::cosh(2 * s) + (-s + t / 2) * std::sinh(2 * s));
}

/// Determinant of the matrix with columns u, v, w by cofactor expansion
/// along the third column.
inline double det_cols(const bscroll::Vec3L& u, const bscroll::Vec3L& v, const bscroll::Vec3L& w) {
  return w.x1 * (u.x2 * v.x3 - u.x3 * v.x2) - w.x2 * (u.x1 * v.x3 - u.x3 * v.x1) +
         w.x3 * (u.x1 * v.x2 - u.x2 * v.x1);
}

/// Cross product found by solving <x, e_i> = det(u, v, e_i) on the basis.
inline bscroll::Vec3L brute_cross(const bscroll::Vec3L& u, const bscroll::Vec3L& v) {
  return {-det_cols(u, v, bscroll::e1), det_cols(u, v, bscroll::e2), det_cols(u, v, bscroll::e3)};
}

struct Moebius {
  double a, b, c, d;
};

/// (a h + b)/(c h + d) with ad - bc bounded away from 0 and c h + d keeping
/// one sign for |h| <= h_max.
inline Moebius random_moebius(std::mt19937_64& rng, double h_max) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    Moebius m{u(rng) * 2, u(rng) * 2, u(rng) * 0.5, u(rng) * 2};
    if (std::fabs(m.d) < std::fabs(m.c) * h_max + 0.5) continue;
    if (std::fabs(m.a * m.d - m.b * m.c) < 0.3) continue;
    return m;
  }
}

inline std::string apply_moebius(const Moebius& m, const std::string& h) {
  auto num = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "(%.17g)", v);
    return std::string(buf);
  };
  return "(" + num(m.a) + "*(" + h + ")+" + num(m.b) + ")/(" + num(m.c) + "*(" + h + ")+" + num(m.d) + ")";
}

}  // namespace oracle
