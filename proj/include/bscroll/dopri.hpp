#pragma once

// Embedded Dormand-Prince 5(4) pair with PI step-size control, templated on
// a fixed-size state. Used for the base curve and for the frame flow.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>

#include "bscroll/errors.hpp"

namespace bscroll {

struct IntegratorConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  double max_step = 0.1;
  double min_step = 1e-12;
  long max_steps = 1'000'000;

  void validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw InputError("integrator tolerances must be positive");
    if (!(min_step > 0.0) || !(min_step < max_step)) {
      throw InputError("integrator requires 0 < min_step < max_step");
    }
    if (max_steps <= 0) throw InputError("integrator max_steps must be positive");
  }
};

template <std::size_t N>
using OdeState = std::array<double, N>;

namespace dopri_detail {

inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
inline constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                        a75 = -2187.0 / 6784, a76 = 11.0 / 84;
inline constexpr double d1 = 71.0 / 57600, d3 = -71.0 / 16695, d4 = 71.0 / 1920,
                        d5 = -17253.0 / 339200, d6 = 22.0 / 525, d7 = -1.0 / 40;

template <std::size_t N>
bool all_finite(const OdeState<N>& y) {
  return std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace dopri_detail

/// Integrates y' = rhs(s, y) from s0 to s1 (either direction). The observer
/// is called as obs(s, y) at s0 and after every accepted step; the last
/// call is exactly at s1.
template <std::size_t N, class Rhs, class Observer>
void integrate_dopri5(Rhs&& rhs, double s0, OdeState<N> y, double s1, const IntegratorConfig& cfg,
                      Observer&& obs) {
  using namespace dopri_detail;
  cfg.validate();
  obs(s0, y);
  if (s1 == s0) return;

  const double dir = s1 > s0 ? 1.0 : -1.0;
  const double span = std::fabs(s1 - s0);

  auto axpy = [](OdeState<N>& out, const OdeState<N>& base, double h,
                 std::initializer_list<std::pair<double, const OdeState<N>*>> terms) {
    for (std::size_t i = 0; i < N; ++i) {
      double acc = 0.0;
      for (const auto& [c, k] : terms) acc += c * (*k)[i];
      out[i] = base[i] + h * acc;
    }
  };

  OdeState<N> k1 = rhs(s0, y), k2, k3, k4, k5, k6, k7, tmp, ynew;

  double h;
  {
    double n0 = 0.0, n1 = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sc = cfg.abs_tol + cfg.rel_tol * std::fabs(y[i]);
      n0 += (y[i] / sc) * (y[i] / sc);
      n1 += (k1[i] / sc) * (k1[i] / sc);
    }
    n0 = std::sqrt(n0 / N);
    n1 = std::sqrt(n1 / N);
    h = (n0 < 1e-5 || n1 < 1e-5) ? 1e-6 : 0.01 * n0 / n1;
    h = std::min({h, cfg.max_step, span});
    h = std::max(h, 10.0 * cfg.min_step);
  }

  constexpr double kBeta = 0.04;
  constexpr double kExpo = 0.2 - 0.75 * kBeta;
  constexpr double kSafe = 0.9;
  constexpr double kFacMin = 0.2;  // largest allowed shrink is h * 0.2
  constexpr double kFacMax = 10.0;
  double fac_old = 1e-4;

  double s = s0;
  long steps = 0;
  bool last = false;
  while (!last) {
    if (++steps > cfg.max_steps) {
      throw MaxStepsExceeded("integrator exceeded " + std::to_string(cfg.max_steps) + " steps at s = " +
                             std::to_string(s));
    }
    const double remaining = std::fabs(s1 - s);
    if (h >= remaining * (1.0 - 1e-12)) {
      h = remaining;
      last = true;
    }
    if (h < cfg.min_step && !last) {
      throw StepUnderflow("step size underflow at s = " + std::to_string(s));
    }
    const double hs = dir * h;

    axpy(tmp, y, hs, {{a21, &k1}});
    k2 = rhs(s + c2 * hs, tmp);
    axpy(tmp, y, hs, {{a31, &k1}, {a32, &k2}});
    k3 = rhs(s + c3 * hs, tmp);
    axpy(tmp, y, hs, {{a41, &k1}, {a42, &k2}, {a43, &k3}});
    k4 = rhs(s + c4 * hs, tmp);
    axpy(tmp, y, hs, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}});
    k5 = rhs(s + c5 * hs, tmp);
    axpy(tmp, y, hs, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}});
    k6 = rhs(s + hs, tmp);
    axpy(ynew, y, hs, {{a71, &k1}, {a73, &k3}, {a74, &k4}, {a75, &k5}, {a76, &k6}});
    const double s_new = last ? s1 : s + hs;
    k7 = rhs(s_new, ynew);

    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double e = hs * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
      const double sc = cfg.abs_tol + cfg.rel_tol * std::max(std::fabs(y[i]), std::fabs(ynew[i]));
      err += (e / sc) * (e / sc);
    }
    err = std::sqrt(err / N);

    if (!std::isfinite(err) || !all_finite(ynew)) {
      last = false;
      h *= 0.25;
      if (h < cfg.min_step) throw StepUnderflow("non-finite solution near s = " + std::to_string(s));
      continue;
    }

    const double fac11 = std::pow(err, kExpo);
    if (err <= 1.0) {
      double fac = fac11 / std::pow(fac_old, kBeta);
      fac = std::clamp(fac / kSafe, 1.0 / kFacMax, 1.0 / kFacMin);
      fac_old = std::max(err, 1e-4);
      s = s_new;
      y = ynew;
      k1 = k7;
      obs(s, y);
      h = std::min(h / fac, cfg.max_step);
    } else {
      last = false;
      h /= std::min(1.0 / kFacMin, fac11 / kSafe);
      if (h < cfg.min_step) throw StepUnderflow("step size underflow at s = " + std::to_string(s));
    }
  }
}

}  // namespace bscroll
