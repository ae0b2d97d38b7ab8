#include "bscroll/null_frame.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bscroll/errors.hpp"

namespace bscroll {

Vec3L values(const JetVec3& v) { return {v.x1.value(), v.x2.value(), v.x3.value()}; }

Vec3L derivative(const JetVec3& v, int k) {
  return {v.x1.derivative(k), v.x2.derivative(k), v.x3.derivative(k)};
}

JetVec3 differentiate(const JetVec3& v) {
  return {v.x1.differentiate(), v.x2.differentiate(), v.x3.differentiate()};
}

int order(const JetVec3& v) { return std::min({v.x1.order(), v.x2.order(), v.x3.order()}); }

JetVec3 constant_jets(const Vec3L& v, double s, int order) {
  return {Jet::constant(v.x1, s, order), Jet::constant(v.x2, s, order), Jet::constant(v.x3, s, order)};
}

namespace {

constexpr const char* kAlgebraic[] = {"AA", "BB", "AB", "CC", "AC", "BC", "cross", "det"};
constexpr const char* kFrenet[] = {"fs_A", "fs_B", "fs_C"};

double max_of(const std::map<std::string, double>& m, std::initializer_list<const char*> keys) {
  double r = 0.0;
  for (const char* k : keys) {
    if (auto it = m.find(k); it != m.end()) r = std::max(r, it->second);
  }
  return r;
}

}  // namespace

double FrameResiduals::max() const {
  double r = 0.0;
  for (const auto& [k, v] : entries) r = std::max(r, v);
  return r;
}

double FrameResiduals::max_algebraic() const {
  return max_of(entries, {kAlgebraic[0], kAlgebraic[1], kAlgebraic[2], kAlgebraic[3], kAlgebraic[4],
                          kAlgebraic[5], kAlgebraic[6], kAlgebraic[7]});
}

double FrameResiduals::max_frenet() const { return max_of(entries, {kFrenet[0], kFrenet[1], kFrenet[2]}); }

FrameResiduals validate_frame(const NullFrame& f) {
  FrameResiduals r;
  const Vec3L A = f.a(), B = f.b(), C = f.c();
  auto& e = r.entries;
  e["AA"] = std::fabs(mdot(A, A));
  e["BB"] = std::fabs(mdot(B, B));
  e["AB"] = std::fabs(mdot(A, B) + 1.0);
  e["CC"] = std::fabs(mdot(C, C) - 1.0);
  e["AC"] = std::fabs(mdot(A, C));
  e["BC"] = std::fabs(mdot(B, C));
  e["cross"] = max_abs(mcross(A, B) - C);
  e["det"] = std::fabs(det3(A, B, C) - 1.0);

  const double k1 = f.kappa1.value(), k2 = f.kappa2.value(), H = f.H;
  if (order(f.A) >= 1) e["fs_A"] = max_abs(derivative(f.A, 1) - (k1 * A + k2 * C));
  if (order(f.B) >= 1) e["fs_B"] = max_abs(derivative(f.B, 1) - (-k1 * B + H * C));
  if (order(f.C) >= 1) e["fs_C"] = max_abs(derivative(f.C, 1) - (H * A + k2 * B));
  if (order(f.B) >= 2) {
    const Vec3L B1 = derivative(f.B, 1), B2 = derivative(f.B, 2);
    e["B_prime_norm"] = std::fabs(mdot(B1, B1) - H * H);
    e["B_orientation"] = std::max(0.0, -H * det3(B, B1, B2));
  }
  return r;
}

NullFrame frame_from_h(const Expr& h_expr, double H, double s, int jet_order) {
  if (H == 0.0 || !std::isfinite(H)) throw InputError("mean curvature H must be a non-zero finite number");
  if (jet_order < 3) throw InputError("frame_from_h needs jet order >= 3");
  const Jet h = h_expr.eval_jet(s, jet_order);
  const Jet h1 = h.differentiate();
  if (std::fabs(h1.value()) < kDegenerateDerivative) throw DegenerateGenerator(s, h1.value());

  const Jet hh = h * h;
  const Jet scale = (-0.5 * H) / h1;
  NullFrame f;
  f.s = s;
  f.H = H;
  f.B = {scale * (-1.0 - hh), scale * (1.0 - hh), scale * (2.0 * h)};
  const JetVec3 B1 = differentiate(f.B);
  const JetVec3 B2 = differentiate(B1);
  const Jet S = schwarzian(h);
  f.C = B1 / H;
  f.A = (S / (H * H)) * f.B + B2 / (H * H);
  f.kappa2 = -S / H;
  f.kappa1 = Jet(s, S.order());
  return f;
}

NullFrame frame_from_B(const JetVec3& B, double H) {
  if (H == 0.0 || !std::isfinite(H)) throw InputError("mean curvature H must be a non-zero finite number");
  if (order(B) < 2) throw InputError("frame_from_B needs B with jets of order >= 2");
  const JetVec3 B1 = differentiate(B);
  const JetVec3 B2 = differentiate(B1);
  const Vec3L b = values(B), b1 = values(B1), b2 = values(B2);
  if (std::fabs(mdot(b, b)) > 1e-9) throw NormalizationError("B is not lightlike");
  if (std::fabs(mdot(b1, b1) - H * H) > 1e-9) {
    throw NormalizationError("<B',B'> = " + std::to_string(mdot(b1, b1)) + " differs from H^2");
  }
  if (!(H * det3(b, b1, b2) > 0.0)) {
    throw OrientationError("H det(B, B', B'') <= 0; -B does not define a frame with A x B = C");
  }
  const double s = B.x1.base_point();
  NullFrame f;
  f.s = s;
  f.H = H;
  f.B = B;
  f.kappa2 = -mdot(B2, B2) / (2.0 * H * H * H);
  f.kappa1 = Jet(s, f.kappa2.order());
  f.C = B1 / H;
  f.A = (-f.kappa2 / H) * B + B2 / (H * H);
  return f;
}

double kappa2_of_B(const JetVec3& B, double H) { return frame_from_B(B, H).kappa2.value(); }

FrameSource generator_frames(Expr h, double H, int jet_order) {
  return [h = std::move(h), H, jet_order](double s) { return frame_from_h(h, H, s, jet_order); };
}

NullFrame frenet_taylor_frame(const Vec3L& A0, const Vec3L& B0, const Vec3L& C0, const Jet& kappa1,
                              const Jet& kappa2, double H) {
  const double s = kappa2.base_point();
  const int kord = std::min(kappa1.order(), kappa2.order());
  const int n = std::min(kord + 1, Jet::kMaxOrder);
  std::vector<Vec3L> A(static_cast<std::size_t>(n + 1)), B(A.size()), C(A.size());
  A[0] = A0;
  B[0] = B0;
  C[0] = C0;
  for (int k = 0; k < n; ++k) {
    Vec3L dA{}, dB{}, dC{};
    for (int i = 0; i <= k; ++i) {
      const auto ki = static_cast<std::size_t>(k - i);
      dA += kappa1.taylor(i) * A[ki] + kappa2.taylor(i) * C[ki];
      dB += -kappa1.taylor(i) * B[ki];
      dC += kappa2.taylor(i) * B[ki];
    }
    dB += H * C[static_cast<std::size_t>(k)];
    dC += H * A[static_cast<std::size_t>(k)];
    const auto k1 = static_cast<std::size_t>(k + 1);
    A[k1] = dA / (k + 1.0);
    B[k1] = dB / (k + 1.0);
    C[k1] = dC / (k + 1.0);
  }
  auto to_jets = [&](const std::vector<Vec3L>& coeffs) {
    JetVec3 v;
    for (int c = 0; c < 3; ++c) {
      std::vector<double> t(coeffs.size());
      for (std::size_t k = 0; k < coeffs.size(); ++k) t[k] = coeffs[k][c];
      v[c] = Jet::from_taylor(s, t);
    }
    return v;
  };
  NullFrame f;
  f.s = s;
  f.H = H;
  f.A = to_jets(A);
  f.B = to_jets(B);
  f.C = to_jets(C);
  f.kappa1 = kappa1;
  f.kappa2 = kappa2;
  return f;
}

FlowResult frame_flow_from_curvatures(const Expr& kappa1, const Expr& kappa2, double H,
                                      const NullFrame& init, double lo, double hi, int samples,
                                      const IntegratorConfig& cfg, int jet_order) {
  if (H == 0.0 || !std::isfinite(H)) throw InitError("mean curvature H must be non-zero");
  if (!(lo < hi) || samples < 2) throw InitError("frame flow needs lo < hi and at least 2 samples");
  if (init.s < lo || init.s > hi) throw InitError("initial frame parameter lies outside the range");
  if (jet_order < 1 || jet_order > Jet::kMaxOrder) throw InitError("frame flow jet order out of range");
  const FrameResiduals r0 = validate_frame(init);
  if (r0.max_algebraic() > 1e-9) {
    throw InitError("initial frame violates null-frame invariants (residual " +
                    std::to_string(r0.max_algebraic()) + ")");
  }

  using State = OdeState<9>;
  auto pack = [](const Vec3L& A, const Vec3L& B, const Vec3L& C) {
    return State{A.x1, A.x2, A.x3, B.x1, B.x2, B.x3, C.x1, C.x2, C.x3};
  };
  auto rhs = [&](double s, const State& y) {
    const double k1 = kappa1.eval_real(s), k2 = kappa2.eval_real(s);
    const Vec3L A{y[0], y[1], y[2]}, B{y[3], y[4], y[5]}, C{y[6], y[7], y[8]};
    return pack(k1 * A + k2 * C, -k1 * B + H * C, H * A + k2 * B);
  };

  std::vector<double> grid(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    grid[static_cast<std::size_t>(i)] = i == samples - 1 ? hi : lo + (hi - lo) * i / (samples - 1.0);
  }

  std::vector<State> states(grid.size());
  const State y0 = pack(init.a(), init.b(), init.c());
  auto sweep = [&](auto first, auto last) {
    double s = init.s;
    State y = y0;
    for (auto it = first; it != last; ++it) {
      const double target = grid[static_cast<std::size_t>(*it)];
      integrate_dopri5<9>(rhs, s, y, target, cfg, [&](double, const State& st) { y = st; });
      s = target;
      states[static_cast<std::size_t>(*it)] = y;
    }
  };
  std::vector<int> forward, backward;
  for (int i = 0; i < samples; ++i) (grid[static_cast<std::size_t>(i)] >= init.s ? forward : backward).push_back(i);
  std::reverse(backward.begin(), backward.end());
  sweep(forward.begin(), forward.end());
  sweep(backward.begin(), backward.end());

  FlowResult out;
  bool flat_k1 = true;
  double recovery = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double s = grid[i];
    const State& y = states[i];
    const Jet k1 = kappa1.eval_jet(s, jet_order - 1);
    const Jet k2 = kappa2.eval_jet(s, jet_order - 1);
    NullFrame f = frenet_taylor_frame({y[0], y[1], y[2]}, {y[3], y[4], y[5]}, {y[6], y[7], y[8]}, k1, k2, H);
    for (int k = 0; k <= k1.order(); ++k) flat_k1 = flat_k1 && k1.taylor(k) == 0.0;
    out.max_invariant_drift = std::max(out.max_invariant_drift, validate_frame(f).max_algebraic());
    if (order(f.B) >= 2) {
      const Vec3L B2 = derivative(f.B, 2);
      recovery = std::max(recovery, std::fabs(-mdot(B2, B2) / (2.0 * H * H * H) - k2.value()));
    }
    out.frames.push_back(std::move(f));
  }
  out.kappa2_recovery = flat_k1 ? recovery : NAN;
  return out;
}

}  // namespace bscroll
