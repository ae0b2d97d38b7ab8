#pragma once

// Adapted null frames (A, B, C) of constant-mean-curvature null scrolls:
//
//   <A,A> = <B,B> = 0,  <A,B> = -1,  C = A x B,
//   A' = k1 A + k2 C,   B' = -k1 B + H C,   C' = H A + k2 B.
//
// Frame vectors are jet-valued so that derivatives in s come along exactly.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "bscroll/dopri.hpp"
#include "bscroll/expr.hpp"
#include "bscroll/jet.hpp"
#include "bscroll/lorentz.hpp"

namespace bscroll {

using JetVec3 = Vec3<Jet>;

Vec3L values(const JetVec3& v);
/// Component-wise k-th derivative.
Vec3L derivative(const JetVec3& v, int k);
JetVec3 differentiate(const JetVec3& v);
int order(const JetVec3& v);
JetVec3 constant_jets(const Vec3L& v, double s, int order);

struct NullFrame {
  double s = 0.0;
  JetVec3 A, B, C;
  Jet kappa1, kappa2;
  double H = 1.0;

  Vec3L a() const { return values(A); }
  Vec3L b() const { return values(B); }
  Vec3L c() const { return values(C); }
  double k2() const { return kappa2.value(); }
};

/// s -> frame; the base-curve integrator and the singularity scan consume these.
using FrameSource = std::function<NullFrame(double)>;

/// Residuals of every frame invariant that the frame's jet orders allow.
struct FrameResiduals {
  std::map<std::string, double> entries;

  double max() const;
  /// Largest of the algebraic (pointwise) invariants, excluding the
  /// Frenet-Serret and B-condition derivative checks.
  double max_algebraic() const;
  double max_frenet() const;
  double at(const std::string& key) const { return entries.at(key); }
};

FrameResiduals validate_frame(const NullFrame& f);

/// Frame built from the generator h in closed form:
///   B = -(H / 2h') (-1 - h^2, 1 - h^2, 2h),  C = B'/H,
///   A = (S(h)/H^2) B + B''/H^2,  k1 = 0,  k2 = -S(h)/H.
/// Throws DegenerateGenerator when |h'(s)| < 1e-12.
NullFrame frame_from_h(const Expr& h, double H, double s, int jet_order = kDefaultJetOrder);

/// Frame determined by a lightlike B with <B',B'> = H^2 and H det(B,B',B'') > 0.
NullFrame frame_from_B(const JetVec3& B, double H);
/// k2 = -<B'',B''> / (2 H^3).
double kappa2_of_B(const JetVec3& B, double H);

/// Frame source backed by a generator expression.
FrameSource generator_frames(Expr h, double H, int jet_order = kDefaultJetOrder);

struct FlowResult {
  std::vector<NullFrame> frames;
  /// Largest algebraic invariant residual over all samples.
  double max_invariant_drift = 0.0;
  /// max |-<B'',B''>/(2H^3) - k2(s)| over the samples, B'' taken from the
  /// Frenet-Serret relations. NaN unless k1 vanishes identically.
  double kappa2_recovery = 0.0;
};

/// Solves the Frenet-Serret system for prescribed curvatures starting from
/// `init` (at init.s) and samples the frame at `samples` equispaced points of
/// [lo, hi]. Sampled frames carry jets of order `jet_order` obtained from the
/// Taylor recursion of the linear system.
FlowResult frame_flow_from_curvatures(const Expr& kappa1, const Expr& kappa2, double H,
                                      const NullFrame& init, double lo, double hi, int samples,
                                      const IntegratorConfig& cfg = {}, int jet_order = 3);

/// Frame at s whose vectors and curvature jets are the Taylor expansion of
/// the Frenet-Serret flow through (A0, B0, C0).
NullFrame frenet_taylor_frame(const Vec3L& A0, const Vec3L& B0, const Vec3L& C0, const Jet& kappa1,
                              const Jet& kappa2, double H);

}  // namespace bscroll
