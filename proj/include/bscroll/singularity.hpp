#pragma once

// Singular curve t(s) = -C_3/(H B_3) of the Nil_3 surface, pointwise
// classification (cuspidal edge, swallowtail, cuspidal cross cap), range
// scans, and the O(2,1) family f^O built from the frames (OA, OB, OC).

#include <optional>
#include <string>
#include <vector>

#include "bscroll/lorentz.hpp"
#include "bscroll/null_frame.hpp"

namespace bscroll {

enum class SingularKind { CuspidalEdge, Swallowtail, CuspidalCrossCap, FrontOther, NonFrontDegenerate, Unbounded };

/// snake_case name used in reports, e.g. "cuspidal_cross_cap".
const char* kind_name(SingularKind k);
bool is_front_kind(SingularKind k);

struct Tolerances {
  double root = 1e-10;
  double cluster = 1e-6;
  /// The parallel-to-e3 test and the residual test may disagree only inside
  /// this band before ClassifierInconsistency is raised.
  double consistency = 1e-6;
};

/// |B_3| below this makes the singular curve escape to infinity.
inline constexpr double kUnboundedB3 = 1e-10;

std::optional<double> singular_t(const NullFrame& f);

struct CurveJets {
  Vec3L cL1;         // c_L' by differentiating gamma + t(s) B
  Vec3L cL2;         // c_L''
  Vec3L cL1_closed;  // A + (-A3/B3 - k2/H + C3^2/B3^2) B - (C3/B3) C
};

/// Derivatives of c_L = f_L(s, t(s)); needs jets of order >= 2 for B and C
/// and >= 1 for A. Throws UnboundedCurve when |B_3| < 1e-10.
CurveJets cL_jets(const NullFrame& f);

struct NotCEResiduals {
  double r1 = 0.0;  // (k2/H) B3^2 - 1
  double r2 = 0.0;  // 2 A3 B3 + 1 - C3^2
};
NotCEResiduals notce_residuals(const NullFrame& f);

struct Diagnostics {
  double S_h = 0.0;  // -H k2
  double S_h_prime = 0.0;
  double kappa2 = 0.0;
  double kappa2_prime = 0.0;
  Vec3L cL1, cL2;
  NotCEResiduals notce;
};

struct SingularPoint {
  double s = 0.0;
  std::optional<double> t;  // empty when unbounded
  SingularKind kind = SingularKind::Unbounded;
  Diagnostics diagnostics;
};

/// Throws ClassifierInconsistency when the parallel-to-e3 test and the
/// residual test disagree at a front point.
SingularPoint classify_point(const NullFrame& f, const Tolerances& tol = {});

struct CurveSample {
  double s = 0.0;
  std::optional<double> t;
};

struct SingularReport {
  double lo = 0.0, hi = 0.0;
  std::vector<CurveSample> curve;
  std::vector<SingularPoint> points;  // sorted by s
  std::vector<std::string> warnings;
};

/// Brackets sign changes of k2 (equivalently S(h)) and of the first two
/// components of c_L' on a uniform grid, refines them by Brent's method and
/// classifies every root. Grid points where k2 vanishes are roots too.
SingularReport scan_singularities(const FrameSource& frames, double lo, double hi, int grid_n = 64,
                                  const Tolerances& tol = {});

/// (OA, OB, OC) with unchanged curvatures. Throws OrientationBreak when
/// det O = -1, since then OA x OB = -OC.
NullFrame transform_frame(const LorentzTransform& O, const NullFrame& f);
FrameSource transformed_frames(const LorentzTransform& O, FrameSource frames);

struct InvarianceEntry {
  double s = 0.0;
  SingularKind kind = SingularKind::Unbounded;
  SingularKind kind_O = SingularKind::Unbounded;
  bool front_match = true;
  bool ccr_match = true;
};

struct InvarianceReport {
  std::vector<InvarianceEntry> points;   // classified points of f
  std::vector<InvarianceEntry> samples;  // uniformly sampled s along the curve
  bool front_preserved = true;
  bool ccr_preserved = true;
  int kind_differences = 0;  // CE/SW changes; reported, not failures
};

InvarianceReport invariance_check(const FrameSource& frames, const LorentzTransform& O, double lo, double hi,
                                  int grid_n = 64, int samples = 50, const Tolerances& tol = {});

struct NotCEResult {
  LorentzTransform O;
  NotCEResiduals residuals;
  bool identity = false;
};

/// Lorentz transform in the identity component making both NotCE residuals
/// of (OA, OB, OC) vanish at f.s. Throws PreconditionError when k2/H <= 0
/// and NoSolutionFound when the search fails.
NotCEResult find_notce_transform(const NullFrame& f, double tol = 1e-8);

}  // namespace bscroll
