#pragma once

// Base null curve gamma' = A together with the area integrand
// J' = gamma_1 A_2 - gamma_2 A_1, integrated jointly by Dormand-Prince 5(4).

#include <vector>

#include "bscroll/dopri.hpp"
#include "bscroll/lorentz.hpp"
#include "bscroll/null_frame.hpp"

namespace bscroll {

struct CurveNode {
  double s = 0.0;
  Vec3L gamma;
  double J = 0.0;
  Vec3L dgamma;   // A(s), copied from the frame
  Vec3L ddgamma;  // A'(s)
  double dJ = 0.0;
  double ddJ = 0.0;
};

struct CurvePoint {
  Vec3L gamma;
  double J = 0.0;
};

class CurvePath {
 public:
  CurvePath() = default;
  /// Nodes must be strictly increasing in s.
  CurvePath(std::vector<CurveNode> nodes, double s0);

  const std::vector<CurveNode>& samples() const { return nodes_; }
  double s0() const { return s0_; }
  double lo() const { return nodes_.front().s; }
  double hi() const { return nodes_.back().s; }
  bool contains(double s) const { return !nodes_.empty() && s >= lo() && s <= hi(); }

  /// Quintic Hermite interpolation from the stored values and first two
  /// derivatives. Exact at nodes. Throws OutOfRange outside [lo, hi].
  CurvePoint dense_eval(double s) const;

 private:
  std::vector<CurveNode> nodes_;
  double s0_ = 0.0;
};

/// Integrates from s0 towards both ends of [lo, hi] with gamma(s0) = gamma0
/// and J(s0) = J0.
CurvePath integrate_curve(const FrameSource& frames, double s0, double lo, double hi,
                          const IntegratorConfig& cfg = {}, const Vec3L& gamma0 = {},
                          double J0 = 0.0);

}  // namespace bscroll
