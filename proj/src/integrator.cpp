#include "bscroll/integrator.hpp"

#include <algorithm>
#include <string>

#include "bscroll/errors.hpp"

namespace bscroll {

CurvePath::CurvePath(std::vector<CurveNode> nodes, double s0) : nodes_(std::move(nodes)), s0_(s0) {
  if (nodes_.empty()) throw InputError("curve path needs at least one node");
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    if (!(nodes_[i].s > nodes_[i - 1].s)) throw InputError("curve path nodes must be strictly increasing");
  }
}

namespace {

struct Hermite5 {
  double h0, h1, h2, h3, h4, h5;
};

// Basis for values (h0, h5), first derivatives (h1, h4) and second
// derivatives (h2, h3) at the left and right end of [0, 1].
Hermite5 hermite5(double u) {
  const double u2 = u * u, u3 = u2 * u, u4 = u3 * u, u5 = u4 * u;
  return {1 - 10 * u3 + 15 * u4 - 6 * u5,
          u - 6 * u3 + 8 * u4 - 3 * u5,
          0.5 * u2 - 1.5 * u3 + 1.5 * u4 - 0.5 * u5,
          0.5 * u3 - u4 + 0.5 * u5,
          -4 * u3 + 7 * u4 - 3 * u5,
          10 * u3 - 15 * u4 + 6 * u5};
}

double blend(const Hermite5& b, double h, double ya, double da, double dda, double yb, double db, double ddb) {
  return b.h0 * ya + b.h1 * h * da + b.h2 * h * h * dda + b.h3 * h * h * ddb + b.h4 * h * db + b.h5 * yb;
}

}  // namespace

CurvePoint CurvePath::dense_eval(double s) const {
  if (!contains(s)) {
    throw OutOfRange("s = " + std::to_string(s) + " outside the integrated range [" + std::to_string(lo()) +
                     ", " + std::to_string(hi()) + "]");
  }
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), s,
                             [](const CurveNode& n, double v) { return n.s < v; });
  if (it != nodes_.end() && it->s == s) return {it->gamma, it->J};
  const CurveNode& b = *it;
  const CurveNode& a = *(it - 1);
  const double h = b.s - a.s;
  const Hermite5 w = hermite5((s - a.s) / h);
  CurvePoint p;
  for (int i = 0; i < 3; ++i) {
    p.gamma[i] = blend(w, h, a.gamma[i], a.dgamma[i], a.ddgamma[i], b.gamma[i], b.dgamma[i], b.ddgamma[i]);
  }
  p.J = blend(w, h, a.J, a.dJ, a.ddJ, b.J, b.dJ, b.ddJ);
  return p;
}

CurvePath integrate_curve(const FrameSource& frames, double s0, double lo, double hi,
                          const IntegratorConfig& cfg, const Vec3L& gamma0, double J0) {
  if (!(lo < hi)) throw InputError("integration range needs lo < hi");
  if (s0 < lo || s0 > hi) throw InputError("s0 must lie in the integration range");
  cfg.validate();

  using State = OdeState<4>;
  auto rhs = [&](double s, const State& y) {
    const Vec3L A = frames(s).a();
    return State{A.x1, A.x2, A.x3, y[0] * A.x2 - y[1] * A.x1};
  };
  auto node_at = [&](double s, const State& y) {
    const NullFrame f = frames(s);
    const Vec3L A = f.a();
    const Vec3L dA = f.kappa1.value() * A + f.kappa2.value() * f.c();
    CurveNode n;
    n.s = s;
    n.gamma = {y[0], y[1], y[2]};
    n.J = y[3];
    n.dgamma = A;
    n.ddgamma = dA;
    n.dJ = y[0] * A.x2 - y[1] * A.x1;
    n.ddJ = y[0] * dA.x2 - y[1] * dA.x1;
    return n;
  };

  const State y0{gamma0.x1, gamma0.x2, gamma0.x3, J0};
  std::vector<CurveNode> back, fwd;
  if (s0 > lo) {
    integrate_dopri5<4>(rhs, s0, y0, lo, cfg, [&](double s, const State& y) {
      if (s != s0) back.push_back(node_at(s, y));
    });
  }
  fwd.push_back(node_at(s0, y0));
  if (s0 < hi) {
    integrate_dopri5<4>(rhs, s0, y0, hi, cfg, [&](double s, const State& y) {
      if (s != s0) fwd.push_back(node_at(s, y));
    });
  }
  std::reverse(back.begin(), back.end());
  back.insert(back.end(), fwd.begin(), fwd.end());
  return CurvePath(std::move(back), s0);
}

}  // namespace bscroll
