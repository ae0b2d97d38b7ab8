#include "bscroll/singularity.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_math.h>
#include <gsl/gsl_roots.h>

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <functional>
#include <memory>
#include <numbers>
#include <sstream>

#include "bscroll/errors.hpp"

namespace bscroll {

const char* kind_name(SingularKind k) {
  switch (k) {
    case SingularKind::CuspidalEdge: return "cuspidal_edge";
    case SingularKind::Swallowtail: return "swallowtail";
    case SingularKind::CuspidalCrossCap: return "cuspidal_cross_cap";
    case SingularKind::FrontOther: return "front_other";
    case SingularKind::NonFrontDegenerate: return "non_front_degenerate";
    case SingularKind::Unbounded: return "unbounded";
  }
  return "?";
}

bool is_front_kind(SingularKind k) {
  return k == SingularKind::CuspidalEdge || k == SingularKind::Swallowtail || k == SingularKind::FrontOther;
}

std::optional<double> singular_t(const NullFrame& f) {
  const double B3 = f.b().x3;
  if (std::fabs(B3) < kUnboundedB3) return std::nullopt;
  return -f.c().x3 / (f.H * B3);
}

CurveJets cL_jets(const NullFrame& f) {
  const Vec3L A = f.a(), B = f.b(), C = f.c();
  if (std::fabs(B.x3) < kUnboundedB3) {
    throw UnboundedCurve("singular curve escapes at s = " + std::to_string(f.s) + " (B_3 = 0)");
  }
  if (order(f.A) < 1 || order(f.B) < 2 || order(f.C) < 2) {
    throw InputError("c_L'' needs frame jets of order >= 2");
  }
  const double H = f.H, k2 = f.kappa2.value();
  const Jet t = -f.C.x3 / (H * f.B.x3);
  const double t0 = t.value(), t1 = t.derivative(1), t2 = t.derivative(2);
  const Vec3L B1 = derivative(f.B, 1), B2 = derivative(f.B, 2), A1 = derivative(f.A, 1);

  CurveJets out;
  out.cL1 = A + t1 * B + t0 * B1;
  out.cL2 = A1 + t2 * B + (2.0 * t1) * B1 + t0 * B2;
  const double r = C.x3 / B.x3;
  out.cL1_closed = A + (-A.x3 / B.x3 - k2 / H + r * r) * B - r * C;
  return out;
}

NotCEResiduals notce_residuals(const NullFrame& f) {
  const Vec3L A = f.a(), B = f.b(), C = f.c();
  return {(f.kappa2.value() / f.H) * B.x3 * B.x3 - 1.0, 2.0 * A.x3 * B.x3 + 1.0 - C.x3 * C.x3};
}

SingularPoint classify_point(const NullFrame& f, const Tolerances& tol) {
  SingularPoint p;
  p.s = f.s;
  auto& d = p.diagnostics;
  d.kappa2 = f.kappa2.value();
  d.kappa2_prime = f.kappa2.order() >= 1 ? f.kappa2.derivative(1) : 0.0;
  d.S_h = -f.H * d.kappa2;
  d.S_h_prime = -f.H * d.kappa2_prime;
  d.notce = notce_residuals(f);
  p.t = singular_t(f);
  if (!p.t) {
    p.kind = SingularKind::Unbounded;
    return p;
  }
  const CurveJets c = cL_jets(f);
  d.cL1 = c.cL1;
  d.cL2 = c.cL2;

  if (std::fabs(d.kappa2) <= tol.root) {
    p.kind = std::fabs(d.kappa2_prime) > tol.root ? SingularKind::CuspidalCrossCap
                                                  : SingularKind::NonFrontDegenerate;
    return p;
  }

  const double par = std::max(std::fabs(c.cL1.x1), std::fabs(c.cL1.x2));
  const double res = std::max(std::fabs(d.notce.r1), std::fabs(d.notce.r2));
  if ((par < tol.root && res > tol.consistency) || (res < tol.root && par > tol.consistency)) {
    std::ostringstream os;
    os.precision(17);
    os << "classifier criteria disagree at s = " << f.s << ": parallel test " << par << ", NotCE residuals "
       << res;
    throw ClassifierInconsistency(os.str());
  }
  if (par < tol.root) {
    const bool cL2_parallel = std::fabs(c.cL2.x1) < tol.root && std::fabs(c.cL2.x2) < tol.root;
    p.kind = cL2_parallel ? SingularKind::FrontOther : SingularKind::Swallowtail;
  } else {
    p.kind = SingularKind::CuspidalEdge;
  }
  return p;
}

namespace {

struct GslHandlerOff {
  GslHandlerOff() { gsl_set_error_handler_off(); }
};

// Brent refinement of a sign change of fn on [a, b]. Exceptions thrown by fn
// are carried across the C callback and rethrown.
std::optional<double> brent(const std::function<double(double)>& fn, double a, double b) {
  static const GslHandlerOff handler_off;
  struct Ctx {
    const std::function<double(double)>* fn;
    std::exception_ptr error;
  } ctx{&fn, nullptr};
  gsl_function F;
  F.function = [](double x, void* p) -> double {
    auto* c = static_cast<Ctx*>(p);
    try {
      return (*c->fn)(x);
    } catch (...) {
      c->error = std::current_exception();
      return GSL_NAN;
    }
  };
  F.params = &ctx;

  std::unique_ptr<gsl_root_fsolver, decltype(&gsl_root_fsolver_free)> solver(
      gsl_root_fsolver_alloc(gsl_root_fsolver_brent), &gsl_root_fsolver_free);
  if (gsl_root_fsolver_set(solver.get(), &F, a, b) != GSL_SUCCESS) {
    if (ctx.error) std::rethrow_exception(ctx.error);
    return std::nullopt;
  }
  for (int iter = 0; iter < 200; ++iter) {
    const int st = gsl_root_fsolver_iterate(solver.get());
    if (ctx.error) std::rethrow_exception(ctx.error);
    if (st != GSL_SUCCESS) return std::nullopt;
    const double lo = gsl_root_fsolver_x_lower(solver.get());
    const double hi = gsl_root_fsolver_x_upper(solver.get());
    if (gsl_root_test_interval(lo, hi, 0.0, 4.0 * GSL_DBL_EPSILON) == GSL_SUCCESS) {
      return gsl_root_fsolver_root(solver.get());
    }
  }
  return std::nullopt;
}

bool opposite(double a, double b) { return (a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0); }

std::string warn(const std::string& what, double a, double b) {
  std::ostringstream os;
  os.precision(17);
  os << "WARN: " << what << " bracket [" << a << ", " << b << "] did not converge";
  return os.str();
}

}  // namespace

SingularReport scan_singularities(const FrameSource& frames, double lo, double hi, int grid_n,
                                  const Tolerances& tol) {
  if (grid_n < 16) throw InputError("singularity scan needs a grid of at least 16 points");
  if (!(lo < hi)) throw InputError("singularity scan needs lo < hi");

  SingularReport rep;
  rep.lo = lo;
  rep.hi = hi;
  const auto n = static_cast<std::size_t>(grid_n);
  std::vector<double> s(n), k2(n), b3(n);
  std::vector<std::array<double, 2>> c1(n);
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = i + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    const NullFrame f = frames(s[i]);
    k2[i] = f.k2();
    b3[i] = f.b().x3;
    rep.curve.push_back({s[i], singular_t(f)});
    if (std::fabs(b3[i]) >= kUnboundedB3) {
      const Vec3L v = cL_jets(f).cL1;
      c1[i] = {v.x1, v.x2};
    }
  }

  std::vector<double> roots;
  auto k2_at = [&](double x) { return frames(x).k2(); };
  for (std::size_t i = 0; i < n; ++i) {
    if (std::fabs(k2[i]) <= tol.root) roots.push_back(s[i]);
    if (i + 1 < n && opposite(k2[i], k2[i + 1]) && std::fabs(k2[i]) > tol.root &&
        std::fabs(k2[i + 1]) > tol.root) {
      if (auto r = brent(k2_at, s[i], s[i + 1])) {
        roots.push_back(*r);
      } else {
        rep.warnings.push_back(warn("kappa2", s[i], s[i + 1]));
      }
    }
  }

  // Swallowtail candidates: simultaneous zeros of the first two components
  // of c_L', both away from B_3 = 0.
  std::array<std::vector<double>, 2> comp_roots;
  for (int c = 0; c < 2; ++c) {
    auto fn = [&, c](double x) { return cL_jets(frames(x)).cL1[c]; };
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (std::fabs(b3[i]) < kUnboundedB3 || std::fabs(b3[i + 1]) < kUnboundedB3 || opposite(b3[i], b3[i + 1])) {
        continue;
      }
      const double a = c1[i][static_cast<std::size_t>(c)], b = c1[i + 1][static_cast<std::size_t>(c)];
      if (a == 0.0) {
        comp_roots[static_cast<std::size_t>(c)].push_back(s[i]);
      } else if (opposite(a, b)) {
        if (auto r = brent(fn, s[i], s[i + 1])) {
          comp_roots[static_cast<std::size_t>(c)].push_back(*r);
        } else {
          rep.warnings.push_back(warn(c == 0 ? "c_L' first component" : "c_L' second component", s[i], s[i + 1]));
        }
      }
    }
    if (c1[n - 1][static_cast<std::size_t>(c)] == 0.0 && std::fabs(b3[n - 1]) >= kUnboundedB3) {
      comp_roots[static_cast<std::size_t>(c)].push_back(s[n - 1]);
    }
  }
  for (double r : comp_roots[0]) {
    for (double q : comp_roots[1]) {
      if (std::fabs(r - q) < tol.cluster) {
        roots.push_back(r);
        break;
      }
    }
  }

  std::sort(roots.begin(), roots.end());
  double last = -INFINITY;
  for (double r : roots) {
    if (r - last < tol.cluster) continue;
    last = r;
    rep.points.push_back(classify_point(frames(r), tol));
  }
  return rep;
}

NullFrame transform_frame(const LorentzTransform& O, const NullFrame& f) {
  if (O.det() < 0.0) {
    throw OrientationBreak("Lorentz transform with det = -1 maps the frame to one with OA x OB = -OC");
  }
  NullFrame g = f;
  g.A = O.apply(f.A);
  g.B = O.apply(f.B);
  g.C = O.apply(f.C);
  return g;
}

FrameSource transformed_frames(const LorentzTransform& O, FrameSource frames) {
  if (O.det() < 0.0) {
    throw OrientationBreak("Lorentz transform with det = -1 maps the frame to one with OA x OB = -OC");
  }
  return [O, frames = std::move(frames)](double s) { return transform_frame(O, frames(s)); };
}

InvarianceReport invariance_check(const FrameSource& frames, const LorentzTransform& O, double lo, double hi,
                                  int grid_n, int samples, const Tolerances& tol) {
  InvarianceReport rep;
  auto compare = [&](double s, SingularKind k) {
    InvarianceEntry e;
    e.s = s;
    e.kind = k;
    e.kind_O = classify_point(transform_frame(O, frames(s)), tol).kind;
    if (k != SingularKind::Unbounded && e.kind_O != SingularKind::Unbounded) {
      e.front_match = is_front_kind(k) == is_front_kind(e.kind_O);
      e.ccr_match = (k == SingularKind::CuspidalCrossCap) == (e.kind_O == SingularKind::CuspidalCrossCap);
      rep.front_preserved = rep.front_preserved && e.front_match;
      rep.ccr_preserved = rep.ccr_preserved && e.ccr_match;
      if (is_front_kind(k) && e.kind_O != k) ++rep.kind_differences;
    }
    return e;
  };
  for (const SingularPoint& p : scan_singularities(frames, lo, hi, grid_n, tol).points) {
    rep.points.push_back(compare(p.s, p.kind));
  }
  for (int i = 0; i < samples; ++i) {
    const double s = samples == 1 ? lo : lo + (hi - lo) * i / (samples - 1.0);
    rep.samples.push_back(compare(s, classify_point(frames(s), tol).kind));
  }
  return rep;
}

namespace {

struct NotCEProblem {
  Vec3L A, B, C;
  double ratio;  // k2 / H

  LorentzTransform transform(const Eigen::Vector3d& p) const {
    LorentzParams lp;
    lp.phi = p(0);
    lp.chi = p(1);
    lp.psi = p(2);
    return LorentzTransform::from_params(lp);
  }

  Eigen::Vector2d residual(const Eigen::Vector3d& p) const {
    const LorentzTransform O = transform(p);
    const Vec3L a = O.apply(A), b = O.apply(B), c = O.apply(C);
    return {ratio * b.x3 * b.x3 - 1.0, 2.0 * a.x3 * b.x3 + 1.0 - c.x3 * c.x3};
  }
};

}  // namespace

NotCEResult find_notce_transform(const NullFrame& f, double tol) {
  const double ratio = f.kappa2.value() / f.H;
  if (!(ratio > 0.0)) {
    throw PreconditionError("a non-cuspidal-edge front point needs k2/H > 0 (k2/H = " + std::to_string(ratio) +
                            ")");
  }
  const NotCEProblem prob{f.a(), f.b(), f.c(), ratio};
  NotCEResult out;

  const Eigen::Vector2d r0 = prob.residual(Eigen::Vector3d::Zero());
  if (r0.cwiseAbs().maxCoeff() < tol) {
    out.identity = true;
    out.residuals = {r0(0), r0(1)};
    return out;
  }

  struct Candidate {
    double err;
    Eigen::Vector3d p;
  };
  std::vector<Candidate> cands;
  constexpr int kAngles = 24, kRapidities = 13;
  for (int i = 0; i < kAngles; ++i) {
    for (int j = 0; j < kRapidities; ++j) {
      for (int k = 0; k < kAngles; ++k) {
        const Eigen::Vector3d p(-std::numbers::pi + 2.0 * std::numbers::pi * i / kAngles, 0.25 * j,
                                -std::numbers::pi + 2.0 * std::numbers::pi * k / kAngles);
        cands.push_back({prob.residual(p).norm(), p});
      }
    }
  }
  std::partial_sort(cands.begin(), cands.begin() + 8, cands.end(),
                    [](const Candidate& a, const Candidate& b) { return a.err < b.err; });

  Eigen::Vector2d best_r = r0;
  for (int c = 0; c < 8; ++c) {
    Eigen::Vector3d p = cands[static_cast<std::size_t>(c)].p;
    Eigen::Vector2d r = prob.residual(p);
    for (int iter = 0; iter < 100 && r.cwiseAbs().maxCoeff() >= 1e-3 * tol; ++iter) {
      Eigen::Matrix<double, 2, 3> J;
      constexpr double h = 1e-7;
      for (int k = 0; k < 3; ++k) {
        Eigen::Vector3d dp = Eigen::Vector3d::Zero();
        dp(k) = h;
        J.col(k) = (prob.residual(p + dp) - prob.residual(p - dp)) / (2.0 * h);
      }
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(J, Eigen::ComputeThinU | Eigen::ComputeThinV);
      svd.setThreshold(1e-6);
      const Eigen::Vector3d step = -svd.solve(r);
      double damp = 1.0;
      bool improved = false;
      for (int k = 0; k < 40; ++k, damp *= 0.5) {
        const Eigen::Vector3d q = p + damp * step;
        const Eigen::Vector2d rq = prob.residual(q);
        if (rq.norm() < r.norm()) {
          p = q;
          r = rq;
          improved = true;
          break;
        }
      }
      if (!improved) break;
    }
    if (r.norm() < best_r.norm()) best_r = r;
    if (r.cwiseAbs().maxCoeff() < tol) {
      out.O = prob.transform(p);
      out.residuals = {r(0), r(1)};
      return out;
    }
  }
  throw NoSolutionFound(best_r(0), best_r(1));
}

}  // namespace bscroll
