// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 when
// any criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "bscroll/errors.hpp"
#include "bscroll/expr.hpp"
#include "bscroll/integrator.hpp"
#include "bscroll/jet.hpp"
#include "bscroll/null_frame.hpp"
#include "bscroll/singularity.hpp"
#include "bscroll/surface.hpp"
#include "support.hpp"

using namespace bscroll;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }

  void summary(const std::string& s) {
    if (pass) detail = s;
  }
};

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

struct Generator {
  const char* text;
  double lo, hi;
  double h_max;  // bound on |h| over [lo, hi], used for Moebius perturbations
};

const std::vector<Generator> kExamples{
    {"tanh(s)", -2.0, 2.0, 1.0}, {"s + s^3", -1.0, 1.0, 2.0}, {"cot(exp(s)/2)", -1.0, 1.0, 5.5}};

const double kRoot6 = 1.0 / std::sqrt(6.0);
const double kCubicSp = 16.0 * std::sqrt(2.0 / 3.0);

Outcome schwarzian_golden() {
  Outcome o;
  double worst[3] = {0, 0, 0};
  const Expr th = parse("tanh(s)"), cu = parse("s + s^3"), co = parse("cot(exp(s)/2)");
  for (int i = 0; i <= 200; ++i) {
    const double s = -2.0 + 0.02 * i;
    worst[0] = std::max(worst[0], std::fabs(schwarzian(th.eval_jet(s, 5)).value() + 2.0));
    const double u = -1.0 + 0.01 * i, q = 1 + 3 * u * u;
    worst[1] = std::max(worst[1], std::fabs(schwarzian(cu.eval_jet(u, 5)).value() - (6 - 36 * u * u) / (q * q)));
    worst[2] = std::max(worst[2], std::fabs(schwarzian(co.eval_jet(u, 5)).value() - 0.5 * (std::exp(2 * u) - 1)));
  }
  o.require(worst[0] < 1e-12 && worst[1] < 1e-12 && worst[2] < 1e-10, "tolerance exceeded");
  o.summary(fmt("max err tanh %.1e, s+s^3 %.1e", worst[0], worst[1]) + fmt(", cot %.1e", worst[2]));
  return o;
}

Outcome cubic_cross_caps() {
  Outcome o;
  double ds = 0, dsp = 0;
  for (double H : {1.0, -1.0, 0.5}) {
    const SingularReport r = scan_singularities(generator_frames(parse("s + s^3"), H), -1.0, 1.0);
    o.require(r.points.size() == 2, fmt("H=%g: %g points", H, static_cast<double>(r.points.size())));
    if (r.points.size() != 2) continue;
    for (int k = 0; k < 2; ++k) {
      const SingularPoint& p = r.points[static_cast<std::size_t>(k)];
      const double sign = k == 0 ? -1.0 : 1.0;
      o.require(p.kind == SingularKind::CuspidalCrossCap, std::string("kind ") + kind_name(p.kind));
      ds = std::max(ds, std::fabs(p.s - sign * kRoot6));
      dsp = std::max(dsp, std::fabs(p.diagnostics.S_h_prime + sign * kCubicSp));
    }
  }
  o.require(ds < 1e-10 && dsp < 1e-8, "location or S(h)' off");
  if (o.pass) o.detail = fmt("H in {1,-1,0.5}: |ds| %.1e, |dS'| %.1e", ds, dsp);
  return o;
}

Outcome cot_cross_cap() {
  Outcome o;
  const SingularReport r = scan_singularities(generator_frames(parse("cot(exp(s)/2)"), 1.0), -1.0, 1.0);
  o.require(r.points.size() == 1, "expected one point");
  if (!o.pass) return o;
  const SingularPoint& p = r.points[0];
  o.require(p.kind == SingularKind::CuspidalCrossCap, std::string("kind ") + kind_name(p.kind));
  o.require(std::fabs(p.s) < 1e-10 && std::fabs(p.diagnostics.S_h_prime - 1.0) < 1e-10, "location or S(h)' off");
  if (o.pass) o.detail = fmt("s = %.2e, S(h)' = %.15f", p.s, p.diagnostics.S_h_prime);
  return o;
}

Outcome tanh_swallowtails() {
  Outcome o;
  const double r2 = std::sqrt(2.0), r3 = std::sqrt(3.0), r6 = std::sqrt(6.0);
  const FrameSource fr = generator_frames(parse("tanh(s)"), 1.0);
  double e1 = 0, e2 = 0, ds = 0;
  for (int side : {1, -1}) {
    const SingularReport r = side > 0 ? scan_singularities(fr, 0.1, 1.0) : scan_singularities(fr, -1.0, -0.1);
    o.require(r.points.size() == 1, "expected one point per side");
    if (r.points.size() != 1) continue;
    const SingularPoint& p = r.points[0];
    o.require(p.kind == SingularKind::Swallowtail, std::string("kind ") + kind_name(p.kind));
    ds = std::max(ds, std::fabs(p.s - 0.25 * std::log(5 + side * 2 * r6)));
    const Vec3L c1 = p.diagnostics.cL1, c2 = p.diagnostics.cL2;
    e1 = std::max(e1, max_abs(c1 - Vec3L{0, 0, side * r2}));
    e2 = std::max(e2, max_abs(c2 - Vec3L{-side * 6 * r2, side * 2 * r6, 2 * r3}));
  }
  o.require(ds < 1e-8 && e1 < 1e-8 && e2 < 1e-6, "value off");
  if (o.pass) o.detail = fmt("s+ = %.10f, |ds| %.1e", 0.25 * std::log(5 + 2 * r6), ds) + fmt(", c_L' %.1e, c_L'' %.1e", e1, e2);
  return o;
}

Outcome closed_form_surface() {
  Outcome o;
  const FrameSource fr = generator_frames(parse("tanh(s)"), 1.0);
  const CurvePath path = integrate_curve(fr, 0.0, -1.0, 1.0);
  const double c = nil3_point(fr(0.0), path, 0.0).x3 - oracle::tanh_f3(0.0, 0.0);
  double eL = 0, e12 = 0, e3 = 0;
  for (int i = 0; i <= 100; ++i) {
    const double s = -1.0 + 0.02 * i;
    const NullFrame f = fr(s);
    for (int j = 0; j <= 10; ++j) {
      const double t = -2.0 + 0.4 * j;
      const Vec3L fL = bscroll_point(f, path, t) + Vec3L{0, 0, -1};
      const Vec3L ref = oracle::tanh_fL(s, t);
      eL = std::max(eL, max_abs(fL - ref));
      const Vec3L fn = nil3_point(f, path, t);
      e12 = std::max(e12, std::max(std::fabs(fn.x1 - ref.x1), std::fabs(fn.x2 - ref.x2)));
      e3 = std::max(e3, std::fabs(fn.x3 - c - oracle::tanh_f3(s, t)));
    }
  }
  o.require(eL < 1e-8 && e12 < 1e-8 && e3 < 1e-8, "mismatch");
  o.summary(fmt("101x11 grid: f_L %.1e, f^1,f^2 %.1e", eL, e12) + fmt(", f^3 %.1e (constant %.3f)", e3, c));
  return o;
}

Outcome frame_invariants() {
  Outcome o;
  std::mt19937_64 rng(2024);
  double alg = 0, fs = 0;
  int frames = 0;
  for (const Generator& g : kExamples) {
    std::vector<std::string> gens{g.text};
    for (int k = 0; k < 20; ++k) gens.push_back(oracle::apply_moebius(oracle::random_moebius(rng, g.h_max), g.text));
    for (const std::string& text : gens) {
      const Expr h = parse(text);
      for (int i = 0; i <= 200; ++i) {
        const double s = g.lo + (g.hi - g.lo) * i / 200.0;
        const FrameResiduals r = validate_frame(frame_from_h(h, 1.0, s));
        alg = std::max(alg, r.max_algebraic());
        fs = std::max(fs, r.max_frenet());
        ++frames;
      }
    }
  }
  o.require(alg < 1e-9 && fs < 1e-8, "residual too large");
  o.summary(fmt("%g frames, algebraic %.1e", frames, alg) + fmt(", Frenet-Serret %.1e", fs));
  return o;
}

Outcome fundamental_form_law() {
  Outcome o;
  std::mt19937_64 rng(7);
  double eH = 0, eK = 0;
  for (const Generator& g : kExamples) {
    const FrameSource fr = generator_frames(parse(g.text), 1.0);
    std::uniform_real_distribution<double> us(g.lo, g.hi), ut(-2.0, 2.0);
    for (int i = 0; i < 1000; ++i) {
      const FundamentalForms F = fundamental_forms(fr(us(rng)), ut(rng));
      eH = std::max(eH, std::fabs(F.H_mean - 1.0));
      eK = std::max(eK, std::fabs(F.K_gauss - 1.0));
    }
  }
  o.require(eH < 1e-10 && eK < 1e-10, "curvature off");
  o.summary(fmt("3000 samples: |H_mean - H| %.1e, |K - H^2| %.1e", eH, eK));
  return o;
}

Outcome box_eigenvalue() {
  Outcome o;
  std::mt19937_64 rng(8);
  double worst = 0;
  int plus = 0, minus = 0;
  for (const Generator& g : kExamples) {
    const FrameSource fr = generator_frames(parse(g.text), 1.0);
    std::uniform_real_distribution<double> us(std::max(g.lo, -1.0), std::min(g.hi, 1.0)), ut(-2.0, 2.0);
    for (int i = 0; i < 100; ++i) {
      const BoxResult r = box_residual(fr, 1.0, us(rng), ut(rng), 1e-3);
      worst = std::max(worst, r.residual);
      (r.sign > 0 ? plus : minus)++;
    }
  }
  o.require(worst < 1e-4, "residual too large");
  o.require(plus == 0 || minus == 0, "sign convention changes between samples");
  o.summary(fmt("300 samples: max residual %.1e, sign ", worst) + (minus ? "-2H^2 (div-grad convention)" : "+2H^2"));
  return o;
}

Outcome singular_set_duality() {
  Outcome o;
  double sig = 0, gm = 0, sig_off = 1e300;
  int samples = 0;
  for (const Generator& g : kExamples) {
    for (double H : {1.0, -0.5}) {
      const FrameSource fr = generator_frames(parse(g.text), H);
      const CurvePath path = integrate_curve(fr, 0.0, g.lo, g.hi);
      for (int i = 0; i <= 40; ++i) {
        const double s = g.lo + (g.hi - g.lo) * (i + 0.37) / 41.0;
        const NullFrame f = fr(s);
        const auto t = singular_t(f);
        // samples with moderate t keep the Jacobian well scaled
        if (!t || std::fabs(*t) > 5.0) continue;
        ++samples;
        const JacobianMetrics on = nil3_jacobian_metrics(f, path, *t);
        sig = std::max(sig, on.sigma_min);
        gm = std::max(gm, std::fabs(normal_gauss_map(f, *t).sqmod() - 1.0));
        sig_off = std::min({sig_off, nil3_jacobian_metrics(f, path, *t + 0.1).sigma_min,
                            nil3_jacobian_metrics(f, path, *t - 0.1).sigma_min});
        const double lp = nil3_jacobian_metrics(f, path, *t + 0.05).lambda;
        const double lm = nil3_jacobian_metrics(f, path, *t - 0.05).lambda;
        o.require(lp * lm < 0.0, fmt("lambda keeps its sign at s = %g", s));
      }
    }
  }
  o.require(samples >= 100, "too few samples");
  o.require(sig < 1e-6 && gm < 1e-8 && sig_off > 1e-3, "duality violated");
  if (o.pass) {
    o.detail = fmt("%g points: sigma_min on curve %.1e", samples, sig) + fmt(", ||g|^2-1| %.1e", gm) +
               fmt(", sigma_min at |dt|=0.1 >= %.1e, lambda changes sign", sig_off);
  }
  return o;
}

Outcome fundamental_theorem() {
  Outcome o;
  const Expr h = parse("tanh(s)");
  const NullFrame init = frame_from_h(h, 1.0, 0.0);
  const FlowResult flow = frame_flow_from_curvatures(parse("0"), parse("2"), 1.0, init, 0.0, 1.0, 101);
  double err = 0;
  for (const NullFrame& f : flow.frames) {
    const NullFrame ref = frame_from_h(h, 1.0, f.s);
    err = std::max({err, max_abs(f.a() - ref.a()), max_abs(f.b() - ref.b()), max_abs(f.c() - ref.c())});
  }
  const FlowResult sine = frame_flow_from_curvatures(parse("0"), parse("sin(s)"), 1.0, init, 0.0, 2 * M_PI, 201);
  o.require(err < 1e-7 && sine.kappa2_recovery < 1e-6, "round trip off");
  o.summary(fmt("k2 = 2 frame error %.1e, sin(s) recovery %.1e", err, sine.kappa2_recovery));
  return o;
}

Outcome moebius_invariance() {
  Outcome o;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> us(-1.0, 1.0);
  double eS = 0, eLoc = 0;
  int others = 0;
  const Expr base = parse("s + s^3");
  for (int k = 0; k < 200; ++k) {
    const Expr h = parse(oracle::apply_moebius(oracle::random_moebius(rng, 2.0), "s + s^3"));
    for (int i = 0; i < 5; ++i) {
      const double s = us(rng);
      const Jet a = schwarzian(h.eval_jet(s, 5)), b = schwarzian(base.eval_jet(s, 5));
      eS = std::max({eS, std::fabs(a.value() - b.value()), std::fabs(a.derivative(1) - b.derivative(1))});
    }
    // CE/SW kinds may change with h; cross caps depend on S(h) alone
    std::vector<double> ccr;
    for (const SingularPoint& p : scan_singularities(generator_frames(h, 1.0), -1.0, 1.0).points) {
      if (p.kind == SingularKind::CuspidalCrossCap) ccr.push_back(p.s);
      if (!is_front_kind(p.kind)) ++others;
    }
    o.require(ccr.size() == 2, "cross-cap count changed");
    if (ccr.size() != 2) continue;
    eLoc = std::max({eLoc, std::fabs(ccr[0] + kRoot6), std::fabs(ccr[1] - kRoot6)});
  }
  o.require(others == 400, "non-front points other than the cross caps");
  o.require(eS < 1e-8 && eLoc < 1e-8, "not invariant");
  o.summary(fmt("200 transforms: S(h), S(h)' drift %.1e, cross-cap drift %.1e", eS, eLoc));
  return o;
}

Outcome lorentz_invariance() {
  Outcome o;
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> ang(-M_PI, M_PI), rap(-1.5, 1.5);
  const FrameSource cubic = generator_frames(parse("s + s^3"), 1.0);
  const FrameSource tanh_fr = generator_frames(parse("tanh(s)"), 1.0);
  int kind_changes = 0;
  for (int k = 0; k < 20; ++k) {
    const LorentzTransform O = LorentzTransform::from_params({ang(rng), rap(rng), ang(rng)});
    const InvarianceReport a = invariance_check(cubic, O, -1.0, 1.0, 64, 50);
    o.require(a.front_preserved && a.ccr_preserved, "status changed for s + s^3");
    o.require(a.points.size() == 2 && a.samples.size() == 50, "unexpected sample count");
    for (const InvarianceEntry& e : a.points) {
      o.require(e.kind_O == SingularKind::CuspidalCrossCap && std::fabs(std::fabs(e.s) - kRoot6) < 1e-10,
                "cross cap lost");
    }
    const InvarianceReport b = invariance_check(tanh_fr, O, -1.0, 1.0, 64, 50);
    o.require(b.front_preserved && b.ccr_preserved, "status changed for tanh");
    kind_changes += b.kind_differences;
  }
  const NullFrame f = tanh_fr(0.0);
  const NotCEResult r = find_notce_transform(f);
  const SingularPoint p = classify_point(transform_frame(r.O, f));
  o.require(std::fabs(r.residuals.r1) < 1e-8 && std::fabs(r.residuals.r2) < 1e-8, "NotCE residuals");
  o.require(p.kind == SingularKind::Swallowtail || p.kind == SingularKind::FrontOther, "re-classified as CE");
  if (o.pass) {
    o.detail = fmt("20 transforms preserve front/CCR status (%g CE/SW changes reported); NotCE |r1| %.1e", kind_changes,
                   std::fabs(r.residuals.r1)) +
               fmt(", |r2| %.1e, kind ", std::fabs(r.residuals.r2)) + kind_name(p.kind);
  }
  return o;
}

Outcome criteria_equivalence() {
  Outcome o;
  int fronts = 0, parallel = 0;
  auto visit = [&](const NullFrame& f, const Tolerances& tol) {
    const SingularPoint p = classify_point(f, tol);  // throws ClassifierInconsistency on disagreement
    if (!is_front_kind(p.kind)) return;
    ++fronts;
    const bool par = std::max(std::fabs(p.diagnostics.cL1.x1), std::fabs(p.diagnostics.cL1.x2)) < tol.root;
    const bool res = std::fabs(p.diagnostics.notce.r1) < tol.root && std::fabs(p.diagnostics.notce.r2) < tol.root;
    if (par) ++parallel;
    if (par != res) {
      const double other = par ? std::max(std::fabs(p.diagnostics.notce.r1), std::fabs(p.diagnostics.notce.r2))
                               : std::max(std::fabs(p.diagnostics.cL1.x1), std::fabs(p.diagnostics.cL1.x2));
      o.require(other < tol.consistency, fmt("tests disagree at s = %.12g", f.s));
    }
  };
  const Tolerances tol;
  std::mt19937_64 rng(13);
  for (const Generator& g : kExamples) {
    std::vector<std::string> gens{g.text};
    for (int k = 0; k < 5; ++k) gens.push_back(oracle::apply_moebius(oracle::random_moebius(rng, g.h_max), g.text));
    for (double H : {1.0, -1.0, 0.5}) {
      for (const std::string& text : gens) {
        const FrameSource fr = generator_frames(parse(text), H);
        for (int i = 0; i <= 400; ++i) visit(fr(g.lo + (g.hi - g.lo) * i / 400.0), tol);
        for (const SingularPoint& p : scan_singularities(fr, g.lo, g.hi, 64, tol).points) visit(fr(p.s), tol);
      }
    }
  }
  o.require(parallel > 0, "no swallowtail point exercised");
  o.summary(fmt("%g front points, %g with c_L' parallel to e3; no disagreement", fronts, parallel));
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"schwarzian golden values", schwarzian_golden},
      {"cuspidal cross caps of s + s^3", cubic_cross_caps},
      {"cuspidal cross cap of cot(e^s/2)", cot_cross_cap},
      {"swallowtails of tanh", tanh_swallowtails},
      {"closed-form surface match", closed_form_surface},
      {"frame invariant suite", frame_invariants},
      {"fundamental-form law", fundamental_form_law},
      {"eigenvalue identity of the Gauss map", box_eigenvalue},
      {"singular-set duality", singular_set_duality},
      {"fundamental-theorem round trip", fundamental_theorem},
      {"Moebius invariance", moebius_invariance},
      {"O(2,1) invariance", lorentz_invariance},
      {"criteria equivalence", criteria_equivalence},
  };
  int failures = 0;
  int n = 0;
  for (const auto& [name, run] : criteria) {
    ++n;
    Outcome out;
    try {
      out = run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    failures += !out.pass;
    std::printf("%s %2d %s: %s\n", out.pass ? "PASS" : "FAIL", n, name, out.detail.c_str());
  }
  std::printf("%d/%d criteria passed\n", n - failures, n);
  return failures == 0 ? 0 : 1;
}
