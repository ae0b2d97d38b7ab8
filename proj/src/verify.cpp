#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "bscroll/commands.hpp"
#include "bscroll/errors.hpp"
#include "bscroll/expr.hpp"
#include "bscroll/integrator.hpp"
#include "bscroll/null_frame.hpp"
#include "bscroll/surface.hpp"

namespace bscroll {

using nlohmann::json;

namespace {

class Checks {
 public:
  // residual <= tolerance passes; with lower_bound, residual > tolerance does.
  void add(const std::string& name, double residual, double tolerance, bool lower_bound = false) {
    const bool pass = std::isfinite(residual) && (lower_bound ? residual > tolerance : residual <= tolerance);
    all_pass_ = all_pass_ && pass;
    items_.push_back({{"name", name},
                      {"residual", std::isfinite(residual) ? json(residual) : json(nullptr)},
                      {"tolerance", tolerance},
                      {"bound", lower_bound ? "min" : "max"},
                      {"pass", pass}});
  }
  const json& items() const { return items_; }
  bool pass() const { return all_pass_; }

 private:
  json items_ = json::array();
  bool all_pass_ = true;
};

struct Max {
  double v = 0.0;
  void operator()(double x) { v = std::isnan(x) ? NAN : std::max(v, x); }
};

double rel(double diff, double scale) { return std::fabs(diff) / std::max(1.0, std::fabs(scale)); }

std::vector<double> grid(double lo, double hi, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1.0));
  return v;
}

}  // namespace

json cmd_verify(const RunConfig& cfg) {
  cfg.validate();
  const double H = cfg.H;
  const Expr h = parse(cfg.generator);
  const FrameSource frames = generator_frames(h, H);
  const auto [lo, hi] = cfg.s_range;
  const CurvePath path = integrate_curve(frames, cfg.s0(), lo, hi, cfg.integrator);
  const auto ss = grid(lo, hi, cfg.ns);
  const auto ts = grid(cfg.t_range.first, cfg.t_range.second, cfg.nt);
  const double fd_tol_forms = cfg.fd_tol.value_or(1e-6);
  const double fd_tol_box = cfg.fd_tol.value_or(1e-4);

  std::map<double, NullFrame> fr;
  for (double s : ss) fr.emplace(s, frames(s));

  Checks checks;

  // Frames.
  {
    Max alg, fs, bnorm, bori, k2B, g3, detB;
    for (const auto& [s, f] : fr) {
      const FrameResiduals r = validate_frame(f);
      alg(r.max_algebraic());
      fs(r.max_frenet());
      bnorm(r.at("B_prime_norm"));
      bori(r.at("B_orientation"));
      const double k2 = f.k2();
      k2B(rel(kappa2_of_B(f.B, H) - k2, k2));
      // Base curve gamma' = A: <gamma''', gamma'''> = k2'^2 - 2 H k2^3.
      const Vec3L A2 = derivative(f.A, 2);
      const double k2p = f.kappa2.derivative(1);
      const double g3_expected = k2p * k2p - 2.0 * H * k2 * k2 * k2;
      g3(rel(mdot(A2, A2) - g3_expected, g3_expected));
      const double d = det3(f.b(), derivative(f.B, 1), derivative(f.B, 2));
      detB(rel(d - H * H * H, H * H * H));
    }
    checks.add("frame_algebraic_invariants", alg.v, 1e-9);
    checks.add("frame_frenet_serret", fs.v, 1e-8);
    checks.add("frame_B_prime_norm", bnorm.v, 1e-9);
    checks.add("frame_B_orientation", bori.v, 1e-12);
    // The null curve with derivative -B carries the pseudo-arclength
    // normalization: <B',B'> = H^2 above and <B'',B''> = 2 H^3 k_gamma here.
    checks.add("kappa2_of_B_vs_schwarzian", k2B.v, 1e-10);
    checks.add("curve_third_derivative_norm", g3.v, 1e-8);
    checks.add("det_B_Bp_Bpp", detB.v, 1e-9);
  }

  // Base curve.
  {
    Max nul, arc;
    for (const CurveNode& n : path.samples()) {
      nul(rel(mdot(n.dgamma, n.dgamma), mdot(n.dgamma, n.dgamma) + 2.0 * n.dgamma.x1 * n.dgamma.x1));
      const double k2 = frames(n.s).k2();
      arc(rel(mdot(n.ddgamma, n.ddgamma) - k2 * k2, k2 * k2));
    }
    checks.add("curve_nullity", nul.v, 1e-12);
    checks.add("curve_second_derivative_norm", arc.v, 1e-8);

    IntegratorConfig half = cfg.integrator;
    half.abs_tol *= 0.5;
    half.rel_tol *= 0.5;
    const CurvePath p2 = integrate_curve(frames, cfg.s0(), lo, hi, half);
    Max conv;
    for (double s : {lo, hi}) {
      const CurvePoint a = path.dense_eval(s), b = p2.dense_eval(s);
      conv(max_abs(a.gamma - b.gamma) / (1.0 + max_abs(a.gamma)));
    }
    checks.add("curve_tolerance_halving", conv.v, 10.0 * cfg.integrator.abs_tol);

    Max dense;
    const auto& nodes = path.samples();
    const std::size_t step = std::max<std::size_t>(1, nodes.size() / 6);
    for (std::size_t i = 0; i + 1 < nodes.size(); i += step) {
      const double mid = 0.5 * (nodes[i].s + nodes[i + 1].s);
      const double s0 = cfg.s0();
      const CurvePath direct = integrate_curve(frames, s0, std::min(s0, mid), std::max(s0, mid), cfg.integrator);
      const CurvePoint a = path.dense_eval(mid), b = direct.dense_eval(mid);
      dense(std::max(max_abs(a.gamma - b.gamma), std::fabs(a.J - b.J)));
    }
    checks.add("dense_output_vs_reintegration", dense.v, 1e-8);
  }

  // Surfaces.
  {
    Max unit, orth, first, mean, gauss, fd_forms, box, g_round, g_dual;
    int box_sign = 0;
    bool box_consistent = true;
    const double d = cfg.fd_step;
    for (const auto& [s, f] : fr) {
      const bool interior = s - 1e-2 >= lo && s + 1e-2 <= hi;
      for (double t : ts) {
        const Vec3L N = gauss_map_L(f, t);
        const Tangents tg = bscroll_tangents(f, t);
        unit(std::fabs(mdot(N, N) - 1.0));
        orth(std::max(rel(mdot(N, tg.fs), euclid_norm(tg.fs)), rel(mdot(N, tg.ft), euclid_norm(tg.ft))));
        const FundamentalForms ff = fundamental_forms(f, t);
        const double k1 = f.kappa1.value();
        first(std::max({std::fabs(ff.I(0, 0) - (2.0 * t * k1 + t * t * H * H)) / (1.0 + t * t * H * H),
                        std::fabs(ff.I(0, 1) + 1.0), std::fabs(ff.I(1, 1))}));
        mean(rel(ff.H_mean - H, H));
        gauss(rel(ff.K_gauss - H * H, H * H));

        if (interior) {
          // Forms from central differences of f_L and N_L.
          const NullFrame fp = frames(s + 1e-4), fm = frames(s - 1e-4);
          const double e = 1e-4;
          const Vec3L fs = (bscroll_point(fp, path, t) - bscroll_point(fm, path, t)) / (2.0 * e);
          const Vec3L ft = (bscroll_point(f, path, t + e) - bscroll_point(f, path, t - e)) / (2.0 * e);
          const Vec3L Ns = (gauss_map_L(fp, t) - gauss_map_L(fm, t)) / (2.0 * e);
          const Vec3L Nt = (gauss_map_L(f, t + e) - gauss_map_L(f, t - e)) / (2.0 * e);
          Eigen::Matrix2d I, II;
          I << mdot(fs, fs), mdot(fs, ft), mdot(ft, fs), mdot(ft, ft);
          II << -mdot(fs, Ns), -mdot(fs, Nt), -mdot(ft, Ns), -mdot(ft, Nt);
          const double scale = 1.0 + I.cwiseAbs().maxCoeff() + ff.II.cwiseAbs().maxCoeff();
          fd_forms(std::max((I - ff.I).cwiseAbs().maxCoeff(), (II - ff.II).cwiseAbs().maxCoeff()) / scale);

          if (s - d >= lo && s + d <= hi) {
            const BoxResult b = box_residual(frames, H, s, t, d);
            const Vec3L N0 = gauss_map_L(f, t);
            box(b.residual / (1.0 + max_abs(N0) * (1.0 + t * t)));
            if (box_sign == 0) box_sign = b.sign;
            box_consistent = box_consistent && b.sign == box_sign;
          }
        }

        if (std::fabs(1.0 - N.x3) > 1e-6) {
          const ParaComplex g = normal_gauss_map(N);
          g_round(max_abs(normal_from_gauss_map(g) - N) / (1.0 + max_abs(N)));
          const JacobianMetrics m = nil3_jacobian_metrics(f, path, t);
          if (m.sigma_min > 1e-3 && std::fabs(1.0 - g.sqmod()) > 1e-3) {
            if (auto gd = nil3_gauss_map_direct(f, path, t)) {
              g_dual(std::max(std::fabs(gd->re - g.re), std::fabs(gd->im - g.im)) /
                     (1.0 + std::fabs(g.re) + std::fabs(g.im)));
            }
          }
        }
      }
    }
    checks.add("normal_unit", unit.v, 1e-10);
    checks.add("normal_orthogonal", orth.v, 1e-9);
    checks.add("first_form_entries", first.v, 1e-9);
    checks.add("mean_curvature", mean.v, 1e-10);
    checks.add("gauss_curvature", gauss.v, 1e-10);
    checks.add("fd_fundamental_forms", fd_forms.v, fd_tol_forms);
    checks.add("box_eigenvalue", box.v, fd_tol_box);
    checks.add("box_sign_consistent", box_consistent ? 0.0 : 1.0, 0.0);
    checks.add("gauss_map_roundtrip", g_round.v, 1e-10);
    checks.add("gauss_map_duality", g_dual.v, 1e-8);
    if (box_sign == 0) box_sign = -1;

    // Singular set.
    Max on_curve, g_unit, rank, closed, e3;
    double nondeg = INFINITY;
    for (const auto& [s, f] : fr) {
      const auto t = singular_t(f);
      if (!t) continue;
      const Vec3L N = gauss_map_L(f, *t);
      on_curve(std::fabs(N.x3) / (1.0 + std::fabs(*t) * max_abs(f.b())));
      g_unit(std::fabs(normal_gauss_map(N).sqmod() - 1.0));
      const JacobianMetrics m = nil3_jacobian_metrics(f, path, *t);
      rank(m.sigma_min / (1.0 + std::fabs(*t)));
      nondeg = std::min(nondeg, std::fabs(H * f.b().x3));
      const CurveJets c = cL_jets(f);
      closed(max_abs(c.cL1 - c.cL1_closed) / (1.0 + max_abs(c.cL1)));
      e3(rel(c.cL1.x3 + f.k2() * f.b().x3 / H, max_abs(c.cL1)));
    }
    checks.add("singular_set_normal_e3", on_curve.v, 1e-12);
    checks.add("singular_set_gauss_map_unit", g_unit.v, 1e-8);
    checks.add("singular_set_rank_drop", rank.v, 1e-6);
    checks.add("singular_set_nondegenerate", std::isfinite(nondeg) ? nondeg : 0.0, cfg.tol.root, true);
    checks.add("cL_closed_vs_direct", closed.v, 1e-9);
    checks.add("cL_e3_component", e3.v, 1e-10);

    json singular;
    bool consistent = true;
    double ce_sign = 0.0;
    try {
      const SingularReport rep = scan_singularities(frames, lo, hi, std::max(cfg.ns, 16), cfg.tol);
      std::map<std::string, int> counts;
      for (const SingularPoint& p : rep.points) {
        ++counts[kind_name(p.kind)];
        if (p.kind == SingularKind::Swallowtail || p.kind == SingularKind::FrontOther) {
          ce_sign = std::max(ce_sign, p.diagnostics.S_h);
        }
      }
      for (double s : ss) {
        const SingularPoint p = classify_point(fr.at(s), cfg.tol);
        if (is_front_kind(p.kind) && p.kind != SingularKind::CuspidalEdge) ce_sign = std::max(ce_sign, p.diagnostics.S_h);
      }
      json pts = json::array();
      for (const SingularPoint& p : rep.points) pts.push_back({{"s", p.s}, {"kind", kind_name(p.kind)}});
      singular = {{"points", pts}, {"kind_counts", counts}, {"warnings", rep.warnings}};
    } catch (const ClassifierInconsistency& e) {
      consistent = false;
      singular = {{"error", e.what()}};
    }
    checks.add("classifier_criteria_agree", consistent ? 0.0 : 1.0, 0.0);
    checks.add("non_ce_front_has_negative_schwarzian", ce_sign, 0.0);

    return {{"generator", cfg.generator},
            {"H", H},
            {"s_range", json::array({lo, hi})},
            {"t_range", json::array({cfg.t_range.first, cfg.t_range.second})},
            {"fd_step", cfg.fd_step},
            {"checks", checks.items()},
            {"box_sign", box_sign > 0 ? "+2H^2" : "-2H^2"},
            {"singular", singular},
            {"pass", checks.pass()}};
  }
}

}  // namespace bscroll
