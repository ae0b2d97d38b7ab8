#include "bscroll/surface.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "bscroll/errors.hpp"

namespace bscroll {

namespace {

Vec3L dB(const NullFrame& f) { return -f.kappa1.value() * f.b() + f.H * f.c(); }

double kappa1_prime(const NullFrame& f) { return f.kappa1.order() >= 1 ? f.kappa1.derivative(1) : 0.0; }

}  // namespace

Vec3L bscroll_point(const NullFrame& f, const CurvePath& path, double t) {
  return path.dense_eval(f.s).gamma + t * f.b();
}

Vec3L gauss_map_L(const NullFrame& f, double t) { return -f.c() - (t * f.H) * f.b(); }

Vec3L nil3_point(const NullFrame& f, const CurvePath& path, double t) {
  const CurvePoint p = path.dense_eval(f.s);
  const Vec3L& g = p.gamma;
  const Vec3L B = f.b();
  const double H = f.H;
  return {g.x1 + t * B.x1, g.x2 + t * B.x2,
          g.x3 - t * B.x3 + H * p.J + t * H * (g.x1 * B.x2 - g.x2 * B.x1)};
}

Tangents bscroll_tangents(const NullFrame& f, double t) { return {f.a() + t * dB(f), f.b()}; }

FundamentalForms forms_from_vectors(const Vec3L& fs, const Vec3L& ft, const Vec3L& fss, const Vec3L& fst,
                                    const Vec3L& ftt, const Vec3L& N) {
  FundamentalForms ff;
  ff.I << mdot(fs, fs), mdot(fs, ft), mdot(ft, fs), mdot(ft, ft);
  ff.II << mdot(fss, N), mdot(fst, N), mdot(fst, N), mdot(ftt, N);
  const Eigen::Matrix2d W = ff.I.inverse() * ff.II;
  ff.H_mean = 0.5 * W.trace();
  ff.K_gauss = W.determinant();
  return ff;
}

FundamentalForms fundamental_forms(const NullFrame& f, double t) {
  const Vec3L A = f.a(), B = f.b(), C = f.c();
  const double k1 = f.kappa1.value(), k2 = f.kappa2.value(), H = f.H;
  const Vec3L B1 = dB(f);
  const Vec3L A1 = k1 * A + k2 * C;
  const Vec3L C1 = H * A + k2 * B;
  const Vec3L B2 = -kappa1_prime(f) * B - k1 * B1 + H * C1;
  return forms_from_vectors(A + t * B1, B, A1 + t * B2, B1, Vec3L{}, gauss_map_L(f, t));
}

BoxResult box_residual(const FrameSource& frames, double H, double s, double t, double h) {
  const NullFrame fm = frames(s - h), f0 = frames(s), fp = frames(s + h);
  auto N = [H](const NullFrame& f, double tt) { return -f.c() - (tt * H) * f.b(); };
  auto a = [H](double tt) { return tt * tt * H * H; };

  const Vec3L u_st = (N(fp, t + h) - N(fp, t - h) - N(fm, t + h) + N(fm, t - h)) / (4.0 * h * h);
  const Vec3L u0 = N(f0, t);
  const Vec3L flux_hi = a(t + 0.5 * h) * (N(f0, t + h) - u0) / h;
  const Vec3L flux_lo = a(t - 0.5 * h) * (u0 - N(f0, t - h)) / h;
  const Vec3L box = -2.0 * u_st - (flux_hi - flux_lo) / h;

  BoxResult r;
  r.residual_plus = max_abs(box - 2.0 * H * H * u0);
  r.residual_minus = max_abs(box + 2.0 * H * H * u0);
  r.sign = r.residual_plus <= r.residual_minus ? 1 : -1;
  r.residual = std::min(r.residual_plus, r.residual_minus);
  return r;
}

ParaComplex normal_gauss_map(const Vec3L& N) {
  const double d = 1.0 - N.x3;
  if (std::fabs(d) < kProjectionEps) throw PoleError("normal Gauss map has a pole (N^3 = 1)");
  return {-N.x2 / d, -N.x1 / d};
}

ParaComplex normal_gauss_map(const NullFrame& f, double t) { return normal_gauss_map(gauss_map_L(f, t)); }

Vec3L normal_from_gauss_map(ParaComplex g) {
  const double m = g.sqmod();
  const double k = -1.0 / (1.0 + m);
  return {k * 2.0 * g.im, k * 2.0 * g.re, k * (1.0 - m)};
}

Vec3L left_invariant_components(const Vec3L& x, const Vec3L& v, double H) {
  return {v.x1, v.x2, v.x3 + H * (x.x2 * v.x1 - x.x1 * v.x2)};
}

Eigen::Matrix<double, 3, 2> nil3_jacobian(const NullFrame& f, const CurvePath& path, double t) {
  const CurvePoint p = path.dense_eval(f.s);
  const Vec3L& g = p.gamma;
  const Vec3L A = f.a(), B = f.b(), B1 = dB(f);
  const double H = f.H;
  const double dJ = g.x1 * A.x2 - g.x2 * A.x1;
  Eigen::Matrix<double, 3, 2> J;
  J(0, 0) = A.x1 + t * B1.x1;
  J(1, 0) = A.x2 + t * B1.x2;
  J(2, 0) = A.x3 - t * B1.x3 + H * dJ +
            t * H * (A.x1 * B.x2 + g.x1 * B1.x2 - A.x2 * B.x1 - g.x2 * B1.x1);
  J(0, 1) = B.x1;
  J(1, 1) = B.x2;
  J(2, 1) = -B.x3 + H * (g.x1 * B.x2 - g.x2 * B.x1);
  return J;
}

namespace {

// E-frame components of the two Jacobian columns.
std::pair<Vec3L, Vec3L> frame_tangents(const NullFrame& f, const CurvePath& path, double t) {
  const Vec3L x = nil3_point(f, path, t);
  const auto J = nil3_jacobian(f, path, t);
  const Vec3L vs{J(0, 0), J(1, 0), J(2, 0)}, vt{J(0, 1), J(1, 1), J(2, 1)};
  return {left_invariant_components(x, vs, f.H), left_invariant_components(x, vt, f.H)};
}

}  // namespace

JacobianMetrics nil3_jacobian_metrics(const NullFrame& f, const CurvePath& path, double t) {
  JacobianMetrics m;
  const auto J = nil3_jacobian(f, path, t);
  Eigen::JacobiSVD<Eigen::Matrix<double, 3, 2>> svd(J);
  m.sigma_min = svd.singularValues()(1);

  // g_+ normal direction in projective form (2 Re g, 2 Im g, 1 + |g|^2)
  // rescaled by (1 - N^3)/2, which keeps it finite at the pole of g.
  const Vec3L N = gauss_map_L(f, t);
  Vec3L n{N.x2, -N.x1, 1.0};  // g_R-orthogonal counterpart
  n = n / euclid_norm(n);
  const auto [es, et] = frame_tangents(f, path, t);
  m.lambda = det3(es, et, n);
  return m;
}

std::optional<ParaComplex> nil3_gauss_map_direct(const NullFrame& f, const CurvePath& path, double t) {
  const auto [es, et] = frame_tangents(f, path, t);
  const Vec3L n = mcross(es, et);
  const double nn = mdot(n, n);
  if (!(nn > 1e-24)) return std::nullopt;
  const Vec3L N = n / std::sqrt(nn);
  if (std::fabs(1.0 + N.x3) < kProjectionEps) return std::nullopt;
  return ParaComplex{N.x1 / (1.0 + N.x3), N.x2 / (1.0 + N.x3)};
}

SurfaceSample sample_surface(const NullFrame& f, const CurvePath& path, double t) {
  SurfaceSample out;
  out.s = f.s;
  out.t = t;
  out.f_L = bscroll_point(f, path, t);
  out.N_L = gauss_map_L(f, t);
  out.f_nil = nil3_point(f, path, t);
  out.df = nil3_jacobian(f, path, t);
  if (std::fabs(1.0 - out.N_L.x3) >= kProjectionEps) out.g_map = normal_gauss_map(out.N_L);
  return out;
}

}  // namespace bscroll
