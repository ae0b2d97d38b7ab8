#include "bscroll/lorentz.hpp"

#include <Eigen/LU>
#include <cmath>

#include "bscroll/errors.hpp"

namespace bscroll {

namespace {

void require_de_sitter(const Vec3L& p) {
  if (!is_finite(p)) throw InputError("non-finite point passed to stereographic projection");
  if (std::fabs(mdot(p, p) - 1.0) > kDeSitterTol) {
    throw InputError("point is not on the de Sitter plane <p,p> = 1");
  }
}

}  // namespace

ParaComplex stereo_pi(const Vec3L& p) {
  require_de_sitter(p);
  const double den = 1.0 + p.x3;
  if (std::fabs(den) <= kProjectionEps) throw PoleError("stereographic pole of pi at x3 = -1");
  return {p.x1 / den, p.x2 / den};
}

ParaComplex stereo_piL(const Vec3L& p) {
  require_de_sitter(p);
  const double den = 1.0 - p.x3;
  if (std::fabs(den) <= kProjectionEps) throw PoleError("stereographic pole of pi_L at x3 = 1");
  return {p.x1 / den, p.x2 / den};
}

Vec3L stereo_pi_inverse(ParaComplex z) {
  const double m = z.sqmod();
  const double den = 1.0 - m;
  if (std::fabs(den) <= kProjectionEps) throw PoleError("|z|^2 = 1 has no preimage under pi");
  return {2.0 * z.re / den, 2.0 * z.im / den, (1.0 + m) / den};
}

Vec3L stereo_piL_inverse(ParaComplex z) {
  const double m = z.sqmod();
  const double den = 1.0 - m;
  if (std::fabs(den) <= kProjectionEps) throw PoleError("|z|^2 = 1 has no preimage under pi_L");
  return {2.0 * z.re / den, 2.0 * z.im / den, -(1.0 + m) / den};
}

double lorentz_residual(const Mat3& m) {
  const Mat3& eta = minkowski_eta();
  return (m.transpose() * eta * m - eta).cwiseAbs().maxCoeff();
}

Mat3 spatial_rotation(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  Mat3 r;
  r << 1.0, 0.0, 0.0,
       0.0, c, -s,
       0.0, s, c;
  return r;
}

Mat3 boost_x1x2(double rapidity) {
  const double ch = std::cosh(rapidity), sh = std::sinh(rapidity);
  Mat3 b;
  b << ch, sh, 0.0,
       sh, ch, 0.0,
       0.0, 0.0, 1.0;
  return b;
}

Mat3 compose_lorentz(const LorentzParams& p) {
  Mat3 m = spatial_rotation(p.phi) * boost_x1x2(p.chi) * spatial_rotation(p.psi);
  if (p.spatial_reflection) m.row(2) *= -1.0;
  if (p.time_reversal) m.row(0) *= -1.0;
  return m;
}

LorentzTransform LorentzTransform::from_params(const LorentzParams& p) {
  return LorentzTransform(compose_lorentz(p), p);
}

LorentzParams LorentzTransform::factorize(const Mat3& m) {
  LorentzParams p;
  Mat3 core = m;
  if (core(0, 0) < 0.0) {
    p.time_reversal = true;
    core.row(0) *= -1.0;
  }
  if (core.determinant() < 0.0) {
    p.spatial_reflection = true;
    core.row(2) *= -1.0;
  }
  // core = R(phi) B(chi) R(psi): core(0,0) = cosh chi, row 0 carries psi,
  // column 0 carries phi.
  p.chi = std::acosh(std::fmax(1.0, core(0, 0)));
  if (std::sinh(p.chi) > 1e-12) {
    p.psi = std::atan2(-core(0, 2), core(0, 1));
    p.phi = std::atan2(core(2, 0), core(1, 0));
  } else {
    p.chi = 0.0;
    p.psi = 0.0;
    p.phi = std::atan2(core(2, 1), core(1, 1));
  }
  return p;
}

LorentzTransform LorentzTransform::from_matrix(const Mat3& m, double tol) {
  if (!m.allFinite()) throw NotLorentz(INFINITY);
  const double r = lorentz_residual(m);
  if (r > tol) throw NotLorentz(r);
  return LorentzTransform(m, factorize(m));
}

LorentzTransform LorentzTransform::operator*(const LorentzTransform& o) const {
  const Mat3 m = m_ * o.m_;
  return LorentzTransform(m, factorize(m));
}

}  // namespace bscroll
