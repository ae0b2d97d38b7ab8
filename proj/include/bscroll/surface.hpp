#pragma once

// The CMC B-scroll f_L(s,t) = gamma(s) + t B(s) in L^3, its Gauss map
// N_L = -C - tHB, and the dual timelike minimal surface in Nil_3(H):
//
//   f = (gamma_1 + t B_1, gamma_2 + t B_2,
//        gamma_3 - t B_3 + H J + t H (gamma_1 B_2 - gamma_2 B_1)).
//
// Surface functions take the frame at s; the parameter s is frame.s.

#include <Eigen/Core>
#include <optional>

#include "bscroll/integrator.hpp"
#include "bscroll/lorentz.hpp"
#include "bscroll/null_frame.hpp"

namespace bscroll {

Vec3L bscroll_point(const NullFrame& f, const CurvePath& path, double t);
Vec3L gauss_map_L(const NullFrame& f, double t);
Vec3L nil3_point(const NullFrame& f, const CurvePath& path, double t);

/// Partial derivatives of f_L: (d/ds, d/dt) = (A + t B', B).
struct Tangents {
  Vec3L fs, ft;
};
Tangents bscroll_tangents(const NullFrame& f, double t);

struct FundamentalForms {
  Eigen::Matrix2d I, II;
  double H_mean = 0.0;
  double K_gauss = 0.0;
};

/// Forms in the (ds, dt) basis, computed from the frame and the
/// Frenet-Serret relations.
FundamentalForms fundamental_forms(const NullFrame& f, double t);

/// Forms from I_ij = <f_i, f_j>, II_ij = <f_ij, N> with arbitrary tangent and
/// second-derivative vectors.
FundamentalForms forms_from_vectors(const Vec3L& fs, const Vec3L& ft, const Vec3L& fss, const Vec3L& fst,
                                    const Vec3L& ftt, const Vec3L& N);

struct BoxResult {
  double residual = 0.0;  // min of the two below
  int sign = 0;           // +1 when box N = +2H^2 N matched better, else -1
  double residual_plus = 0.0;
  double residual_minus = 0.0;
};

/// d'Alembertian of N_L for I = t^2 H^2 ds^2 - 2 ds dt by central differences
/// of step fd_step, compared against +-2H^2 N_L (max-norm).
BoxResult box_residual(const FrameSource& frames, double H, double s, double t, double fd_step);

/// g = -(N^2 + j N^1)/(1 - N^3). Throws PoleError when N^3 is 1.
ParaComplex normal_gauss_map(const Vec3L& N_L);
ParaComplex normal_gauss_map(const NullFrame& f, double t);
/// N_L = -(j(g - conj g), g + conj g, 1 - |g|^2)/(1 + |g|^2).
Vec3L normal_from_gauss_map(ParaComplex g);

/// Coordinate Jacobian of the Nil_3 surface; columns are d/ds and d/dt.
Eigen::Matrix<double, 3, 2> nil3_jacobian(const NullFrame& f, const CurvePath& path, double t);

/// Components of a coordinate tangent vector v at the point x in the
/// left-invariant frame E_1, E_2, E_3.
Vec3L left_invariant_components(const Vec3L& x, const Vec3L& v, double H);

struct JacobianMetrics {
  double sigma_min = 0.0;
  double lambda = 0.0;
};

/// sigma_min of the coordinate Jacobian and the signed area density
/// lambda = Omega(f_s, f_t, n) for g_R, n the g_R unit normal extended
/// through the singular set via the normal Gauss map.
JacobianMetrics nil3_jacobian_metrics(const NullFrame& f, const CurvePath& path, double t);

/// Normal Gauss map of the Nil_3 surface computed from its own tangent
/// plane: the g_+ unit normal, left translated to the Lie algebra and
/// projected by pi. Empty where the surface is singular or g has a pole.
std::optional<ParaComplex> nil3_gauss_map_direct(const NullFrame& f, const CurvePath& path, double t);

struct SurfaceSample {
  double s = 0.0, t = 0.0;
  Vec3L f_L, N_L, f_nil;
  Eigen::Matrix<double, 3, 2> df;
  std::optional<ParaComplex> g_map;  // empty at a pole
};

SurfaceSample sample_surface(const NullFrame& f, const CurvePath& path, double t);

}  // namespace bscroll
