#pragma once

// Linear algebra of Lorentz-Minkowski 3-space with signature (-,+,+),
// paracomplex numbers and the de Sitter stereographic projections.

#include <Eigen/Core>
#include <Eigen/LU>
#include <cmath>
#include <ostream>

namespace bscroll {

template <class T>
struct Vec3 {
  T x1{}, x2{}, x3{};

  const T& operator[](int i) const { return i == 0 ? x1 : (i == 1 ? x2 : x3); }
  T& operator[](int i) { return i == 0 ? x1 : (i == 1 ? x2 : x3); }

  Vec3& operator+=(const Vec3& o) {
    x1 += o.x1;
    x2 += o.x2;
    x3 += o.x3;
    return *this;
  }
  Vec3& operator-=(const Vec3& o) {
    x1 -= o.x1;
    x2 -= o.x2;
    x3 -= o.x3;
    return *this;
  }
  friend Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
  friend Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
  friend Vec3 operator-(const Vec3& a) { return {-a.x1, -a.x2, -a.x3}; }

  template <class S>
  friend Vec3 operator*(const S& k, const Vec3& v) {
    return {k * v.x1, k * v.x2, k * v.x3};
  }
  template <class S>
  friend Vec3 operator*(const Vec3& v, const S& k) {
    return {v.x1 * k, v.x2 * k, v.x3 * k};
  }
  template <class S>
  friend Vec3 operator/(const Vec3& v, const S& k) {
    return {v.x1 / k, v.x2 / k, v.x3 / k};
  }
};

using Vec3L = Vec3<double>;

inline bool operator==(const Vec3L& a, const Vec3L& b) {
  return a.x1 == b.x1 && a.x2 == b.x2 && a.x3 == b.x3;
}

inline std::ostream& operator<<(std::ostream& os, const Vec3L& v) {
  return os << '(' << v.x1 << ", " << v.x2 << ", " << v.x3 << ')';
}

inline constexpr Vec3L e1{1.0, 0.0, 0.0};
inline constexpr Vec3L e2{0.0, 1.0, 0.0};
inline constexpr Vec3L e3{0.0, 0.0, 1.0};

/// <u,v> = -u1 v1 + u2 v2 + u3 v3.
template <class T>
T mdot(const Vec3<T>& u, const Vec3<T>& v) {
  return -(u.x1 * v.x1) + u.x2 * v.x2 + u.x3 * v.x3;
}

/// Euclidean determinant of the matrix with columns u, v, w.
template <class T>
T det3(const Vec3<T>& u, const Vec3<T>& v, const Vec3<T>& w) {
  return u.x1 * (v.x2 * w.x3 - v.x3 * w.x2) -
         v.x1 * (u.x2 * w.x3 - u.x3 * w.x2) +
         w.x1 * (u.x2 * v.x3 - u.x3 * v.x2);
}

/// Lorentzian cross product, characterized by <u x v, w> = det(u, v, w).
template <class T>
Vec3<T> mcross(const Vec3<T>& u, const Vec3<T>& v) {
  return {-(u.x2 * v.x3 - u.x3 * v.x2), u.x3 * v.x1 - u.x1 * v.x3,
          u.x1 * v.x2 - u.x2 * v.x1};
}

inline double max_abs(const Vec3L& v) {
  return std::fmax(std::fabs(v.x1), std::fmax(std::fabs(v.x2), std::fabs(v.x3)));
}

inline double euclid_norm(const Vec3L& v) {
  return std::sqrt(v.x1 * v.x1 + v.x2 * v.x2 + v.x3 * v.x3);
}

inline bool is_finite(const Vec3L& v) {
  return std::isfinite(v.x1) && std::isfinite(v.x2) && std::isfinite(v.x3);
}

/// z = re + j im with j^2 = +1.
struct ParaComplex {
  double re = 0.0;
  double im = 0.0;

  ParaComplex conj() const { return {re, -im}; }
  /// z * conj(z) = re^2 - im^2; may be negative.
  double sqmod() const { return re * re - im * im; }

  friend ParaComplex operator+(ParaComplex a, ParaComplex b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ParaComplex operator-(ParaComplex a, ParaComplex b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend ParaComplex operator*(ParaComplex a, ParaComplex b) {
    return {a.re * b.re + a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend ParaComplex operator*(double k, ParaComplex a) { return {k * a.re, k * a.im}; }
  friend bool operator==(ParaComplex a, ParaComplex b) {
    return a.re == b.re && a.im == b.im;
  }
};

inline constexpr ParaComplex kJ{0.0, 1.0};

inline std::ostream& operator<<(std::ostream& os, ParaComplex z) {
  return os << z.re << (z.im < 0 ? " - j" : " + j") << std::fabs(z.im);
}

/// Denominators |1 +- x3| at or below this are projection poles.
inline constexpr double kProjectionEps = 1e-10;
/// Accepted deviation of <p,p> from 1 for points of the de Sitter plane.
inline constexpr double kDeSitterTol = 1e-9;

/// pi(p) = (x1 + j x2) / (1 + x3). Throws PoleError at x3 = -1.
ParaComplex stereo_pi(const Vec3L& p);
/// pi_L(p) = (x1 + j x2) / (1 - x3). Throws PoleError at x3 = 1.
ParaComplex stereo_piL(const Vec3L& p);
/// Inverses onto the de Sitter plane; PoleError when |z|^2 = 1.
Vec3L stereo_pi_inverse(ParaComplex z);
Vec3L stereo_piL_inverse(ParaComplex z);

using Mat3 = Eigen::Matrix3d;

inline const Mat3& minkowski_eta() {
  static const Mat3 eta = Eigen::Vector3d(-1.0, 1.0, 1.0).asDiagonal();
  return eta;
}

/// Max entry of |m^T eta m - eta|.
double lorentz_residual(const Mat3& m);

struct LorentzParams {
  double phi = 0.0;  // rotation in the (x2,x3)-plane applied last
  double chi = 0.0;  // boost rapidity in the (x1,x2)-plane
  double psi = 0.0;  // rotation in the (x2,x3)-plane applied first
  bool spatial_reflection = false;  // x3 -> -x3
  bool time_reversal = false;       // x1 -> -x1
};

/// An element of O(2,1), stored as a matrix together with the
/// T * P * R(phi) * Boost(chi) * R(psi) factorization that reproduces it.
class LorentzTransform {
 public:
  LorentzTransform() : m_(Mat3::Identity()) {}

  static LorentzTransform from_params(const LorentzParams& p);
  /// Adopts a user-supplied matrix; throws NotLorentz when
  /// lorentz_residual(m) > tol.
  static LorentzTransform from_matrix(const Mat3& m, double tol = 1e-10);

  const Mat3& matrix() const { return m_; }
  const LorentzParams& params() const { return params_; }
  double det() const { return m_.determinant(); }
  bool preserves_time_orientation() const { return m_(0, 0) > 0.0; }

  template <class T>
  Vec3<T> apply(const Vec3<T>& v) const {
    Vec3<T> out;
    for (int i = 0; i < 3; ++i) {
      out[i] = m_(i, 0) * v.x1 + m_(i, 1) * v.x2 + m_(i, 2) * v.x3;
    }
    return out;
  }

  LorentzTransform operator*(const LorentzTransform& o) const;

 private:
  LorentzTransform(const Mat3& m, const LorentzParams& p) : m_(m), params_(p) {}
  static LorentzParams factorize(const Mat3& m);

  Mat3 m_;
  LorentzParams params_;
};

Mat3 spatial_rotation(double angle);
Mat3 boost_x1x2(double rapidity);
Mat3 compose_lorentz(const LorentzParams& p);

}  // namespace bscroll
