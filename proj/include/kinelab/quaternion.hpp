#pragma once

#include <cmath>
#include <stdexcept>

#include "kinelab/gen_complex.hpp"
#include "kinelab/matrix.hpp"

namespace kinelab {

/// The pair (kappa1, kappa2) selecting one geometry from the two-parameter
/// family: kappa1 = +-1/tau^2 is the spacetime curvature, kappa2 = -1/c^2
/// encodes the speed of light.
struct CurvatureParams {
  Kappa kappa1{};
  Kappa kappa2{};

  Kappa kappa12() const { return kappa1 * kappa2; }

  friend constexpr bool operator==(const CurvatureParams& a, const CurvatureParams& b) {
    return a.kappa1 == b.kappa1 && a.kappa2 == b.kappa2;
  }
  friend constexpr bool operator!=(const CurvatureParams& a, const CurvatureParams& b) {
    return !(a == b);
  }
};

inline void require_same_params(const CurvatureParams& a, const CurvatureParams& b,
                                const char* where) {
  if (a != b) throw std::invalid_argument(std::string(where) + ": mismatched curvature parameters");
}

/// Generalized quaternion x + i y + j u + k v over (kappa1, kappa2), with
/// i^2 = -kappa2, j^2 = -kappa1, k^2 = -kappa1 kappa2, ij = k = -ji,
/// jk = kappa1 i, ki = kappa2 j.
struct GenQuaternion {
  double x = 0.0;
  double y = 0.0;
  double u = 0.0;
  double v = 0.0;
  CurvatureParams params{};
};

inline GenQuaternion q_one(const CurvatureParams& p) { return {1.0, 0.0, 0.0, 0.0, p}; }
inline GenQuaternion q_i(const CurvatureParams& p) { return {0.0, 1.0, 0.0, 0.0, p}; }
inline GenQuaternion q_j(const CurvatureParams& p) { return {0.0, 0.0, 1.0, 0.0, p}; }
inline GenQuaternion q_k(const CurvatureParams& p) { return {0.0, 0.0, 0.0, 1.0, p}; }

/// z1 + z2 j decomposition over C_{kappa2}: z1 = x + i y, z2 = u + i v.
inline GenQuaternion from_zpair(const GenComplex& z1, const GenComplex& z2,
                                const CurvatureParams& p) {
  require_same_kappa(z1.kappa, p.kappa2, "from_zpair");
  require_same_kappa(z2.kappa, p.kappa2, "from_zpair");
  return {z1.re, z1.im, z2.re, z2.im, p};
}

inline GenComplex z1_part(const GenQuaternion& q) { return {q.x, q.y, q.params.kappa2}; }
inline GenComplex z2_part(const GenQuaternion& q) { return {q.u, q.v, q.params.kappa2}; }

inline GenQuaternion conj(const GenQuaternion& q) { return {q.x, -q.y, -q.u, -q.v, q.params}; }
inline GenQuaternion pure(const GenQuaternion& q) { return {0.0, q.y, q.u, q.v, q.params}; }

/// q conj(q) = x^2 + kappa2 y^2 + kappa1 u^2 + kappa1 kappa2 v^2.
inline double norm_sq(const GenQuaternion& q) {
  const double k1 = q.params.kappa1.value;
  const double k2 = q.params.kappa2.value;
  return q.x * q.x + k2 * q.y * q.y + k1 * (q.u * q.u + k2 * q.v * q.v);
}

inline GenQuaternion operator+(const GenQuaternion& a, const GenQuaternion& b) {
  require_same_params(a.params, b.params, "GenQuaternion +");
  return {a.x + b.x, a.y + b.y, a.u + b.u, a.v + b.v, a.params};
}

inline GenQuaternion operator-(const GenQuaternion& a, const GenQuaternion& b) {
  require_same_params(a.params, b.params, "GenQuaternion -");
  return {a.x - b.x, a.y - b.y, a.u - b.u, a.v - b.v, a.params};
}

inline GenQuaternion operator-(const GenQuaternion& a) {
  return {-a.x, -a.y, -a.u, -a.v, a.params};
}

inline GenQuaternion operator*(double c, const GenQuaternion& q) {
  return {c * q.x, c * q.y, c * q.u, c * q.v, q.params};
}
inline GenQuaternion operator*(const GenQuaternion& q, double c) { return c * q; }
inline GenQuaternion operator/(const GenQuaternion& q, double c) { return (1.0 / c) * q; }

/// Bilinear extension of the product table; associative and
/// norm-multiplicative for every sign pattern of (kappa1, kappa2).
inline GenQuaternion operator*(const GenQuaternion& a, const GenQuaternion& b) {
  require_same_params(a.params, b.params, "GenQuaternion *");
  const double k1 = a.params.kappa1.value;
  const double k2 = a.params.kappa2.value;
  return {a.x * b.x - k2 * a.y * b.y - k1 * a.u * b.u - k1 * k2 * a.v * b.v,
          a.x * b.y + b.x * a.y + k1 * (a.u * b.v - b.u * a.v),
          a.x * b.u + b.x * a.u + k2 * (a.v * b.y - b.v * a.y),
          a.x * b.v + b.x * a.v + a.y * b.u - b.y * a.u,
          a.params};
}

/// Left multiplication by a scalar of the (1, i) plane.
inline GenQuaternion operator*(const GenComplex& c, const GenQuaternion& q) {
  require_same_kappa(c.kappa, q.params.kappa2, "GenComplex * GenQuaternion");
  return from_zpair(c, gc_zero(c.kappa), q.params) * q;
}

inline double q_inner(const GenQuaternion& a, const GenQuaternion& b) {
  require_same_params(a.params, b.params, "q_inner");
  const double k1 = a.params.kappa1.value;
  const double k2 = a.params.kappa2.value;
  return a.x * b.x + k2 * a.y * b.y + k1 * (a.u * b.u + k2 * a.v * b.v);
}

/// e^{t p} for pure p. With N = norm_sq(p) one has p^2 = -N, so the result
/// is C_N(t) + S_N(t) p, a unit quaternion in every signature.
inline GenQuaternion q_exp_pure(const GenQuaternion& p, double t) {
  if (p.x != 0.0) throw std::invalid_argument("q_exp_pure: quaternion has a scalar part");
  const CkPair cs = ck_trig(Kappa{norm_sq(p)}, t);
  return {cs.c, cs.s * p.y, cs.s * p.u, cs.s * p.v, p.params};
}

inline constexpr double kUnitQuatTol = 1e-9;

inline bool is_unit(const GenQuaternion& q, double tol = kUnitQuatTol) {
  return std::abs(norm_sq(q) - 1.0) <= tol;
}

/// Inner automorphism p -> a p conj(a) of the pure quaternions by a unit a;
/// preserves q_inner and hence the Killing form.
inline GenQuaternion adjoint_rotate(const GenQuaternion& a, const GenQuaternion& p) {
  require_same_params(a.params, p.params, "adjoint_rotate");
  if (!is_unit(a)) throw std::invalid_argument("adjoint_rotate: quaternion is not unit");
  if (std::abs(p.x) > kUnitQuatTol)
    throw std::invalid_argument("adjoint_rotate: argument is not pure");
  return a * p * conj(a);
}

/// Matrix of p -> a p conj(a) in the ordered pure basis (i, j, k).
inline Mat3 adjoint_matrix(const GenQuaternion& a) {
  if (!is_unit(a)) throw std::invalid_argument("adjoint_matrix: quaternion is not unit");
  Mat3 r;
  const GenQuaternion basis[3] = {q_i(a.params), q_j(a.params), q_k(a.params)};
  for (std::size_t col = 0; col < 3; ++col) {
    const GenQuaternion img = a * basis[col] * conj(a);
    r(0, col) = img.y;
    r(1, col) = img.u;
    r(2, col) = img.v;
  }
  return r;
}

/// Killing form in the ordered basis (2i, 2j, 2k), i.e. (K, H, P):
/// -2 diag(kappa2, kappa1, kappa1 kappa2).
inline Mat3 killing_form(const CurvatureParams& p) {
  const double k1 = p.kappa1.value;
  const double k2 = p.kappa2.value;
  return Mat3::diagonal(-2.0 * k2, -2.0 * k1, -2.0 * k1 * k2);
}

/// Which one-parameter subgroup is quotiented away.
enum class Quotient { ByK, ByH, ByP };

/// Rescaled invariant metric of the homogeneous space (rescaling applied
/// even when a kappa vanishes, so degenerate metrics are kept as such).
inline Mat2 homogeneous_metric(const CurvatureParams& p, Quotient q) {
  switch (q) {
    case Quotient::ByK: return Mat2::diagonal(1.0, p.kappa2.value);
    case Quotient::ByH: return Mat2::diagonal(1.0, p.kappa1.value);
    case Quotient::ByP: return Mat2::diagonal(p.kappa2.value, p.kappa1.value);
  }
  throw std::logic_error("homogeneous_metric: bad quotient tag");
}

/// 2x2 matrix over C_{kappa2} of the constrained shape
/// ((z1, z2), (-kappa1 conj z2, conj z1)); determinant equals norm_sq of the
/// corresponding quaternion.
struct QuatMatrix {
  GenComplex a11{}, a12{}, a21{}, a22{};
  CurvatureParams params{};
};

inline QuatMatrix q_to_matrix(const GenQuaternion& q) {
  const GenComplex z1 = z1_part(q);
  const GenComplex z2 = z2_part(q);
  return {z1, z2, -q.params.kappa1.value * conj(z2), conj(z1), q.params};
}

inline QuatMatrix qm_mul(const QuatMatrix& a, const QuatMatrix& b) {
  require_same_params(a.params, b.params, "qm_mul");
  return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
          a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22, a.params};
}

inline GenComplex qm_det(const QuatMatrix& m) { return m.a11 * m.a22 - m.a12 * m.a21; }

inline constexpr double kMatrixShapeTol = 1e-12;

inline GenQuaternion matrix_to_q(const QuatMatrix& m) {
  const GenComplex c21 = -m.params.kappa1.value * conj(m.a12);
  const GenComplex c22 = conj(m.a11);
  const double scale = 1.0 + std::abs(m.a11.re) + std::abs(m.a11.im) + std::abs(m.a12.re) +
                       std::abs(m.a12.im);
  if (std::abs(m.a21.re - c21.re) > kMatrixShapeTol * scale ||
      std::abs(m.a21.im - c21.im) > kMatrixShapeTol * scale ||
      std::abs(m.a22.re - c22.re) > kMatrixShapeTol * scale ||
      std::abs(m.a22.im - c22.im) > kMatrixShapeTol * scale)
    throw std::invalid_argument("matrix_to_q: matrix violates the constrained shape");
  return from_zpair(m.a11, m.a12, m.params);
}

}  // namespace kinelab
