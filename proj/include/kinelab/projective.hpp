#pragma once

#include <cmath>
#include <stdexcept>

#include "kinelab/gen_complex.hpp"

namespace kinelab {

/// Coordinate charts on the Riemann sphere of complex ratios.
/// W holds w = z2/z1 (defined where z1 is not a zero divisor), Omega holds
/// omega = z1/z2; on the overlap omega = 1/w.
enum class Chart { W, Omega };

struct ChartPoint {
  GenComplex value{};
  Chart chart = Chart::W;
};

/// Equivalence class [a / b] of a complex ratio, stored in canonical form:
/// the first non-zero-divisor component (b preferred, then a) is scaled to
/// an exact 1. Not both components may be zero divisors.
struct ProjectivePoint {
  GenComplex a{};
  GenComplex b{};
};

inline bool gc_is_one(const GenComplex& z) { return z.re == 1.0 && z.im == 0.0; }

inline constexpr double kProjEqTol = 1e-10;

/// Scales (A, B) by the inverse of the preferred non-zero-divisor component.
/// Preferring B makes the W chart the default representative.
inline ProjectivePoint proj_canonicalize(const GenComplex& A, const GenComplex& B) {
  require_same_kappa(A.kappa, B.kappa, "proj_canonicalize");
  if (!is_zero_divisor(B)) {
    return {A * inv(B), gc_one(B.kappa)};
  }
  if (!is_zero_divisor(A)) {
    return {gc_one(A.kappa), B * inv(A)};
  }
  throw std::domain_error("proj_canonicalize: undefined projective point (both components are zero divisors)");
}

/// Componentwise comparison of canonical forms. Points normalized on
/// different components can never coincide (one denominator is a zero
/// divisor, the other is not).
inline bool proj_eq(const ProjectivePoint& p, const ProjectivePoint& q, double tol = kProjEqTol) {
  require_same_kappa(p.a.kappa, q.a.kappa, "proj_eq");
  const bool pb = gc_is_one(p.b);
  const bool qb = gc_is_one(q.b);
  if (pb != qb) return false;
  const GenComplex& x = pb ? p.a : p.b;
  const GenComplex& y = qb ? q.a : q.b;
  return std::abs(x.re - y.re) <= tol && std::abs(x.im - y.im) <= tol;
}

/// The projective point named by a chart value: W value w is [w / 1],
/// Omega value omega is [1 / omega].
inline ProjectivePoint to_projective(const ChartPoint& c) {
  if (c.chart == Chart::W) return proj_canonicalize(c.value, gc_one(c.value.kappa));
  return proj_canonicalize(gc_one(c.value.kappa), c.value);
}

/// Chart representative of a canonical point.
inline ChartPoint chart_point(const ProjectivePoint& p) {
  if (gc_is_one(p.b)) return {p.a, Chart::W};
  return {p.b, Chart::Omega};
}

inline constexpr double kNullLineTol = 1e-9;

/// Whether the complex line named by p consists entirely of vectors with
/// vanishing Hermitian norm |z1|^2 + kappa1 |z2|^2. For kappa1 = 0 these are
/// exactly the infinities (no W-chart value); for kappa1 < 0 the locus
/// |w|^2 = -1/kappa1; never for kappa1 > 0.
inline bool is_null_line(const ProjectivePoint& p, Kappa kappa1) {
  if (kappa1.sign() > 0) return false;
  const ChartPoint c = chart_point(p);
  if (kappa1.is_zero()) return c.chart == Chart::Omega;
  if (c.chart == Chart::Omega) return false;  // |omega|^2 = 0 on canonical Omega points
  return std::abs(norm_sq(c.value) + 1.0 / kappa1.value) <= kNullLineTol;
}

/// Re-expresses the same projective point in the other chart (value 1/w).
/// Restricted to positive-norm non-zero-divisors, where the gluing factor
/// w/|w| of the trivializations exists.
inline ChartPoint chart_transition(const ChartPoint& c) {
  if (is_zero_divisor(c.value) || !(norm_sq(c.value) > 0.0))
    throw std::domain_error("chart_transition: transition undefined");
  return {inv(c.value), c.chart == Chart::W ? Chart::Omega : Chart::W};
}

/// Image of a chart value on the unit sphere of (R^3, dy^2 + kappa1 dt^2 +
/// kappa1 kappa2 dx^2): the triple satisfies x^2 + kappa1 y^2 +
/// kappa1 kappa2 t^2 = 1.
struct SphereCoords {
  double y = 0.0;
  double t = 0.0;
  double x = 0.0;
};

inline SphereCoords chart_to_sphere(const GenComplex& w, Kappa kappa1) {
  const double n = norm_sq(w);
  const double denom = 1.0 + kappa1.value * n;
  if (denom == 0.0) throw std::domain_error("chart_to_sphere: point on removed null locus");
  return {2.0 * w.re / denom, 2.0 * w.im / denom, (-1.0 + kappa1.value * n) / denom};
}

}  // namespace kinelab
