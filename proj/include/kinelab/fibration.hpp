#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "kinelab/gen_complex.hpp"
#include "kinelab/projective.hpp"
#include "kinelab/quaternion.hpp"

namespace kinelab {

inline constexpr double kUnitSphereTol = 1e-9;
inline constexpr double kTangencyTol = 1e-9;
inline constexpr double kLiftDriftTol = 1e-4;

/// Unit quaternion |q|^2 = 1, i.e. a point (z1, z2) of C_{kappa2}^2 with
/// |z1|^2 + kappa1 |z2|^2 = 1. The unit residual is checked on construction.
class SpherePoint {
 public:
  explicit SpherePoint(const GenQuaternion& q) : q_(q) {
    if (std::abs(norm_sq(q) - 1.0) > kUnitSphereTol)
      throw std::invalid_argument("SpherePoint: quaternion is not on the unit sphere");
  }

  const GenQuaternion& q() const { return q_; }
  const CurvatureParams& params() const { return q_.params; }

 private:
  GenQuaternion q_;
};

/// Ambient displacement attached to a sphere point; tangency means the real
/// pairing <<q, dir>> vanishes.
class TangentVector {
 public:
  TangentVector(const SpherePoint& base, const GenQuaternion& dir) : base_(base), dir_(dir) {
    require_same_params(base.params(), dir.params, "TangentVector");
    if (std::abs(q_inner(base.q(), dir)) > kTangencyTol)
      throw std::invalid_argument("TangentVector: displacement is not tangent");
  }

  const SpherePoint& base() const { return base_; }
  const GenQuaternion& dir() const { return dir_; }

 private:
  SpherePoint base_;
  GenQuaternion dir_;
};

/// The three Clifford flows on the unit sphere.
enum class Flow { I, J, K };

/// Tangent of the flow through q: i q, j q, or k q. The three are mutually
/// orthogonal with squared norms kappa2, kappa1, kappa1 kappa2.
inline TangentVector flow_tangent(Flow gen, const SpherePoint& q) {
  const CurvatureParams& p = q.params();
  const GenQuaternion unit = gen == Flow::I ? q_i(p) : (gen == Flow::J ? q_j(p) : q_k(p));
  return {q, unit * q.q()};
}

/// Bundle projection onto the base: w = z2/z1 where z1 is invertible, else
/// omega = z1/z2. Invariant under the fiber action q -> e^{i theta} q.
inline ChartPoint pi_project(const SpherePoint& q) {
  const GenComplex z1 = z1_part(q.q());
  const GenComplex z2 = z2_part(q.q());
  if (!is_zero_divisor(z1)) return {z2 / z1, Chart::W};
  if (!is_zero_divisor(z2)) return {z1 / z2, Chart::Omega};
  // both components zero divisors cannot happen on the unit sphere
  throw std::logic_error("pi_project: both components are zero divisors");
}

/// Squared normalization factor of the fiber formula for a chart point.
inline double fiber_radicand(const ChartPoint& c, Kappa kappa1) {
  if (c.chart == Chart::W) return 1.0 + kappa1.value * norm_sq(c.value);
  return norm_sq(c.value) + kappa1.value;
}

/// Points e^{i theta} q_c of the fiber over c, where q_c is
/// (1 + w j)/sqrt(1 + kappa1 |w|^2) in the W chart and
/// (omega + j)/sqrt(|omega|^2 + kappa1) in the Omega chart, so that each
/// result projects back to c under pi_project.
inline std::vector<SpherePoint> fiber_points(const ChartPoint& c, const CurvatureParams& params,
                                             std::span<const double> thetas) {
  require_same_kappa(c.value.kappa, params.kappa2, "fiber_points");
  const double rad = fiber_radicand(c, params.kappa1);
  if (!(rad > 0.0)) throw std::domain_error("fiber_points: null or non-normalizable line");
  const double scale = 1.0 / std::sqrt(rad);
  const GenQuaternion base =
      c.chart == Chart::W
          ? from_zpair(scale * gc_one(c.value.kappa), scale * c.value, params)
          : from_zpair(scale * c.value, scale * gc_one(c.value.kappa), params);
  std::vector<SpherePoint> out;
  out.reserve(thetas.size());
  for (double theta : thetas)
    out.emplace_back(gc_exp_i(params.kappa2, theta) * base);
  return out;
}

/// Principal connection form lambda = conj(z1) dz1 + kappa1 conj(z2) dz2
/// evaluated on a tangent vector; the fiber direction i q has value exactly i.
inline GenComplex connection_eval(const TangentVector& t) {
  const GenQuaternion& q = t.base().q();
  const GenQuaternion& d = t.dir();
  const double k1 = q.params.kappa1.value;
  return conj(z1_part(q)) * z1_part(d) + k1 * (conj(z2_part(q)) * z2_part(d));
}

/// Differential of the bundle projection at t.base applied to t.dir, in the
/// chart pi_project selects for the base point (quotient rule on z2/z1 or
/// z1/z2).
inline GenComplex projection_differential(const TangentVector& t) {
  const GenComplex z1 = z1_part(t.base().q());
  const GenComplex z2 = z2_part(t.base().q());
  const GenComplex d1 = z1_part(t.dir());
  const GenComplex d2 = z2_part(t.dir());
  if (!is_zero_divisor(z1)) return (d2 * z1 - z2 * d1) / (z1 * z1);
  if (!is_zero_divisor(z2)) return (d1 * z2 - z1 * d2) / (z2 * z2);
  throw std::logic_error("projection_differential: both components are zero divisors");
}

/// Removes the fiber component: t - Im(lambda(t)) i q. The result has
/// vanishing connection value and the same projection differential.
inline TangentVector horizontal_project(const TangentVector& t) {
  const double b = connection_eval(t).im;
  const GenQuaternion iq = q_i(t.base().params()) * t.base().q();
  return {t.base(), t.dir() - b * iq};
}

/// Closed-form horizontal curve (C_{kappa1}(t) + S_{kappa1}(t) j) q; stays on
/// the sphere with horizontal velocity j X(t) at every time.
inline SpherePoint horizontal_geodesic(const SpherePoint& q, double t) {
  const CkPair cs = ck_trig(q.params().kappa1, t);
  const GenQuaternion g{cs.c, 0.0, cs.s, 0.0, q.params()};
  return SpherePoint(g * q.q());
}

namespace detail {

/// Horizontal vector at X whose projection differential equals dpath in the
/// given chart; it is (c j) X with c = dw z1^2 (W) or c = -d(omega) z2^2.
inline GenQuaternion lift_velocity(const GenQuaternion& X, const GenComplex& dpath, Chart chart) {
  GenComplex c = chart == Chart::W ? dpath * (z1_part(X) * z1_part(X))
                                   : -1.0 * (dpath * (z2_part(X) * z2_part(X)));
  return from_zpair(gc_zero(c.kappa), c, X.params) * X;
}

inline GenQuaternion renormalize(const GenQuaternion& X) {
  const double n = norm_sq(X);
  if (!(n > 0.0)) throw std::runtime_error("horizontal_lift: integration failure (norm collapse)");
  return X / std::sqrt(n);
}

}  // namespace detail

/// Horizontal lift of a sampled base path starting at q0. Classical 4-stage
/// Runge-Kutta per sample interval with renormalization to the sphere; the
/// whole path must stay in one chart and off the null locus.
inline std::vector<SpherePoint> horizontal_lift(std::span<const ChartPoint> path,
                                                const SpherePoint& q0) {
  if (path.empty()) throw std::invalid_argument("horizontal_lift: empty path");
  const CurvatureParams params = q0.params();
  const Chart chart = path.front().chart;
  for (const ChartPoint& c : path) {
    require_same_kappa(c.value.kappa, params.kappa2, "horizontal_lift");
    if (c.chart != chart)
      throw std::invalid_argument("horizontal_lift: path must stay in a single chart");
    if (!(fiber_radicand(c, params.kappa1) > 0.0))
      throw std::domain_error("horizontal_lift: lift undefined (path enters null locus)");
  }
  if (!proj_eq(to_projective(pi_project(q0)), to_projective(path.front()), 1e-6))
    throw std::invalid_argument("horizontal_lift: q0 does not project to the first sample");

  std::vector<SpherePoint> out;
  out.reserve(path.size());
  out.push_back(q0);
  GenQuaternion X = q0.q();
  for (std::size_t n = 0; n + 1 < path.size(); ++n) {
    const GenComplex dw = path[n + 1].value - path[n].value;
    const GenQuaternion k1 = detail::lift_velocity(X, dw, chart);
    const GenQuaternion k2 = detail::lift_velocity(X + 0.5 * k1, dw, chart);
    const GenQuaternion k3 = detail::lift_velocity(X + 0.5 * k2, dw, chart);
    const GenQuaternion k4 = detail::lift_velocity(X + k3, dw, chart);
    X = detail::renormalize(X + (1.0 / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
    SpherePoint lifted(X);
    if (!proj_eq(to_projective(pi_project(lifted)), to_projective(path[n + 1]), kLiftDriftTol))
      throw std::runtime_error("horizontal_lift: integration failure (projection drift)");
    out.push_back(lifted);
  }
  return out;
}

/// Real coordinates (x, y, u, v) of C_{kappa2}^2.
struct RealVec4 {
  double x = 0.0;
  double y = 0.0;
  double u = 0.0;
  double v = 0.0;
};

inline RealVec4 to_real(const GenQuaternion& q) { return {q.x, q.y, q.u, q.v}; }

/// Almost complex structure J (multiplication by i); J^2 = -kappa2 I.
inline RealVec4 j_apply(const RealVec4& X, Kappa kappa2) {
  return {-kappa2.value * X.y, X.x, -kappa2.value * X.v, X.u};
}

/// Real part <<X1, X2>> of the Hermitian product: diag(1, kappa2, kappa1,
/// kappa1 kappa2).
inline double real_inner(const RealVec4& a, const RealVec4& b, const CurvatureParams& p) {
  const double k1 = p.kappa1.value;
  const double k2 = p.kappa2.value;
  return a.x * b.x + k2 * a.y * b.y + k1 * (a.u * b.u + k2 * a.v * b.v);
}

/// The (possibly degenerate) symplectic form ((0,-1),(1,0)) + kappa1
/// ((0,-1),(1,0)); compatible: <<X, J Y>> = kappa2 varpi(X, Y).
inline double symplectic_eval(const RealVec4& a, const RealVec4& b, const CurvatureParams& p) {
  const double k1 = p.kappa1.value;
  return -a.x * b.y + a.y * b.x + k1 * (-a.u * b.v + a.v * b.u);
}

/// Fiber orbit samples X C_{kappa2}(theta) + J X S_{kappa2}(theta) in real
/// coordinates; the orbit stays on the sphere inside the plane of X and JX.
inline std::vector<RealVec4> fiber_orbit(const SpherePoint& q, std::span<const double> thetas) {
  const RealVec4 X = to_real(q.q());
  const RealVec4 JX = j_apply(X, q.params().kappa2);
  std::vector<RealVec4> out;
  out.reserve(thetas.size());
  for (double theta : thetas) {
    const CkPair cs = ck_trig(q.params().kappa2, theta);
    out.push_back({X.x * cs.c + JX.x * cs.s, X.y * cs.c + JX.y * cs.s, X.u * cs.c + JX.u * cs.s,
                   X.v * cs.c + JX.v * cs.s});
  }
  return out;
}

/// Metric of the base space in chart coordinates:
/// norm_sq(dw) / (1 + kappa1 |w|^2)^2 in the W chart, and the transported
/// expression norm_sq(dw) / (|omega|^2 + kappa1)^2 in the Omega chart. May be
/// negative or zero when kappa2 <= 0.
inline double base_metric_eval(const ChartPoint& w, const GenComplex& dw,
                               const CurvatureParams& params) {
  require_same_kappa(w.value.kappa, params.kappa2, "base_metric_eval");
  require_same_kappa(dw.kappa, params.kappa2, "base_metric_eval");
  const double denom = fiber_radicand(w, params.kappa1);
  if (denom == 0.0) throw std::domain_error("base_metric_eval: null denominator");
  return norm_sq(dw) / (denom * denom);
}

/// Fiber displacement angle of a closed base loop: lifts the loop from q0 and
/// solves endpoint = (C_{kappa2}(theta) + i S_{kappa2}(theta)) q0 by least
/// squares on the plane of X0 and J X0. The endpoint must be a pure fiber
/// displacement of q0.
inline double holonomy_loop(std::span<const ChartPoint> loop, const SpherePoint& q0,
                            const CurvatureParams& params) {
  require_same_params(q0.params(), params, "holonomy_loop");
  if (loop.empty()) throw std::invalid_argument("holonomy_loop: empty loop");
  const ChartPoint& first = loop.front();
  const ChartPoint& last = loop.back();
  if (first.chart != last.chart || std::abs(first.value.re - last.value.re) > 1e-12 ||
      std::abs(first.value.im - last.value.im) > 1e-12)
    throw std::invalid_argument("holonomy_loop: loop is not closed");
  if (loop.size() == 1) return 0.0;

  const std::vector<SpherePoint> lift = horizontal_lift(loop, q0);
  const RealVec4 X0 = to_real(q0.q());
  const RealVec4 JX0 = j_apply(X0, params.kappa2);
  const RealVec4 Xe = to_real(lift.back().q());

  const auto dot = [](const RealVec4& a, const RealVec4& b) {
    return a.x * b.x + a.y * b.y + a.u * b.u + a.v * b.v;
  };
  const double g11 = dot(X0, X0);
  const double g12 = dot(X0, JX0);
  const double g22 = dot(JX0, JX0);
  const double det = g11 * g22 - g12 * g12;
  if (det == 0.0) throw std::runtime_error("holonomy_loop: degenerate fiber plane");
  const double r1 = dot(X0, Xe);
  const double r2 = dot(JX0, Xe);
  const double c = (g22 * r1 - g12 * r2) / det;
  const double s = (g11 * r2 - g12 * r1) / det;

  const double resid = std::hypot(std::hypot(Xe.x - c * X0.x - s * JX0.x, Xe.y - c * X0.y - s * JX0.y),
                                  std::hypot(Xe.u - c * X0.u - s * JX0.u, Xe.v - c * X0.v - s * JX0.v));
  if (resid > 1e-6)
    throw std::runtime_error("holonomy_loop: endpoint is not a pure fiber displacement");

  const double k2 = params.kappa2.value;
  if (k2 > 0.0) return std::atan2(s * std::sqrt(k2), c) / std::sqrt(k2);
  if (k2 < 0.0) return std::asinh(s * std::sqrt(-k2)) / std::sqrt(-k2);
  return s;  // parabolic fiber: angle is the linear S_0 component
}

}  // namespace kinelab
