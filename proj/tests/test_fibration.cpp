#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "kinelab/fibration.hpp"
#include "oracles.hpp"

using namespace kinelab;
using Catch::Matchers::WithinAbs;

namespace {

constexpr double kPi = 3.14159265358979323846;

SpherePoint sphere_from_chart(const CurvatureParams& p, const GenComplex& w, double theta,
                              Chart chart = Chart::W) {
  const double thetas[1] = {theta};
  return fiber_points(ChartPoint{w, chart}, p, thetas).front();
}

SpherePoint random_sphere(oracles::Rng& rng, const CurvatureParams& p) {
  for (int attempt = 0; attempt < 256; ++attempt) {
    const GenComplex w = rng.gc(p.kappa2, 0.7);
    if (fiber_radicand({w, Chart::W}, p.kappa1) < 0.3) continue;
    return sphere_from_chart(p, w, rng.uniform(-1.5, 1.5));
  }
  return SpherePoint(q_one(p));
}

std::vector<ChartPoint> square_loop(const CurvatureParams& p, double side, int per_side) {
  std::vector<ChartPoint> loop;
  const Kappa k2 = p.kappa2;
  const auto push = [&](double a, double b) {
    loop.push_back({GenComplex{a, b, k2}, Chart::W});
  };
  for (int s = 0; s < per_side; ++s) push(side * s / per_side, 0.0);
  for (int s = 0; s < per_side; ++s) push(side, side * s / per_side);
  for (int s = 0; s < per_side; ++s) push(side * (per_side - s) / per_side, side);
  for (int s = 0; s < per_side; ++s) push(0.0, side * (per_side - s) / per_side);
  push(0.0, 0.0);
  return loop;
}

std::vector<ChartPoint> geodesic_path(const SpherePoint& q0, double t_end, int steps) {
  std::vector<ChartPoint> path;
  path.reserve(steps + 1);
  for (int n = 0; n <= steps; ++n)
    path.push_back(pi_project(horizontal_geodesic(q0, t_end * n / steps)));
  return path;
}

double max_component_diff(const GenQuaternion& a, const GenQuaternion& b) {
  return std::max(std::max(std::abs(a.x - b.x), std::abs(a.y - b.y)),
                  std::max(std::abs(a.u - b.u), std::abs(a.v - b.v)));
}

}  // namespace

TEST_CASE("sphere membership is validated") {
  const CurvatureParams el{1.0, 1.0};
  CHECK_THROWS_AS(SpherePoint(2.0 * q_one(el)), std::invalid_argument);
  CHECK_NOTHROW(SpherePoint(q_one(el)));
  CHECK_THROWS_AS(TangentVector(SpherePoint(q_one(el)), q_one(el)), std::invalid_argument);
}

TEST_CASE("flow tangents") {
  SECTION("flows at the identity are the pure units") {
    const CurvatureParams p{-1.0, -1.0};
    const SpherePoint one(q_one(p));
    CHECK(max_component_diff(flow_tangent(Flow::I, one).dir(), q_i(p)) == 0.0);
    CHECK(max_component_diff(flow_tangent(Flow::J, one).dir(), q_j(p)) == 0.0);
    CHECK(max_component_diff(flow_tangent(Flow::K, one).dir(), q_k(p)) == 0.0);
  }
  SECTION("mutual orthogonality and squared norms") {
    oracles::Rng rng(301);
    for (const CurvatureParams& p : oracles::all_sign_patterns()) {
      for (int n = 0; n < 100; ++n) {
        const SpherePoint q = random_sphere(rng, p);
        const GenQuaternion iq = flow_tangent(Flow::I, q).dir();
        const GenQuaternion jq = flow_tangent(Flow::J, q).dir();
        const GenQuaternion kq = flow_tangent(Flow::K, q).dir();
        CHECK_THAT(q_inner(iq, jq), WithinAbs(0.0, 1e-12));
        CHECK_THAT(q_inner(iq, kq), WithinAbs(0.0, 1e-12));
        CHECK_THAT(q_inner(jq, kq), WithinAbs(0.0, 1e-12));
        CHECK_THAT(norm_sq(iq), WithinAbs(p.kappa2.value, 1e-12));
        CHECK_THAT(norm_sq(jq), WithinAbs(p.kappa1.value, 1e-12));
        CHECK_THAT(norm_sq(kq), WithinAbs(p.kappa1.value * p.kappa2.value, 1e-12));
      }
    }
  }
  SECTION("frame is linearly independent at every unit point") {
    oracles::Rng rng(302);
    for (const CurvatureParams& p : oracles::all_sign_patterns()) {
      for (int n = 0; n < 50; ++n) {
        const SpherePoint q = random_sphere(rng, p);
        double rows[3][4];
        int r = 0;
        for (Flow f : {Flow::I, Flow::J, Flow::K}) {
          const GenQuaternion d = flow_tangent(f, q).dir();
          rows[r][0] = d.x;
          rows[r][1] = d.y;
          rows[r][2] = d.u;
          rows[r][3] = d.v;
          ++r;
        }
        // Gaussian elimination with partial pivoting; rank must be 3
        int rank = 0;
        for (int col = 0; col < 4 && rank < 3; ++col) {
          int pivot = -1;
          double best = 1e-9;
          for (int row = rank; row < 3; ++row)
            if (std::abs(rows[row][col]) > best) {
              best = std::abs(rows[row][col]);
              pivot = row;
            }
          if (pivot < 0) continue;
          std::swap(rows[rank], rows[pivot]);
          for (int row = rank + 1; row < 3; ++row) {
            const double f = rows[row][col] / rows[rank][col];
            for (int cc = col; cc < 4; ++cc) rows[row][cc] -= f * rows[rank][cc];
          }
          ++rank;
        }
        CHECK(rank == 3);
      }
    }
  }
}

TEST_CASE("pi_project") {
  const CurvatureParams el{1.0, 1.0};
  SECTION("identity projects to the chart origin") {
    const ChartPoint c = pi_project(SpherePoint(q_one(el)));
    CHECK(c.chart == Chart::W);
    CHECK(c.value.re == 0.0);
    CHECK(c.value.im == 0.0);
  }
  SECTION("j projects to the infinity of the W chart") {
    const ChartPoint c = pi_project(SpherePoint(q_j(el)));
    CHECK(c.chart == Chart::Omega);
    CHECK(c.value.re == 0.0);
    CHECK(c.value.im == 0.0);
  }
  SECTION("diagonal point has w = 1") {
    const double r = 1.0 / std::sqrt(2.0);
    const SpherePoint q(GenQuaternion{r, 0.0, r, 0.0, el});
    const ChartPoint c = pi_project(q);
    CHECK(c.chart == Chart::W);
    CHECK_THAT(c.value.re, WithinAbs(1.0, 1e-12));
    CHECK_THAT(c.value.im, WithinAbs(0.0, 1e-12));
  }
  SECTION("invariant under the fiber action") {
    oracles::Rng rng(303);
    for (const CurvatureParams& p : oracles::all_sign_patterns()) {
      for (int n = 0; n < 100; ++n) {
        const SpherePoint q = random_sphere(rng, p);
        const double theta = rng.uniform(-2.0, 2.0);
        const SpherePoint moved(gc_exp_i(p.kappa2, theta) * q.q());
        CHECK(proj_eq(to_projective(pi_project(moved)), to_projective(pi_project(q)), 1e-9));
      }
    }
  }
  SECTION("the fiber action is free") {
    oracles::Rng rng(304);
    for (const CurvatureParams& p : oracles::all_sign_patterns()) {
      const SpherePoint q = random_sphere(rng, p);
      const double theta = rng.uniform(0.5, 2.0);
      const SpherePoint moved(gc_exp_i(p.kappa2, theta) * q.q());
      CHECK(max_component_diff(moved.q(), q.q()) > 1e-9);
    }
  }
}

TEST_CASE("fiber_points") {
  SECTION("Omega-chart origin lifts to j") {
    const CurvatureParams p{1.0, 1.0};
    const SpherePoint q = sphere_from_chart(p, gc_zero(1.0), 0.0, Chart::Omega);
    CHECK(max_component_diff(q.q(), q_j(p)) == 0.0);
  }
  SECTION("W-chart origin lifts to 1 in the flat family") {
    const CurvatureParams p{0.0, 1.0};
    const SpherePoint q = sphere_from_chart(p, gc_zero(1.0), 0.0, Chart::W);
    CHECK(max_component_diff(q.q(), q_one(p)) == 0.0);
  }
  SECTION("null locus values are rejected") {
    const CurvatureParams p{-1.0, 1.0};
    const double thetas[1] = {0.0};
    CHECK_THROWS_AS(fiber_points({gc_one(1.0), Chart::W}, p, thetas), std::domain_error);
    CHECK_THROWS_AS(fiber_points({gc_one(1.0), Chart::Omega}, p, thetas), std::domain_error);
  }
  SECTION("every fiber point is on the sphere and projects back") {
    oracles::Rng rng(305);
    for (const CurvatureParams& p : oracles::all_sign_patterns()) {
      for (int n = 0; n < 200; ++n) {
        const Chart chart = rng.uniform(0, 1) < 0.5 ? Chart::W : Chart::Omega;
        const ChartPoint c{rng.gc(p.kappa2, 1.5), chart};
        if (fiber_radicand(c, p.kappa1) < 0.2) continue;
        if (chart == Chart::Omega && std::abs(norm_sq(c.value)) < 0.2) continue;
        const double thetas[3] = {0.0, rng.uniform(-2, 2), rng.uniform(-2, 2)};
        for (const SpherePoint& q : fiber_points(c, p, thetas)) {
          CHECK_THAT(norm_sq(q.q()), WithinAbs(1.0, 1e-9));
          CHECK(proj_eq(to_projective(pi_project(q)), to_projective(c), 1e-9));
        }
      }
    }
  }
  SECTION("gluing map between the two trivializations") {
    oracles::Rng rng(306);
    for (double k1 : {-1.0, 0.0, 1.0}) {
      for (double k2 : {-1.0, 1.0}) {
        const CurvatureParams p{k1, k2};
        for (int n = 0; n < 100; ++n) {
          const GenComplex omega = rng.gc(p.kappa2, 1.5);
          if (is_zero_divisor(omega) || norm_sq(omega) < 0.2) continue;
          const ChartPoint cw{omega, Chart::W};
          if (fiber_radicand(cw, p.kappa1) < 0.2) continue;
          const GenComplex oinv = inv(omega);
          if (fiber_radicand({oinv, Chart::Omega}, p.kappa1) < 0.05) continue;
          const double theta0 = rng.uniform(-1.5, 1.5);
          // first trivialization over the W chart
          const SpherePoint q = sphere_from_chart(p, omega, theta0);
          // re-read the same point through the second trivialization
          const ChartPoint back = pi_project(q);
          REQUIRE(back.chart == Chart::W);
          const ChartPoint other = chart_transition(back);
          CHECK_THAT(other.value.re, WithinAbs(oinv.re, 1e-9));
          CHECK_THAT(other.value.im, WithinAbs(oinv.im, 1e-9));
          const double rad = fiber_radicand(other, p.kappa1);
          const GenComplex phase2 = std::sqrt(rad) * z2_part(q.q());
          const GenComplex expected =
              gc_exp_i(p.kappa2, theta0) * omega / std::sqrt(norm_sq(omega));
          CHECK_THAT(phase2.re, WithinAbs(expected.re, 1e-9));
          CHECK_THAT(phase2.im, WithinAbs(expected.im, 1e-9));
        }
      }
    }
  }
}

TEST_CASE("connection form") {
  oracles::Rng rng(307);
  SECTION("fiber direction has connection value i") {
    for (const CurvatureParams& p : oracles::all_sign_patterns()) {
      for (int n = 0; n < 50; ++n) {
        const SpherePoint q = random_sphere(rng, p);
        const GenComplex lambda = connection_eval(flow_tangent(Flow::I, q));
        CHECK(lambda.re == 0.0);
        CHECK_THAT(lambda.im, WithinAbs(1.0, 1e-12));
      }
    }
  }
  SECTION("horizontal flows are annihilated everywhere") {
    for (const CurvatureParams& p : oracles::all_sign_patterns()) {
      const SpherePoint one(q_one(p));
      for (Flow f : {Flow::J, Flow::K}) {
        const GenComplex lz = connection_eval(flow_tangent(f, one));
        CHECK(lz.re == 0.0);
        CHECK(lz.im == 0.0);
      }
      const SpherePoint q = random_sphere(rng, p);
      for (Flow f : {Flow::J, Flow::K}) {
        const GenComplex lz = connection_eval(flow_tangent(f, q));
        CHECK_THAT(lz.re, WithinAbs(0.0, 1e-15));
        CHECK_THAT(lz.im, WithinAbs(0.0, 1e-15));
      }
    }
  }
  SECTION("equivariant under the fiber action") {
    for (const CurvatureParams& p : oracles::all_sign_patterns()) {
      const SpherePoint q = random_sphere(rng, p);
      const GenComplex phase = gc_exp_i(p.kappa2, rng.uniform(-2, 2));
      for (Flow f : {Flow::I, Flow::J, Flow::K}) {
        const TangentVector t = flow_tangent(f, q);
        const TangentVector pushed(SpherePoint(phase * q.q()), phase * t.dir());
        const GenComplex a = connection_eval(pushed);
        const GenComplex b = connection_eval(t);
        CHECK_THAT(a.re, WithinAbs(b.re, 1e-12));
        CHECK_THAT(a.im, WithinAbs(b.im, 1e-12));
      }
    }
  }
  SECTION("curvature pairing of the horizontal frame") {
    for (const CurvatureParams& p : oracles::all_sign_patterns()) {
      const SpherePoint q = random_sphere(rng, p);
      const GenQuaternion jq = flow_tangent(Flow::J, q).dir();
      const GenQuaternion kq = flow_tangent(Flow::K, q).dir();
      const GenQuaternion pairing = jq * conj(kq);
      CHECK_THAT(pairing.x, WithinAbs(0.0, 1e-12));
      CHECK_THAT(pairing.y, WithinAbs(-p.kappa1.value, 1e-12));
      CHECK_THAT(pairing.u, WithinAbs(0.0, 1e-12));
      CHECK_THAT(pairing.v, WithinAbs(0.0, 1e-12));
    }
  }
}

TEST_CASE("horizontal_project") {
  oracles::Rng rng(308);
  for (const CurvatureParams& p : oracles::all_sign_patterns()) {
    const SpherePoint q = random_sphere(rng, p);
    const TangentVector jq = flow_tangent(Flow::J, q);
    const TangentVector iq = flow_tangent(Flow::I, q);
    // horizontal input is unchanged
    const TangentVector hj = horizontal_project(jq);
    CHECK(max_component_diff(hj.dir(), jq.dir()) < 1e-12);
    // the fiber direction collapses to zero
    const TangentVector hi = horizontal_project(iq);
    CHECK(max_component_diff(hi.dir(), 0.0 * iq.dir()) < 1e-12);
    // linear combination keeps only the horizontal part
    const TangentVector mixed(q, jq.dir() + iq.dir());
    const TangentVector hm = horizontal_project(mixed);
    CHECK(max_component_diff(hm.dir(), jq.dir()) < 1e-12);
    CHECK_THAT(connection_eval(hm).im, WithinAbs(0.0, 1e-9));
  }
}

TEST_CASE("horizontal_geodesic") {
  SECTION("time zero returns the start") {
    const CurvatureParams p{-1.0, -1.0};
    oracles::Rng rng(309);
    const SpherePoint q = random_sphere(rng, p);
    CHECK(max_component_diff(horizontal_geodesic(q, 0.0).q(), q.q()) == 0.0);
  }
  SECTION("quarter period reaches j in the elliptic family") {
    const CurvatureParams p{1.0, 1.0};
    const SpherePoint r = horizontal_geodesic(SpherePoint(q_one(p)), kPi / 2.0);
    CHECK(max_component_diff(r.q(), q_j(p)) < 1e-15);
  }
  SECTION("flat family grows linearly in j") {
    const CurvatureParams p{0.0, 1.0};
    const SpherePoint r = horizontal_geodesic(SpherePoint(q_one(p)), 7.0);
    CHECK(r.q().x == 1.0);
    CHECK(r.q().u == 7.0);
    CHECK_THAT(norm_sq(r.q()), WithinAbs(1.0, 1e-12));
  }
  SECTION("velocity stays horizontal along the curve") {
    oracles::Rng rng(310);
    for (const CurvatureParams& p : oracles::all_sign_patterns()) {
      const SpherePoint q0 = random_sphere(rng, p);
      for (int n = 0; n < 100; ++n) {
        const SpherePoint at = horizontal_geodesic(q0, 2.0 * n / 100.0);
        const TangentVector vel(at, q_j(p) * at.q());
        CHECK(std::abs(connection_eval(vel).im) < 1e-9);
      }
    }
  }
}

TEST_CASE("horizontal_lift") {
  SECTION("constant path has a constant lift") {
    const CurvatureParams p{1.0, 1.0};
    const SpherePoint q0 = sphere_from_chart(p, GenComplex{0.2, -0.1, 1.0}, 0.4);
    const std::vector<ChartPoint> path(10, pi_project(q0));
    const auto lift = horizontal_lift(path, q0);
    for (const SpherePoint& q : lift) CHECK(max_component_diff(q.q(), q0.q()) < 1e-12);
  }
  SECTION("reproduces the closed-form geodesic") {
    for (const CurvatureParams& p : {CurvatureParams{1.0, 1.0}, CurvatureParams{-1.0, 1.0}}) {
      const SpherePoint q0(q_one(p));
      const int steps = 1000;
      const auto path = geodesic_path(q0, 1.0, steps);
      const auto lift = horizontal_lift(path, q0);
      REQUIRE(lift.size() == path.size());
      double worst = 0.0;
      for (int n = 0; n <= steps; ++n)
        worst = std::max(worst,
                         max_component_diff(lift[n].q(),
                                            horizontal_geodesic(q0, 1.0 * n / steps).q()));
      CHECK(worst < 1e-6);
    }
  }
  SECTION("equivariance under the fiber action") {
    const CurvatureParams p{1.0, 1.0};
    const SpherePoint q0(q_one(p));
    const auto path = geodesic_path(q0, 0.8, 400);
    const GenComplex phase = gc_exp_i(p.kappa2, 0.9);
    const auto lift = horizontal_lift(path, q0);
    const auto lift_shifted = horizontal_lift(path, SpherePoint(phase * q0.q()));
    for (std::size_t n = 0; n < lift.size(); n += 50)
      CHECK(max_component_diff(lift_shifted[n].q(), (phase * lift[n].q())) < 1e-9);
  }
  SECTION("error paths") {
    const CurvatureParams p{-1.0, 1.0};
    const SpherePoint q0(q_one(p));
    // path entering the null locus |w|^2 = 1
    std::vector<ChartPoint> nullpath = {{gc_zero(1.0), Chart::W}, {gc_one(1.0), Chart::W}};
    CHECK_THROWS_AS(horizontal_lift(nullpath, q0), std::domain_error);
    // start point does not project to the first sample
    std::vector<ChartPoint> off = {{GenComplex{0.5, 0.0, 1.0}, Chart::W}};
    CHECK_THROWS_AS(horizontal_lift(off, q0), std::invalid_argument);
    // mixed charts are rejected
    std::vector<ChartPoint> mixed = {{gc_zero(1.0), Chart::W}, {gc_zero(1.0), Chart::Omega}};
    CHECK_THROWS_AS(horizontal_lift(mixed, q0), std::invalid_argument);
  }
}

TEST_CASE("holonomy_loop") {
  SECTION("degenerate loop has zero holonomy") {
    const CurvatureParams p{1.0, 1.0};
    const SpherePoint q0(q_one(p));
    std::vector<ChartPoint> point = {{gc_zero(1.0), Chart::W}};
    CHECK(holonomy_loop(point, q0, p) == 0.0);
  }
  SECTION("open loops are rejected") {
    const CurvatureParams p{1.0, 1.0};
    const SpherePoint q0(q_one(p));
    std::vector<ChartPoint> open = {{gc_zero(1.0), Chart::W}, {GenComplex{0.1, 0, 1.0}, Chart::W}};
    CHECK_THROWS_AS(holonomy_loop(open, q0, p), std::invalid_argument);
  }
  SECTION("flat base has no holonomy") {
    const CurvatureParams p{0.0, 1.0};
    const SpherePoint q0(q_one(p));
    const double theta = holonomy_loop(square_loop(p, 0.1, 50), q0, p);
    CHECK(std::abs(theta) < 1e-6);
  }
  SECTION("small loops measure twice the base area times -kappa1") {
    // counterclockwise coordinate square, side eps: the lift returns to
    // e^{i theta} q0 with theta -> -2 kappa1 eps^2 as eps -> 0
    for (double k1 : {1.0, -1.0}) {
      const CurvatureParams p{k1, 1.0};
      const SpherePoint q0(q_one(p));
      const double eps = 0.05;
      const double theta = holonomy_loop(square_loop(p, eps, 200), q0, p);
      const double ratio = theta / (k1 * eps * eps);
      CHECK(ratio > -2.1);
      CHECK(ratio < -1.9);
    }
  }
  SECTION("holonomy angle does not depend on the fiber phase of the start") {
    const CurvatureParams p{1.0, 1.0};
    const auto loop = square_loop(p, 0.1, 100);
    const SpherePoint a(q_one(p));
    const SpherePoint b(gc_exp_i(p.kappa2, 0.7) * q_one(p));
    CHECK_THAT(holonomy_loop(loop, a, p), WithinAbs(holonomy_loop(loop, b, p), 1e-9));
  }
}

TEST_CASE("base_metric_eval") {
  SECTION("normalized at the origin") {
    for (const CurvatureParams& p : oracles::all_sign_patterns()) {
      CHECK(base_metric_eval({gc_zero(p.kappa2), Chart::W}, gc_one(p.kappa2), p) == 1.0);
    }
  }
  SECTION("elliptic value at w = 1") {
    const CurvatureParams p{1.0, 1.0};
    CHECK_THAT(base_metric_eval({gc_one(1.0), Chart::W}, gc_one(1.0), p), WithinAbs(0.25, 1e-15));
  }
  SECTION("null directions of the Minkowski base") {
    const CurvatureParams p{1.0, -1.0};
    const GenComplex lightlike{1.0, 1.0, -1.0};
    CHECK(base_metric_eval({gc_zero(-1.0), Chart::W}, lightlike, p) == 0.0);
  }
  SECTION("null denominator is rejected") {
    const CurvatureParams p{-1.0, 1.0};
    CHECK_THROWS_AS(base_metric_eval({gc_one(1.0), Chart::W}, gc_one(1.0), p), std::domain_error);
  }
  SECTION("projected geodesics have unit speed in every signature") {
    oracles::Rng rng(311);
    for (const CurvatureParams& p : oracles::all_sign_patterns()) {
      int done = 0;
      for (int attempt = 0; attempt < 400 && done < 100; ++attempt) {
        const SpherePoint q0 = random_sphere(rng, p);
        const SpherePoint at = horizontal_geodesic(q0, rng.uniform(0.0, 0.5));
        const ChartPoint w = pi_project(at);
        if (std::abs(fiber_radicand(w, p.kappa1)) < 1e-3) continue;
        const TangentVector vel(at, q_j(p) * at.q());
        const GenComplex dw = projection_differential(vel);
        CHECK_THAT(base_metric_eval(w, dw, p), WithinAbs(1.0, 1e-9));
        ++done;
      }
      CHECK(done == 100);
    }
  }
  SECTION("projection differential agrees with finite differences") {
    oracles::Rng rng(312);
    const CurvatureParams p{1.0, 1.0};
    for (int n = 0; n < 50; ++n) {
      const SpherePoint q0 = random_sphere(rng, p);
      const double h = 1e-4;
      const GenComplex wp = pi_project(horizontal_geodesic(q0, h)).value;
      const GenComplex wm = pi_project(horizontal_geodesic(q0, -h)).value;
      const GenComplex fd = (wp - wm) / (2.0 * h);
      const TangentVector vel(q0, q_j(p) * q0.q());
      const GenComplex an = projection_differential(vel);
      CHECK_THAT(fd.re, WithinAbs(an.re, 1e-6));
      CHECK_THAT(fd.im, WithinAbs(an.im, 1e-6));
    }
  }
}

TEST_CASE("real-coordinate structures") {
  SECTION("J maps the first basis vector to the second") {
    const RealVec4 e1{1, 0, 0, 0};
    const RealVec4 r = j_apply(e1, 1.0);
    CHECK(r.x == 0.0);
    CHECK(r.y == 1.0);
    CHECK(r.u == 0.0);
    CHECK(r.v == 0.0);
  }
  SECTION("J is nilpotent in the parabolic family") {
    oracles::Rng rng(313);
    for (int n = 0; n < 50; ++n) {
      const RealVec4 X{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2),
                       rng.uniform(-2, 2)};
      const RealVec4 jj = j_apply(j_apply(X, 0.0), 0.0);
      CHECK(jj.x == 0.0);
      CHECK(jj.y == 0.0);
      CHECK(jj.u == 0.0);
      CHECK(jj.v == 0.0);
    }
  }
  SECTION("J squares to -kappa2 and is compatible with the symplectic form") {
    oracles::Rng rng(314);
    for (const CurvatureParams& p : oracles::all_sign_patterns()) {
      for (int n = 0; n < 200; ++n) {
        const RealVec4 a{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2),
                         rng.uniform(-2, 2)};
        const RealVec4 b{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2),
                         rng.uniform(-2, 2)};
        CHECK_THAT(real_inner(a, j_apply(b, p.kappa2), p),
                   WithinAbs(p.kappa2.value * symplectic_eval(a, b, p), 1e-12));
        const RealVec4 jja = j_apply(j_apply(a, p.kappa2), p.kappa2);
        CHECK(jja.x == -p.kappa2.value * a.x);
        CHECK(jja.y == -p.kappa2.value * a.y);
        CHECK(jja.u == -p.kappa2.value * a.u);
        CHECK(jja.v == -p.kappa2.value * a.v);
      }
    }
  }
}

TEST_CASE("fiber_orbit") {
  SECTION("zero angle returns the point itself") {
    const CurvatureParams p{-1.0, -1.0};
    oracles::Rng rng(315);
    const SpherePoint q = random_sphere(rng, p);
    const double thetas[1] = {0.0};
    const RealVec4 r = fiber_orbit(q, thetas).front();
    CHECK(r.x == q.q().x);
    CHECK(r.y == q.q().y);
  }
  SECTION("quarter turn of the classical fiber reaches i") {
    const CurvatureParams p{1.0, 1.0};
    const double thetas[1] = {kPi / 2.0};
    const RealVec4 r = fiber_orbit(SpherePoint(q_one(p)), thetas).front();
    CHECK_THAT(r.x, WithinAbs(0.0, 1e-15));
    CHECK_THAT(r.y, WithinAbs(1.0, 1e-15));
    CHECK_THAT(r.u, WithinAbs(0.0, 1e-15));
    CHECK_THAT(r.v, WithinAbs(0.0, 1e-15));
  }
  SECTION("orbit samples stay on the sphere and match the quaternion route") {
    oracles::Rng rng(316);
    for (const CurvatureParams& p : oracles::all_sign_patterns()) {
      const SpherePoint q = random_sphere(rng, p);
      std::vector<double> thetas;
      for (int n = 0; n < 20; ++n) thetas.push_back(rng.uniform(-2.0, 2.0));
      const auto orbit = fiber_orbit(q, thetas);
      for (std::size_t n = 0; n < thetas.size(); ++n) {
        CHECK_THAT(real_inner(orbit[n], orbit[n], p), WithinAbs(1.0, 1e-9));
        const GenQuaternion viaProduct = gc_exp_i(p.kappa2, thetas[n]) * q.q();
        CHECK_THAT(orbit[n].x, WithinAbs(viaProduct.x, 1e-12));
        CHECK_THAT(orbit[n].y, WithinAbs(viaProduct.y, 1e-12));
        CHECK_THAT(orbit[n].u, WithinAbs(viaProduct.u, 1e-12));
        CHECK_THAT(orbit[n].v, WithinAbs(viaProduct.v, 1e-12));
      }
    }
  }
}
