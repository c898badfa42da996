#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace kinelab {

/// Label constant of a generalized complex plane C_kappa (i^2 = -kappa).
/// Degeneracy is a modeling choice: kappa = 0 is selected by an exact stored
/// zero, never by epsilon snapping.
struct Kappa {
  double value = 0.0;

  constexpr Kappa() = default;
  constexpr Kappa(double v) : value(v) {}

  constexpr bool is_zero() const { return value == 0.0; }
  constexpr int sign() const { return value > 0.0 ? 1 : (value < 0.0 ? -1 : 0); }

  friend constexpr bool operator==(Kappa a, Kappa b) { return a.value == b.value; }
  friend constexpr bool operator!=(Kappa a, Kappa b) { return !(a == b); }
  friend constexpr Kappa operator*(Kappa a, Kappa b) { return Kappa{a.value * b.value}; }
  friend constexpr Kappa operator-(Kappa a) { return Kappa{-a.value}; }
};

inline void require_same_kappa(Kappa a, Kappa b, const char* where) {
  if (a != b) throw std::invalid_argument(std::string(where) + ": mismatched kappa");
}

/// Value pair (C_kappa(phi), S_kappa(phi)); satisfies c^2 + kappa s^2 = 1.
struct CkPair {
  double c = 1.0;
  double s = 0.0;
};

/// Cosine/sine of the unit circle of C_kappa, by branch:
/// circular for kappa > 0, parabolic (1, phi) at kappa = 0, hyperbolic below.
inline CkPair ck_trig(Kappa kappa, double phi) {
  if (kappa.value > 0.0) {
    const double r = std::sqrt(kappa.value);
    return {std::cos(r * phi), std::sin(r * phi) / r};
  }
  if (kappa.value < 0.0) {
    const double r = std::sqrt(-kappa.value);
    return {std::cosh(r * phi), std::sinh(r * phi) / r};
  }
  return {1.0, phi};
}

inline double ck_cos(Kappa kappa, double phi) { return ck_trig(kappa, phi).c; }
inline double ck_sin(Kappa kappa, double phi) { return ck_trig(kappa, phi).s; }

/// T_kappa(phi) = S_kappa(phi) / C_kappa(phi).
inline double ck_tan(Kappa kappa, double phi) {
  const CkPair cs = ck_trig(kappa, phi);
  return cs.s / cs.c;
}

/// Principal-branch inverse of T_kappa. For kappa < 0 the slope must stay
/// strictly inside the light cone: |m| sqrt(-kappa) < 1.
inline double ck_tan_inv(Kappa kappa, double m) {
  if (kappa.value > 0.0) {
    const double r = std::sqrt(kappa.value);
    return std::atan(m * r) / r;
  }
  if (kappa.value < 0.0) {
    const double r = std::sqrt(-kappa.value);
    if (std::abs(m) * r >= 1.0)
      throw std::domain_error("ck_tan_inv: rapidity undefined at or beyond light cone");
    return std::atanh(m * r) / r;
  }
  return m;
}

/// Number x + i y with i^2 = -kappa. Pure value type; all operations below
/// are pure functions and safe for unrestricted concurrent use.
struct GenComplex {
  double re = 0.0;
  double im = 0.0;
  Kappa kappa{};
};

inline GenComplex gc_zero(Kappa kappa) { return {0.0, 0.0, kappa}; }
inline GenComplex gc_one(Kappa kappa) { return {1.0, 0.0, kappa}; }
inline GenComplex gc_i(Kappa kappa) { return {0.0, 1.0, kappa}; }

inline GenComplex conj(const GenComplex& z) { return {z.re, -z.im, z.kappa}; }

/// z conj(z) = re^2 + kappa im^2. May be negative (kappa < 0) or vanish on
/// zero divisors.
inline double norm_sq(const GenComplex& z) { return z.re * z.re + z.kappa.value * z.im * z.im; }

inline GenComplex operator+(const GenComplex& a, const GenComplex& b) {
  require_same_kappa(a.kappa, b.kappa, "GenComplex +");
  return {a.re + b.re, a.im + b.im, a.kappa};
}

inline GenComplex operator-(const GenComplex& a, const GenComplex& b) {
  require_same_kappa(a.kappa, b.kappa, "GenComplex -");
  return {a.re - b.re, a.im - b.im, a.kappa};
}

inline GenComplex operator-(const GenComplex& a) { return {-a.re, -a.im, a.kappa}; }

inline GenComplex operator*(const GenComplex& a, const GenComplex& b) {
  require_same_kappa(a.kappa, b.kappa, "GenComplex *");
  return {a.re * b.re - a.kappa.value * a.im * b.im, a.re * b.im + b.re * a.im, a.kappa};
}

inline GenComplex operator*(double c, const GenComplex& z) { return {c * z.re, c * z.im, z.kappa}; }
inline GenComplex operator*(const GenComplex& z, double c) { return c * z; }

inline constexpr double kZeroDivisorTol = 1e-12;

/// Non-invertibility test: |norm_sq| below kZeroDivisorTol relative to the
/// squared scale |re| + |im| sqrt|kappa|. Exact zero is always a zero divisor.
inline bool is_zero_divisor(const GenComplex& z) {
  const double scale = std::abs(z.re) + std::abs(z.im) * std::sqrt(std::abs(z.kappa.value));
  return std::abs(norm_sq(z)) <= kZeroDivisorTol * scale * scale;
}

inline GenComplex inv(const GenComplex& z) {
  if (is_zero_divisor(z)) throw std::domain_error("GenComplex inv: zero divisor");
  const double n = norm_sq(z);
  return {z.re / n, -z.im / n, z.kappa};
}

inline GenComplex operator/(const GenComplex& a, const GenComplex& b) { return a * inv(b); }
inline GenComplex operator/(const GenComplex& a, double c) { return {a.re / c, a.im / c, a.kappa}; }

/// e^{x+iy} = e^x (C_kappa(y) + i S_kappa(y)); purely imaginary input lands
/// on the unit circle.
inline GenComplex exp(const GenComplex& z) {
  const double r = std::exp(z.re);
  const CkPair cs = ck_trig(z.kappa, z.im);
  return {r * cs.c, r * cs.s, z.kappa};
}

/// Unit-circle element e^{i phi} of C_kappa.
inline GenComplex gc_exp_i(Kappa kappa, double phi) {
  const CkPair cs = ck_trig(kappa, phi);
  return {cs.c, cs.s, kappa};
}

/// Uniformly spaced samples f(t_i, x_j); row index runs along t, column
/// index along x.
struct ScalarField {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;  // row-major

  double at(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
  double& at(std::size_t i, std::size_t j) { return values[i * cols + j]; }
};

/// Max-norm residuals of the generalized Cauchy-Riemann system
/// u_t = v_x, u_x = -kappa v_t.
struct CrResidual {
  double r1 = 0.0;  // max |u_t - v_x|
  double r2 = 0.0;  // max |u_x + kappa v_t|
};

/// Central-difference residuals over interior points; small values certify
/// approximate holomorphy of f = u + i v on C_kappa.
inline CrResidual cr_residual(const ScalarField& u, const ScalarField& v, Kappa kappa,
                              double spacing) {
  if (u.rows != v.rows || u.cols != v.cols)
    throw std::invalid_argument("cr_residual: grid shapes differ");
  if (u.rows < 3 || u.cols < 3)
    throw std::invalid_argument("cr_residual: degenerate grid (need at least 3x3)");
  if (u.values.size() != u.rows * u.cols || v.values.size() != v.rows * v.cols)
    throw std::invalid_argument("cr_residual: sample count does not match shape");
  if (!(spacing > 0.0)) throw std::invalid_argument("cr_residual: spacing must be positive");

  const double h2 = 2.0 * spacing;
  CrResidual res;
  for (std::size_t i = 1; i + 1 < u.rows; ++i) {
    for (std::size_t j = 1; j + 1 < u.cols; ++j) {
      const double u_t = (u.at(i + 1, j) - u.at(i - 1, j)) / h2;
      const double u_x = (u.at(i, j + 1) - u.at(i, j - 1)) / h2;
      const double v_t = (v.at(i + 1, j) - v.at(i - 1, j)) / h2;
      const double v_x = (v.at(i, j + 1) - v.at(i, j - 1)) / h2;
      res.r1 = std::max(res.r1, std::abs(u_t - v_x));
      res.r2 = std::max(res.r2, std::abs(u_x + kappa.value * v_t));
    }
  }
  return res;
}

}  // namespace kinelab
