#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace kinelab {

/// Dense 2x2 real matrix.
struct Mat2 {
  std::array<std::array<double, 2>, 2> m{};

  double operator()(std::size_t i, std::size_t j) const { return m[i][j]; }
  double& operator()(std::size_t i, std::size_t j) { return m[i][j]; }

  static Mat2 diagonal(double a, double b) {
    Mat2 r;
    r(0, 0) = a;
    r(1, 1) = b;
    return r;
  }
};

/// Dense 3x3 real matrix; enough linear algebra for the group computations.
struct Mat3 {
  std::array<std::array<double, 3>, 3> m{};

  double operator()(std::size_t i, std::size_t j) const { return m[i][j]; }
  double& operator()(std::size_t i, std::size_t j) { return m[i][j]; }

  static Mat3 identity() {
    Mat3 r;
    for (std::size_t i = 0; i < 3; ++i) r(i, i) = 1.0;
    return r;
  }

  static Mat3 diagonal(double a, double b, double c) {
    Mat3 r;
    r(0, 0) = a;
    r(1, 1) = b;
    r(2, 2) = c;
    return r;
  }
};

inline Mat3 operator+(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r(i, j) = a(i, j) + b(i, j);
  return r;
}

inline Mat3 operator-(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r(i, j) = a(i, j) - b(i, j);
  return r;
}

inline Mat3 operator*(double c, const Mat3& a) {
  Mat3 r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r(i, j) = c * a(i, j);
  return r;
}

inline Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      double s = 0.0;
      for (std::size_t l = 0; l < 3; ++l) s += a(i, l) * b(l, j);
      r(i, j) = s;
    }
  return r;
}

inline Mat3 transpose(const Mat3& a) {
  Mat3 r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r(i, j) = a(j, i);
  return r;
}

inline Mat3 commutator(const Mat3& a, const Mat3& b) { return a * b - b * a; }

inline double max_abs(const Mat3& a) {
  double r = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r = std::max(r, std::abs(a(i, j)));
  return r;
}

inline double max_abs_diff(const Mat3& a, const Mat3& b) { return max_abs(a - b); }

inline bool exactly_equal(const Mat3& a, const Mat3& b) {
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

}  // namespace kinelab
