#pragma once

// Fixed-size complex linear algebra for two-dimensional mode and state
// spaces: 2-vectors, 2x2 matrices, Hermitian eigenvalue bounds.

#include <algorithm>
#include <array>
#include <cmath>

#include "duality/common.hpp"

namespace duality {

using Vec2 = std::array<cdouble, 2>;

// <a|b> = sum_i conj(a_i) b_i
inline cdouble inner(const Vec2& a, const Vec2& b) {
  return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1];
}

inline double norm_sq(const Vec2& a) { return std::norm(a[0]) + std::norm(a[1]); }

// 2x2 complex matrix, row-major.
struct Mat2 {
  cdouble m00{}, m01{}, m10{}, m11{};

  cdouble trace() const { return m00 + m11; }
  cdouble det() const { return m00 * m11 - m01 * m10; }

  Mat2& operator+=(const Mat2& o) {
    m00 += o.m00;
    m01 += o.m01;
    m10 += o.m10;
    m11 += o.m11;
    return *this;
  }
  friend Mat2 operator+(Mat2 a, const Mat2& b) { return a += b; }
  friend Mat2 operator*(cdouble s, const Mat2& a) {
    return {s * a.m00, s * a.m01, s * a.m10, s * a.m11};
  }
};

// u (x) v^dagger: entry (i,j) = u_i conj(v_j)
inline Mat2 outer(const Vec2& u, const Vec2& v) {
  return {u[0] * std::conj(v[0]), u[0] * std::conj(v[1]),
          u[1] * std::conj(v[0]), u[1] * std::conj(v[1])};
}

// Largest entrywise deviation from A = A^dagger.
inline double hermiticity_defect(const Mat2& a) {
  return std::max({std::abs(a.m00.imag()), std::abs(a.m11.imag()),
                   std::abs(a.m01 - std::conj(a.m10))});
}

// Eigenvalues of a Hermitian 2x2 matrix in closed form.
inline double min_eigenvalue_hermitian(const Mat2& a) {
  const double mean = 0.5 * (a.m00.real() + a.m11.real());
  const double half_diff = 0.5 * (a.m00.real() - a.m11.real());
  return mean - std::sqrt(half_diff * half_diff + std::norm(a.m01));
}

inline double max_eigenvalue_hermitian(const Mat2& a) {
  const double mean = 0.5 * (a.m00.real() + a.m11.real());
  const double half_diff = 0.5 * (a.m00.real() - a.m11.real());
  return mean + std::sqrt(half_diff * half_diff + std::norm(a.m01));
}

}  // namespace duality
