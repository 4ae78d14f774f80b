#pragma once

#include <complex>

namespace cdscale {

using cplx = std::complex<double>;

struct Vec2 {
  cplx v1{};
  cplx v2{};

  friend Vec2 operator+(const Vec2& x, const Vec2& y) { return {x.v1 + y.v1, x.v2 + y.v2}; }
  friend Vec2 operator-(const Vec2& x, const Vec2& y) { return {x.v1 - y.v1, x.v2 - y.v2}; }
  friend Vec2 operator*(cplx s, const Vec2& x) { return {s * x.v1, s * x.v2}; }
};

/// 2x2 complex matrix, row-major entries.
struct Mat2 {
  cplx m11{};
  cplx m12{};
  cplx m21{};
  cplx m22{};

  static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static constexpr Mat2 zero() { return {}; }
  static constexpr Mat2 diag(cplx d1, cplx d2) { return {d1, 0.0, 0.0, d2}; }

  cplx det() const { return m11 * m22 - m12 * m21; }
  cplx trace() const { return m11 + m22; }
  Vec2 col1() const { return {m11, m21}; }
  Vec2 col2() const { return {m12, m22}; }
  Mat2 transpose() const { return {m11, m21, m12, m22}; }
  Mat2 adjoint() const { return {std::conj(m11), std::conj(m21), std::conj(m12), std::conj(m22)}; }
  bool is_finite() const;

  Mat2& operator+=(const Mat2& o) {
    m11 += o.m11;
    m12 += o.m12;
    m21 += o.m21;
    m22 += o.m22;
    return *this;
  }
  Mat2& operator-=(const Mat2& o) {
    m11 -= o.m11;
    m12 -= o.m12;
    m21 -= o.m21;
    m22 -= o.m22;
    return *this;
  }

  friend Mat2 operator+(Mat2 x, const Mat2& y) { return x += y; }
  friend Mat2 operator-(Mat2 x, const Mat2& y) { return x -= y; }
  friend Mat2 operator*(cplx s, const Mat2& x) { return {s * x.m11, s * x.m12, s * x.m21, s * x.m22}; }
  friend Mat2 operator*(const Mat2& x, cplx s) { return s * x; }
  friend Mat2 operator*(const Mat2& x, const Mat2& y) { return multiply(x, y); }
  friend Vec2 operator*(const Mat2& x, const Vec2& v) {
    return {x.m11 * v.v1 + x.m12 * v.v2, x.m21 * v.v1 + x.m22 * v.v2};
  }
  friend bool operator==(const Mat2&, const Mat2&) = default;

  static Mat2 multiply(const Mat2& x, const Mat2& y) {
    return {x.m11 * y.m11 + x.m12 * y.m21, x.m11 * y.m12 + x.m12 * y.m22,
            x.m21 * y.m11 + x.m22 * y.m21, x.m21 * y.m12 + x.m22 * y.m22};
  }
};

inline Mat2 multiply(const Mat2& x, const Mat2& y) { return Mat2::multiply(x, y); }

/// The symplectic unit ((0,-1),(1,0)) appearing on the left of every
/// canonical system.
inline constexpr Mat2 kSymplectic{0.0, -1.0, 1.0, 0.0};
/// Its inverse ((0,1),(-1,0)).
inline constexpr Mat2 kSymplecticInv{0.0, 1.0, -1.0, 0.0};

inline constexpr double kUnimodularTol = 1e-9;

/// Adjugate of a matrix with det = 1. Throws DetNotOne when
/// |det A - 1| > tol.
Mat2 inverse_unimodular(const Mat2& a, double tol = kUnimodularTol);

/// Largest singular value, from the closed form for 2x2 Gram matrices.
double operator_norm(const Mat2& a);

/// Largest entry modulus.
double max_abs(const Mat2& a);

/// det(u, v) for two column vectors.
inline cplx det_cols(const Vec2& u, const Vec2& v) { return u.v1 * v.v2 - u.v2 * v.v1; }

/// exp(A) for an arbitrary 2x2 matrix via the trace/determinant
/// decomposition A = (tr/2) Id + M with M^2 = -det(M) Id.
Mat2 expm(const Mat2& a);

/// Eigenvalues of a Hermitian matrix (ascending). Only the Hermitian part
/// is used.
std::pair<double, double> hermitian_eigenvalues(const Mat2& a);

}  // namespace cdscale
