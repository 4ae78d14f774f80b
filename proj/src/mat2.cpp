#include "cdscale/mat2.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cdscale/entire.hpp"
#include "cdscale/errors.hpp"

namespace cdscale {

bool Mat2::is_finite() const {
  auto ok = [](cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); };
  return ok(m11) && ok(m12) && ok(m21) && ok(m22);
}

Mat2 inverse_unimodular(const Mat2& a, double tol) {
  const cplx d = a.det();
  if (std::abs(d - 1.0) > tol) {
    throw DetNotOne("inverse_unimodular: |det - 1| = " + std::to_string(std::abs(d - 1.0)));
  }
  return {a.m22, -a.m12, -a.m21, a.m11};
}

double operator_norm(const Mat2& a) {
  // sigma_max^2 = (|A|_F^2 + sqrt(|A|_F^4 - 4 |det A|^2)) / 2
  const double fro2 = std::norm(a.m11) + std::norm(a.m12) + std::norm(a.m21) + std::norm(a.m22);
  const double det2 = std::norm(a.det());
  const double disc = std::max(0.0, fro2 * fro2 - 4.0 * det2);
  return std::sqrt(0.5 * (fro2 + std::sqrt(disc)));
}

double max_abs(const Mat2& a) {
  return std::max({std::abs(a.m11), std::abs(a.m12), std::abs(a.m21), std::abs(a.m22)});
}

Mat2 expm(const Mat2& a) {
  const cplx half_tr = 0.5 * a.trace();
  const Mat2 m = a - half_tr * Mat2::identity();
  // m^2 = delta * Id with delta = -det(m)
  const cplx delta = -m.det();
  const cplx c = entire::cosh_sqrt(delta);
  const cplx s = entire::sinhc_sqrt(delta);
  return std::exp(half_tr) * (c * Mat2::identity() + s * m);
}

std::pair<double, double> hermitian_eigenvalues(const Mat2& a) {
  const double p = a.m11.real();
  const double r = a.m22.real();
  const cplx off = 0.5 * (a.m12 + std::conj(a.m21));
  const double mean = 0.5 * (p + r);
  const double rad = std::hypot(0.5 * (p - r), std::abs(off));
  return {mean - rad, mean + rad};
}

}  // namespace cdscale
