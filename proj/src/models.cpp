#include "cdscale/models.hpp"

#include <cmath>

#include "cdscale/entire.hpp"
#include "cdscale/errors.hpp"
#include "cdscale/transfer.hpp"

namespace cdscale::models {

namespace {

double root_term(double V, std::size_t n) {
  const double r = V / static_cast<double>(n);
  return std::sqrt(1.0 + 0.25 * r * r);
}

Mat2 power(Mat2 m, std::size_t k) {
  Mat2 out = Mat2::identity();
  while (k > 0) {
    if (k & 1U) out = out * m;
    m = m * m;
    k >>= 1U;
  }
  return out;
}

void require_order(std::size_t n) {
  if (n == 0) throw InvalidCoefficient("order n must be >= 1");
}

}  // namespace

std::pair<double, double> lambda_pm(double V, std::size_t n) {
  require_order(n);
  const double r = V / static_cast<double>(n);
  const double base = 1.0 + 0.5 * r * r;
  const double spread = r * root_term(V, n);
  return {base - spread, base + spread};
}

Mat2 u_matrix(double V, std::size_t n) {
  require_order(n);
  const double s = root_term(V, n);
  const double half = 0.5 * V / static_cast<double>(n);
  return {1.0, 1.0, -s - half, s - half};
}

Mat2 two_step_factor(double V, std::size_t n) {
  require_order(n);
  const double r = V / static_cast<double>(n);
  return {1.0 + r * r, r, r, 1.0};
}

Mat2 qhat_closed(double V, std::size_t n, std::size_t ell) {
  if (ell > n) throw IndexOutOfRange("qhat_closed requires ell <= n");
  const auto [lm, lp] = lambda_pm(V, n);
  const Mat2 u = u_matrix(V, n);
  // det U = 2 s, so U^{-1} = adj(U) / (2 s).
  const Mat2 u_inv = (1.0 / u.det()) * Mat2{u.m22, -u.m12, -u.m21, u.m11};
  const std::size_t k = ell / 2;
  const Mat2 d = Mat2::diag(std::pow(lm, static_cast<double>(k)), std::pow(lp, static_cast<double>(k)));
  const Mat2 even = u * d * u_inv;
  if (ell % 2 == 0) return even;
  const Mat2 left{1.0, 0.0, V / static_cast<double>(n), 1.0};
  return left * even;
}

Mat2 qhat_product(double V, std::size_t n, std::size_t ell) {
  if (ell > n) throw IndexOutOfRange("qhat_product requires ell <= n");
  const auto free_t = transfer_product(CoefficientModel::free(), n, ell, 0.0).T;
  const auto pert_t = transfer_product(CoefficientModel::alternating_v(V), n, ell, 0.0).T;
  return inverse_unimodular(free_t) * pert_t;
}

Mat2 limit_coefficient(double V, double s) {
  return {0.0, -0.5 * std::exp(s * V), 0.5 * std::exp(-s * V), 0.0};
}

Mat2 discrete_coefficient(double V, std::size_t n, std::size_t ell) {
  const Mat2 t = power(kSymplectic, ell % 4) * qhat_closed(V, n, ell);
  const double p = t.m11.real();
  const double q = -t.m12.real();
  const Mat2 u = u_matrix(V, n);
  const Mat2 u_inv = (1.0 / u.det()) * Mat2{u.m22, -u.m12, -u.m21, u.m11};
  return -1.0 * (u_inv * kSymplecticInv * h_matrix(p, q) * u);
}

Mat2 discrete_coefficient_leading(double V, std::size_t n, std::size_t ell) {
  const auto [lm, lp] = lambda_pm(V, n);
  const double scale = 1.0 / (2.0 * root_term(V, n));
  const double l = static_cast<double>(ell);
  if (ell % 2 == 0) return scale * Mat2{-1.0, -std::pow(lp, l), std::pow(lm, l), 1.0};
  return scale * Mat2{1.0, -std::pow(lp, l - 2.0), std::pow(lm, l - 2.0), -1.0};
}

CanonicalSystem limit_system(double V) { return CanonicalSystem::cosh_sinh(V); }

LimitKernel limit_kernel_candidate(double V, cplx a, cplx b) {
  using entire::cosh_sqrt;
  using entire::sinhc_sqrt;
  using entire::sinhc_sqrt_derivative;
  // With u = (V^2 - x^2)/4:  sinh(w/2)/w = S(u)/2,  cosh(w/2) = C(u).
  auto u_of = [V](cplx x) { return 0.25 * (V * V - x * x); };
  const cplx ua = u_of(a), ub = u_of(b);
  const cplx sa = 0.5 * sinhc_sqrt(ua), sb = 0.5 * sinhc_sqrt(ub);
  const cplx ca = cosh_sqrt(ua), cb = cosh_sqrt(ub);
  // a s_a c_b - b s_b c_a + V (s_b c_a - s_a c_b)
  const cplx raw = (a - V) * sa * cb - (b - V) * sb * ca;
  if (!coincident(a, b)) return {raw, raw / (a - b)};
  // d/da of raw at b = a; du/da = -a/2, C'(u) = S(u)/2.
  const cplx dsa = 0.5 * sinhc_sqrt_derivative(ua) * (-0.5 * a);
  const cplx dca = 0.5 * sinhc_sqrt(ua) * (-0.5 * a);
  const cplx diag = sa * ca + (a - V) * dsa * ca - (a - V) * sa * dca;
  return {raw, diag};
}

}  // namespace cdscale::models
